#include "apery/evaluator.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace apery {

// ---------- omega classification ----------

OmAnalysis classify_omega(const std::vector<Density>& letters, bool endpoint_is_one) {
  OmAnalysis res;
  bool div_lo = false, div_hi = false;
  // lower endpoint: walk inward from the last letter; each level integrates
  // from 0, so any integrand order <= -1 there diverges
  {
    int growth = 0;  // inner H ~ t^growth at 0
    for (int j = int(letters.size()); j-- > 0;) {
      int o = letters[j].order0() + growth;
      if (o <= -1) {
        div_lo = true;
        break;
      }
      growth = o + 1;
    }
  }
  // upper endpoint, singular only when the interval reaches t = 1;
  // orders live on the half-integer grid (doubled values)
  if (endpoint_is_one && !letters.empty()) {
    int v2 = 0;  // inner H ~ (1-t)^(v2/2), v2 <= 0; 0 means bounded
    bool vlog = false;
    for (int j = int(letters.size()); j-- > 0;) {
      int w2 = letters[j].twice_order1() + v2;
      if (j == 0) {
        if (w2 <= -2) {
          div_hi = true;
          res.upper_half_degree = -(w2 + 2);
          res.log_upper = (w2 == -2);
        }
        break;
      }
      if (w2 > -2) {
        v2 = 0;
        vlog = false;
      } else if (w2 == -2) {
        v2 = 0;
        vlog = true;
      } else {
        v2 = w2 + 2;
      }
    }
    (void)vlog;
  }
  if (div_lo && div_hi) {
    res.cls = OmClass::DIV_BOTH;
  } else if (div_lo) {
    res.cls = OmClass::DIV_LOWER;
  } else if (div_hi) {
    res.cls = OmClass::DIV_UPPER;
  }
  return res;
}

EvalResult eval_omega_word(const std::vector<Density>& letters, Real2 x, const EvalConfig& cfg) {
  if (x.hi < 0.0 || x.hi > 1.0 + 1e-15) {
    throw std::domain_error("eval_omega_word: endpoint outside [0, 1]");
  }
  bool at_one = (Real2(1.0) - x).hi < 1e-14;
  OmAnalysis a = classify_omega(letters, at_one);
  if (a.cls != OmClass::CONVERGENT) {
    throw std::domain_error("eval_omega_word: divergent word");
  }
  return integrate_omega_word(letters, Real2(0.0), x, cfg);
}

// ---------- x words ----------

XClass classify_xword(const XWord& w, const CycloQ8& z) {
  if (w.empty()) return XClass::CONVERGENT;
  bool up = !w.front().is_a && w.front().pole == z;
  bool lo = w.back().is_a;
  if (up && lo) return XClass::DIV_BOTH;
  if (up) return XClass::DIV_UPPER;
  if (lo) return XClass::DIV_LOWER;
  return XClass::CONVERGENT;
}

EvalResult eval_xword(const XWord& w, const PathSpec& path, const EvalConfig& cfg) {
  return integrate_xword_path(w, path, cfg);
}

// ---------- mpl ----------

MPLTerm word_to_mpl(const XWord& w, Real2 z) {
  if (w.empty() || w.back().is_a) {
    throw std::invalid_argument("word_to_mpl: word must end with a pole letter");
  }
  MPLTerm t;
  t.scale = z;
  CycloQ8 prev_gamma(1);
  int run = 0;
  for (const auto& l : w) {
    if (l.is_a) {
      ++run;
      continue;
    }
    t.s.push_back(run + 1);
    t.eta.push_back(prev_gamma / l.pole);  // eta_j = gamma_{j-1} / gamma_j
    prev_gamma = l.pole;
    run = 0;
  }
  return t;
}

namespace {

struct SeriesVal {
  Complex2 value;
  Real2 err;
};

// direct nested summation, valid when all prefix-product moduli are < 1
SeriesVal nested_series(const std::vector<int>& s, const std::vector<Complex2>& z, double tol) {
  const int d = int(s.size());
  double r = 0.0;
  Complex2 pref(Real2(1.0));
  for (int j = 0; j < d; ++j) {
    pref *= z[j];
    r = std::max(r, abs2(pref).hi);
  }
  if (r >= 0.985) throw std::domain_error("nested_series: prefix modulus too close to 1");
  double digits = -std::log10(std::max(tol, 1e-34)) + 6.0;
  long N = long(digits * 2.302585 / -std::log(r)) + 12 * d + 12;
  N = std::min(N, 40000L);
  std::vector<Complex2> pz(d, Complex2(Real2(1.0)));
  std::vector<Complex2> Fcur(d, Complex2());
  for (long n = 1; n <= N; ++n) {
    Real2 np{double(n)};
    for (int j = 0; j < d; ++j) {
      pz[j] *= z[j];
      Complex2 inner = (j + 1 < d) ? Fcur[j + 1] : Complex2(Real2(1.0));
      // uses F_{j+1}(n-1): ascending j order reads the not-yet-updated value
      Fcur[j] += pz[j] / Complex2(pow2i(np, s[j])) * inner;
    }
  }
  double tail = std::pow(r, double(N + 1)) / (1.0 - r) * std::pow(double(N + 2), double(d - 1));
  return {Fcur[0], Real2(tail)};
}

struct XPiece {
  CycloQ8 sign;  // +-1
  XWord word;
};

// transform + reverse a prefix integrated over [1/2, 1] into a word over [0, 1/2]
XPiece upper_half_prefix(const XWord& prefix) {
  XPiece out;
  out.sign = CycloQ8((prefix.size() % 2 == 0) ? 1 : -1);
  XWord tr;
  for (const auto& l : prefix) {
    if (l.is_a) {
      out.sign = -out.sign;
      tr.push_back(XLetter::at(CycloQ8(1)));
    } else {
      CycloQ8 p = CycloQ8(1) - l.pole;
      if (p.is_zero()) {
        out.sign = -out.sign;
        tr.push_back(XLetter::a());
      } else {
        tr.push_back(XLetter::at(p));
      }
    }
  }
  std::reverse(tr.begin(), tr.end());
  out.word = std::move(tr);
  return out;
}

SeriesVal eval_half_word(const XWord& w, double tol) {
  if (w.empty()) return {Complex2(Real2(1.0)), Real2(0.0)};
  MPLTerm t = word_to_mpl(w, ldexp2(Real2(1.0), -1));
  std::vector<Complex2> z;
  for (std::size_t j = 0; j < t.eta.size(); ++j) {
    Complex2 a = t.eta[j].embed();
    if (j == 0) a = a * Complex2(t.scale);
    z.push_back(a);
  }
  return nested_series(t.s, z, tol);
}

}  // namespace

EvalResult mpl_series(const MPLTerm& term, const EvalConfig& cfg) {
  std::vector<Complex2> z;
  for (std::size_t j = 0; j < term.eta.size(); ++j) {
    Complex2 a = term.eta[j].embed();
    if (j == 0) a = a * Complex2(term.scale);
    z.push_back(a);
  }
  if (term.s.empty()) return {Complex2(Real2(1.0)), Real2(0.0), Engine::MPL_SERIES};
  // admissibility: (s1, z1) != (1, 1)
  if (term.s[0] == 1 && abs2(z[0] - Complex2(Real2(1.0))).hi < 1e-14) {
    throw std::domain_error("mpl_series: inadmissible term (s1, z1) = (1, 1)");
  }
  double r = 0.0;
  Complex2 pref(Real2(1.0));
  for (auto& a : z) {
    pref *= a;
    r = std::max(r, abs2(pref).hi);
  }
  if (r <= 0.97) {
    SeriesVal v = nested_series(term.s, z, cfg.target_abs_error);
    return {v.value, v.err, Engine::MPL_SERIES};
  }
  // boundary: Hoelder convolution at 1/2 over the integral word
  if (std::fabs(term.scale.hi - 1.0) > 1e-14) {
    throw std::domain_error("mpl_series: unsupported boundary term with scale != 1");
  }
  XWord w;
  CycloQ8 gamma(1);
  for (std::size_t j = 0; j < term.s.size(); ++j) {
    for (int i = 1; i < term.s[j]; ++i) w.push_back(XLetter::a());
    gamma = gamma / term.eta[j];
    w.push_back(XLetter::at(gamma));
  }
  const int k = int(w.size());
  Complex2 total;
  Real2 err(0.0);
  for (int cut = 0; cut <= k; ++cut) {
    XWord pre(w.begin(), w.begin() + cut);
    XWord suf(w.begin() + cut, w.end());
    if (!suf.empty() && suf.back().is_a) continue;  // zero contribution guard (cannot happen)
    XPiece A = upper_half_prefix(pre);
    SeriesVal va = eval_half_word(A.word, cfg.target_abs_error);
    SeriesVal vb = eval_half_word(suf, cfg.target_abs_error);
    total += A.sign.embed() * va.value * vb.value;
    err += va.err * (abs2(vb.value) + vb.err) + vb.err * abs2(va.value);
  }
  return {total, err, Engine::MPL_SERIES};
}

Complex2 polylog_series(int s, const Complex2& z) {
  Real2 r = abs2(z);
  if (r.hi >= 0.995) throw std::domain_error("polylog_series: |z| too close to 1");
  long N = long(80.0 * 2.302585 / -std::log(r.hi)) + 8;
  N = std::min(N, 60000L);
  Complex2 acc, pz(Real2(1.0));
  for (long n = 1; n <= N; ++n) {
    pz *= z;
    acc += pz / Complex2(pow2i(Real2(double(n)), s));
  }
  return acc;
}

// ---------- constants ----------

Real2 const_pi() { return dd_pi(); }
Real2 const_log2() { return dd_ln2(); }
Real2 const_log_nu() {
  static Real2 v = log2r(Real2(1.0) + sqrt2(Real2(2.0)));
  return v;
}
Real2 const_sqrt(double x) { return sqrt2(Real2(x)); }

Real2 hurwitz_zeta(int s, const Rational& a) {
  if (s < 2) throw std::domain_error("hurwitz_zeta: s must be >= 2");
  // Bernoulli numbers B_2 .. B_28
  static const Rational bern[] = {
      Rational(1, 6),           Rational(-1, 30),         Rational(1, 42),
      Rational(-1, 30),         Rational(5, 66),          Rational(-691, 2730),
      Rational(7, 6),           Rational(-3617, 510),     Rational(43867, 798),
      Rational(-174611, 330),   Rational(854513, 138),    Rational(-236364091, 2730),
      Rational(8553103, 6),     Rational(-23749461029LL, 870),
  };
  const int N = 64, J = 14;
  Real2 av = a.to_real2();
  Real2 sum(0.0);
  for (int k = 0; k < N; ++k) sum += pow2i(Real2(double(k)) + av, -s);
  Real2 Na = Real2(double(N)) + av;
  sum += pow2i(Na, 1 - s) / Real2(double(s - 1));
  sum += ldexp2(pow2i(Na, -s), -1);
  Real2 last_term(0.0);
  for (int j = 1; j <= J; ++j) {
    // factor for B_{2j}: s(s+1)...(s+2j-2) / (2j)!
    Real2 num(1.0);
    for (int i = 0; i <= 2 * j - 2; ++i) num *= Real2(double(s + i));
    Real2 fact(1.0);
    for (int i = 2; i <= 2 * j; ++i) fact *= Real2(double(i));
    last_term = bern[j - 1].to_real2() * num / fact * pow2i(Na, -s - 2 * j + 1);
    sum += last_term;
  }
  (void)last_term;
  return sum;
}

namespace {
std::mutex g_const_lock;
std::map<ConstName, EvalResult> g_const_cache;

EvalResult compute_constant(ConstName name) {
  Real2 tiny(1e-30);
  switch (name) {
    case ConstName::PI:
      return {Complex2(const_pi()), tiny, Engine::CONSTANT};
    case ConstName::LOG2:
      return {Complex2(const_log2()), tiny, Engine::CONSTANT};
    case ConstName::LOG_NU:
      return {Complex2(const_log_nu()), tiny, Engine::CONSTANT};
    case ConstName::ZETA3:
      return {Complex2(hurwitz_zeta(3, Rational(1))), tiny, Engine::CONSTANT};
    case ConstName::CATALAN: {
      Real2 v = ldexp2(hurwitz_zeta(2, Rational(1, 4)) - hurwitz_zeta(2, Rational(3, 4)), -4);
      return {Complex2(v), tiny, Engine::CONSTANT};
    }
    case ConstName::LI2_NU_INV: {
      Complex2 v = polylog_series(2, Complex2(sqrt2(Real2(2.0)) - Real2(1.0)));
      return {v, tiny, Engine::CONSTANT};
    }
    case ConstName::LI3_NU_INV: {
      Complex2 v = polylog_series(3, Complex2(sqrt2(Real2(2.0)) - Real2(1.0)));
      return {v, tiny, Engine::CONSTANT};
    }
    case ConstName::LI3_INV_SQRT2: {
      Complex2 v = polylog_series(3, Complex2(Real2(1.0) / sqrt2(Real2(2.0))));
      return {v, tiny, Engine::CONSTANT};
    }
    case ConstName::L3_CHI8: {
      // 8^{-3} [zeta(3,1/8) - zeta(3,3/8) - zeta(3,5/8) + zeta(3,7/8)]
      Real2 v = hurwitz_zeta(3, Rational(1, 8)) - hurwitz_zeta(3, Rational(3, 8)) -
                hurwitz_zeta(3, Rational(5, 8)) + hurwitz_zeta(3, Rational(7, 8));
      return {Complex2(ldexp2(v, -9)), tiny, Engine::CONSTANT};
    }
    case ConstName::IM_LI3_HALF_1_PLUS_I: {
      Complex2 z(Real2(0.5), Real2(0.5));
      Complex2 v = polylog_series(3, z);
      return {Complex2(v.im), tiny, Engine::CONSTANT};
    }
  }
  throw std::invalid_argument("constant: unknown name");
}
}  // namespace

EvalResult constant(ConstName name) {
  std::lock_guard<std::mutex> g(g_const_lock);
  auto it = g_const_cache.find(name);
  if (it != g_const_cache.end()) return it->second;
  EvalResult r = compute_constant(name);
  g_const_cache[name] = r;
  return r;
}

std::optional<ConstName> constant_by_name(const std::string& name) {
  static const std::map<std::string, ConstName> table = {
      {"PI", ConstName::PI},
      {"LOG2", ConstName::LOG2},
      {"LOG_NU", ConstName::LOG_NU},
      {"ZETA3", ConstName::ZETA3},
      {"CATALAN", ConstName::CATALAN},
      {"LI2_NU_INV", ConstName::LI2_NU_INV},
      {"LI3_NU_INV", ConstName::LI3_NU_INV},
      {"LI3_INV_SQRT2", ConstName::LI3_INV_SQRT2},
      {"L3_CHI8", ConstName::L3_CHI8},
      {"IM_LI3_HALF_1_PLUS_I", ConstName::IM_LI3_HALF_1_PLUS_I},
  };
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

}  // namespace apery

#include "apery/regularize.hpp"

#include <stdexcept>

namespace apery::reg {

void RegPoly::add(int deg, const XWord& w, const CycloQ8& k) {
  coef[deg].add(w, k);
  if (coef[deg].empty()) coef.erase(deg);
}

RegPoly& RegPoly::operator+=(const RegPoly& o) {
  for (auto& [d, lin] : o.coef) {
    coef[d] += lin;
    if (coef[d].empty()) coef.erase(d);
  }
  return *this;
}

RegPoly RegPoly::scaled(const CycloQ8& k) const {
  RegPoly out;
  if (k.is_zero()) return out;
  for (auto& [d, lin] : coef) out.coef[d] = lin.scaled(k);
  return out;
}

// product of regularized values: coefficient combinations multiply by the
// shuffle product (both factors live over the same path)
RegPoly operator*(const RegPoly& a, const RegPoly& b) {
  RegPoly out;
  for (auto& [da, la] : a.coef) {
    for (auto& [db, lb] : b.coef) {
      for (auto& [wa, ka] : la.items()) {
        for (auto& [wb, kb] : lb.items()) {
          XLin sh = shuffle(wa, wb).scaled(ka * kb);
          out.coef[da + db] += sh;
        }
      }
    }
  }
  for (auto it = out.coef.begin(); it != out.coef.end();) {
    it = it->second.empty() ? out.coef.erase(it) : std::next(it);
  }
  return out;
}

namespace {

bool is_pole_one(const XLetter& l) { return !l.is_a && l.pole == CycloQ8(1); }

using Memo = std::map<XWord, RegPoly>;

RegPoly reg_word(const XWord& w, Memo& memo);

RegPoly shift_T(const RegPoly& p) {
  RegPoly out;
  for (auto& [d, lin] : p.coef) out.coef[d + 1] = lin;
  return out;
}

// peel one divergent boundary letter using the shuffle relation
RegPoly peel_upper(const XWord& w, Memo& memo) {
  int run = 0;
  while (run < int(w.size()) && is_pole_one(w[run])) ++run;
  XWord u(w.begin() + 1, w.end());
  RegPoly acc = shift_T(reg_word(u, memo));
  // x_1 shuffled into u: run copies of w itself, the rest have shorter runs
  XLetter x1 = w.front();
  for (std::size_t pos = 1; pos <= u.size(); ++pos) {
    XWord v = u;
    v.insert(v.begin() + pos, x1);
    int vrun = 0;
    while (vrun < int(v.size()) && is_pole_one(v[vrun])) ++vrun;
    if (vrun == run) continue;  // this insertion reproduces w
    acc += reg_word(v, memo).scaled(CycloQ8(-1));
  }
  return acc.scaled(CycloQ8(Rational(1, run)));
}

RegPoly peel_lower(const XWord& w, Memo& memo) {
  int run = 0;
  while (run < int(w.size()) && w[w.size() - 1 - run].is_a) ++run;
  XWord v(w.begin(), w.end() - 1);
  RegPoly acc = shift_T(reg_word(v, memo));
  XLetter a = w.back();
  for (std::size_t pos = 0; pos < v.size(); ++pos) {
    XWord u = v;
    u.insert(u.begin() + pos, a);
    int urun = 0;
    while (urun < int(u.size()) && u[u.size() - 1 - urun].is_a) ++urun;
    if (urun == run) continue;
    acc += reg_word(u, memo).scaled(CycloQ8(-1));
  }
  return acc.scaled(CycloQ8(Rational(1, run)));
}

RegPoly reg_word(const XWord& w, Memo& memo) {
  auto it = memo.find(w);
  if (it != memo.end()) return it->second;
  RegPoly out;
  if (w.empty()) {
    out.add(0, w, CycloQ8(1));
    memo[w] = out;
    return out;
  }
  XClass cls = classify_xword(w, CycloQ8(1));
  if (cls == XClass::CONVERGENT) {
    out.add(0, w, CycloQ8(1));
  } else if (cls == XClass::DIV_UPPER || cls == XClass::DIV_BOTH) {
    out = peel_upper(w, memo);
  } else {
    out = peel_lower(w, memo);
  }
  memo[w] = out;
  return out;
}

}  // namespace

RegPoly shuffle_regularize(const XWord& w) {
  Memo memo;
  return reg_word(w, memo);
}

RegPoly shuffle_regularize(const XLin& lin) {
  Memo memo;
  RegPoly out;
  for (auto& [w, k] : lin.items()) out += reg_word(w, memo).scaled(k);
  return out;
}

XWord rescale_to_unit(const XWord& w, const CycloQ8& z) {
  if (z.is_zero()) throw std::invalid_argument("rescale_to_unit: zero endpoint");
  XWord out;
  CycloQ8 zinv = z.inv();
  for (const auto& l : w) {
    out.push_back(l.is_a ? XLetter::a() : XLetter::at(l.pole * zinv));
  }
  return out;
}

std::vector<SplitTerm> chen_split(const XWord& w, const CycloQ8& z) {
  const int k = int(w.size());
  std::vector<SplitTerm> out;
  for (int cut = 0; cut <= k; ++cut) {
    SplitTerm t;
    XWord upper(w.begin(), w.begin() + cut);
    XWord lower(w.begin() + cut, w.end());
    t.upper = rescale_to_unit(upper, z);
    auto [sign, rev] = reverse_path(lower);
    t.lower = std::move(rev);
    t.sign = CycloQ8(sign);
    out.push_back(std::move(t));
  }
  return out;
}

namespace {

struct ValueCache {
  std::map<XWord, Complex2> values;
  const EvalConfig* cfg;
  Real2 err{0.0};

  Complex2 eval_lin(const XLin& lin) {
    Complex2 acc;
    for (auto& [w, k] : lin.items()) {
      auto it = values.find(w);
      Complex2 v;
      if (it != values.end()) {
        v = it->second;
      } else {
        if (classify_xword(w, CycloQ8(1)) != XClass::CONVERGENT) {
          throw std::logic_error("regularize: divergent word escaped regularization");
        }
        EvalResult r = integrate_xword_path(
            w, PathSpec::line(Complex2(Real2(0.0)), Complex2(Real2(1.0))), *cfg);
        v = r.value;
        err += r.abs_error_estimate;
        values[w] = v;
      }
      acc += k.embed() * v;
    }
    return acc;
  }
};

}  // namespace

EvalResult reg_value_T0(const RegPoly& p, const EvalConfig& cfg) {
  ValueCache cache;
  cache.cfg = &cfg;
  Complex2 v;
  auto it = p.coef.find(0);
  if (it != p.coef.end()) v = cache.eval_lin(it->second);
  return {v, cache.err + Real2(1e-31), Engine::ODE_CASCADE};
}

namespace {

// numeric polynomial in T
using TPoly = std::vector<Complex2>;

TPoly to_numeric(const RegPoly& p, ValueCache& cache) {
  TPoly out(std::max(0, p.degree()) + 1);
  for (auto& [d, lin] : p.coef) out[d] = cache.eval_lin(lin);
  return out;
}

// substitute T -> T + c
TPoly shift_arg(const TPoly& p, const Complex2& c) {
  TPoly out(p.size());
  std::vector<std::vector<double>> binom(p.size(), std::vector<double>(p.size(), 0.0));
  for (std::size_t n = 0; n < p.size(); ++n) {
    binom[n][0] = 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
      binom[n][k] = binom[n - 1][k - 1] + (k < n ? binom[n - 1][k] : 0.0);
    }
  }
  for (std::size_t n = 0; n < p.size(); ++n) {
    Complex2 cp(Real2(1.0));
    for (std::size_t k = 0; k <= n; ++k) {
      // coefficient of T^{n-k}: binom(n, k) c^k p_n
      out[n - k] += Complex2(Real2(binom[n][k])) * cp * p[n];
      cp *= c;
    }
  }
  return out;
}

TPoly mul(const TPoly& a, const TPoly& b) {
  TPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

EvalResult epsilon_split_eval(const std::vector<std::pair<CycloQ8, XWord>>& pieces,
                              const EvalConfig& cfg) {
  ValueCache cache;
  cache.cfg = &cfg;
  // the upper factors run along the ray toward mu; aligning their tangential
  // parameter with the common real cutoff shifts T by log(mu) = i pi / 4
  Complex2 logmu(Real2(0.0), ldexp2(dd_pi(), -2));
  TPoly total{Complex2()};
  for (auto& [k, w] : pieces) {
    for (auto& term : chen_split(w, CycloQ8::mu())) {
      TPoly pu = shift_arg(to_numeric(shuffle_regularize(term.upper), cache), logmu);
      TPoly pl = to_numeric(shuffle_regularize(term.lower), cache);
      TPoly prod = mul(pu, pl);
      Complex2 scale = (term.sign * k).embed();
      if (total.size() < prod.size()) total.resize(prod.size());
      for (std::size_t i = 0; i < prod.size(); ++i) total[i] += Complex2(scale) * prod[i];
    }
  }
  Real2 scale(1.0);
  scale += abs2(total[0]);
  for (std::size_t d = 1; d < total.size(); ++d) {
    // residual divergence check: T-coefficients must vanish
    if (abs2(total[d]).hi > 1e-9 * scale.hi) {
      throw std::domain_error("epsilon_split_eval: residual divergence at T^" +
                              std::to_string(d));
    }
  }
  return {total[0], cache.err + Real2(1e-31), Engine::ODE_CASCADE};
}

EvalResult value_1_to_mu(const XWord& w, const EvalConfig& cfg) {
  return epsilon_split_eval({{CycloQ8(1), w}}, cfg);
}

}  // namespace apery::reg

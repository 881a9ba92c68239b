#include "apery/builder.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace apery {

namespace {

const Mono kMonoOne{0, 0, 0};

Density named(Om t) { return Density::named(t); }
Density eps_named(bool plus, Om p, Om m) { return Density::named(plus ? p : m); }

// f_{+-2}, f_{+-20} and friends as exponent monomials
Mono f2_mono(bool plus) { return plus ? Mono{1, -1, 0} : Mono{1, 0, -1}; }
Mono f20_mono(bool plus) { return plus ? Mono{-1, -1, 0} : Mono{-1, 0, -1}; }

Rational central_binomial(long m) {
  BigInt num(1), den(1);
  for (long i = 1; i <= m; ++i) {
    num *= BigInt(m + i);
    den *= BigInt(i);
  }
  return Rational(num, den);  // binom(2m, m)
}

// tail factor of the innermost letter: b^eps_m(t) or a^eps_m(t)
std::pair<CycloQ8, Mono> tail_weight(Family family, bool eps_plus, long m) {
  if (m == 0) return {CycloQ8(1), kMonoOne};
  Rational binom = central_binomial(m);
  Rational pow4(BigInt::pow(BigInt(4), unsigned(m)), BigInt(1));
  Rational r = (family == Family::INVERSE_BINOMIAL_B) ? pow4 / binom : binom / pow4;
  if (!eps_plus && (m % 2)) r = -r;
  return {CycloQ8(r), Mono{int(2 * m), 0, 0}};
}

// ---- antiderivative table for the composition collapses ----
// each entry: kernel monomial -> antiderivative with value 0 at t = 0
struct PrimitiveEntry {
  Mono kernel;
  Density antiderivative;
};

const std::vector<PrimitiveEntry>& primitive_table() {
  static const std::vector<PrimitiveEntry> table = [] {
    std::vector<PrimitiveEntry> t;
    Density one = Density::mono(CycloQ8(1), kMonoOne);
    // t dt/(1+t^2)^{3/2} -> 1 - 1/sqrt(1+t^2)
    t.push_back({Mono{1, 0, -3}, one - Density::mono(CycloQ8(1), Mono{0, 0, -1})});
    // t dt/(1-t^2)^{3/2} -> 1/sqrt(1-t^2) - 1
    t.push_back({Mono{1, -3, 0}, Density::mono(CycloQ8(1), Mono{0, -1, 0}) - one});
    // dt/(1+t^2)^{3/2} -> t/sqrt(1+t^2)
    t.push_back({Mono{0, 0, -3}, Density::mono(CycloQ8(1), Mono{1, 0, -1})});
    // dt/(1-t^2)^{3/2} -> t/sqrt(1-t^2)
    t.push_back({Mono{0, -3, 0}, Density::mono(CycloQ8(1), Mono{1, -1, 0})});
    return t;
  }();
  return table;
}

std::optional<Density> primitive_of(const Density& kernel) {
  auto& ts = kernel.terms();
  if (ts.size() != 1) return std::nullopt;
  for (auto& e : primitive_table()) {
    if (ts[0].second == e.kernel) return e.antiderivative.scaled(ts[0].first);
  }
  return std::nullopt;
}

}  // namespace

std::optional<Density> resolve_composition(const Density& outer, const Density& inner_kernel) {
  auto prim = primitive_of(inner_kernel);
  if (!prim) return std::nullopt;
  return outer * *prim;
}

Real2 mono_eval_at(Mono m, const Real2& x) {
  TPoint p{x, Real2(1.0) - x};
  return Density::mono(CycloQ8(1), m).eval(p);
}

std::string prefactor_name(Mono m) {
  if (m == kMonoOne) return "1";
  if (m == Mono{1, 0, 0}) return "x";
  if (m == Mono{-1, 0, 0}) return "1/x";
  if (m == Mono{1, -1, 0}) return "x/sqrt(1-x^2)";
  if (m == Mono{1, 0, -1}) return "x/sqrt(1+x^2)";
  if (m == Mono{0, 1, 0}) return "sqrt(1-x^2)";
  if (m == Mono{0, 0, 1}) return "sqrt(1+x^2)";
  std::string out = "x^" + std::to_string(m.a);
  if (m.b) out += "*(1-x^2)^(" + std::to_string(m.b) + "/2)";
  if (m.c) out += "*(1+x^2)^(" + std::to_string(m.c) + "/2)";
  return out;
}

// ---------------- assemblies ----------------

namespace {

struct Assembly {
  CycloQ8 coeff;
  Mono prefactor = kMonoOne;
  OmWord letters;  // may carry added constants until expansion
};

void add_mono(Mono& m, Mono d) {
  m.a += d.a;
  m.b += d.b;
  m.c += d.c;
}

// expand added constants into plain words
std::vector<Assembly> expand_assemblies(const std::vector<Assembly>& in) {
  std::vector<Assembly> out;
  for (const auto& a : in) {
    bool plain = true;
    for (auto& l : a.letters) {
      if (!l.plain()) plain = false;
    }
    if (plain) {
      out.push_back(a);
      continue;
    }
    OmLin lin = expand_mixed(a.letters);
    for (auto& [w, k] : lin.items()) {
      Assembly b;
      b.coeff = a.coeff * k;
      b.prefactor = a.prefactor;
      b.letters = w;
      out.push_back(b);
    }
  }
  return out;
}

// eliminate primitive-table kernels by the composition collapse; the leading
// position integrates by parts against the endpoint value of the primitive
std::vector<Assembly> eliminate_kernels(std::vector<Assembly> in) {
  std::vector<Assembly> done;
  while (!in.empty()) {
    Assembly a = std::move(in.back());
    in.pop_back();
    int pos = -1;
    std::optional<Density> prim;
    for (int i = int(a.letters.size()); i-- > 0;) {
      prim = primitive_of(a.letters[i].form);
      if (prim) {
        pos = i;
        break;
      }
    }
    if (pos < 0) {
      done.push_back(std::move(a));
      continue;
    }
    const Density A = *prim;
    const int n = int(a.letters.size());
    if (pos == n - 1 && n >= 2) {
      // terminal collapse: [.., L, kappa] -> [.., L * A]
      Assembly b = a;
      b.letters.pop_back();
      b.letters.back().form = b.letters.back().form * A;
      in.push_back(std::move(b));
    } else if (pos == n - 1 && n == 1) {
      // bare kernel: integral value is A evaluated at the endpoint
      for (auto& [k, m] : A.terms()) {
        Assembly b;
        b.coeff = a.coeff * k;
        b.prefactor = a.prefactor;
        add_mono(b.prefactor, m);
        in.push_back(std::move(b));
      }
    } else if (pos > 0) {
      // sandwich: [.., L, kappa, R, ..] = [.., L*A, R, ..] - [.., L, A*R, ..]
      Assembly b1 = a;
      b1.letters.erase(b1.letters.begin() + pos);
      b1.letters[pos - 1].form = b1.letters[pos - 1].form * A;
      Assembly b2 = a;
      b2.letters.erase(b2.letters.begin() + pos);
      b2.letters[pos].form = A * b2.letters[pos].form;
      b2.coeff = -b2.coeff;
      in.push_back(std::move(b1));
      in.push_back(std::move(b2));
    } else {
      // leading: int kappa o R = A(x) int R - int (A * R_first) o R_rest
      for (auto& [k, m] : A.terms()) {
        Assembly b = a;
        b.coeff = a.coeff * k;
        add_mono(b.prefactor, m);
        b.letters.erase(b.letters.begin());
        in.push_back(std::move(b));
      }
      Assembly b2 = a;
      b2.letters.erase(b2.letters.begin());
      b2.letters.front().form = A * b2.letters.front().form;
      b2.coeff = -b2.coeff;
      in.push_back(std::move(b2));
    }
  }
  return done;
}

// normalize so every letter has unit leading coefficient; the extracted
// scalars accumulate in the assembly coefficient (integrals are multilinear
// in the letters)
void normalize_letters(Assembly& a) {
  for (auto& l : a.letters) {
    if (l.form.structurally_zero()) {
      a.coeff = CycloQ8(0);
      return;
    }
    CycloQ8 k0 = l.form.terms()[0].first;
    if (k0 == CycloQ8(1)) continue;
    a.coeff *= k0;
    l.form = l.form.scaled(k0.inv());
  }
}

// repeatedly combine words that differ in a single letter position,
// reproducing the combined-letter displays of the source recursions (and
// producing convergent combinations at the endpoint)
std::vector<Assembly> merge_letterwise(std::vector<Assembly> in) {
  for (auto& a : in) normalize_letters(a);
  for (int round = 0; round < 4; ++round) {
    bool changed = false;
    // determine the maximum word length present
    std::size_t maxlen = 0;
    for (auto& a : in) maxlen = std::max(maxlen, a.letters.size());
    for (std::size_t pos_plus1 = maxlen; pos_plus1 > 0; --pos_plus1) {
      std::size_t pos = pos_plus1 - 1;
      struct Key {
        Mono pref;
        OmWord rest;  // letters with position pos removed
        std::size_t len;
        bool operator<(const Key& o) const {
          if (len != o.len) return len < o.len;
          if (!(pref == o.pref)) return pref < o.pref;
          return rest < o.rest;
        }
      };
      std::map<Key, Density> groups;
      std::vector<Assembly> untouched;
      for (auto& a : in) {
        if (a.letters.size() <= pos) {
          untouched.push_back(a);
          continue;
        }
        OmWord rest = a.letters;
        rest.erase(rest.begin() + pos);
        Key k{a.prefactor, std::move(rest), a.letters.size()};
        Density add = a.letters[pos].form.scaled(a.coeff);
        auto it = groups.find(k);
        if (it == groups.end()) {
          groups.emplace(std::move(k), std::move(add));
        } else {
          it->second = it->second + add;
          changed = true;
        }
      }
      std::vector<Assembly> next = std::move(untouched);
      for (auto& [k, combined] : groups) {
        if (combined.structurally_zero()) {
          changed = true;
          continue;
        }
        Assembly a;
        a.coeff = CycloQ8(1);
        a.prefactor = k.pref;
        a.letters = k.rest;
        a.letters.insert(a.letters.begin() + pos, OmLetter(combined));
        normalize_letters(a);
        next.push_back(std::move(a));
      }
      in = std::move(next);
    }
    if (!changed) break;
  }
  return in;
}

// ---------------- expansion rules ----------------

bool tail_is_plus(TailKind k) { return k == TailKind::A_PLUS || k == TailKind::B_PLUS; }
bool tail_is_b(TailKind k) { return k == TailKind::B_PLUS || k == TailKind::B_MINUS; }

OmWord w0_run(int count) {
  OmWord w;
  for (int i = 0; i < count; ++i) w.push_back(OmLetter::named(Om::W0));
  return w;
}

}  // namespace

std::vector<ExpandBranch> binomial_expand_step(TailKind kind, Kernel l, int s) {
  if (s < 1) throw std::invalid_argument("binomial_expand_step: s must be >= 1");
  const bool plus = tail_is_plus(kind);
  std::vector<ExpandBranch> out;
  if (tail_is_b(kind)) {
    const Density w1 = eps_named(plus, Om::W1, Om::Wm1);
    const Density w3 = eps_named(plus, Om::W3, Om::Wm3);
    const CycloQ8 eps(plus ? 1 : -1);
    switch (l) {
      case Kernel::K2N:
        if (s == 1) {
          out.push_back({eps, f2_mono(plus), {}, w1, kind});
        } else {
          OmWord block = w0_run(s - 2);
          block.push_back(OmLetter(w1));
          out.push_back({eps, kMonoOne, block, w1, kind});
        }
        break;
      case Kernel::K2NP1:
        if (s == 1) {
          out.push_back({CycloQ8(1), f20_mono(plus), {}, w1, kind});
        } else {
          OmWord block = w0_run(s - 2);
          block.push_back(OmLetter(w3));
          out.push_back({CycloQ8(1), Mono{-1, 0, 0}, block, w1, kind});
        }
        break;
      case Kernel::K2NM1:
        if (s == 1) {
          out.push_back({eps, Mono{1, 0, 0}, {OmLetter(w3)}, w1, kind});
          out.push_back({eps, f2_mono(plus), {}, w1, kind});
        } else {
          OmWord block;
          block.push_back(OmLetter(Density::named(Om::W0), CycloQ8(1)));
          for (auto& letter : w0_run(s - 2)) block.push_back(letter);
          block.push_back(OmLetter(w3));
          out.push_back({eps, Mono{1, 0, 0}, block, w1, kind});
        }
        break;
    }
    return out;
  }
  // binomial (a) family
  const Density w2 = eps_named(plus, Om::W2, Om::Wm2);
  const Density w1 = eps_named(plus, Om::W1, Om::Wm1);
  const Density w3 = eps_named(plus, Om::W3, Om::Wm3);
  const Density kappa = Density::mono(CycloQ8(1), plus ? Mono{1, -3, 0} : Mono{1, 0, -3});
  const Density krat = Density::mono(CycloQ8(1), plus ? Mono{0, -2, 0} : Mono{0, 0, -2});
  switch (l) {
    case Kernel::K2N:
      if (plus) {
        out.push_back({CycloQ8(1), kMonoOne, w0_run(s - 1), w2, kind});
        OmWord b2 = w0_run(s - 1);
        b2.push_back(OmLetter(w3));
        out.push_back({CycloQ8(-1), kMonoOne, b2, kappa, kind});
      } else {
        OmWord b1 = w0_run(s - 1);
        b1.push_back(OmLetter(w3));
        out.push_back({CycloQ8(1), kMonoOne, b1, kappa, kind});
        out.push_back({CycloQ8(-1), kMonoOne, w0_run(s - 1), w2, kind});
      }
      break;
    case Kernel::K2NP1: {
      out.push_back({CycloQ8(1), Mono{-1, 0, 0}, w0_run(s - 1), krat, kind});
      OmWord b2 = w0_run(s - 1);
      b2.push_back(OmLetter(w1));
      out.push_back({CycloQ8(plus ? -1 : 1), Mono{-1, 0, 0}, b2, kappa, kind});
      break;
    }
    case Kernel::K2NM1:
      if (s == 1) {
        out.push_back({CycloQ8(plus ? 1 : -1), plus ? Mono{0, 1, 0} : Mono{0, 0, 1}, {}, kappa,
                       kind});
      } else {
        OmWord block = w0_run(s - 2);
        block.push_back(OmLetter(Density::mono(CycloQ8(1), plus ? Mono{-2, 1, 0} : Mono{-2, 0, 1})));
        out.push_back({CycloQ8(1), Mono{1, 0, 0}, block, kappa, kind});
      }
      break;
  }
  return out;
}

// ---------------- Gamma-block construction (all kernels 2n) ----------------

IntegralExpr inverse_binomial_word(const std::vector<int>& s, const std::vector<int>& eta,
                                   long tail_n, const XValue& x) {
  const int d = int(s.size());
  if (d == 0 || int(eta.size()) != d) {
    throw std::invalid_argument("inverse_binomial_word: bad composition/sign data");
  }
  // partial sign products and the overall sign
  std::vector<int> bar(d + 1);
  bar[0] = 0;  // placeholder; bar_0 = bar_1 by convention
  int acc = 1, sgn = 1;
  for (int j = 1; j <= d; ++j) {
    acc *= eta[j - 1];
    bar[j] = acc;
    sgn *= acc;
  }
  bar[0] = bar[1];
  OmWord word;
  auto gamma_block = [&](int sj, int a, int b) {
    if (sj == 1) {
      int idx = 3 * b - a;  // in {2, -2, 4, -4}, with w(-4) = w4
      switch (idx) {
        case 2: word.push_back(OmLetter::named(Om::W2)); break;
        case -2: word.push_back(OmLetter::named(Om::Wm2)); break;
        default: word.push_back(OmLetter::named(Om::W4)); break;
      }
    } else {
      word.push_back(OmLetter::named(a > 0 ? Om::W1 : Om::Wm1));
      for (int i = 0; i < sj - 2; ++i) word.push_back(OmLetter::named(Om::W0));
      word.push_back(OmLetter::named(b > 0 ? Om::W1 : Om::Wm1));
    }
  };
  for (int j = 1; j <= d; ++j) gamma_block(s[j - 1], bar[j - 1], bar[j]);
  // tail letter b_n^{sgn(bar_d)} omega_{bar_d}
  auto [tw, tm] = tail_weight(Family::INVERSE_BINOMIAL_B, bar[d] > 0, tail_n);
  Density last = Density::named(bar[d] > 0 ? Om::W1 : Om::Wm1).scaled(tw).mono_mul(CycloQ8(1), tm);
  word.push_back(OmLetter(last));

  // realize sqrt(1 - eta1 x^2) d/dx by stripping the first 1-form
  const auto& first = word.front().form;
  Mono pref = first.terms()[0].second;
  add_mono(pref, eta[0] > 0 ? Mono{0, 1, 0} : Mono{0, 0, 1});
  CycloQ8 coeff = first.terms()[0].first * CycloQ8(sgn);
  OmWord rest(word.begin() + 1, word.end());

  IntegralExpr expr;
  expr.x = x;
  IntegralComponent comp;
  comp.prefactor = pref;
  comp.terms = OmLin::single(rest, coeff);
  expr.comps.push_back(std::move(comp));
  return expr;
}

// ---------------- hyperbolic route ----------------

HypExpr hyperbolic_word(HypKind kind, const std::vector<int>& s, long tail_n) {
  if (s.empty()) throw std::invalid_argument("hyperbolic_word: empty composition");
  auto block = [&](int sj) {
    std::vector<std::pair<Rational, HypWord>> terms;
    switch (kind) {
      case HypKind::GTILDE:
        if (sj == 1) {
          terms.push_back({Rational(1), {HypLetter(HypLetterKind::TH)}});
        } else {
          HypWord w{HypLetter(HypLetterKind::DT)};
          for (int i = 0; i < sj - 2; ++i) w.push_back(HypLetter(HypLetterKind::CTH));
          w.push_back(HypLetter(HypLetterKind::DT));
          terms.push_back({Rational(1), w});
        }
        break;
      case HypKind::HTILDE:
        if (sj == 1) {
          terms.push_back({Rational(1), {HypLetter(HypLetterKind::CSCH2T2)}});
        } else {
          HypWord w{HypLetter(HypLetterKind::CSCH)};
          for (int i = 0; i < sj - 2; ++i) w.push_back(HypLetter(HypLetterKind::CTH));
          w.push_back(HypLetter(HypLetterKind::CSCH));
          terms.push_back({Rational(1), w});
        }
        break;
      case HypKind::KTILDE:
        if (sj == 1) {
          terms.push_back({Rational(-1), {HypLetter(HypLetterKind::SH), HypLetter(HypLetterKind::CSCH)}});
          terms.push_back({Rational(-1), {HypLetter(HypLetterKind::TH)}});
        } else {
          HypWord w{HypLetter(HypLetterKind::SH)};
          w.push_back(HypLetter(HypLetterKind::CTH, Rational(1)));
          for (int i = 0; i < sj - 2; ++i) w.push_back(HypLetter(HypLetterKind::CTH));
          w.push_back(HypLetter(HypLetterKind::CSCH));
          terms.push_back({Rational(-1), w});
        }
        break;
    }
    return terms;
  };
  HypExpr expr;
  expr.terms.push_back({Rational(1), {}});
  for (int sj : s) {
    auto blk = block(sj);
    std::vector<std::pair<Rational, HypWord>> next;
    for (auto& [c1, w1] : expr.terms) {
      for (auto& [c2, w2] : blk) {
        HypWord w = w1;
        w.insert(w.end(), w2.begin(), w2.end());
        next.push_back({c1 * c2, w});
      }
    }
    expr.terms = std::move(next);
  }
  // trailing b_n(i sh t) dt letter; the tail weight is applied after the
  // substitution u = sh t, where it is the monomial (-4u^2)^n / binom
  for (auto& [c, w] : expr.terms) w.push_back(HypLetter(HypLetterKind::DT));
  (void)tail_n;
  return expr;
}

OmLetter hyp_letter_to_omega(const HypLetter& l) {
  Om tag;
  switch (l.kind) {
    case HypLetterKind::DT: tag = Om::Wm1; break;
    case HypLetterKind::TH: tag = Om::Wm2; break;
    case HypLetterKind::CTH: tag = Om::W0; break;
    case HypLetterKind::CSCH: tag = Om::Wm3; break;
    case HypLetterKind::CSCH2T2: tag = Om::Wm20; break;
    default: tag = Om::Wm5; break;
  }
  return OmLetter(Density::named(tag), CycloQ8(l.constant));
}

OmLin hyp_to_omega(const HypWord& w) {
  OmWord mapped;
  for (auto& l : w) mapped.push_back(hyp_letter_to_omega(l));
  return expand_mixed(mapped);
}

EvalResult eval_hyperbolic_series(HypKind kind, const std::vector<int>& s, Real2 y, long tail_n,
                                  const EvalConfig& cfg) {
  HypExpr expr = hyperbolic_word(kind, s, tail_n);
  const int d = int(s.size());
  int sign = (kind == HypKind::HTILDE) ? 1 : ((d % 2) ? -1 : 1);
  Real2 ey = exp2r(y);
  Real2 u = ldexp2(ey - Real2(1.0) / ey, -1);  // sh y
  const bool neg = u.is_negative();
  Real2 total(0.0);
  Real2 err(0.0);
  auto [tw, tm] = tail_weight(Family::INVERSE_BINOMIAL_B, false, tail_n);
  for (auto& [c, w] : expr.terms) {
    if (w.empty()) continue;
    // d/dy strip: hyperbolic density of the first letter at y equals its
    // omega density at u times ch y
    OmLetter first = hyp_letter_to_omega(w.front());
    Mono strip = first.form.terms()[0].second;
    add_mono(strip, Mono{0, 0, 1});
    Real2 factor = mono_eval_at(strip, u) * first.form.terms()[0].first.embed().re;
    OmWord rest;
    for (std::size_t i = 1; i < w.size(); ++i) rest.push_back(hyp_letter_to_omega(w[i]));
    if (rest.empty()) {
      total += c.to_real2() * factor;
      continue;
    }
    OmLin lin = expand_mixed(rest);
    for (auto& [word, k] : lin.items()) {
      std::vector<Density> ds;
      for (auto& l : word) ds.push_back(l.form);
      ds.back() = ds.back().scaled(tw).mono_mul(CycloQ8(1), tm);
      // negative endpoint: integrate the reflected word over [0, |u|]
      if (neg) {
        for (auto& dd : ds) dd = dd.reflected();
      }
      EvalResult r = eval_omega_word(ds, neg ? -u : u, cfg);
      total += c.to_real2() * factor * k.embed().re * r.value.re;
      err += fabs2(Real2(c.to_double()) * factor) * r.abs_error_estimate;
    }
  }
  total *= Real2(double(sign));
  return {Complex2(total), err + Real2(1e-31), Engine::ODE_CASCADE};
}

// ---------------- full builder ----------------

namespace {

std::vector<Assembly> run_expansion_route(const SeriesSpec& spec) {
  const int d = spec.depth();
  const bool is_b = spec.family == Family::INVERSE_BINOMIAL_B;
  std::vector<Assembly> pieces;
  std::vector<Density> pendings;
  // seed
  pieces.push_back({CycloQ8(1), kMonoOne, {}});
  pendings.push_back(Density());
  int eps = 1;
  for (int j = 0; j < d; ++j) {
    eps *= spec.eta[j];
    const bool plus = eps > 0;
    // the omega_6 form appears exactly when an odd-kernel step at depth >= 2
    // meets a sign flip; not covered by the rewrite tables (inverse family)
    if (is_b && j >= 1 && spec.kernels[j] == Kernel::K2NP1 && spec.s[j] == 1 &&
        spec.eta[j] == -1) {
      throw Omega6Error("build: step " + std::to_string(j + 1) +
                        " (kernel 2n+1 with sign flip) generates omega_6; not covered by the "
                        "rewrite tables");
    }
    TailKind kind = is_b ? (plus ? TailKind::B_PLUS : TailKind::B_MINUS)
                         : (plus ? TailKind::A_PLUS : TailKind::A_MINUS);
    auto branches = binomial_expand_step(kind, spec.kernels[j], spec.s[j]);
    std::vector<Assembly> next;
    std::vector<Density> next_pending;
    for (std::size_t p = 0; p < pieces.size(); ++p) {
      for (const auto& br : branches) {
        Assembly a = pieces[p];
        a.coeff = a.coeff * br.sign;
        if (j == 0) {
          a.prefactor = br.prefactor_fn;
        } else {
          a.letters.push_back(OmLetter(pendings[p].mono_mul(CycloQ8(1), br.prefactor_fn)));
        }
        for (auto& l : br.block) a.letters.push_back(l);
        next.push_back(std::move(a));
        next_pending.push_back(br.new_pending);
      }
    }
    pieces = std::move(next);
    pendings = std::move(next_pending);
  }
  // close with the tail-weighted pending form
  auto [tw, tm] = tail_weight(spec.family, eps > 0, spec.tail_n);
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    pieces[p].letters.push_back(OmLetter(pendings[p].scaled(tw).mono_mul(CycloQ8(1), tm)));
  }
  return pieces;
}

std::vector<Assembly> thm23_assemblies(const SeriesSpec& spec) {
  IntegralExpr e = inverse_binomial_word(spec.s, spec.eta, spec.tail_n, spec.x);
  std::vector<Assembly> out;
  for (auto& comp : e.comps) {
    for (auto& [w, k] : comp.terms.items()) {
      out.push_back({k, comp.prefactor, w});
    }
  }
  return out;
}

}  // namespace

IntegralExpr build_series_integral(const SeriesSpec& spec) {
  auto natural = normalize_strictness(spec);
  std::vector<Assembly> all;
  std::vector<std::string> notes;
  for (auto& [q, ns] : natural) {
    if (ns.depth() == 0) {
      all.push_back({CycloQ8(Rational(q)), kMonoOne, {}});
      continue;
    }
    ns.validate();
    std::vector<Assembly> pieces;
    if (ns.family == Family::INVERSE_BINOMIAL_B && ns.all_kernels(Kernel::K2N)) {
      pieces = thm23_assemblies(ns);
    } else {
      pieces = run_expansion_route(ns);
    }
    CycloQ8 scale{Rational(q)};
    for (auto& a : pieces) {
      a.coeff = a.coeff * scale;
      all.push_back(std::move(a));
    }
  }
  all = expand_assemblies(all);
  all = eliminate_kernels(std::move(all));
  all = merge_letterwise(std::move(all));
  all = eliminate_kernels(std::move(all));
  all = merge_letterwise(std::move(all));

  const bool at_one = spec.x.is_one();
  IntegralExpr expr;
  expr.x = spec.x;
  std::map<Mono, OmLin> comps;
  for (auto& a : all) {
    if (a.letters.empty()) {
      comps[a.prefactor].add(OmWord{}, a.coeff);
      continue;
    }
    std::vector<Density> ds;
    for (auto& l : a.letters) ds.push_back(l.form);
    OmAnalysis an = classify_omega(ds, at_one);
    if (an.cls == OmClass::CONVERGENT) {
      if (at_one && a.prefactor.b > 0) {
        // prefactor vanishes at the endpoint; contribution is exactly 0
        notes.push_back("dropped component with vanishing endpoint prefactor");
        continue;
      }
      comps[a.prefactor].add(a.letters, a.coeff);
      continue;
    }
    if (an.cls == OmClass::DIV_UPPER && at_one && a.prefactor.b > an.upper_half_degree) {
      // (1-x^2)^(b/2) beats the (log-)divergence in the x -> 1 limit
      notes.push_back("dropped endpoint-limit component (vanishing prefactor vs log divergence)");
      continue;
    }
    throw std::invalid_argument("build: representation diverges at the endpoint for " +
                                spec.to_string() + " [word " + omword_to_string(a.letters) + "]");
  }
  for (auto& [pref, lin] : comps) {
    if (lin.empty()) continue;
    expr.comps.push_back({pref, lin});
  }
  expr.notes = std::move(notes);
  return expr;
}

EvalResult IntegralExpr::value(const EvalConfig& cfg) const {
  Real2 total(0.0);
  Real2 err(0.0);
  for (const auto& comp : comps) {
    Real2 pref = mono_eval_at(comp.prefactor, x.value);
    for (const auto& [w, k] : comp.terms.items()) {
      if (!k.is_real()) throw std::logic_error("IntegralExpr: non-real coefficient");
      Real2 kre = k.embed().re;
      if (w.empty()) {
        total += pref * kre;
        continue;
      }
      std::vector<Density> ds;
      for (auto& l : w) ds.push_back(l.form);
      EvalResult r = eval_omega_word(ds, x.value, cfg);
      total += pref * kre * r.value.re;
      err += fabs2(pref * kre) * r.abs_error_estimate;
    }
  }
  return {Complex2(total), err + Real2(1e-31), Engine::ODE_CASCADE};
}

std::string IntegralExpr::to_string() const {
  if (comps.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (i) out += " + ";
    out += "(" + prefactor_name(comps[i].prefactor) + ") * {";
    bool first = true;
    for (auto& [w, k] : comps[i].terms.items()) {
      if (!first) out += " + ";
      first = false;
      out += "(" + k.to_string() + ")*I[" + omword_to_string(w) + "]";
    }
    out += "}";
  }
  return out;
}

}  // namespace apery

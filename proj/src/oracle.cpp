#include "apery/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "apery/evaluator.hpp"

namespace apery::oracle {

// ---------------- exact nested harmonic sums ----------------

namespace {

// generic nested sum over 1 <= n_d (<|<=) ... (<|<=) n_1 <= n with
// denominators den(m)^{s_j}; strict updates ascending (suffix at m-1),
// star updates descending (suffix at m)
Rational nested_exact(const std::vector<int>& s, long n, bool star,
                      const std::function<Rational(long)>& den) {
  const int d = int(s.size());
  if (d == 0) return Rational(1);
  std::vector<Rational> cur(d, Rational(0));
  for (long m = 1; m <= n; ++m) {
    Rational inv = Rational(1) / den(m);
    auto update = [&](int j) {
      Rational p(1);
      for (int i = 0; i < s[j]; ++i) p *= inv;
      Rational suffix = (j + 1 < d) ? cur[j + 1] : Rational(1);
      cur[j] += p * suffix;
    };
    if (star) {
      for (int j = d - 1; j >= 0; --j) update(j);
    } else {
      for (int j = 0; j < d; ++j) update(j);
    }
  }
  return cur[0];
}

}  // namespace

Rational mhs(const std::vector<int>& s, long n, bool star) {
  return nested_exact(s, n, star, [](long m) { return Rational(m); });
}

Rational tsum(const std::vector<int>& s, long n, bool star) {
  return nested_exact(s, n, star, [](long m) { return Rational(2 * m - 1); });
}

Rational central_binom(long n) {
  BigInt num(1), den(1);
  for (long i = 1; i <= n; ++i) {
    num *= BigInt(n + i);
    den *= BigInt(i);
  }
  return Rational(num, den);
}

// ---------------- scan machinery ----------------

namespace {

long kshift(Kernel k) {
  switch (k) {
    case Kernel::K2N: return 0;
    case Kernel::K2NP1: return 1;
    default: return -1;
  }
}

struct ScanSpec {
  std::vector<int> s;
  std::vector<int> eta;
  std::vector<Kernel> kernels;
  std::vector<bool> strict;
  long tail_n = 0;
  bool with_weight = false;  // central-binomial weight on the outer index
  Family family = Family::INVERSE_BINOMIAL_B;
  Real2 x{1.0};

  int depth() const { return int(s.size()); }
};

ScanSpec to_scan(const SeriesSpec& sp) {
  return {sp.s, sp.eta, sp.kernels, sp.strict, sp.tail_n, true, sp.family, sp.x.value};
}

// incremental nested summation; cb(n, outer_factor, inner_value) where the
// outer term equals outer_factor * inner_value
void scan(const ScanSpec& sp, long N,
          const std::function<void(long, const Real2&, const Real2&)>& cb) {
  const int d = sp.depth();
  std::vector<long> off(d, 0), low(d, 0);
  for (int j = 1; j < d; ++j) off[j] = off[j - 1] + (sp.strict[j - 1] ? 1 : 0);
  for (int j = d - 1; j >= 0; --j) {
    low[j] = (j == d - 1 ? sp.tail_n : low[j + 1]) + (sp.strict[j] ? 1 : 0);
  }
  std::vector<Real2> Pcur(d, Real2(0.0));
  Real2 w(1.0);
  Real2 x2 = sp.x * sp.x;
  for (long n = 1; n <= N; ++n) {
    for (int j = d - 1; j >= 1; --j) {
      long v = n - off[j];
      if (v < low[j] || v < 0) continue;
      long l = 2 * v + kshift(sp.kernels[j]);
      Real2 term = Real2(1.0) / pow2i(Real2(double(l)), sp.s[j]);
      if (sp.eta[j] == -1 && (v & 1)) term = -term;
      Real2 inner = (j + 1 < d) ? Pcur[j + 1] : Real2(1.0);
      Pcur[j] += term * inner;
    }
    if (sp.with_weight) {
      Real2 r = Real2(double(2 * n)) / Real2(double(2 * n - 1));
      w = (sp.family == Family::INVERSE_BINOMIAL_B) ? w * r : w / r;
      w *= x2;
    }
    if (n < low[0]) continue;
    long l0 = 2 * n + kshift(sp.kernels[0]);
    Real2 of = (sp.with_weight ? w : Real2(1.0)) / pow2i(Real2(double(l0)), sp.s[0]);
    if (sp.eta[0] == -1 && (n & 1)) of = -of;
    Real2 inner = (d > 1) ? Pcur[1] : Real2(1.0);
    cb(n, of, inner);
  }
}

// outer term at n = 0, reachable only when every boundary is weak, the tail
// is 0 and no kernel vanishes at 0
Real2 zero_index_term(const ScanSpec& sp) {
  if (sp.tail_n != 0) return Real2(0.0);
  for (int j = 0; j < sp.depth(); ++j) {
    if (sp.strict[j]) return Real2(0.0);
    if (kshift(sp.kernels[j]) == 0) return Real2(0.0);
  }
  Real2 v(1.0);
  for (int j = 0; j < sp.depth(); ++j) {
    v /= pow2i(Real2(double(kshift(sp.kernels[j]))), sp.s[j]);
  }
  return v;  // weight at n = 0 is 1 for both families
}

struct TailOut {
  Real2 value;
  Real2 err;
  bool bracket_ok = true;
};

// iterated pairwise averaging over the last `window` terms
TailOut euler_window(const Real2& S_before, const std::vector<Real2>& terms) {
  std::vector<Real2> a(terms.size());
  Real2 run = S_before;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    run += terms[i];
    a[i] = run;
  }
  Real2 smin = a[0], smax = a[0];
  for (auto& v : a) {
    smin = std::min(smin, v);
    smax = std::max(smax, v);
  }
  while (a.size() > 1) {
    for (std::size_t i = 0; i + 1 < a.size(); ++i) a[i] = ldexp2(a[i] + a[i + 1], -1);
    a.pop_back();
  }
  TailOut out;
  out.value = a[0];
  Real2 e1 = terms.empty() ? Real2(0.0) : fabs2(terms.back());
  out.err = ldexp2(e1, -int(std::min<std::size_t>(terms.size() ? terms.size() - 1 : 0, 48))) +
            Real2(1e-32 * (1.0 + std::fabs(out.value.hi)));
  out.bracket_ok = (out.value >= smin && out.value <= smax);
  return out;
}

// dyadic extrapolation for smooth tails with possible log factors:
// S(inf) = S(N) + N^{-g}(A + B log N) + N^{-g-1}(...) + ...
TailOut ladder_fit(const std::vector<std::pair<long, Real2>>& checkpoints, double gamma) {
  auto solve = [&](int rows, int offset) -> Real2 {
    std::vector<std::vector<Real2>> M(rows, std::vector<Real2>(rows + 1));
    for (int r = 0; r < rows; ++r) {
      auto [N, S] = checkpoints[offset + r];
      Real2 logN = log2r(Real2(double(N)));
      std::vector<Real2> basis{Real2(1.0)};
      for (int level = 0; int(basis.size()) < rows; ++level) {
        Real2 p = exp2r(Real2(-(gamma + level)) * logN);
        basis.push_back(p);
        if (int(basis.size()) < rows) basis.push_back(p * logN);
      }
      for (int c = 0; c < rows; ++c) M[r][c] = basis[c];
      M[r][rows] = S;
    }
    for (int c = 0; c < rows; ++c) {
      int piv = c;
      for (int r = c + 1; r < rows; ++r) {
        if (std::fabs(M[r][c].hi) > std::fabs(M[piv][c].hi)) piv = r;
      }
      std::swap(M[c], M[piv]);
      for (int r = c + 1; r < rows; ++r) {
        Real2 f = M[r][c] / M[c][c];
        for (int k2 = c; k2 <= rows; ++k2) M[r][k2] -= f * M[c][k2];
      }
    }
    std::vector<Real2> sol(rows);
    for (int r = rows; r-- > 0;) {
      Real2 acc = M[r][rows];
      for (int k2 = r + 1; k2 < rows; ++k2) acc -= M[r][k2] * sol[k2];
      sol[r] = acc / M[r][r];
    }
    return sol[0];
  };
  const int m = int(checkpoints.size());
  Real2 full = solve(std::min(6, m), std::max(0, m - 6));
  Real2 reduced = solve(std::min(4, m), std::max(0, m - 4));
  TailOut out;
  out.value = full;
  out.err = fabs2(full - reduced) * Real2(4.0) + Real2(1e-30 * (1.0 + std::fabs(full.hi)));
  return out;
}

double measured_gamma(const std::vector<std::pair<long, Real2>>& probes) {
  double acc = 0.0;
  int cnt = 0;
  for (std::size_t i = 0; i + 1 < probes.size(); ++i) {
    double t0 = std::fabs(probes[i].second.hi), t1 = std::fabs(probes[i + 1].second.hi);
    if (t0 <= 0.0 || t1 <= 0.0) continue;
    double ratio = double(probes[i + 1].first) / double(probes[i].first);
    acc += std::log(t0 / t1) / std::log(ratio);
    ++cnt;
  }
  double alpha = cnt ? acc / cnt : 2.0;
  double snapped = std::round(alpha * 2.0) / 2.0;
  return std::max(0.5, snapped - 1.0);
}

// sum a recorded term sequence u_{low..N}; dispatches between alternating
// window averaging and the smooth dyadic ladder
TailOut sum_sequence(const std::vector<Real2>& u, long base_index) {
  const long n = long(u.size());
  if (n == 0) return {Real2(0.0), Real2(0.0), true};
  // detect strict sign alternation over the last stretch
  bool alternating = true;
  long probe = std::min<long>(n - 1, 512);
  for (long i = n - probe; i + 1 < n; ++i) {
    if (u[i].hi == 0.0 || u[i + 1].hi == 0.0 || (u[i].hi > 0) == (u[i + 1].hi > 0)) {
      alternating = false;
      break;
    }
  }
  if (alternating) {
    const long W = std::min<long>(64, n);
    Real2 S_before(0.0);
    for (long i = 0; i < n - W; ++i) S_before += u[i];
    std::vector<Real2> window(u.end() - W, u.end());
    return euler_window(S_before, window);
  }
  // smooth: dyadic checkpoints of partial sums
  std::vector<std::pair<long, Real2>> cps, probes;
  Real2 S(0.0);
  long next_cp = std::max<long>(16, n >> 6);
  for (long i = 0; i < n; ++i) {
    S += u[i];
    long idx = base_index + i;
    if (i == next_cp || i + 1 == n) {
      cps.push_back({idx, S});
      probes.push_back({idx, u[i]});
      if (i == next_cp) next_cp <<= 1;
    }
  }
  if (cps.size() < 3) return {S, fabs2(u.back()) * Real2(double(n)), true};
  return ladder_fit(cps, measured_gamma(probes));
}

Real2 polylog_limit(ScanSpec sp, double tol);

EvalResult sum_scan(const ScanSpec& sp, double tol) {
  const int d = sp.depth();
  const bool at_boundary = std::fabs(std::fabs(sp.x.hi) - 1.0) < 1e-14;

  if (!at_boundary && sp.with_weight) {
    // |x| < 1: geometric decay x^{2n}
    double r = std::min(0.999, (sp.x * sp.x).hi);
    long N = long(std::ceil((-std::log(std::max(tol * 1e-2, 1e-36)) + 10.0) / -std::log(r))) + 48;
    N = std::min(N, 500000L);
    Real2 S = zero_index_term(sp);
    Real2 last(0.0);
    scan(sp, N, [&](long, const Real2& of, const Real2& inner) {
      last = of * inner;
      S += last;
    });
    Real2 err = fabs2(last) * Real2(r / (1.0 - r) + 1.0) + Real2(1e-32 * (1.0 + std::fabs(S.hi)));
    return {Complex2(S), err, Engine::ORACLE_SUM};
  }

  const bool inner_flip_at2 = d >= 2 && sp.eta[1] == -1;
  if (inner_flip_at2) {
    // T_2(n) = L_2 - rho(n): split into the clean L_2 part and the smooth
    // remainder part
    ScanSpec inner;
    inner.s.assign(sp.s.begin() + 1, sp.s.end());
    inner.eta.assign(sp.eta.begin() + 1, sp.eta.end());
    inner.kernels.assign(sp.kernels.begin() + 1, sp.kernels.end());
    inner.strict.assign(sp.strict.begin() + 1, sp.strict.end());
    inner.tail_n = sp.tail_n;
    inner.with_weight = false;
    inner.x = Real2(1.0);
    Real2 L2 = polylog_limit(inner, tol * 0.1);
    const long Nmax = 1L << 17;
    std::vector<Real2> a_terms, u_terms;
    a_terms.reserve(Nmax);
    u_terms.reserve(Nmax);
    long base = -1;
    scan(sp, Nmax, [&](long n, const Real2& of, const Real2& inner_val) {
      if (base < 0) base = n;
      a_terms.push_back(of);
      u_terms.push_back(of * (L2 - inner_val));
    });
    TailOut A = sum_sequence(a_terms, base);
    TailOut U = sum_sequence(u_terms, base);
    Real2 total = L2 * A.value - U.value + zero_index_term(sp);
    Real2 err = fabs2(L2) * A.err + U.err;
    return {Complex2(total), err, Engine::ORACLE_SUM};
  }

  // clean cases: record the outer terms and dispatch
  const long Nmax = (sp.eta[0] == -1) ? (1L << 14) : (1L << 17);
  std::vector<Real2> terms;
  terms.reserve(Nmax);
  long base = -1;
  scan(sp, Nmax, [&](long n, const Real2& of, const Real2& inner) {
    if (base < 0) base = n;
    terms.push_back(of * inner);
  });
  TailOut T = sum_sequence(terms, base);
  Real2 total = T.value + zero_index_term(sp);
  return {Complex2(total), T.err, Engine::ORACLE_SUM};
}

Real2 polylog_limit(ScanSpec sp, double tol) {
  sp.with_weight = false;
  if (sp.eta[0] == 1 && sp.s[0] == 1) {
    throw std::invalid_argument("oracle: divergent inner limit");
  }
  EvalResult r = sum_scan(sp, tol);
  return r.value.re;
}

}  // namespace

EvalResult sum_series(const SeriesSpec& spec, const EvalConfig& cfg) {
  spec.validate();
  return sum_scan(to_scan(spec), cfg.target_abs_error);
}

// ---------------- zeta values and Leshchiner ----------------

Real2 zeta_em(int n) { return hurwitz_zeta(n, Rational(1)); }

Real2 alt_zeta_direct(int n) {
  const long W = 64, N = 4000;
  Real2 S_before(0.0);
  std::vector<Real2> window;
  for (long k = 1; k <= N; ++k) {
    Real2 t = Real2(1.0) / pow2i(Real2(double(k)), n);
    if (k & 1) t = -t;
    if (k > N - W) {
      window.push_back(t);
    } else {
      S_before += t;
    }
  }
  return euler_window(S_before, window).value;
}

LeshchinerResult leshchiner_check(int k, int variant, long N) {
  if (k < 1 || variant < 1 || variant > 4) {
    throw std::invalid_argument("leshchiner_check: bad arguments");
  }
  LeshchinerResult out;
  auto A = [](int j) { return Real2(j == 1 ? 0.75 : 1.0); };
  auto B = [](int j) { return Real2(j == 1 ? 1.25 : 1.0); };
  Real2 rhs(0.0), last_term(0.0);

  if (variant == 1 || variant == 2) {
    // zeta_{n-1}(2_p) running values, p = 0..k-1
    std::vector<Real2> zp(k, Real2(0.0));
    zp[0] = Real2(1.0);
    Real2 ratio(1.0);  // binom(2n,n)/4^n
    for (long n = 1; n <= N; ++n) {
      ratio *= Real2(double(2 * n - 1)) / Real2(double(2 * n));
      Real2 np{double(n)};
      Real2 inner(0.0);
      for (int j = 1; j <= k; ++j) {
        Real2 term = (variant == 1 ? A(j) : B(j)) * zp[k - j] / pow2i(np, 2 * j - 2);
        if ((k - j) & 1) term = -term;
        inner += term;
      }
      Real2 binom_inv = ldexp2(Real2(1.0) / ratio, int(-2 * n));  // 1/binom(2n,n)
      Real2 outer = Real2(2.0) / pow2i(np, variant == 1 ? 2 : 3) * binom_inv;
      if (variant == 2 && n % 2 == 0) outer = -outer;  // (-1)^{n-1}
      last_term = outer * inner;
      rhs += last_term;
      for (int p = k - 1; p >= 1; --p) zp[p] += zp[p - 1] / (np * np);
    }
    out.lhs = (variant == 1) ? (ldexp2(Real2(1.0), 1 - 2 * k) - Real2(1.0)) * zeta_em(2 * k)
                             : zeta_em(2 * k + 1);
  } else {
    // variants 3/4: n runs from 0, weight binom(2n,n)/16^n, t_n(2_p) running;
    // the denominators are (2n+1)-powers (the resolved index reading)
    std::vector<Real2> tp(k, Real2(0.0));
    tp[0] = Real2(1.0);
    Real2 ratio(1.0);  // binom(2n,n)/4^n
    for (long n = 0; n <= N; ++n) {
      if (n > 0) {
        ratio *= Real2(double(2 * n - 1)) / Real2(double(2 * n));
        Real2 om{double(2 * n - 1)};
        for (int p = k - 1; p >= 1; --p) tp[p] += tp[p - 1] / (om * om);
      }
      Real2 odd{double(2 * n + 1)};
      Real2 inner(0.0);
      for (int j = 1; j <= k; ++j) {
        Real2 term = (variant == 3 ? A(j) : B(j)) * tp[k - j] /
                     pow2i(odd, variant == 3 ? 2 * j - 1 : 2 * j);
        if ((k - j) & 1) term = -term;
        inner += term;
      }
      Real2 w = ldexp2(ratio, int(-2 * n));  // binom(2n,n)/16^n
      if (variant == 4 && (n & 1)) w = -w;
      last_term = w * inner;
      rhs += last_term;
    }
    if (variant == 3) {
      int s = 2 * k - 1;
      out.lhs = (s == 1) ? ldexp2(const_pi(), -2)
                         : ldexp2(hurwitz_zeta(s, Rational(1, 4)) - hurwitz_zeta(s, Rational(3, 4)),
                                  -2 * s);
    } else {
      out.lhs = (Real2(1.0) - ldexp2(Real2(1.0), -2 * k)) * zeta_em(2 * k);
    }
  }
  out.tail_est = fabs2(last_term);
  out.rhs = rhs;
  out.delta = fabs2(out.lhs - out.rhs);
  return out;
}

}  // namespace apery::oracle

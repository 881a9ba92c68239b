#pragma once

// Independent ground truth: direct summation of the series families with
// tail acceleration, exact multiple harmonic / t-harmonic sums, and the
// Leshchiner identity checks.

#include <vector>

#include "apery/eval_types.hpp"
#include "apery/rational.hpp"
#include "apery/series_spec.hpp"

namespace apery::oracle {

// exact multiple harmonic (star) sums zeta_n(s) / zeta*_n(s)
Rational mhs(const std::vector<int>& s, long n, bool star);
// exact multiple t-harmonic (star) sums over odd denominators 2k-1
Rational tsum(const std::vector<int>& s, long n, bool star);

Rational central_binom(long n);  // binom(2n, n)

// direct summation of the series described by the spec
EvalResult sum_series(const SeriesSpec& spec, const EvalConfig& cfg);

// zeta(n) by Euler-Maclaurin and zeta(bar n) by accelerated direct summation
Real2 zeta_em(int n);
Real2 alt_zeta_direct(int n);

struct LeshchinerResult {
  Real2 lhs;
  Real2 rhs;       // truncated sum plus tail estimate
  Real2 tail_est;
  Real2 delta;     // |lhs - rhs|
};

// variants 1..4 of the binomial zeta identities, truncated at N terms
LeshchinerResult leshchiner_check(int k, int variant, long N_terms);

}  // namespace apery::oracle

#pragma once

// Numeric engines: iterated-integral cascade (via quad), nested-series MPL
// evaluation, and the closed-form constant library.

#include <optional>
#include <vector>

#include "apery/eval_types.hpp"
#include "apery/quad.hpp"
#include "apery/words.hpp"

namespace apery {

// ---- omega-word convergence classification on [0, x] ----

enum class OmClass { CONVERGENT, DIV_LOWER, DIV_UPPER, DIV_BOTH };

struct OmAnalysis {
  OmClass cls = OmClass::CONVERGENT;
  // divergence degree at the upper endpoint in units of (1-t)^(-1/2):
  // 0 with log_upper set means a pure log divergence
  int upper_half_degree = 0;
  bool log_upper = false;
};

OmAnalysis classify_omega(const std::vector<Density>& letters, bool endpoint_is_one);

// value of the iterated integral of `letters` over [0, x]; throws on divergence
EvalResult eval_omega_word(const std::vector<Density>& letters, Real2 x, const EvalConfig& cfg);

// ---- x-words ----

enum class XClass { CONVERGENT, DIV_UPPER, DIV_LOWER, DIV_BOTH };

// single segment 0 -> z with exact cyclotomic endpoint
XClass classify_xword(const XWord& w, const CycloQ8& z);

EvalResult eval_xword(const XWord& w, const PathSpec& path, const EvalConfig& cfg);

// ---- multiple polylogarithms ----

struct MPLTerm {
  std::vector<int> s;
  std::vector<CycloQ8> eta;  // exact arguments; first argument is scale*eta[0]
  Real2 scale{1.0};          // real scale on the first argument (endpoint dependence)
};

// convergent x-word on 0->z (z real in (0,1]): list of (coefficient, term)
// такой that sum coeff * Li = integral; single-term for a well-formed word
MPLTerm word_to_mpl(const XWord& w, Real2 z);

// nested-series evaluation; boundary terms are computed by the Hoelder
// convolution at 1/2, which turns them into absolutely convergent series
// with geometric tail bounds
EvalResult mpl_series(const MPLTerm& term, const EvalConfig& cfg);

// plain polylog Li_s(z) for |z| < 1 by direct series
Complex2 polylog_series(int s, const Complex2& z);

// ---- constants ----

enum class ConstName {
  PI,
  LOG2,
  LOG_NU,
  ZETA3,
  CATALAN,
  LI2_NU_INV,
  LI3_NU_INV,
  LI3_INV_SQRT2,
  L3_CHI8,
  IM_LI3_HALF_1_PLUS_I,
};

EvalResult constant(ConstName name);
std::optional<ConstName> constant_by_name(const std::string& name);

// Hurwitz zeta(s, a) for integer s >= 2, rational 0 < a <= 1 (Euler-Maclaurin)
Real2 hurwitz_zeta(int s, const Rational& a);

// convenience values
Real2 const_pi();
Real2 const_log2();
Real2 const_log_nu();  // log(1 + sqrt 2)
Real2 const_sqrt(double x);

}  // namespace apery

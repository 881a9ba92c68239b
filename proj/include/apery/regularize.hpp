#pragma once

// Chen path splitting through 0, pole rescaling to [0, 1], and shuffle
// regularization with the formal variable T; specialization at T = 0 yields
// the regularized values that assemble endpoint-divergent path integrals.

#include <map>
#include <vector>

#include "apery/eval_types.hpp"
#include "apery/evaluator.hpp"
#include "apery/words.hpp"

namespace apery::reg {

// polynomial in T whose coefficients are combinations of convergent words
// on [0, 1]; the degree-0 coefficient is the regularized value
struct RegPoly {
  std::map<int, XLin> coef;

  bool zero() const { return coef.empty(); }
  int degree() const { return coef.empty() ? -1 : coef.rbegin()->first; }
  void add(int deg, const XWord& w, const CycloQ8& k);
  RegPoly& operator+=(const RegPoly& o);
  RegPoly scaled(const CycloQ8& k) const;
  friend RegPoly operator*(const RegPoly& a, const RegPoly& b);
  friend bool operator==(const RegPoly& a, const RegPoly& b) { return a.coef == b.coef; }
};

// unique decomposition of a possibly divergent word on [0, 1] as a
// T-polynomial with convergent coefficients (divergent boundary letters are
// peeled with the shuffle relation)
RegPoly shuffle_regularize(const XWord& w);

// linear extension over a combination of words
RegPoly shuffle_regularize(const XLin& lin);

// pole rescaling: word on 0 -> z becomes a word on 0 -> 1, poles alpha / z
XWord rescale_to_unit(const XWord& w, const CycloQ8& z);

// Chen decomposition of int_1^z w through 0:
// sum over cuts of sign * Reg(int_0^1 upper) * Reg(int_0^1 lower)
struct SplitTerm {
  CycloQ8 sign;
  XWord upper;  // first part, rescaled to [0, 1]
  XWord lower;  // second part, reversed onto [0, 1]
};
std::vector<SplitTerm> chen_split(const XWord& w, const CycloQ8& z);

// numeric values
EvalResult reg_value_T0(const RegPoly& p, const EvalConfig& cfg);

// assemble a combination of words on the path 1 -> mu via chen_split and
// regularization; throws if the divergent parts fail to cancel
EvalResult epsilon_split_eval(const std::vector<std::pair<CycloQ8, XWord>>& pieces,
                              const EvalConfig& cfg);

// single-word convenience: int_1^mu w
EvalResult value_1_to_mu(const XWord& w, const EvalConfig& cfg);

}  // namespace apery::reg

#pragma once

// Constructive iterated-integral representations of the Apery-type series:
// the Gamma-block construction for the all-even inverse-binomial case, the
// per-kernel expansion rules for both families, composition collapses, the
// hyperbolic-word route, and the endpoint-limit bookkeeping.

#include <optional>
#include <string>
#include <vector>

#include "apery/evaluator.hpp"
#include "apery/series_spec.hpp"
#include "apery/words.hpp"

namespace apery {

// prefactor = x^a (1-x^2)^(b/2) (1+x^2)^(c/2) evaluated at the endpoint
Real2 mono_eval_at(Mono m, const Real2& x);
std::string prefactor_name(Mono m);  // ONE / X / INV_X / X_OVER_SQRT / SQRT / CUSTOM rendering

struct IntegralComponent {
  Mono prefactor;  // function of the endpoint
  OmLin terms;     // plain-letter words with exact coefficients (scalars folded in)
};

struct IntegralExpr {
  XValue x;
  std::vector<IntegralComponent> comps;
  std::vector<std::string> notes;  // endpoint-limit drops and similar decisions

  EvalResult value(const EvalConfig& cfg) const;
  std::string to_string() const;
  bool empty() const { return comps.empty(); }
};

// ---- Thm-level constructions ----

// inverse-binomial series with all kernels 2n and per-index signs; the d/dx
// of the source identity is realized by stripping the first 1-form into the
// prefactor
IntegralExpr inverse_binomial_word(const std::vector<int>& s, const std::vector<int>& eta,
                                   long tail_n, const XValue& x);

// one expansion step of the mixed-parity recursions; composing the returned
// branches right-to-left over the indices reproduces the nested integrals
enum class TailKind { A_PLUS, A_MINUS, B_PLUS, B_MINUS };

struct ExpandBranch {
  CycloQ8 sign;
  Mono prefactor_fn;             // multiplies the outer pending form (j >= 2) or sets
                                 // the numeric prefactor (outermost step)
  std::vector<OmLetter> block;   // emitted letters, possibly with added constants
  Density new_pending;           // 1-form carrying the next tail
  TailKind next;
};

std::vector<ExpandBranch> binomial_expand_step(TailKind kind, Kernel l, int s);

// collapse outer o inner_kernel when the inner kernel has an algebraic
// antiderivative vanishing at 0 (the primitive table); nullopt otherwise
std::optional<Density> resolve_composition(const Density& outer, const Density& inner_kernel);

// full builder: folds the expansion rules (or the Gamma-block construction)
// across all indices of the spec
IntegralExpr build_series_integral(const SeriesSpec& spec);

// thrown when a step would generate the omega_6 form outside the supported
// special case
struct Omega6Error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---- hyperbolic route ----

enum class HypKind { GTILDE, HTILDE, KTILDE };
enum class HypLetterKind { DT, TH, CTH, CSCH, CSCH2T2, SH };

struct HypLetter {
  HypLetterKind kind;
  Rational constant;  // extended-letter constant, usually 0

  HypLetter(HypLetterKind k) : kind(k) {}
  HypLetter(HypLetterKind k, Rational c) : kind(k), constant(std::move(c)) {}
};

using HypWord = std::vector<HypLetter>;

struct HypExpr {
  std::vector<std::pair<Rational, HypWord>> terms;
};

// the word blocks of the hyperbolic theorems, composed over the composition;
// tail letter b_n(i sh t) dt included
HypExpr hyperbolic_word(HypKind kind, const std::vector<int>& s, long tail_n = 0);

// letterwise substitution u = sh t (dt -> w[-1], th -> w[-2], cth -> w[0],
// csch -> w[-3], 2csch2t -> w[-20], sh -> w[-5]); constants preserved
OmLetter hyp_letter_to_omega(const HypLetter& l);
OmLin hyp_to_omega(const HypWord& w);

// series value at argument i*sh(y) via the hyperbolic word, with the
// theorem's sign and the d/dy stripped into a prefactor
EvalResult eval_hyperbolic_series(HypKind kind, const std::vector<int>& s, Real2 y, long tail_n,
                                  const EvalConfig& cfg);

}  // namespace apery

#pragma once

// Iterated-integral cascade quadrature.
//
// An iterated integral of word (L1, ..., Lk) is the solution of the
// triangular linear ODE system H_k' = Lk, H_j' = Lj * H_{j+1}; the value is
// H_1(endpoint).  Panels carry 16 Gauss-Legendre nodes and a spectral
// integration matrix, both to full double-double precision; endpoint
// neighborhoods use the substitution t = endpoint - e^{-u} * direction so
// integrable algebraic/log endpoint singularities become smooth decaying
// tails.  Error estimates come from a global panel-doubling rerun.

#include <array>
#include <functional>

#include "apery/density.hpp"
#include "apery/eval_types.hpp"
#include "apery/words.hpp"

namespace apery {

struct GLData {
  std::array<Real2, 16> x;                  // nodes ascending on [-1,1]
  std::array<Real2, 16> w;                  // weights
  std::array<std::array<Real2, 16>, 16> S;  // S[i][m] = int_{-1}^{x_i} l_m
  std::array<Real2, 16> full;               // int_{-1}^{1} l_m (= w)
  static const GLData& get();
};

// ---- real cascade over Density letters on [x0, x1] in [0, 1] ----

// weight multiplying the innermost letter, e.g. a tail factor b_m(t); null = 1
using RealWeightFn = std::function<Real2(const TPoint&)>;

EvalResult integrate_omega_word(const std::vector<Density>& letters, Real2 x0, Real2 x1,
                                const EvalConfig& cfg, const RealWeightFn& tail_weight = nullptr);

// ---- complex cascade over X letters along straight segments or the unit arc ----

struct XEvalPoint {
  Complex2 t;
  Complex2 from_start;  // t - segment start, exact near the start
  Complex2 to_end;      // segment end - t, exact near the end
};

Complex2 xletter_density(const XLetter& l, const XEvalPoint& p);

// iterated integral of w along the straight segment path p0 -> p1 -> ... (Chen-composed)
EvalResult integrate_xword_path(const XWord& w, const PathSpec& path, const EvalConfig& cfg);

// iterated integral of w along the unit-circle arc from angle th0 to th1
EvalResult integrate_xword_arc(const XWord& w, Real2 th0, Real2 th1, const EvalConfig& cfg);

}  // namespace apery

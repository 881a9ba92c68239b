#pragma once

#include <string>
#include <vector>

#include "apery/dd.hpp"

namespace apery {

struct EvalConfig {
  double target_abs_error = 1e-12;
  int working_precision = 106;  // bits; double-double backend
  long max_steps = 200000;
  double singular_margin = 1e-8;

  EvalConfig() = default;
  static EvalConfig tight(double tol) {
    EvalConfig c;
    c.target_abs_error = tol;
    return c;
  }
};

enum class Engine { ODE_CASCADE, MPL_SERIES, CONSTANT, ORACLE_SUM };

inline const char* engine_name(Engine e) {
  switch (e) {
    case Engine::ODE_CASCADE: return "ode_cascade";
    case Engine::MPL_SERIES: return "mpl_series";
    case Engine::CONSTANT: return "constant";
    default: return "oracle_sum";
  }
}

struct EvalResult {
  Complex2 value;
  Real2 abs_error_estimate;
  Engine engine = Engine::ODE_CASCADE;

  Real2 real() const { return value.re; }
};

// straight-segment path; integrals over the concatenation compose by Chen's rule
struct PathSpec {
  std::vector<std::pair<Complex2, Complex2>> segments;

  static PathSpec line(Complex2 from, Complex2 to) {
    PathSpec p;
    p.segments.push_back({from, to});
    return p;
  }
};

}  // namespace apery

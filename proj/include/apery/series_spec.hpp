#pragma once

// Full description of an Apery-type series: family, composition, signs,
// per-index denominator kernels, per-boundary strictness, argument, tail.

#include <string>
#include <vector>

#include "apery/rational.hpp"

namespace apery {

enum class Family { INVERSE_BINOMIAL_B, BINOMIAL_A };
enum class Kernel { K2N, K2NP1, K2NM1 };

const char* kernel_name(Kernel k);

// evaluation point with an exact textual description
struct XValue {
  Real2 value{1.0};
  std::string desc = "1";

  static XValue one() { return XValue{Real2(1.0), "1"}; }
  static XValue sqrt_j_over_2(int j);
  static XValue parse(const std::string& text);

  bool is_one() const { return (Real2(1.0) - value).hi < 1e-14 && value.hi <= 1.0 + 1e-14; }
};

struct SeriesSpec {
  Family family = Family::INVERSE_BINOMIAL_B;
  std::vector<int> s;
  std::vector<int> eta;         // +-1 per index
  std::vector<Kernel> kernels;  // per index
  // strict[j]: the boundary below index j is ">" (true) or ">=" (false);
  // strict[d-1] compares the innermost index against tail_n
  std::vector<bool> strict;
  XValue x;
  long tail_n = 0;

  int depth() const { return int(s.size()); }
  int weight() const {
    int w = 0;
    for (int v : s) w += v;
    return w;
  }

  static bool natural_strict(Kernel k) { return k != Kernel::K2NP1; }
  bool all_natural() const;
  bool all_kernels(Kernel k) const;
  bool global_sign_only() const;  // eta = (1...) or (-1, 1, ..., 1)

  // validity of the defining sum itself (not of any representation)
  void validate() const;  // throws std::invalid_argument

  std::string to_string() const;  // bar notation, e.g. "sigma_b(2~,1; 2n,2n; x=1)"
};

// rewrite a spec as a rational combination of specs whose per-boundary
// strictness matches each kernel's natural one (diagonal terms split off by
// partial fractions of the merged denominators)
std::vector<std::pair<Rational, SeriesSpec>> normalize_strictness(const SeriesSpec& spec);

}  // namespace apery

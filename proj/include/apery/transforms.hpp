#pragma once

// The two changes of variables as exact letter-rewrite tables from the
// omega alphabet into x-letter combinations with cyclotomic coefficients,
// plus the endpoint maps.

#include <map>

#include "apery/density.hpp"
#include "apery/words.hpp"

namespace apery {

enum class TableKind { LEVEL8, CAYLEY };

struct RewriteTable {
  TableKind name;
  std::map<Om, XLin> images;

  // t -> sqrt(2) t / sqrt(1 + t^4), images at the four primitive 8th roots
  static const RewriteTable& level8();
  // t -> i (1 - t^2) / (1 + t^2), path from 1 to lambda(x)
  static const RewriteTable& cayley();

  // decompose a letter into table letters; throws with the offending letter
  XLin image_of(const Density& letter) const;
};

// multilinear image of a word of (combinations of) table letters
XLin rewrite_word(const RewriteTable& table, const OmWord& w);

// the unique t in [0, 1] with sqrt(2) t / sqrt(1 + t^4) = x
Real2 endpoint_level8(Real2 x);
// lambda(x) = sqrt((1 + ix)/(1 - ix)), principal branch, |lambda| = 1
Complex2 endpoint_cayley(Real2 x);

}  // namespace apery

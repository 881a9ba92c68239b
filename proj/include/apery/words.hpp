#pragma once

// Words over the two integrand alphabets and the shuffle algebra.
//
// Omega-side letters are Density 1-forms, optionally extended by an added
// constant ("f(t)dt + F" letters of the recursive integral definition).
// X-side letters are dt/t and dt/(xi - t) with exact cyclotomic poles.
// The two alphabets are distinct types; a word never mixes them.

#include <map>
#include <string>
#include <vector>

#include "apery/cyclo.hpp"
#include "apery/density.hpp"

namespace apery {

struct OmLetter {
  Density form;
  CycloQ8 constant;  // zero for a plain letter

  OmLetter() = default;
  OmLetter(Density f) : form(std::move(f)) {}
  OmLetter(Density f, CycloQ8 c) : form(std::move(f)), constant(std::move(c)) {}
  static OmLetter named(Om tag) { return OmLetter(Density::named(tag)); }

  bool plain() const { return constant.is_zero(); }
  friend bool operator==(const OmLetter& x, const OmLetter& y) {
    return x.form == y.form && x.constant == y.constant;
  }
  friend bool operator<(const OmLetter& x, const OmLetter& y) {
    if (!(x.form == y.form)) return x.form < y.form;
    return x.constant < y.constant;
  }
};

using OmWord = std::vector<OmLetter>;

struct XLetter {
  bool is_a = true;  // dt/t
  CycloQ8 pole;      // dt/(pole - t) when !is_a

  static XLetter a() { return XLetter{}; }
  static XLetter at(CycloQ8 xi) { return XLetter{false, std::move(xi)}; }
  static XLetter at_mu_pow(int e) { return at(CycloQ8::mu_pow(e)); }

  friend bool operator==(const XLetter& x, const XLetter& y) {
    if (x.is_a != y.is_a) return false;
    return x.is_a || x.pole == y.pole;
  }
  friend bool operator<(const XLetter& x, const XLetter& y) {
    if (x.is_a != y.is_a) return y.is_a < x.is_a;
    if (x.is_a) return false;
    return x.pole < y.pole;
  }
  std::string to_string() const;
};

using XWord = std::vector<XLetter>;

std::string xword_to_string(const XWord& w);
std::string omword_to_string(const OmWord& w);

// finitely supported Word -> CycloQ8 maps; no stored zero coefficients
template <typename W>
class LinComb {
 public:
  using Map = std::map<W, CycloQ8>;

  LinComb() = default;
  static LinComb single(W w, CycloQ8 k = CycloQ8(1)) {
    LinComb lc;
    if (!k.is_zero()) lc.m_[std::move(w)] = std::move(k);
    return lc;
  }

  const Map& items() const { return m_; }
  bool empty() const { return m_.empty(); }
  std::size_t size() const { return m_.size(); }

  void add(const W& w, const CycloQ8& k) {
    if (k.is_zero()) return;
    auto it = m_.find(w);
    if (it == m_.end()) {
      m_[w] = k;
    } else {
      it->second += k;
      if (it->second.is_zero()) m_.erase(it);
    }
  }
  LinComb& operator+=(const LinComb& o) {
    for (auto& [w, k] : o.m_) add(w, k);
    return *this;
  }
  friend LinComb operator+(LinComb x, const LinComb& y) { return x += y; }
  LinComb scaled(const CycloQ8& k) const {
    LinComb r;
    if (k.is_zero()) return r;
    for (auto& [w, c] : m_) r.m_[w] = c * k;
    return r;
  }
  LinComb operator-() const { return scaled(CycloQ8(-1)); }
  friend LinComb operator-(LinComb x, const LinComb& y) { return x += y.scaled(CycloQ8(-1)); }

  friend bool operator==(const LinComb& x, const LinComb& y) { return x.m_ == y.m_; }

 private:
  Map m_;
};

using OmLin = LinComb<OmWord>;
using XLin = LinComb<XWord>;

// sum over all interleavings preserving the internal order of both words
template <typename W>
LinComb<W> shuffle(const W& w1, const W& w2);

// path reversal: integral over p->q equals sign times integral over q->p
// of the reversed word, sign = (-1)^len
template <typename W>
std::pair<int, W> reverse_path(const W& w) {
  W r(w.rbegin(), w.rend());
  return {(w.size() % 2 == 0) ? 1 : -1, r};
}

// expand extended-integral letters (f dt + F) into plain-letter words;
// the last letter must be plain
OmLin expand_mixed(const OmWord& w);

extern template LinComb<OmWord> shuffle(const OmWord&, const OmWord&);
extern template LinComb<XWord> shuffle(const XWord&, const XWord&);

}  // namespace apery

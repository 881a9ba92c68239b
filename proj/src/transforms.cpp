#include "apery/transforms.hpp"

#include <stdexcept>

namespace apery {

namespace {

XLin x1(int mu_pow_e, CycloQ8 k = CycloQ8(1)) {
  return XLin::single({XLetter::at_mu_pow(mu_pow_e)}, std::move(k));
}

XLin xa(CycloQ8 k = CycloQ8(1)) { return XLin::single({XLetter::a()}, std::move(k)); }

RewriteTable build_level8() {
  RewriteTable t;
  t.name = TableKind::LEVEL8;
  // mu_j = exp((2j-1) pi i / 4) = mu^(2j-1), j = 1..4
  const int mj[4] = {1, 3, 5, 7};
  Rational half(1, 2), quarter(1, 4);
  CycloQ8 s2 = CycloQ8::sqrt2();
  XLin w0 = xa();
  XLin w1, wm1, w2, wm2, w4;
  for (int j = 0; j < 4; ++j) {
    int e = mj[j];
    CycloQ8 mu_j = CycloQ8::mu_pow(e);
    CycloQ8 mu_j3 = CycloQ8::mu_pow(3 * e);
    w0 += x1(e, CycloQ8(Rational(1, 2)));
    w1 += x1(e, (mu_j + mu_j3) * s2.scaled_by(quarter));
    wm1 += x1(e, (mu_j - mu_j3) * s2.scaled_by(quarter));
    w2 += x1(e, CycloQ8(Rational(-1, 2)));
    wm2 += x1(e, CycloQ8(Rational(1, 2)));
    w4 += x1(e, CycloQ8::mu_pow(2 * e).scaled_by(half));
  }
  w2 += x1(0);
  w2 += x1(4);
  wm2 += x1(2, CycloQ8(-1));
  wm2 += x1(6, CycloQ8(-1));
  t.images[Om::W0] = std::move(w0);
  t.images[Om::W1] = std::move(w1);
  t.images[Om::Wm1] = std::move(wm1);
  t.images[Om::W2] = std::move(w2);
  t.images[Om::Wm2] = std::move(wm2);
  t.images[Om::W4] = std::move(w4);
  return t;
}

RewriteTable build_cayley() {
  RewriteTable t;
  t.name = TableKind::CAYLEY;
  // named combinations: y = x_{-i} + x_i - x_{-1} - x_1, z = -a - x_{-i} - x_i
  XLin y = x1(6) + x1(2) + x1(4, CycloQ8(-1)) + x1(0, CycloQ8(-1));
  XLin minus_z = xa() + x1(6) + x1(2);
  XLin d_i_mi = x1(2) + x1(6, CycloQ8(-1));
  XLin d_m1_1 = x1(4) + x1(0, CycloQ8(-1));
  XLin y_plus_z = xa(CycloQ8(-1)) + x1(4, CycloQ8(-1)) + x1(0, CycloQ8(-1));
  t.images[Om::W0] = std::move(y);
  t.images[Om::Wm1] = std::move(d_i_mi);
  t.images[Om::Wm2] = std::move(minus_z);
  t.images[Om::Wm3] = std::move(d_m1_1);
  t.images[Om::Wm20] = std::move(y_plus_z);
  return t;
}

}  // namespace

const RewriteTable& RewriteTable::level8() {
  static const RewriteTable t = build_level8();
  return t;
}

const RewriteTable& RewriteTable::cayley() {
  static const RewriteTable t = build_cayley();
  return t;
}

XLin RewriteTable::image_of(const Density& letter) const {
  XLin out;
  for (auto& [k, m] : letter.terms()) {
    bool found = false;
    for (auto& [tag, image] : images) {
      auto& nt = Density::named(tag).terms();
      if (nt.size() == 1 && nt[0].second == m) {
        out += image.scaled(k);
        found = true;
        break;
      }
    }
    if (!found) {
      throw std::domain_error("rewrite: letter outside table domain: " + letter.to_string());
    }
  }
  return out;
}

XLin rewrite_word(const RewriteTable& table, const OmWord& w) {
  XLin acc = XLin::single(XWord{});
  for (const auto& l : w) {
    if (!l.plain()) throw std::domain_error("rewrite: mixed letters must be expanded first");
    XLin img = table.image_of(l.form);
    XLin next;
    for (auto& [prefix, k1] : acc.items()) {
      for (auto& [letter, k2] : img.items()) {
        XWord word = prefix;
        word.push_back(letter[0]);
        next.add(word, k1 * k2);
      }
    }
    acc = std::move(next);
  }
  return acc;
}

Real2 endpoint_level8(Real2 x) {
  if (x.hi < 0.0 || x.hi > 1.0 + 1e-15) {
    throw std::domain_error("endpoint_level8: x outside [0, 1]");
  }
  if (x.is_zero()) return Real2(0.0);
  // t^2 = x^2 / (1 + sqrt(1 - x^4)), stable across the whole range
  Real2 x2 = x * x;
  Real2 inner = Real2(1.0) - x2 * x2;
  if (inner.hi < 0.0) inner = Real2(0.0);
  return x / sqrt2(Real2(1.0) + sqrt2(inner));
}

Complex2 endpoint_cayley(Real2 x) {
  Complex2 ix(Real2(0.0), x);
  Complex2 one(Real2(1.0));
  return sqrt2((one + ix) / (one - ix));
}

}  // namespace apery

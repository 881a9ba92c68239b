#include "apery/rational.hpp"

#include <stdexcept>

namespace apery {

void Rational::normalize() {
  if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
  if (num_.is_zero()) {
    den_ = BigInt(1);
    return;
  }
  if (den_.is_negative()) {
    num_ = -num_;
    den_ = -den_;
  }
  BigInt g = BigInt::gcd(num_, den_);
  if (!(g == BigInt(1))) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("Rational: division by zero");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

Rational Rational::inv() const {
  if (is_zero()) throw std::domain_error("Rational: inverse of zero");
  return Rational(den_, num_);
}

static Real2 bigint_to_real2(const BigInt& v) {
  // exact limb accumulation; rounding only at double-double precision
  if (v.fits_int64()) return Real2::from_int64(v.to_int64());
  BigInt t = v.abs();
  Real2 r(0.0);
  Real2 base = Real2::from_int64(std::int64_t(1) << 32);
  std::vector<std::uint32_t> limbs;
  BigInt b32(std::int64_t(1) << 32), q, rem;
  while (!t.is_zero()) {
    BigInt::divmod(t, b32, q, rem);
    limbs.push_back(std::uint32_t(rem.to_int64()));
    t = q;
  }
  for (std::size_t i = limbs.size(); i-- > 0;) r = r * base + Real2(double(limbs[i]));
  return v.is_negative() ? -r : r;
}

Real2 Rational::to_real2() const { return bigint_to_real2(num_) / bigint_to_real2(den_); }

std::string Rational::to_string() const {
  if (is_integer()) return num_.to_string();
  return num_.to_string() + "/" + den_.to_string();
}

}  // namespace apery

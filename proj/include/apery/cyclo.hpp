#pragma once

// Exact arithmetic in the 8th cyclotomic field Q(mu), mu = exp(i*pi/4),
// over the basis {1, mu, mu^2, mu^3} with mu^4 = -1.
// Houses i = mu^2 and sqrt(2) = mu - mu^3.

#include <array>
#include <string>

#include "apery/dd.hpp"
#include "apery/rational.hpp"

namespace apery {

class CycloQ8 {
 public:
  CycloQ8() = default;
  CycloQ8(std::int64_t n) { c_[0] = Rational(n); }
  explicit CycloQ8(Rational r) { c_[0] = std::move(r); }
  CycloQ8(Rational a, Rational b, Rational c, Rational d)
      : c_{std::move(a), std::move(b), std::move(c), std::move(d)} {}

  static CycloQ8 mu() { return CycloQ8(Rational(0), Rational(1), Rational(0), Rational(0)); }
  static CycloQ8 i() { return CycloQ8(Rational(0), Rational(0), Rational(1), Rational(0)); }
  static CycloQ8 sqrt2() { return CycloQ8(Rational(0), Rational(1), Rational(0), Rational(-1)); }
  static CycloQ8 inv_sqrt2() {
    return CycloQ8(Rational(0), Rational(1, 2), Rational(0), Rational(-1, 2));
  }
  static CycloQ8 nu() {  // 1 + sqrt(2)
    return CycloQ8(Rational(1), Rational(1), Rational(0), Rational(-1));
  }
  // mu^e for any integer e (mu^8 = 1)
  static CycloQ8 mu_pow(int e);

  const Rational& coeff(int k) const { return c_[k]; }

  bool is_zero() const;
  bool is_rational() const { return c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero(); }
  bool is_real() const { return c_[2].is_zero() && c_[1] == -c_[3]; }

  friend CycloQ8 operator+(const CycloQ8& a, const CycloQ8& b);
  friend CycloQ8 operator-(const CycloQ8& a, const CycloQ8& b);
  friend CycloQ8 operator*(const CycloQ8& a, const CycloQ8& b);
  friend CycloQ8 operator/(const CycloQ8& a, const CycloQ8& b) { return a * b.inv(); }
  CycloQ8 operator-() const;
  CycloQ8& operator+=(const CycloQ8& b) { return *this = *this + b; }
  CycloQ8& operator-=(const CycloQ8& b) { return *this = *this - b; }
  CycloQ8& operator*=(const CycloQ8& b) { return *this = *this * b; }
  CycloQ8& operator/=(const CycloQ8& b) { return *this = *this / b; }

  friend bool operator==(const CycloQ8& a, const CycloQ8& b) { return a.c_ == b.c_; }
  friend bool operator!=(const CycloQ8& a, const CycloQ8& b) { return !(a == b); }
  // arbitrary total order for use as map key
  friend bool operator<(const CycloQ8& a, const CycloQ8& b);

  CycloQ8 scaled_by(const Rational& r) const {
    return CycloQ8(c_[0] * r, c_[1] * r, c_[2] * r, c_[3] * r);
  }

  CycloQ8 conj() const;          // complex conjugation, mu -> -mu^3
  CycloQ8 galois(int k) const;   // mu -> mu^k, k odd
  CycloQ8 inv() const;           // via the degree-4 norm
  Rational norm() const;         // product of the four Galois conjugates

  Complex2 embed() const;  // numeric value at mu = exp(i*pi/4)
  std::string to_string() const;

 private:
  std::array<Rational, 4> c_{};
};

}  // namespace apery

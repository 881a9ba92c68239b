#pragma once

// Double-double arithmetic (~106 bits / ~31 decimal digits).
// Classic error-free transformations (Dekker/Knuth), accurate add/mul/div
// as in the QD library family.

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace apery {

struct Real2 {
  double hi = 0.0;
  double lo = 0.0;

  constexpr Real2() = default;
  constexpr Real2(double h) : hi(h), lo(0.0) {}
  constexpr Real2(double h, double l) : hi(h), lo(l) {}

  static Real2 from_int64(std::int64_t v);
  static Real2 from_string(const std::string& s);

  double to_double() const { return hi; }
  bool is_zero() const { return hi == 0.0 && lo == 0.0; }
  bool is_negative() const { return hi < 0.0 || (hi == 0.0 && lo < 0.0); }
  bool is_finite() const { return std::isfinite(hi) && std::isfinite(lo); }

  std::string to_string(int digits = 32) const;
};

namespace dd_detail {
inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}
inline void quick_two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  e = b - (s - a);
}
inline void two_prod(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}
}  // namespace dd_detail

inline Real2 operator+(const Real2& a, const Real2& b) {
  using namespace dd_detail;
  double s1, s2, t1, t2;
  two_sum(a.hi, b.hi, s1, s2);
  two_sum(a.lo, b.lo, t1, t2);
  s2 += t1;
  quick_two_sum(s1, s2, s1, s2);
  s2 += t2;
  quick_two_sum(s1, s2, s1, s2);
  return {s1, s2};
}

inline Real2 operator-(const Real2& a) { return {-a.hi, -a.lo}; }
inline Real2 operator-(const Real2& a, const Real2& b) { return a + (-b); }

inline Real2 operator*(const Real2& a, const Real2& b) {
  using namespace dd_detail;
  double p1, p2;
  two_prod(a.hi, b.hi, p1, p2);
  p2 += a.hi * b.lo + a.lo * b.hi;
  quick_two_sum(p1, p2, p1, p2);
  return {p1, p2};
}

inline Real2 operator/(const Real2& a, const Real2& b) {
  using namespace dd_detail;
  double q1 = a.hi / b.hi;
  Real2 r = a - Real2(q1) * b;
  double q2 = r.hi / b.hi;
  r = r - Real2(q2) * b;
  double q3 = r.hi / b.hi;
  double s, e;
  quick_two_sum(q1, q2, s, e);
  Real2 q(s, e);
  return q + Real2(q3);
}

inline Real2& operator+=(Real2& a, const Real2& b) { return a = a + b; }
inline Real2& operator-=(Real2& a, const Real2& b) { return a = a - b; }
inline Real2& operator*=(Real2& a, const Real2& b) { return a = a * b; }
inline Real2& operator/=(Real2& a, const Real2& b) { return a = a / b; }

inline bool operator==(const Real2& a, const Real2& b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(const Real2& a, const Real2& b) { return !(a == b); }
inline bool operator<(const Real2& a, const Real2& b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const Real2& a, const Real2& b) { return b < a; }
inline bool operator<=(const Real2& a, const Real2& b) { return !(b < a); }
inline bool operator>=(const Real2& a, const Real2& b) { return !(a < b); }

inline Real2 fabs2(const Real2& a) { return a.is_negative() ? -a : a; }

Real2 sqrt2(const Real2& a);
Real2 exp2r(const Real2& a);
Real2 log2r(const Real2& a);
Real2 sin2r(const Real2& a);
Real2 cos2r(const Real2& a);
Real2 pow2i(const Real2& a, long n);
Real2 ldexp2(const Real2& a, int k);

// pi and log(2) to full double-double precision
Real2 dd_pi();
Real2 dd_ln2();

std::ostream& operator<<(std::ostream& os, const Real2& x);

struct Complex2 {
  Real2 re, im;
  Complex2() = default;
  Complex2(Real2 r) : re(r) {}
  Complex2(double r) : re(r) {}
  Complex2(Real2 r, Real2 i) : re(r), im(i) {}

  bool is_finite() const { return re.is_finite() && im.is_finite(); }
  std::string to_string(int digits = 32) const;
};

inline Complex2 operator+(const Complex2& a, const Complex2& b) { return {a.re + b.re, a.im + b.im}; }
inline Complex2 operator-(const Complex2& a, const Complex2& b) { return {a.re - b.re, a.im - b.im}; }
inline Complex2 operator-(const Complex2& a) { return {-a.re, -a.im}; }
inline Complex2 operator*(const Complex2& a, const Complex2& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Complex2 operator/(const Complex2& a, const Complex2& b) {
  Real2 d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline Complex2& operator+=(Complex2& a, const Complex2& b) { return a = a + b; }
inline Complex2& operator-=(Complex2& a, const Complex2& b) { return a = a - b; }
inline Complex2& operator*=(Complex2& a, const Complex2& b) { return a = a * b; }
inline Complex2& operator/=(Complex2& a, const Complex2& b) { return a = a / b; }
inline bool operator==(const Complex2& a, const Complex2& b) { return a.re == b.re && a.im == b.im; }

inline Real2 abs2(const Complex2& a) { return sqrt2(a.re * a.re + a.im * a.im); }

Complex2 sqrt2(const Complex2& a);
Complex2 log2c(const Complex2& a);

// deterministic test/sampling rng
struct SplitMix64 {
  std::uint64_t s;
  explicit SplitMix64(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }
  std::int64_t range(std::int64_t lo, std::int64_t hi) {  // inclusive
    return lo + std::int64_t(next() % std::uint64_t(hi - lo + 1));
  }
};

}  // namespace apery

#include "apery/dd.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace apery {

Real2 dd_pi() { return {3.141592653589793116e+00, 1.224646799147353207e-16}; }
Real2 dd_ln2() { return {6.931471805599452862e-01, 2.319046813846299558e-17}; }

Real2 Real2::from_int64(std::int64_t v) {
  // split into two 32-bit halves so each part is exact
  double high = double(v >> 32) * 4294967296.0;
  double low = double(v & 0xffffffffLL);
  using namespace dd_detail;
  double s, e;
  two_sum(high, low, s, e);
  return {s, e};
}

Real2 ldexp2(const Real2& a, int k) { return {std::ldexp(a.hi, k), std::ldexp(a.lo, k)}; }

Real2 sqrt2(const Real2& a) {
  if (a.is_zero()) return Real2(0.0);
  if (a.hi < 0.0) throw std::domain_error("sqrt2: negative argument");
  double x = 1.0 / std::sqrt(a.hi);
  double ax = a.hi * x;
  Real2 r = a - Real2(ax) * Real2(ax);
  return Real2(ax) + r * Real2(x * 0.5);
}

Real2 pow2i(const Real2& a, long n) {
  if (n == 0) return Real2(1.0);
  bool inv = n < 0;
  unsigned long m = inv ? -(unsigned long)n : (unsigned long)n;
  Real2 base = a, acc(1.0);
  while (m) {
    if (m & 1) acc *= base;
    base *= base;
    m >>= 1;
  }
  return inv ? Real2(1.0) / acc : acc;
}

Real2 exp2r(const Real2& a) {
  if (a.hi > 709.0) return Real2(std::numeric_limits<double>::infinity());
  if (a.hi < -709.0) return Real2(0.0);
  double m = std::nearbyint(a.hi / dd_ln2().hi);
  Real2 r = ldexp2(a - dd_ln2() * Real2(m), -9);
  // s = exp(r) - 1 by Taylor, then unfold the 2^9 scaling via s <- s(s+2)
  Real2 s = r, term = r;
  for (int k = 2; k <= 12; ++k) {
    term = term * r / Real2(double(k));
    s += term;
    if (std::fabs(term.hi) < 1e-40 * std::fabs(s.hi)) break;
  }
  for (int i = 0; i < 9; ++i) s = s * (s + Real2(2.0));
  return ldexp2(s + Real2(1.0), int(m));
}

Real2 log2r(const Real2& a) {
  if (a.hi <= 0.0) throw std::domain_error("log2r: non-positive argument");
  Real2 y(std::log(a.hi));
  for (int i = 0; i < 2; ++i) y = y + a * exp2r(-y) - Real2(1.0);
  return y;
}

static Real2 sin_taylor(const Real2& r) {
  Real2 s = r, term = r, r2 = r * r;
  for (int k = 1; k <= 16; ++k) {
    term = term * r2 / Real2(double(2 * k) * double(2 * k + 1));
    s += (k & 1) ? -term : term;
    if (std::fabs(term.hi) < 1e-40) break;
  }
  return s;
}

static Real2 cos_taylor(const Real2& r) {
  Real2 s(1.0), term(1.0), r2 = r * r;
  for (int k = 1; k <= 16; ++k) {
    term = term * r2 / Real2(double(2 * k - 1) * double(2 * k));
    s += (k & 1) ? -term : term;
    if (std::fabs(term.hi) < 1e-40) break;
  }
  return s;
}

Real2 sin2r(const Real2& a) {
  Real2 half_pi = ldexp2(dd_pi(), -1);
  double j = std::nearbyint(a.hi / half_pi.hi);
  Real2 r = a - half_pi * Real2(j);
  long q = ((long)j) & 3;
  if (q < 0) q += 4;
  switch (q) {
    case 0: return sin_taylor(r);
    case 1: return cos_taylor(r);
    case 2: return -sin_taylor(r);
    default: return -cos_taylor(r);
  }
}

Real2 cos2r(const Real2& a) {
  Real2 half_pi = ldexp2(dd_pi(), -1);
  double j = std::nearbyint(a.hi / half_pi.hi);
  Real2 r = a - half_pi * Real2(j);
  long q = ((long)j) & 3;
  if (q < 0) q += 4;
  switch (q) {
    case 0: return cos_taylor(r);
    case 1: return -sin_taylor(r);
    case 2: return -cos_taylor(r);
    default: return sin_taylor(r);
  }
}

Real2 Real2::from_string(const std::string& str) {
  const char* p = str.c_str();
  bool neg = false;
  if (*p == '+' || *p == '-') neg = (*p++ == '-');
  Real2 v(0.0);
  int frac_digits = 0;
  bool seen_dot = false;
  for (; *p; ++p) {
    if (*p == '.') {
      seen_dot = true;
      continue;
    }
    if (*p == 'e' || *p == 'E') break;
    if (!std::isdigit((unsigned char)*p)) throw std::invalid_argument("Real2::from_string: " + str);
    v = v * Real2(10.0) + Real2(double(*p - '0'));
    if (seen_dot) ++frac_digits;
  }
  long expo = 0;
  if (*p == 'e' || *p == 'E') expo = std::strtol(p + 1, nullptr, 10);
  expo -= frac_digits;
  if (expo > 0) v *= pow2i(Real2(10.0), expo);
  if (expo < 0) v /= pow2i(Real2(10.0), -expo);
  return neg ? -v : v;
}

std::string Real2::to_string(int digits) const {
  if (!is_finite()) return "nan";
  if (is_zero()) return "0";
  Real2 x = *this;
  std::string out;
  if (x.is_negative()) {
    out += '-';
    x = -x;
  }
  int e10 = int(std::floor(std::log10(x.hi)));
  x = x / pow2i(Real2(10.0), e10);
  if (x.hi >= 10.0) {
    x = x / Real2(10.0);
    ++e10;
  }
  if (x.hi < 1.0) {
    x = x * Real2(10.0);
    --e10;
  }
  for (int i = 0; i < digits; ++i) {
    int d = int(std::floor(x.hi));
    if (d < 0) d = 0;
    if (d > 9) d = 9;
    out += char('0' + d);
    if (i == 0) out += '.';
    x = (x - Real2(double(d))) * Real2(10.0);
  }
  out += "e" + std::to_string(e10);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Real2& x) { return os << x.to_string(); }

std::string Complex2::to_string(int digits) const {
  return re.to_string(digits) + (im.is_negative() ? " - " : " + ") + fabs2(im).to_string(digits) + "*i";
}

Complex2 sqrt2(const Complex2& a) {
  if (a.re.is_zero() && a.im.is_zero()) return Complex2(Real2(0.0));
  Real2 m = abs2(a);
  Real2 w = sqrt2(ldexp2(m + fabs2(a.re), -1));
  if (!a.re.is_negative()) {
    return {w, ldexp2(a.im / w, -1)};
  }
  Real2 v = ldexp2(fabs2(a.im) / w, -1);
  if (a.im.is_negative()) return {v, -w};
  return {v, w};
}

static Real2 atan_taylor(const Real2& t) {
  // |t| is made small by three half-angle steps before the series
  Real2 x = t;
  for (int i = 0; i < 3; ++i) x = x / (Real2(1.0) + sqrt2(Real2(1.0) + x * x));
  Real2 x2 = x * x, term = x, s = x;
  for (int k = 1; k <= 40; ++k) {
    term = term * x2;
    Real2 contrib = term / Real2(double(2 * k + 1));
    s += (k & 1) ? -contrib : contrib;
    if (std::fabs(contrib.hi) < 1e-40 * std::fabs(s.hi)) break;
  }
  return ldexp2(s, 3);
}

static Real2 atan2_dd(const Real2& y, const Real2& x) {
  if (x.is_zero() && y.is_zero()) return Real2(0.0);
  Real2 pi = dd_pi();
  if (x.is_zero()) return y.is_negative() ? -ldexp2(pi, -1) : ldexp2(pi, -1);
  if (y.is_zero()) return x.is_negative() ? pi : Real2(0.0);
  Real2 ax = fabs2(x), ay = fabs2(y);
  Real2 base = (ay <= ax) ? atan_taylor(ay / ax) : ldexp2(pi, -1) - atan_taylor(ax / ay);
  if (x.is_negative()) base = pi - base;
  return y.is_negative() ? -base : base;
}

Complex2 log2c(const Complex2& a) {
  Real2 m2 = a.re * a.re + a.im * a.im;
  return {ldexp2(log2r(m2), -1), atan2_dd(a.im, a.re)};
}

}  // namespace apery

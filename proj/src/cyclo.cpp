#include "apery/cyclo.hpp"

#include <stdexcept>

namespace apery {

CycloQ8 CycloQ8::mu_pow(int e) {
  e %= 8;
  if (e < 0) e += 8;
  CycloQ8 r;
  Rational one(1);
  if (e < 4) {
    r.c_[e] = one;
  } else {
    r.c_[e - 4] = -one;
  }
  return r;
}

bool CycloQ8::is_zero() const {
  return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero();
}

CycloQ8 operator+(const CycloQ8& a, const CycloQ8& b) {
  CycloQ8 r;
  for (int k = 0; k < 4; ++k) r.c_[k] = a.c_[k] + b.c_[k];
  return r;
}

CycloQ8 operator-(const CycloQ8& a, const CycloQ8& b) {
  CycloQ8 r;
  for (int k = 0; k < 4; ++k) r.c_[k] = a.c_[k] - b.c_[k];
  return r;
}

CycloQ8 CycloQ8::operator-() const {
  CycloQ8 r;
  for (int k = 0; k < 4; ++k) r.c_[k] = -c_[k];
  return r;
}

CycloQ8 operator*(const CycloQ8& a, const CycloQ8& b) {
  // convolution reduced by mu^4 = -1
  CycloQ8 r;
  for (int i = 0; i < 4; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (int j = 0; j < 4; ++j) {
      if (b.c_[j].is_zero()) continue;
      Rational p = a.c_[i] * b.c_[j];
      int k = i + j;
      if (k < 4) {
        r.c_[k] += p;
      } else {
        r.c_[k - 4] -= p;
      }
    }
  }
  return r;
}

bool operator<(const CycloQ8& a, const CycloQ8& b) {
  for (int k = 0; k < 4; ++k) {
    if (a.c_[k] != b.c_[k]) return a.c_[k] < b.c_[k];
  }
  return false;
}

CycloQ8 CycloQ8::galois(int k) const {
  k %= 8;
  if (k < 0) k += 8;
  if (k % 2 == 0) throw std::domain_error("CycloQ8::galois: k must be odd");
  CycloQ8 r;
  for (int j = 0; j < 4; ++j) {
    if (c_[j].is_zero()) continue;
    int e = (j * k) % 8;
    if (e < 4) {
      r.c_[e] += c_[j];
    } else {
      r.c_[e - 4] -= c_[j];
    }
  }
  return r;
}

CycloQ8 CycloQ8::conj() const { return galois(7); }

Rational CycloQ8::norm() const {
  CycloQ8 n = *this * galois(3) * galois(5) * galois(7);
  if (!n.is_rational()) throw std::logic_error("CycloQ8::norm: not rational");
  return n.c_[0];
}

CycloQ8 CycloQ8::inv() const {
  if (is_zero()) throw std::domain_error("CycloQ8: inverse of zero");
  CycloQ8 b = galois(3) * galois(5) * galois(7);
  CycloQ8 n = *this * b;
  Rational d = n.c_[0];
  CycloQ8 r;
  for (int k = 0; k < 4; ++k) r.c_[k] = b.c_[k] / d;
  return r;
}

Complex2 CycloQ8::embed() const {
  Real2 h = ldexp2(apery::sqrt2(Real2(2.0)), -1);  // sqrt(2)/2
  Complex2 mu(h, h), mu3(-h, h);
  Complex2 v(c_[0].to_real2(), Real2(0.0));
  if (!c_[1].is_zero()) v += mu * Complex2(c_[1].to_real2());
  if (!c_[2].is_zero()) v += Complex2(Real2(0.0), c_[2].to_real2());
  if (!c_[3].is_zero()) v += mu3 * Complex2(c_[3].to_real2());
  return v;
}

std::string CycloQ8::to_string() const {
  static const char* names[4] = {"", "mu", "mu^2", "mu^3"};
  std::string out;
  for (int k = 0; k < 4; ++k) {
    if (c_[k].is_zero()) continue;
    std::string mag = c_[k].to_string();
    bool neg = false;
    if (!mag.empty() && mag[0] == '-') {
      neg = true;
      mag = mag.substr(1);
    }
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (k == 0) {
      out += mag;
    } else if (mag == "1") {
      out += names[k];
    } else {
      out += mag + "*" + names[k];
    }
  }
  if (out.empty()) out = "0";
  return out;
}

}  // namespace apery

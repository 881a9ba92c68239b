#pragma once

// Exact algebra of the integrand 1-forms on [0,1].
//
// Every 1-form density used by the series rewrites lives in the module
// spanned by monomials  t^a * (1-t^2)^(b/2) * (1+t^2)^(c/2)  with integer
// exponents and Q(mu) coefficients.  Products with the prefactor functions
// (t, 1/t, sqrt(1-+t^2), ...) are exponent shifts, so the whole rewrite
// calculus closes over this type.  Equality, vanishing order at both
// endpoints, and stable numeric evaluation near the endpoints are exact
// (series coefficients are computed from the exponents, not fitted).

#include <memory>
#include <string>
#include <vector>

#include "apery/cyclo.hpp"
#include "apery/dd.hpp"

namespace apery {

// the 13 named letters of the paper's omega alphabet
enum class Om {
  W0,    // dt/t
  W1,    // dt/sqrt(1-t^2)
  Wm1,   // dt/sqrt(1+t^2)
  W2,    // t dt/(1-t^2)
  Wm2,   // t dt/(1+t^2)
  W3,    // dt/(t sqrt(1-t^2))
  Wm3,   // dt/(t sqrt(1+t^2))
  W4,    // t dt/sqrt(1-t^4), self-paired
  W5,    // t dt/sqrt(1-t^2)
  Wm5,   // t dt/sqrt(1+t^2)
  W6,    // dt/(t sqrt(1-t^4)), self-paired
  W20,   // dt/(t(1-t^2)) = w0 + w2
  Wm20,  // dt/(t(1+t^2)) = w0 - wm2
};

const char* om_name(Om tag);

struct Mono {
  int a = 0, b = 0, c = 0;  // t^a (1-t^2)^(b/2) (1+t^2)^(c/2)
  friend bool operator==(const Mono&, const Mono&) = default;
  friend bool operator<(const Mono& x, const Mono& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    return x.c < y.c;
  }
};

// evaluation point with exact distances to both interval ends
struct TPoint {
  Real2 t;        // the point itself
  Real2 one_m_t;  // 1 - t, kept exact for points generated near 1
};

class Density {
 public:
  Density() = default;  // zero density
  static Density mono(const CycloQ8& k, Mono m);
  static Density named(Om tag);

  bool is_zero() const;
  bool structurally_zero() const { return terms().empty(); }
  const std::vector<std::pair<CycloQ8, Mono>>& terms() const;

  friend Density operator+(const Density& x, const Density& y);
  friend Density operator-(const Density& x, const Density& y);
  friend Density operator*(const Density& x, const Density& y);
  Density operator-() const;
  Density scaled(const CycloQ8& k) const;
  // multiply by k * t^a (1-t^2)^(b/2) (1+t^2)^(c/2)
  Density mono_mul(const CycloQ8& k, Mono shift) const;
  // density of the pullback under t -> -t including the orientation flip:
  // integral over [0, -x] of f equals integral over [0, x] of f.reflected()
  Density reflected() const;

  // structural comparison (same combined monomial list)
  friend bool operator==(const Density& x, const Density& y);
  friend bool operator!=(const Density& x, const Density& y) { return !(x == y); }
  friend bool operator<(const Density& x, const Density& y);
  // function equality: x - y vanishes identically
  static bool equal_fn(const Density& x, const Density& y);

  // vanishing order at t=0 (integer) and t=1 (half-integers, returned doubled);
  // +1000 conventionally for the zero density
  int order0() const;
  int twice_order1() const;

  Real2 eval(const TPoint& p) const;

  // named tag if the density equals one of the 13 letters
  const char* matched_name() const;
  std::string to_string() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  explicit Density(std::shared_ptr<const Impl> i) : impl_(std::move(i)) {}
  static Density make(std::vector<std::pair<CycloQ8, Mono>> terms);
};

}  // namespace apery

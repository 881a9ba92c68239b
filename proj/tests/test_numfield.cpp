#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "apery/cyclo.hpp"
#include "apery/dd.hpp"

using namespace apery;

namespace {

CycloQ8 random_cyclo(SplitMix64& rng, std::int64_t coeff_bound) {
  auto r = [&] {
    std::int64_t num = rng.range(-coeff_bound, coeff_bound);
    std::int64_t den = rng.range(1, coeff_bound);
    return Rational(num, den);
  };
  return CycloQ8(r(), r(), r(), r());
}

double cdist(const Complex2& a, const Complex2& b) { return abs2(a - b).hi; }

}  // namespace

TEST_CASE("double-double basics") {
  Real2 third = Real2(1.0) / Real2(3.0);
  Real2 r = third * Real2(3.0) - Real2(1.0);
  CHECK(std::fabs(r.hi) < 1e-31);

  Real2 s = sqrt2(Real2(2.0));
  CHECK(std::fabs((s * s - Real2(2.0)).hi) < 1e-31);

  // exp/log round trip
  Real2 x = Real2::from_string("1.7724538509055160272981674833411452");
  Real2 y = log2r(exp2r(x));
  CHECK(std::fabs((y - x).hi) < 1e-30);

  // exp(n ln 2) = 2^n
  Real2 e10 = exp2r(dd_ln2() * Real2(10.0));
  CHECK(std::fabs((e10 - Real2(1024.0)).hi) < 1e-27);

  // pi via arctan series embedded in log2c: log(i) = i pi/2
  Complex2 li = log2c(Complex2(Real2(0.0), Real2(1.0)));
  CHECK(std::fabs((li.im - ldexp2(dd_pi(), -1)).hi) < 1e-30);

  // sin/cos at pi/6
  Real2 v = sin2r(dd_pi() / Real2(6.0));
  CHECK(std::fabs((v - Real2(0.5)).hi) < 1e-30);

  // string parse round trip
  Real2 p = Real2::from_string("3.141592653589793238462643383279502884197");
  CHECK(std::fabs((p - dd_pi()).hi) < 1e-30);
}

TEST_CASE("bigint and rational") {
  BigInt a = BigInt::from_string("123456789012345678901234567890");
  BigInt b = BigInt::from_string("987654321098765432109876543210");
  CHECK((a * b).to_string() == "121932631137021795226185032733622923332237463801111263526900");
  BigInt q, r;
  BigInt::divmod(b, a, q, r);
  CHECK(q.to_string() == "8");
  CHECK((q * a + r) == b);
  CHECK(BigInt::gcd(a, b).to_string() == "9000000000900000000090");

  Rational x(3, -6);
  CHECK(x.to_string() == "-1/2");
  Rational y = Rational(1, 3) + Rational(1, 6);
  CHECK(y == Rational(1, 2));
  CHECK((Rational(22, 7) * Rational(7, 22)).is_one());
}

TEST_CASE("cyclo mul examples") {
  CycloQ8 mu = CycloQ8::mu();
  // mu * mu^3 = -1
  CHECK(mu * CycloQ8::mu_pow(3) == CycloQ8(-1));
  // (mu - mu^3)^2 = 2
  CHECK(CycloQ8::sqrt2() * CycloQ8::sqrt2() == CycloQ8(2));
  // mu^2 * mu^2 = -1
  CHECK(CycloQ8::i() * CycloQ8::i() == CycloQ8(-1));
}

TEST_CASE("cyclo conj examples") {
  // mu -> -mu^3
  CHECK(CycloQ8::mu().conj() == -CycloQ8::mu_pow(3));
  // i -> -i
  CHECK(CycloQ8::i().conj() == -CycloQ8::i());
  // rationals fixed
  CycloQ8 r(Rational(22, 7));
  CHECK(r.conj() == r);
}

TEST_CASE("cyclo embedding examples") {
  Complex2 m = CycloQ8::mu().embed();
  CHECK(std::fabs(m.re.hi - 0.7071067811865476) < 1e-15);
  CHECK(std::fabs(m.im.hi - 0.7071067811865476) < 1e-15);
  Complex2 s = CycloQ8::sqrt2().embed();
  CHECK(std::fabs(s.re.hi - 1.4142135623730951) < 1e-15);
  CHECK(std::fabs(s.im.hi) < 1e-30);
  CHECK(std::fabs(CycloQ8(1).embed().re.hi - 1.0) < 1e-30);
}

TEST_CASE("field axioms on random elements") {
  SplitMix64 rng(20240817);
  for (int it = 0; it < 200; ++it) {
    CycloQ8 a = random_cyclo(rng, 50), b = random_cyclo(rng, 50), c = random_cyclo(rng, 50);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!a.is_zero()) {
      CHECK(a * a.inv() == CycloQ8(1));
    }
    CHECK((a * b).conj() == a.conj() * b.conj());
  }
}

TEST_CASE("embedding is a ring homomorphism to 8 ulp at 106 bits") {
  SplitMix64 rng(71);
  auto coeff_scale = [](const CycloQ8& v) {
    double m = 1.0;
    for (int k = 0; k < 4; ++k) m = std::max(m, std::fabs(v.coeff(k).to_double()));
    return m;
  };
  // 2^-106 ~ 1.23e-32; ulp scale set by the largest coefficient in play
  for (int it = 0; it < 1000; ++it) {
    CycloQ8 a = random_cyclo(rng, 1000000), b = random_cyclo(rng, 1000000);
    CycloQ8 ab = a * b;
    Complex2 lhs = ab.embed();
    Complex2 rhs = a.embed() * b.embed();
    double scale = std::max({coeff_scale(ab), coeff_scale(a) * coeff_scale(b),
                             coeff_scale(a) * abs2(b.embed()).hi,
                             coeff_scale(b) * abs2(a.embed()).hi});
    CHECK(cdist(lhs, rhs) < 8.0 * 1.3e-32 * scale);
  }
}

TEST_CASE("textual rendering") {
  CycloQ8 v(Rational(1), Rational(-2, 3), Rational(0), Rational(5));
  CHECK(v.to_string() == "1 - 2/3*mu + 5*mu^3");
  CHECK(CycloQ8().to_string() == "0");
  CHECK(CycloQ8::sqrt2().to_string() == "mu - mu^3");
}

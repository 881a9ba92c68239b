#pragma once

// Arbitrary-precision signed integers, base 2^32 little-endian magnitude.
// Sized for exact rational coefficient work (shuffle products, cyclotomic
// norms, multiple harmonic sums), not for cryptographic workloads.

#include <cstdint>
#include <string>
#include <vector>

namespace apery {

class BigInt {
 public:
  BigInt() = default;
  BigInt(std::int64_t v);
  static BigInt from_string(const std::string& s);

  bool is_zero() const { return mag_.empty(); }
  bool is_negative() const { return neg_; }
  int sign() const { return is_zero() ? 0 : (neg_ ? -1 : 1); }

  BigInt operator-() const;
  BigInt abs() const;

  friend BigInt operator+(const BigInt& a, const BigInt& b);
  friend BigInt operator-(const BigInt& a, const BigInt& b);
  friend BigInt operator*(const BigInt& a, const BigInt& b);
  // truncated toward zero; remainder has the sign of the dividend
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
  friend BigInt operator/(const BigInt& a, const BigInt& b);
  friend BigInt operator%(const BigInt& a, const BigInt& b);

  BigInt& operator+=(const BigInt& b) { return *this = *this + b; }
  BigInt& operator-=(const BigInt& b) { return *this = *this - b; }
  BigInt& operator*=(const BigInt& b) { return *this = *this * b; }

  friend bool operator==(const BigInt& a, const BigInt& b);
  friend bool operator<(const BigInt& a, const BigInt& b);
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
  friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }

  static BigInt gcd(BigInt a, BigInt b);
  static BigInt pow(const BigInt& base, unsigned e);

  bool fits_int64() const;
  std::int64_t to_int64() const;  // requires fits_int64()
  double to_double() const;
  std::string to_string() const;

  std::size_t limb_count() const { return mag_.size(); }

 private:
  bool neg_ = false;
  std::vector<std::uint32_t> mag_;  // little endian, no trailing zero limb

  void trim();
  static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  // requires |a| >= |b|
  static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
};

}  // namespace apery

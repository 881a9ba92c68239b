#include "apery/bigint.hpp"

#include <cmath>
#include <stdexcept>

namespace apery {

BigInt::BigInt(std::int64_t v) {
  neg_ = v < 0;
  std::uint64_t m = neg_ ? (~std::uint64_t(v) + 1) : std::uint64_t(v);
  while (m) {
    mag_.push_back(std::uint32_t(m & 0xffffffffu));
    m >>= 32;
  }
}

void BigInt::trim() {
  while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
  if (mag_.empty()) neg_ = false;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  const auto& big = a.size() >= b.size() ? a : b;
  const auto& small = a.size() >= b.size() ? b : a;
  std::vector<std::uint32_t> r(big.size() + 1, 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < big.size(); ++i) {
    std::uint64_t s = std::uint64_t(big[i]) + (i < small.size() ? small[i] : 0) + carry;
    r[i] = std::uint32_t(s);
    carry = s >> 32;
  }
  r[big.size()] = std::uint32_t(carry);
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> r(a.size(), 0);
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t s = std::int64_t(a[i]) - (i < b.size() ? std::int64_t(b[i]) : 0) - borrow;
    borrow = 0;
    if (s < 0) {
      s += (std::int64_t(1) << 32);
      borrow = 1;
    }
    r[i] = std::uint32_t(s);
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  if (!r.is_zero()) r.neg_ = !r.neg_;
  return r;
}

BigInt BigInt::abs() const {
  BigInt r = *this;
  r.neg_ = false;
  return r;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
  BigInt r;
  if (a.neg_ == b.neg_) {
    r.mag_ = BigInt::add_mag(a.mag_, b.mag_);
    r.neg_ = a.neg_;
  } else {
    int c = BigInt::cmp_mag(a.mag_, b.mag_);
    if (c == 0) return BigInt();
    if (c > 0) {
      r.mag_ = BigInt::sub_mag(a.mag_, b.mag_);
      r.neg_ = a.neg_;
    } else {
      r.mag_ = BigInt::sub_mag(b.mag_, a.mag_);
      r.neg_ = b.neg_;
    }
  }
  r.trim();
  return r;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
  if (a.is_zero() || b.is_zero()) return BigInt();
  BigInt r;
  r.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
  for (std::size_t i = 0; i < a.mag_.size(); ++i) {
    std::uint64_t carry = 0;
    std::uint64_t ai = a.mag_[i];
    for (std::size_t j = 0; j < b.mag_.size(); ++j) {
      std::uint64_t cur = std::uint64_t(r.mag_[i + j]) + ai * b.mag_[j] + carry;
      r.mag_[i + j] = std::uint32_t(cur);
      carry = cur >> 32;
    }
    std::size_t k = i + b.mag_.size();
    while (carry) {
      std::uint64_t cur = std::uint64_t(r.mag_[k]) + carry;
      r.mag_[k] = std::uint32_t(cur);
      carry = cur >> 32;
      ++k;
    }
  }
  r.neg_ = a.neg_ != b.neg_;
  r.trim();
  return r;
}

// shift-and-subtract long division on 32-bit limbs with 64-bit trial quotients
void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
  if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
  int c = cmp_mag(a.mag_, b.mag_);
  if (c < 0) {
    q = BigInt();
    r = a;
    return;
  }
  // normalized schoolbook division (Knuth D) on magnitudes
  std::vector<std::uint32_t> u = a.mag_, v = b.mag_;
  int shift = 0;
  for (std::uint32_t top = v.back(); top < 0x80000000u; top <<= 1) ++shift;
  auto shl = [](std::vector<std::uint32_t>& x, int s) {
    if (s == 0) return;
    std::uint32_t carry = 0;
    for (auto& limb : x) {
      std::uint32_t nc = limb >> (32 - s);
      limb = (limb << s) | carry;
      carry = nc;
    }
    if (carry) x.push_back(carry);
  };
  shl(u, shift);
  shl(v, shift);
  std::size_t n = v.size(), m = u.size() - n;
  u.push_back(0);
  std::vector<std::uint32_t> quot(m + 1, 0);
  const std::uint64_t base = std::uint64_t(1) << 32;
  for (std::size_t j = m + 1; j-- > 0;) {
    std::uint64_t num = (std::uint64_t(u[j + n]) << 32) | u[j + n - 1];
    std::uint64_t qhat = num / v[n - 1];
    std::uint64_t rhat = num % v[n - 1];
    while (qhat >= base ||
           (n >= 2 && qhat * v[n - 2] > ((rhat << 32) | u[j + n - 2]))) {
      --qhat;
      rhat += v[n - 1];
      if (rhat >= base) break;
    }
    // u[j..j+n] -= qhat * v
    std::int64_t borrow = 0;
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t p = qhat * v[i] + carry;
      carry = p >> 32;
      std::int64_t t = std::int64_t(u[i + j]) - std::int64_t(p & 0xffffffffu) - borrow;
      borrow = 0;
      if (t < 0) {
        t += std::int64_t(base);
        borrow = 1;
      }
      u[i + j] = std::uint32_t(t);
    }
    std::int64_t t = std::int64_t(u[j + n]) - std::int64_t(carry) - borrow;
    if (t < 0) {
      // qhat was one too large; add v back
      t += std::int64_t(base);
      --qhat;
      std::uint64_t c2 = 0;
      for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t s = std::uint64_t(u[i + j]) + v[i] + c2;
        u[i + j] = std::uint32_t(s);
        c2 = s >> 32;
      }
      t += std::int64_t(c2);
    }
    u[j + n] = std::uint32_t(t);
    quot[j] = std::uint32_t(qhat);
  }
  // remainder = u >> shift, first n limbs
  u.resize(n);
  if (shift) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      std::uint32_t high = (i + 1 < u.size()) ? u[i + 1] : 0;
      u[i] = (u[i] >> shift) | (high << (32 - shift));
    }
  }
  q = BigInt();
  q.mag_ = std::move(quot);
  q.neg_ = a.neg_ != b.neg_;
  q.trim();
  r = BigInt();
  r.mag_ = std::move(u);
  r.neg_ = a.neg_;
  r.trim();
}

BigInt operator/(const BigInt& a, const BigInt& b) {
  BigInt q, r;
  BigInt::divmod(a, b, q, r);
  return q;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
  BigInt q, r;
  BigInt::divmod(a, b, q, r);
  return r;
}

bool operator==(const BigInt& a, const BigInt& b) { return a.neg_ == b.neg_ && a.mag_ == b.mag_; }

bool operator<(const BigInt& a, const BigInt& b) {
  if (a.neg_ != b.neg_) return a.neg_;
  int c = BigInt::cmp_mag(a.mag_, b.mag_);
  return a.neg_ ? c > 0 : c < 0;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
  a.neg_ = false;
  b.neg_ = false;
  while (!b.is_zero()) {
    BigInt q, r;
    divmod(a, b, q, r);
    a = b;
    b = r;
  }
  return a;
}

BigInt BigInt::pow(const BigInt& base, unsigned e) {
  BigInt acc(1), b = base;
  while (e) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

bool BigInt::fits_int64() const {
  if (mag_.size() > 2) return false;
  if (mag_.size() < 2) return true;
  std::uint64_t m = (std::uint64_t(mag_[1]) << 32) | mag_[0];
  return neg_ ? m <= 0x8000000000000000ULL : m < 0x8000000000000000ULL;
}

std::int64_t BigInt::to_int64() const {
  std::uint64_t m = 0;
  if (mag_.size() >= 1) m |= mag_[0];
  if (mag_.size() >= 2) m |= std::uint64_t(mag_[1]) << 32;
  return neg_ ? -std::int64_t(m) : std::int64_t(m);
}

double BigInt::to_double() const {
  double r = 0.0;
  for (std::size_t i = mag_.size(); i-- > 0;) r = r * 4294967296.0 + double(mag_[i]);
  return neg_ ? -r : r;
}

BigInt BigInt::from_string(const std::string& s) {
  BigInt r;
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
  if (i == s.size()) throw std::invalid_argument("BigInt::from_string: empty");
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt::from_string: " + s);
    r = r * BigInt(10) + BigInt(s[i] - '0');
  }
  if (neg) r = -r;
  return r;
}

std::string BigInt::to_string() const {
  if (is_zero()) return "0";
  BigInt t = abs();
  std::string digits;
  BigInt ten(10), q, r;
  while (!t.is_zero()) {
    divmod(t, ten, q, r);
    digits += char('0' + (r.is_zero() ? 0 : r.mag_[0]));
    t = q;
  }
  if (neg_) digits += '-';
  return std::string(digits.rbegin(), digits.rend());
}

}  // namespace apery

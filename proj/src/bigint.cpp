#include "rieszprod/bigint.hpp"

#include <algorithm>
#include <stdexcept>

#include "rieszprod/errors.hpp"

namespace rieszprod {

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(long long value) {
  if (value == 0) return;
  sign_ = value < 0 ? -1 : 1;
  // Avoid overflow on LLONG_MIN by working in unsigned space.
  std::uint64_t mag = value < 0
                          ? ~static_cast<std::uint64_t>(value) + 1
                          : static_cast<std::uint64_t>(value);
  while (mag != 0) {
    limbs_.push_back(static_cast<std::uint32_t>(mag & 0xffffffffu));
    mag >>= 32;
  }
}

BigInt::BigInt(unsigned long long value) {
  if (value == 0) return;
  sign_ = 1;
  std::uint64_t mag = value;
  while (mag != 0) {
    limbs_.push_back(static_cast<std::uint32_t>(mag & 0xffffffffu));
    mag >>= 32;
  }
}

void BigInt::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  if (limbs_.empty()) sign_ = 0;
}

int BigInt::compare_magnitude(const std::vector<std::uint32_t>& a,
                              const std::vector<std::uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

std::vector<std::uint32_t> BigInt::add_magnitude(
    const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  const auto& lo = a.size() >= b.size() ? b : a;
  const auto& hi = a.size() >= b.size() ? a : b;
  std::vector<std::uint32_t> out;
  out.reserve(hi.size() + 1);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < hi.size(); ++i) {
    std::uint64_t sum = carry + hi[i] + (i < lo.size() ? lo[i] : 0u);
    out.push_back(static_cast<std::uint32_t>(sum & 0xffffffffu));
    carry = sum >> 32;
  }
  if (carry) out.push_back(static_cast<std::uint32_t>(carry));
  return out;
}

std::vector<std::uint32_t> BigInt::sub_magnitude(
    const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  out.reserve(a.size());
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t diff = static_cast<std::int64_t>(a[i]) - borrow -
                        (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
    if (diff < 0) {
      diff += static_cast<std::int64_t>(kBase);
      borrow = 1;
    } else {
      borrow = 0;
    }
    out.push_back(static_cast<std::uint32_t>(diff));
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::vector<std::uint32_t> BigInt::mul_magnitude(
    const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint32_t> out(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::uint64_t carry = 0;
    std::uint64_t ai = a[i];
    if (ai == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::uint64_t cur = out[i + j] + ai * b[j] + carry;
      out[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    std::size_t k = i + b.size();
    while (carry) {
      std::uint64_t cur = out[k] + carry;
      out[k] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
      ++k;
    }
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

// Knuth algorithm D on 32-bit limbs.
void BigInt::divmod_magnitude(const std::vector<std::uint32_t>& a,
                              const std::vector<std::uint32_t>& b,
                              std::vector<std::uint32_t>& q,
                              std::vector<std::uint32_t>& r) {
  q.clear();
  r.clear();
  if (b.empty()) throw ArithmeticError("division by zero");
  if (compare_magnitude(a, b) < 0) {
    r = a;
    return;
  }
  if (b.size() == 1) {
    std::uint64_t d = b[0];
    q.assign(a.size(), 0);
    std::uint64_t rem = 0;
    for (std::size_t i = a.size(); i-- > 0;) {
      std::uint64_t cur = (rem << 32) | a[i];
      q[i] = static_cast<std::uint32_t>(cur / d);
      rem = cur % d;
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    if (rem) r.push_back(static_cast<std::uint32_t>(rem));
    return;
  }

  // Normalize so the top limb of the divisor has its high bit set.
  int shift = 0;
  std::uint32_t top = b.back();
  while ((top & 0x80000000u) == 0) {
    top <<= 1;
    ++shift;
  }
  const std::size_t n = b.size();
  const std::size_t m = a.size() - n;
  std::vector<std::uint32_t> u(a.size() + 1, 0), v(n, 0);
  if (shift == 0) {
    for (std::size_t i = 0; i < a.size(); ++i) u[i] = a[i];
    v = b;
  } else {
    for (std::size_t i = 0; i < a.size(); ++i) {
      u[i] = (a[i] << shift) |
             (i > 0 ? static_cast<std::uint32_t>(
                          static_cast<std::uint64_t>(a[i - 1]) >> (32 - shift))
                    : 0u);
    }
    u[a.size()] = static_cast<std::uint32_t>(
        static_cast<std::uint64_t>(a.back()) >> (32 - shift));
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = (b[i] << shift) |
             (i > 0 ? static_cast<std::uint32_t>(
                          static_cast<std::uint64_t>(b[i - 1]) >> (32 - shift))
                    : 0u);
    }
  }

  q.assign(m + 1, 0);
  const std::uint64_t vtop = v[n - 1];
  const std::uint64_t vsecond = v[n - 2];
  for (std::size_t j = m + 1; j-- > 0;) {
    std::uint64_t numerator =
        (static_cast<std::uint64_t>(u[j + n]) << 32) | u[j + n - 1];
    std::uint64_t qhat = numerator / vtop;
    std::uint64_t rhat = numerator % vtop;
    if (qhat >= kBase) {
      qhat = kBase - 1;
      rhat = numerator - qhat * vtop;
    }
    while (rhat < kBase &&
           qhat * vsecond > ((rhat << 32) | u[j + n - 2])) {
      --qhat;
      rhat += vtop;
    }
    // Multiply-subtract qhat*v from u[j..j+n].
    std::int64_t borrow = 0;
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t prod = qhat * v[i] + carry;
      carry = prod >> 32;
      std::int64_t diff = static_cast<std::int64_t>(u[i + j]) -
                          static_cast<std::int64_t>(prod & 0xffffffffu) -
                          borrow;
      if (diff < 0) {
        diff += static_cast<std::int64_t>(kBase);
        borrow = 1;
      } else {
        borrow = 0;
      }
      u[i + j] = static_cast<std::uint32_t>(diff);
    }
    std::int64_t diff = static_cast<std::int64_t>(u[j + n]) -
                        static_cast<std::int64_t>(carry) - borrow;
    if (diff < 0) {
      // qhat was one too large; add v back.
      diff += static_cast<std::int64_t>(kBase);
      u[j + n] = static_cast<std::uint32_t>(diff);
      --qhat;
      std::uint64_t c2 = 0;
      for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t sum = static_cast<std::uint64_t>(u[i + j]) + v[i] + c2;
        u[i + j] = static_cast<std::uint32_t>(sum & 0xffffffffu);
        c2 = sum >> 32;
      }
      u[j + n] = static_cast<std::uint32_t>(u[j + n] + c2);
    } else {
      u[j + n] = static_cast<std::uint32_t>(diff);
    }
    q[j] = static_cast<std::uint32_t>(qhat);
  }
  while (!q.empty() && q.back() == 0) q.pop_back();

  // Denormalize the remainder.
  r.assign(n, 0);
  if (shift == 0) {
    for (std::size_t i = 0; i < n; ++i) r[i] = u[i];
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = (u[i] >> shift) |
             static_cast<std::uint32_t>(static_cast<std::uint64_t>(u[i + 1])
                                        << (32 - shift));
    }
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
}

BigInt BigInt::abs() const {
  BigInt out = *this;
  if (out.sign_ < 0) out.sign_ = 1;
  return out;
}

BigInt BigInt::operator-() const {
  BigInt out = *this;
  out.sign_ = -out.sign_;
  return out;
}

std::size_t BigInt::bit_length() const {
  if (limbs_.empty()) return 0;
  std::uint32_t top = limbs_.back();
  std::size_t bits = (limbs_.size() - 1) * 32;
  while (top) {
    ++bits;
    top >>= 1;
  }
  return bits;
}

bool BigInt::bit(std::size_t i) const {
  std::size_t limb = i / 32;
  if (limb >= limbs_.size()) return false;
  return (limbs_[limb] >> (i % 32)) & 1u;
}

std::size_t BigInt::trailing_zeros() const {
  if (limbs_.empty()) return 0;
  std::size_t zeros = 0;
  std::size_t i = 0;
  while (limbs_[i] == 0) {
    zeros += 32;
    ++i;
  }
  std::uint32_t limb = limbs_[i];
  while ((limb & 1u) == 0) {
    ++zeros;
    limb >>= 1;
  }
  return zeros;
}

bool BigInt::fits_int64() const {
  if (bit_length() < 64) return true;
  // INT64_MIN has magnitude 2^63.
  return sign_ < 0 && bit_length() == 64 && limbs_[1] == 0x80000000u &&
         limbs_[0] == 0;
}

std::int64_t BigInt::to_int64() const {
  if (!fits_int64()) throw ArithmeticError("BigInt does not fit in int64");
  std::uint64_t mag = 0;
  for (std::size_t i = limbs_.size(); i-- > 0;) mag = (mag << 32) | limbs_[i];
  if (sign_ < 0) return static_cast<std::int64_t>(~mag + 1);
  return static_cast<std::int64_t>(mag);
}

int BigInt::compare(const BigInt& rhs) const {
  if (sign_ != rhs.sign_) return sign_ < rhs.sign_ ? -1 : 1;
  int mag = compare_magnitude(limbs_, rhs.limbs_);
  return sign_ >= 0 ? mag : -mag;
}

BigInt& BigInt::operator+=(const BigInt& rhs) {
  if (rhs.sign_ == 0) return *this;
  if (sign_ == 0) {
    *this = rhs;
    return *this;
  }
  if (sign_ == rhs.sign_) {
    limbs_ = add_magnitude(limbs_, rhs.limbs_);
    return *this;
  }
  int cmp = compare_magnitude(limbs_, rhs.limbs_);
  if (cmp == 0) {
    sign_ = 0;
    limbs_.clear();
  } else if (cmp > 0) {
    limbs_ = sub_magnitude(limbs_, rhs.limbs_);
  } else {
    limbs_ = sub_magnitude(rhs.limbs_, limbs_);
    sign_ = rhs.sign_;
  }
  return *this;
}

BigInt& BigInt::operator-=(const BigInt& rhs) { return *this += -rhs; }

BigInt& BigInt::operator*=(const BigInt& rhs) {
  if (sign_ == 0 || rhs.sign_ == 0) {
    sign_ = 0;
    limbs_.clear();
    return *this;
  }
  limbs_ = mul_magnitude(limbs_, rhs.limbs_);
  sign_ = sign_ == rhs.sign_ ? 1 : -1;
  return *this;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
  std::vector<std::uint32_t> qm, rm;
  divmod_magnitude(a.limbs_, b.limbs_, qm, rm);
  q.limbs_ = std::move(qm);
  r.limbs_ = std::move(rm);
  q.sign_ = q.limbs_.empty() ? 0 : (a.sign_ == b.sign_ ? 1 : -1);
  r.sign_ = r.limbs_.empty() ? 0 : a.sign_;
}

void BigInt::floor_divmod(const BigInt& a, const BigInt& b, BigInt& q,
                          BigInt& r) {
  divmod(a, b, q, r);
  if (!r.is_zero() && (r.sign_ != b.sign_)) {
    q -= BigInt(1);
    r += b;
  }
}

BigInt BigInt::mod_euclid(const BigInt& a, const BigInt& b) {
  BigInt q, r;
  divmod(a, b, q, r);
  if (r.is_negative()) r += b.abs();
  return r;
}

BigInt& BigInt::operator/=(const BigInt& rhs) {
  BigInt q, r;
  divmod(*this, rhs, q, r);
  *this = std::move(q);
  return *this;
}

BigInt& BigInt::operator%=(const BigInt& rhs) {
  BigInt q, r;
  divmod(*this, rhs, q, r);
  *this = std::move(r);
  return *this;
}

BigInt& BigInt::operator<<=(std::size_t bits) {
  if (sign_ == 0 || bits == 0) return *this;
  std::size_t limb_shift = bits / 32;
  std::size_t bit_shift = bits % 32;
  std::vector<std::uint32_t> out(limbs_.size() + limb_shift + 1, 0);
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t cur = static_cast<std::uint64_t>(limbs_[i]) << bit_shift;
    out[i + limb_shift] |= static_cast<std::uint32_t>(cur & 0xffffffffu);
    out[i + limb_shift + 1] |= static_cast<std::uint32_t>(cur >> 32);
  }
  limbs_ = std::move(out);
  trim();
  return *this;
}

BigInt& BigInt::operator>>=(std::size_t bits) {
  if (sign_ == 0 || bits == 0) return *this;
  std::size_t limb_shift = bits / 32;
  std::size_t bit_shift = bits % 32;
  if (limb_shift >= limbs_.size()) {
    // Shift toward zero (magnitude shift, not arithmetic floor).
    sign_ = 0;
    limbs_.clear();
    return *this;
  }
  std::vector<std::uint32_t> out(limbs_.size() - limb_shift, 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint64_t cur = limbs_[i + limb_shift];
    if (bit_shift) {
      cur >>= bit_shift;
      if (i + limb_shift + 1 < limbs_.size()) {
        cur |= static_cast<std::uint64_t>(limbs_[i + limb_shift + 1])
               << (32 - bit_shift);
      }
    }
    out[i] = static_cast<std::uint32_t>(cur & 0xffffffffu);
  }
  limbs_ = std::move(out);
  trim();
  return *this;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
  a.sign_ = a.limbs_.empty() ? 0 : 1;
  b.sign_ = b.limbs_.empty() ? 0 : 1;
  while (!b.is_zero()) {
    BigInt r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

BigInt BigInt::pow(std::uint64_t e) const {
  BigInt base = *this;
  BigInt out(1);
  while (e) {
    if (e & 1) out *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return out;
}

BigInt BigInt::isqrt(const BigInt& n) {
  if (n.is_negative()) throw ArithmeticError("isqrt of negative value");
  if (n.is_zero()) return BigInt(0);
  BigInt x = BigInt(1) << ((n.bit_length() + 1) / 2);
  for (;;) {
    BigInt y = (x + n / x) >> 1;
    if (y >= x) break;
    x = std::move(y);
  }
  return x;
}

BigInt BigInt::icbrt_floor(const BigInt& n) {
  if (n.is_negative()) throw ArithmeticError("icbrt of negative value");
  if (n.is_zero()) return BigInt(0);
  BigInt x = BigInt(1) << (n.bit_length() / 3 + 1);
  for (;;) {
    // Newton step for x^3 = n: x' = (2x + n/x^2) / 3.
    BigInt y = ((x + x) + n / (x * x)) / BigInt(3);
    if (y >= x) break;
    x = std::move(y);
  }
  while (x * x * x > n) x -= BigInt(1);
  while ((x + BigInt(1)).pow(3) <= n) x += BigInt(1);
  return x;
}

BigInt BigInt::icbrt_ceil(const BigInt& n) {
  BigInt f = icbrt_floor(n);
  if (f * f * f == n) return f;
  return f + BigInt(1);
}

BigInt BigInt::from_decimal(std::string_view text) {
  std::size_t pos = 0;
  int sign = 1;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') sign = -1;
    ++pos;
  }
  if (pos == text.size()) throw ParseError("empty integer literal");
  BigInt out;
  const BigInt chunk_base(1000000000ll);
  while (pos < text.size()) {
    std::size_t take = std::min<std::size_t>(9, text.size() - pos);
    std::uint32_t value = 0;
    for (std::size_t i = 0; i < take; ++i) {
      char c = text[pos + i];
      if (c < '0' || c > '9')
        throw ParseError("invalid digit in integer literal");
      value = value * 10 + static_cast<std::uint32_t>(c - '0');
    }
    BigInt scale = take == 9 ? chunk_base : BigInt(1);
    if (take != 9) {
      long long s = 1;
      for (std::size_t i = 0; i < take; ++i) s *= 10;
      scale = BigInt(s);
    }
    out = out * scale + BigInt(static_cast<long long>(value));
    pos += take;
  }
  if (sign < 0) out = -out;
  return out;
}

std::string BigInt::to_decimal() const {
  if (is_zero()) return "0";
  std::vector<std::uint32_t> chunks;
  std::vector<std::uint32_t> mag = limbs_;
  while (!mag.empty()) {
    std::uint64_t rem = 0;
    for (std::size_t i = mag.size(); i-- > 0;) {
      std::uint64_t cur = (rem << 32) | mag[i];
      mag[i] = static_cast<std::uint32_t>(cur / 1000000000u);
      rem = cur % 1000000000u;
    }
    while (!mag.empty() && mag.back() == 0) mag.pop_back();
    chunks.push_back(static_cast<std::uint32_t>(rem));
  }
  std::string out;
  if (sign_ < 0) out.push_back('-');
  out += std::to_string(chunks.back());
  for (std::size_t i = chunks.size() - 1; i-- > 0;) {
    std::string part = std::to_string(chunks[i]);
    out += std::string(9 - part.size(), '0') + part;
  }
  return out;
}

BigInt BigInt::from_hex(std::string_view text) {
  std::size_t pos = 0;
  int sign = 1;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') sign = -1;
    ++pos;
  }
  if (text.size() >= pos + 2 && text[pos] == '0' &&
      (text[pos + 1] == 'x' || text[pos + 1] == 'X')) {
    pos += 2;
  }
  if (pos == text.size()) throw ParseError("empty hex literal");
  BigInt out;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    int digit;
    if (c >= '0' && c <= '9') {
      digit = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      digit = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      digit = c - 'A' + 10;
    } else {
      throw ParseError("invalid digit in hex literal");
    }
    out <<= 4;
    out += BigInt(digit);
  }
  if (sign < 0) out = -out;
  return out;
}

std::string BigInt::to_hex() const {
  if (is_zero()) return "0x0";
  static const char* digits = "0123456789abcdef";
  std::string body;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint32_t limb = limbs_[i];
    for (int nib = 0; nib < 8; ++nib) {
      body.push_back(digits[limb & 0xf]);
      limb >>= 4;
    }
  }
  while (body.size() > 1 && body.back() == '0') body.pop_back();
  std::reverse(body.begin(), body.end());
  return (sign_ < 0 ? "-0x" : "0x") + body;
}

}  // namespace rieszprod

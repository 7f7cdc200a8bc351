#include "rieszprod/dyadic.hpp"

#include <cmath>

#include "rieszprod/errors.hpp"

namespace rieszprod {

Dyadic::Dyadic(BigInt man, std::int64_t exp)
    : man_(std::move(man)), exp_(exp) {
  normalize();
}

void Dyadic::normalize() {
  if (man_.is_zero()) {
    exp_ = 0;
    return;
  }
  std::size_t zeros = man_.trailing_zeros();
  if (zeros) {
    man_ >>= zeros;
    exp_ += static_cast<std::int64_t>(zeros);
  }
}

Dyadic Dyadic::operator-() const {
  Dyadic out = *this;
  out.man_ = -out.man_;
  return out;
}

Dyadic Dyadic::abs() const {
  Dyadic out = *this;
  out.man_ = out.man_.abs();
  return out;
}

Dyadic Dyadic::mul_pow2(std::int64_t e) const {
  if (is_zero()) return *this;
  Dyadic out = *this;
  out.exp_ += e;
  return out;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.exp_ <= b.exp_) {
    BigInt shifted = b.man_ << static_cast<std::size_t>(b.exp_ - a.exp_);
    return Dyadic(a.man_ + shifted, a.exp_);
  }
  BigInt shifted = a.man_ << static_cast<std::size_t>(a.exp_ - b.exp_);
  return Dyadic(shifted + b.man_, b.exp_);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero() || b.is_zero()) return Dyadic();
  return Dyadic(a.man_ * b.man_, a.exp_ + b.exp_);
}

int Dyadic::compare(const Dyadic& rhs) const {
  if (signum() != rhs.signum()) return signum() < rhs.signum() ? -1 : 1;
  return (*this - rhs).signum();
}

int Dyadic::compare(const Rational& rhs) const {
  // man*2^exp vs a/b  <=>  man*2^exp*b vs a.
  BigInt lhs = man_ * rhs.den();
  BigInt r = rhs.num();
  if (exp_ >= 0) {
    lhs <<= static_cast<std::size_t>(exp_);
  } else {
    r <<= static_cast<std::size_t>(-exp_);
  }
  return lhs.compare(r);
}

Rational Dyadic::to_rational() const {
  if (exp_ >= 0) {
    return Rational(man_ << static_cast<std::size_t>(exp_));
  }
  return Rational(man_, BigInt(1) << static_cast<std::size_t>(-exp_));
}

Dyadic Dyadic::round_to(std::int64_t prec, Round mode, Dyadic* err) const {
  if (err) *err = Dyadic();
  if (prec <= 0) throw ArithmeticError("nonpositive precision");
  std::int64_t bits = static_cast<std::int64_t>(mant_bits());
  if (bits <= prec) return *this;
  std::size_t drop = static_cast<std::size_t>(bits - prec);
  BigInt mag = man_.abs();
  BigInt kept = mag >> drop;
  BigInt dropped = mag - (kept << drop);
  bool inexact = !dropped.is_zero();
  bool round_away = false;
  if (inexact) {
    switch (mode) {
      case Round::Floor:
        round_away = man_.is_negative();
        break;
      case Round::Ceil:
        round_away = !man_.is_negative();
        break;
      case Round::Nearest: {
        BigInt half = BigInt(1) << (drop - 1);
        int cmp = dropped.compare(half);
        round_away = cmp > 0 || (cmp == 0 && kept.is_odd());
        break;
      }
    }
  }
  if (round_away) kept += BigInt(1);
  if (man_.is_negative()) kept = -kept;
  Dyadic out(std::move(kept), exp_ + static_cast<std::int64_t>(drop));
  if (err && inexact) {
    // One ulp of the kept position always bounds the change.
    *err = Dyadic(BigInt(1), exp_ + static_cast<std::int64_t>(drop));
  }
  return out;
}

Dyadic Dyadic::round_up_mag(std::int64_t bits) const {
  if (is_zero()) return *this;
  std::int64_t have = static_cast<std::int64_t>(mant_bits());
  if (have <= bits) return abs();
  std::size_t drop = static_cast<std::size_t>(have - bits);
  BigInt mag = man_.abs();
  BigInt kept = mag >> drop;
  if (kept << drop != mag) kept += BigInt(1);
  return Dyadic(std::move(kept), exp_ + static_cast<std::int64_t>(drop));
}

Dyadic Dyadic::from_rational(const Rational& x, std::int64_t prec, Round mode,
                             Dyadic* err) {
  if (err) *err = Dyadic();
  if (x.is_zero()) return Dyadic();
  if (x.is_integer()) return Dyadic(x.num()).round_to(prec, mode, err);
  // Scale the numerator so the quotient carries prec+2 significant bits.
  std::int64_t num_bits = static_cast<std::int64_t>(x.num().bit_length());
  std::int64_t den_bits = static_cast<std::int64_t>(x.den().bit_length());
  std::int64_t shift = prec + 2 - (num_bits - den_bits);
  if (shift < 0) shift = 0;
  BigInt num = x.num() << static_cast<std::size_t>(shift);
  BigInt q, r;
  BigInt::floor_divmod(num, x.den(), q, r);
  bool inexact = !r.is_zero();
  // q*2^-shift <= x < (q+1)*2^-shift.
  switch (mode) {
    case Round::Floor:
      break;
    case Round::Ceil:
      if (inexact) q += BigInt(1);
      break;
    case Round::Nearest: {
      BigInt twice = r + r;
      int cmp = twice.compare(x.den());
      if (cmp > 0 || (cmp == 0 && q.is_odd())) q += BigInt(1);
      break;
    }
  }
  Dyadic approx(std::move(q), -shift);
  if (err && inexact) *err = Dyadic(BigInt(1), -shift);
  Dyadic rounded = approx.round_to(prec, mode, nullptr);
  if (err && rounded != approx) {
    // Recompute a valid bound: ulp at the final position plus the division
    // ulp. Coarse but always correct.
    std::int64_t final_exp = rounded.is_zero() ? -shift : rounded.exp();
    *err = Dyadic(BigInt(1), final_exp) + Dyadic(BigInt(1), -shift);
  }
  return rounded;
}

std::string Dyadic::to_hex() const {
  if (is_zero()) return "0x0p0";
  std::string out = man_.to_hex();
  out += "p" + std::to_string(exp_);
  return out;
}

Dyadic Dyadic::parse_hex(std::string_view text) {
  std::size_t p = text.find('p');
  if (p == std::string_view::npos) throw ParseError("dyadic: missing exponent");
  BigInt man = BigInt::from_hex(text.substr(0, p));
  std::string exp_text(text.substr(p + 1));
  std::size_t used = 0;
  long long e = std::stoll(exp_text, &used);
  if (used != exp_text.size()) throw ParseError("dyadic: bad exponent");
  return Dyadic(std::move(man), e);
}

std::string Dyadic::to_decimal(std::size_t sig) const {
  if (sig == 0) sig = 1;
  if (is_zero()) return "0";
  // Find E with 10^E <= |x| < 10^(E+1), then print round(x / 10^(E-sig+1)).
  const BigInt mag = man_.abs();
  double approx_log10 =
      (static_cast<double>(mag.bit_length()) + static_cast<double>(exp_)) *
      0.30102999566398119;
  long long E = static_cast<long long>(std::floor(approx_log10));
  auto digits_for = [&](long long Eguess) {
    // D = round(|x| * 10^(sig-1-Eguess)) as an exact integer.
    long long k = static_cast<long long>(sig) - 1 - Eguess;
    BigInt num = mag;
    BigInt den(1);
    if (exp_ >= 0) {
      num = num << static_cast<std::size_t>(exp_);
    } else {
      den = den << static_cast<std::size_t>(-exp_);
    }
    if (k >= 0) {
      num *= BigInt(10).pow(static_cast<std::uint64_t>(k));
    } else {
      den *= BigInt(10).pow(static_cast<std::uint64_t>(-k));
    }
    // round(num/den), half away from zero (num, den > 0).
    return (num + num + den) / (den + den);
  };
  BigInt D = digits_for(E);
  BigInt lo = BigInt(10).pow(static_cast<std::uint64_t>(sig - 1));
  BigInt hi = lo * BigInt(10);
  while (D >= hi) {
    ++E;
    D = digits_for(E);
  }
  while (D < lo) {
    --E;
    D = digits_for(E);
  }
  std::string ds = D.to_decimal();
  std::string out;
  if (man_.is_negative()) out.push_back('-');
  out.push_back(ds[0]);
  if (sig > 1) {
    out.push_back('.');
    out += ds.substr(1);
  }
  out += "e";
  if (E >= 0) out += "+";
  out += std::to_string(E);
  return out;
}

double Dyadic::to_double_approx() const {
  if (is_zero()) return 0.0;
  std::int64_t bits = static_cast<std::int64_t>(mant_bits());
  std::int64_t drop = bits > 53 ? bits - 53 : 0;
  BigInt top = man_ >> static_cast<std::size_t>(drop);
  double m = 0.0;
  // Convert via decimal-free limb walk: top has <= 53 bits.
  for (std::size_t i = top.bit_length(); i-- > 0;) {
    m = m * 2.0 + (top.bit(i) ? 1.0 : 0.0);
  }
  if (top.is_negative()) m = -m;
  return std::ldexp(m, static_cast<int>(exp_ + drop));
}

}  // namespace rieszprod

#include "dilmax/dyadic.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "dilmax/errors.hpp"

namespace dilmax {
namespace {

constexpr std::int64_t kMaxExponent = std::int64_t{1} << 40;

unsigned magnitude_bits(std::int64_t m) {
  auto u = m < 0 ? static_cast<std::uint64_t>(0) - static_cast<std::uint64_t>(m)
                 : static_cast<std::uint64_t>(m);
  return static_cast<unsigned>(std::bit_width(u));
}

}  // namespace

Dyadic::Dyadic(std::int64_t mantissa, std::int64_t exponent) : mantissa_(mantissa), exponent_(exponent) {
  if (mantissa_ == 0) {
    exponent_ = 0;
    return;
  }
  if (mantissa_ == std::numeric_limits<std::int64_t>::min()) {
    throw InvalidArgument("dyadic mantissa out of range");
  }
  while ((mantissa_ & 1) == 0) {
    mantissa_ /= 2;
    ++exponent_;
  }
  if (exponent_ > kMaxExponent || exponent_ < -kMaxExponent) {
    throw InvalidArgument("dyadic exponent out of range");
  }
}

Dyadic Dyadic::from_double(double value) {
  if (!std::isfinite(value)) throw InvalidArgument("dyadic from non-finite double");
  if (value == 0.0) return {};
  int exp = 0;
  double frac = std::frexp(value, &exp);  // value = frac * 2^exp, 0.5 <= |frac| < 1
  auto mant = static_cast<std::int64_t>(std::ldexp(frac, 53));
  return Dyadic(mant, static_cast<std::int64_t>(exp) - 53);
}

Dyadic Dyadic::scaled(std::int64_t shift) const {
  if (mantissa_ == 0) return *this;
  return Dyadic(mantissa_, exponent_ + shift);
}

double Dyadic::to_double() const {
  if (exponent_ > 4096) return mantissa_ > 0 ? HUGE_VAL : -HUGE_VAL;
  if (exponent_ < -4096) return 0.0;
  return std::ldexp(static_cast<double>(mantissa_), static_cast<int>(exponent_));
}

std::string Dyadic::to_string() const {
  return std::to_string(mantissa_) + "*2^" + std::to_string(exponent_);
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const std::int64_t e = std::min(a.exponent_, b.exponent_);
  const std::int64_t da = a.exponent_ - e;
  const std::int64_t db = b.exponent_ - e;
  if (da + magnitude_bits(a.mantissa_) > 120 || db + magnitude_bits(b.mantissa_) > 120) {
    throw InvalidArgument("dyadic sum exceeds exact range");
  }
  __int128 sum = (static_cast<__int128>(a.mantissa_) << da) + (static_cast<__int128>(b.mantissa_) << db);
  if (sum == 0) return {};
  std::int64_t exp = e;
  while ((sum & 1) == 0) {
    sum /= 2;
    ++exp;
  }
  if (sum > std::numeric_limits<std::int64_t>::max() || sum < -std::numeric_limits<std::int64_t>::max()) {
    throw InvalidArgument("dyadic sum exceeds exact range");
  }
  return Dyadic(static_cast<std::int64_t>(sum), exp);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  if (a.sign() != b.sign()) return a.sign() <=> b.sign();
  if (a.sign() == 0) return std::strong_ordering::equal;
  // Same nonzero sign: compare magnitudes through the leading-bit position.
  const std::int64_t lead_a = a.exponent_ + magnitude_bits(a.mantissa_);
  const std::int64_t lead_b = b.exponent_ + magnitude_bits(b.mantissa_);
  std::strong_ordering mag = std::strong_ordering::equal;
  if (lead_a != lead_b) {
    mag = lead_a <=> lead_b;
  } else {
    const std::int64_t e = std::min(a.exponent_, b.exponent_);
    // Equal leading positions bound the alignment shift by 63.
    const __int128 ma = static_cast<__int128>(a.mantissa_ < 0 ? -a.mantissa_ : a.mantissa_) << (a.exponent_ - e);
    const __int128 mb = static_cast<__int128>(b.mantissa_ < 0 ? -b.mantissa_ : b.mantissa_) << (b.exponent_ - e);
    mag = ma < mb ? std::strong_ordering::less : (ma > mb ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  if (a.sign() > 0) return mag;
  if (mag == std::strong_ordering::less) return std::strong_ordering::greater;
  if (mag == std::strong_ordering::greater) return std::strong_ordering::less;
  return mag;
}

}  // namespace dilmax

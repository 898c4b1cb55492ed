#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace dilmax {

/// Exact dyadic rational mantissa * 2^exponent.
///
/// Every finite double is a dyadic rational, and all support endpoints used
/// by the bump calculus (3/4, 7/8, 2^j - 1/8, ...) are small dyadics, so
/// support arithmetic can be decided exactly instead of in floating point.
/// Values are kept normalized: the mantissa is odd, or zero with exponent 0.
class Dyadic {
 public:
  constexpr Dyadic() = default;
  Dyadic(std::int64_t mantissa, std::int64_t exponent);

  static Dyadic from_double(double value);
  static Dyadic power_of_two(std::int64_t exponent) { return Dyadic(1, exponent); }

  std::int64_t mantissa() const noexcept { return mantissa_; }
  std::int64_t exponent() const noexcept { return exponent_; }
  bool is_zero() const noexcept { return mantissa_ == 0; }
  int sign() const noexcept { return (mantissa_ > 0) - (mantissa_ < 0); }

  /// this * 2^shift, exact.
  Dyadic scaled(std::int64_t shift) const;

  /// Nearest double; saturates to +-inf / 0 outside the double range.
  double to_double() const;
  std::string to_string() const;

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a) { return Dyadic(-a.mantissa_, a.exponent_); }
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

  friend bool operator==(const Dyadic& a, const Dyadic& b) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  std::int64_t mantissa_ = 0;
  std::int64_t exponent_ = 0;
};

/// Closed interval [lo, hi] with dyadic endpoints.
struct DyadicInterval {
  Dyadic lo;
  Dyadic hi;

  DyadicInterval scaled(std::int64_t shift) const { return {lo.scaled(shift), hi.scaled(shift)}; }
  bool contains(const DyadicInterval& other) const { return lo <= other.lo && other.hi <= hi; }
  bool intersects(const DyadicInterval& other) const { return lo <= other.hi && other.lo <= hi; }
  bool contains(const Dyadic& x) const { return lo <= x && x <= hi; }
};

}  // namespace dilmax

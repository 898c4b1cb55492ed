#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace dilmax {

/// Truncated Taylor series f(x0 + h) = sum_i c[i] h^i, i <= Order.
///
/// Arithmetic on jets is forward-mode differentiation: composing the smooth
/// transition, quotients and products of profiles through Jet yields exact
/// derivatives (up to rounding) without finite differences.
template <std::size_t Order>
struct Jet {
  std::array<double, Order + 1> c{};

  static constexpr Jet constant(double v) {
    Jet j;
    j.c[0] = v;
    return j;
  }
  /// The identity function seeded at x0.
  static constexpr Jet variable(double x0) {
    Jet j;
    j.c[0] = x0;
    if constexpr (Order >= 1) j.c[1] = 1.0;
    return j;
  }

  double value() const { return c[0]; }

  /// n-th derivative at the expansion point.
  double derivative(std::size_t n) const {
    double f = 1.0;
    for (std::size_t i = 2; i <= n; ++i) f *= static_cast<double>(i);
    return c[n] * f;
  }

  Jet& operator+=(const Jet& o) {
    for (std::size_t i = 0; i <= Order; ++i) c[i] += o.c[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (std::size_t i = 0; i <= Order; ++i) c[i] -= o.c[i];
    return *this;
  }
  Jet& operator*=(double s) {
    for (auto& v : c) v *= s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator+(Jet a, double s) {
    a.c[0] += s;
    return a;
  }
  friend Jet operator-(double s, const Jet& a) {
    Jet r;
    for (std::size_t i = 0; i <= Order; ++i) r.c[i] = -a.c[i];
    r.c[0] += s;
    return r;
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (std::size_t i = 0; i <= Order; ++i)
      for (std::size_t k = 0; k <= i; ++k) r.c[i] += a.c[k] * b.c[i - k];
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet r;
    for (std::size_t i = 0; i <= Order; ++i) {
      double s = a.c[i];
      for (std::size_t k = 1; k <= i; ++k) s -= b.c[k] * r.c[i - k];
      r.c[i] = s / b.c[0];
    }
    return r;
  }

  friend Jet exp(const Jet& a) {
    // r' = a' r, solved coefficient by coefficient.
    Jet r;
    r.c[0] = std::exp(a.c[0]);
    for (std::size_t i = 1; i <= Order; ++i) {
      double s = 0.0;
      for (std::size_t k = 1; k <= i; ++k) s += static_cast<double>(k) * a.c[k] * r.c[i - k];
      r.c[i] = s / static_cast<double>(i);
    }
    return r;
  }
};

}  // namespace dilmax

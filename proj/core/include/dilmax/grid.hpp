#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dilmax/bump_calculus.hpp"

namespace dilmax::grid {

using cplx = std::complex<double>;
using Point = std::array<double, 2>;  // second component unused when dim == 1

/// Uniform periodic grid: n points per axis on a torus of side L. Samples are
/// stored in FFT order, index i <-> coordinate (i or i - n) * L / n, so the
/// origin is index 0 and coordinates cover [-L/2, L/2).
struct GridSpec {
  int dim = 1;
  std::size_t n = 0;
  double length = 0.0;

  GridSpec() = default;
  GridSpec(int dim, std::size_t n, double length);

  std::size_t size() const noexcept { return dim == 1 ? n : n * n; }
  double spacing() const noexcept { return length / static_cast<double>(n); }
  /// Largest representable frequency n / (2L).
  double nyquist() const noexcept { return 0.5 * static_cast<double>(n) / length; }
  std::ptrdiff_t wrapped(std::size_t i) const noexcept {
    return static_cast<std::ptrdiff_t>(i) - (i >= n / 2 ? static_cast<std::ptrdiff_t>(n) : 0);
  }
  double coordinate(std::size_t i) const noexcept { return static_cast<double>(wrapped(i)) * spacing(); }
  double frequency(std::size_t i) const noexcept { return static_cast<double>(wrapped(i)) / length; }
  Point position(std::size_t flat) const noexcept;
  Point frequency_point(std::size_t flat) const noexcept;
  std::array<std::size_t, 2> extents() const noexcept { return {n, n}; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

inline double norm(const Point& p) { return std::hypot(p[0], p[1]); }

/// m(2^log2_scale * xi). Carrying the dyadic scale separately lets exact
/// symbols (bump sums) be dilated by 2^k far beyond the double range.
using SymbolFn = std::function<cplx(const Point& xi, std::int64_t log2_scale)>;

/// Plain callback; dyadic scales are applied with ldexp.
SymbolFn make_symbol(std::function<cplx(const Point&)> fn);
/// Radial bump sum with exact dyadic dilation.
SymbolFn make_symbol(const bump::BumpSumMultiplier& m);

class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(GridSpec spec, std::vector<cplx> samples);

  static GridFunction zeros(const GridSpec& spec) { return {spec, std::vector<cplx>(spec.size())}; }
  static GridFunction sample(const GridSpec& spec, const std::function<cplx(const Point&)>& fn);

  const GridSpec& spec() const noexcept { return spec_; }
  std::span<const cplx> samples() const noexcept { return samples_; }
  std::span<cplx> samples() noexcept { return samples_; }
  cplx operator[](std::size_t i) const { return samples_[i]; }

 private:
  GridSpec spec_;
  std::vector<cplx> samples_;
};

/// Values on the frequency lattice {m / L}: either stored (as produced by
/// dft) or a SymbolFn evaluated lazily at t * xi, so a multiplier is never
/// materialized over its full natural domain.
class GridSymbol {
 public:
  GridSymbol() = default;
  static GridSymbol lazy(const GridSpec& spec, SymbolFn fn);
  static GridSymbol stored(const GridSpec& spec, std::vector<cplx> values);

  const GridSpec& spec() const noexcept { return spec_; }
  bool is_lazy() const noexcept { return static_cast<bool>(fn_); }
  const SymbolFn& function() const noexcept { return fn_; }
  std::span<const cplx> values() const noexcept { return values_; }

  /// m(2^log2_scale * t * xi_index). Stored symbols only support t = 1,
  /// log2_scale = 0 (NotEvaluable otherwise).
  cplx at(std::size_t index, double t = 1.0, std::int64_t log2_scale = 0) const;

 private:
  GridSpec spec_;
  std::vector<cplx> values_;
  SymbolFn fn_;
};

/// f^(xi_m) ~ integral f(x) exp(-2 pi i x.xi_m) dx by the Riemann sum, so
/// idft(dft(f)) == f and a unit-mass spike maps to the constant symbol 1.
GridSymbol dft(const GridFunction& f);
GridFunction idft(const GridSymbol& s);

/// F^-1[m(t .) f^].
GridFunction apply_symbol(const GridSymbol& m, double t, const GridFunction& f);
/// F^-1[m(2^k .) f^].
GridFunction apply_dyadic(const GridSymbol& m, std::int64_t k, const GridFunction& f);

/// Pointwise sup over t in ts of |F^-1[m(t .) f^]|; real-valued result.
GridFunction maximal(const GridSymbol& m, std::span<const double> ts, const GridFunction& f);
/// Pointwise sup over k in ks of |F^-1[m(2^k .) f^]|.
GridFunction maximal_dyadic(const GridSymbol& m, std::span<const std::int64_t> ks, const GridFunction& f);
/// Pointwise sup over the family of |F^-1[m_nu f^]|.
GridFunction finite_family_maximal(std::span<const GridSymbol> ms, const GridFunction& f);

/// Riemann quadrature (L/n)^(d/p) (sum |f|^p)^(1/p); max modulus for p = inf.
double lp_norm(const GridFunction& f, double p);

/// Result of a kernel-side quadrature together with its periodization check:
/// alias_fraction is the share of the integrand carried by |x| > L/4 (for sup
/// norms, the ratio of the sup there to the global sup).
struct KernelNorm {
  double value = 0.0;
  double alias_fraction = 0.0;
  bool alias_warning = false;
};

inline constexpr double kAliasThreshold = 1e-6;

using Radial = std::function<double(double)>;

/// The Littlewood-Paley localizer phi(|xi|) used throughout (supported in
/// 1/2 < |xi| < 3/2).
const Radial& standard_localizer();

/// F^-1[phi(.) m(2^k .)] on m's grid.
GridFunction localized_kernel(const GridSymbol& m, std::int64_t k, const Radial& phi = standard_localizer());

/// (integral |F^-1[phi m(2^k .)]|^p' (1 + |x|)^(alpha p') dx)^(1/p'), |x| the
/// torus distance to the origin.
KernelNorm weighted_kernel_norm(const GridSymbol& m, std::int64_t k, double p_dual, double alpha,
                                const Radial& phi = standard_localizer());

/// sup_x (1 + |x|)^(d + eps) |F^-1[phi m(2^k .)](x)|.
KernelNorm weighted_kernel_sup(const GridSymbol& m, std::int64_t k, double eps,
                               const Radial& phi = standard_localizer());

/// Bessel-potential norm ||(I - Delta)^(gamma/2) u||_r of u treated as a
/// function of xi, sampled at the grid's spatial positions. r in {1, 2}.
KernelNorm sobolev_norm(const GridFunction& u, int r, double gamma);
/// Same, sampling a lazy symbol's function at the spatial positions.
KernelNorm sobolev_norm(const GridSymbol& u, int r, double gamma);

}  // namespace dilmax::grid

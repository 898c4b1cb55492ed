#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "dilmax/profile.hpp"

namespace dilmax::bump {

using cplx = std::complex<double>;

/// One dilate coeff * Phi(2^-scale |xi|).
struct BumpTerm {
  std::int64_t scale;
  cplx coeff;
};

/// m(xi) = sum_i coeff_i * Phi(2^-scale_i |xi|), terms sorted by scale with
/// duplicates merged. In one dimension |xi| is the modulus of xi.
class BumpSumMultiplier {
 public:
  explicit BumpSumMultiplier(std::vector<BumpTerm> terms = {},
                             const SmoothProfile& profile = SmoothProfile::standard_bump());

  std::span<const BumpTerm> terms() const noexcept { return terms_; }
  const SmoothProfile& profile() const noexcept { return profile_; }
  bool empty() const noexcept { return terms_.empty(); }

  cplx operator()(double xi) const { return dilated(0, xi); }
  /// m(2^k xi) without forming 2^k, so huge k stay exact.
  cplx dilated(std::int64_t k, double xi) const;
  /// Taylor jet of xi -> m(2^k xi) at xi (xi != 0), real and imaginary parts.
  std::pair<ProfileJet, ProfileJet> dilated_jet(std::int64_t k, double xi) const;

  /// Terms whose dilate 2^(scale - k) [a, b] can contain r (r >= 0), as an
  /// index range into terms().
  std::pair<std::size_t, std::size_t> active_range(std::int64_t k, double r) const;

 private:
  std::vector<BumpTerm> terms_;
  SmoothProfile profile_;
};

struct EnvelopeCacheParams {
  int log2_points = 18;
  double half_width = 1024.0;
};

/// Band-limited envelope Psi with transform Psi^(xi) = hat(|xi|).
///
/// Psi is tabulated once by an inverse DFT on [-W, W] and evaluated by cubic
/// interpolation. The table is shared between copies; copies differ only in
/// an amplitude factor (see normalized()).
class Envelope {
 public:
  explicit Envelope(const SmoothProfile& hat = SmoothProfile::envelope_hat(), EnvelopeCacheParams params = {});

  /// Unnormalized standard envelope, built on first use.
  static const Envelope& standard();

  /// Copy rescaled so that lp_norm(p) == 1 (p = infinity allowed).
  Envelope normalized(double p) const;
  /// Copy with the given amplitude factor.
  Envelope with_scale(double scale) const;

  double scale() const noexcept { return scale_; }
  const SmoothProfile& hat() const noexcept;
  /// Radius of the transform's support, exactly.
  const Dyadic& support_radius() const noexcept;
  double half_width() const noexcept;
  double spacing() const noexcept;

  /// scale * hat(|xi|).
  double transform(double xi) const;
  /// scale * Psi(x); throws OutOfWindow for |x| > W.
  double operator()(double x) const;
  /// L^p norm of the scaled envelope by quadrature on the table.
  double lp_norm(double p) const;

 private:
  struct Table;
  std::shared_ptr<const Table> table_;
  double scale_ = 1.0;
};

struct Modulation {
  std::int64_t freq;  // j: the term is modulated by exp(2 pi i 2^j x1)
  cplx coeff;
};

/// f(x) = A * sum_j c_j exp(2 pi i 2^j y) Psi(y), y = 2^e x, with
/// A = scalar * 2^(e / norm_index) when norm_index is set (the L^p-preserving
/// rescaling), A = scalar otherwise. The dilation exponent e is symbolic:
/// L^p norms use the exact scaling identity and never form 2^e.
class ModulatedFunction {
 public:
  explicit ModulatedFunction(std::vector<Modulation> terms = {}, Envelope envelope = Envelope::standard(),
                             std::int64_t dilation_exp = 0, double scalar = 1.0,
                             std::optional<double> norm_index = std::nullopt);

  std::span<const Modulation> terms() const noexcept { return terms_; }
  const Envelope& envelope() const noexcept { return envelope_; }
  std::int64_t dilation_exp() const noexcept { return dilation_exp_; }
  double scalar() const noexcept { return scalar_; }
  const std::optional<double>& norm_index() const noexcept { return norm_index_; }

  /// Same envelope and rescaling, new coefficients.
  ModulatedFunction with_terms(std::vector<Modulation> terms) const;

  friend ModulatedFunction operator+(const ModulatedFunction& a, const ModulatedFunction& b);

 private:
  std::vector<Modulation> terms_;
  Envelope envelope_;
  std::int64_t dilation_exp_ = 0;
  double scalar_ = 1.0;
  std::optional<double> norm_index_;
};

enum class OverlapClass { Flat, Disjoint, Partial };

/// Classifies Phi(2^(k-M) |xi|) against the support [2^j - r, 2^j + r] of the
/// j-th modulated envelope, r the envelope's transform radius. Exact.
OverlapClass overlap_class(std::int64_t scale, std::int64_t k, std::int64_t freq, const SmoothProfile& profile,
                           const Envelope& envelope);

/// F^-1[m(2^k .) f^]. Every (term, modulation) pair must be Flat or Disjoint;
/// otherwise PartialOverlap is thrown.
ModulatedFunction apply_dilated(const BumpSumMultiplier& m, std::int64_t k, const ModulatedFunction& f);

/// f(x). Throws OutOfWindow when 2^e x leaves the envelope table.
cplx pointwise_eval(const ModulatedFunction& f, double x);

/// sup over k in ks of |apply_dilated(m, k, f)(x)| at each point.
std::vector<double> maximal_pointwise(const BumpSumMultiplier& m, std::span<const std::int64_t> ks,
                                      const ModulatedFunction& f, std::span<const double> points);

/// Riemann lattice for the L^p quadratures below: y in (1/samples_per_unit) Z
/// with |y| <= W, in the rescaled variable y = 2^e x.
struct Quadrature {
  int samples_per_unit = 0;  // 0: choose 2^(max freq + 6), at least 128

  int resolve(const ModulatedFunction& f) const;
};

/// ||f||_p, exact in the dilation exponent.
double lp_norm(const ModulatedFunction& f, double p, Quadrature q = {});

/// || sup_{k in ks} |apply_dilated(m, k, f)| ||_p, exact in the dilation
/// exponent. The trigonometric factor of every output is 1-periodic in y, so
/// it is evaluated once per lattice residue.
double maximal_lp_norm(const BumpSumMultiplier& m, std::span<const std::int64_t> ks, const ModulatedFunction& f,
                       double p, Quadrature q = {});

}  // namespace dilmax::bump

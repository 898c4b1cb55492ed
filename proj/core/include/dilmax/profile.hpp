#pragma once

#include <string>

#include "dilmax/dyadic.hpp"
#include "dilmax/jet.hpp"

namespace dilmax {

inline constexpr std::size_t kMaxDerivativeOrder = 4;
using ProfileJet = Jet<kMaxDerivativeOrder>;

/// C-infinity step: 0 for t <= 0, 1 for t >= 1, built from exp(-1/t).
double smooth_transition(double t);
ProfileJet smooth_transition(const ProfileJet& t);

/// theta: 0 for r <= 1/2, 1 for r >= 3/4, smooth_transition in between.
double cutoff_ramp(double r);
/// chi(r) = theta(r) - theta(r/2): supported in [1/2, 3/2], and
/// sum over l in Z of chi(2^-l r) telescopes to 1 for r > 0.
double annulus_cutoff(double r);
ProfileJet annulus_cutoff(const ProfileJet& r);

/// Radial bump in [0, 1]: zero off the open outer interval (a, b), equal to
/// one on the flat interval [c, d], product of two smooth_transition ramps
/// in between. When c == a the lower ramp is absent and the profile is flat
/// down to a (used for the envelope transform, which is flat at the origin).
class SmoothProfile {
 public:
  SmoothProfile(DyadicInterval outer, DyadicInterval flat, std::string name = "custom");

  /// Phi: supported in [3/4, 5/4], flat on [7/8, 9/8].
  static const SmoothProfile& standard_bump();
  /// Transform of the envelope: supported in [0, 1/8], flat on [0, 1/16].
  static const SmoothProfile& envelope_hat();

  double operator()(double r) const;
  ProfileJet operator()(const ProfileJet& r) const;
  /// d^order/dr^order at r, order <= 4.
  double derivative(double r, std::size_t order) const;

  const DyadicInterval& outer() const noexcept { return outer_; }
  const DyadicInterval& flat() const noexcept { return flat_; }
  const std::string& name() const noexcept { return name_; }
  double outer_lo() const noexcept { return a_; }
  double outer_hi() const noexcept { return b_; }

 private:
  DyadicInterval outer_;
  DyadicInterval flat_;
  std::string name_;
  double a_, b_, c_, d_;
};

}  // namespace dilmax

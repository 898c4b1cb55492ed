#include "dilmax/profile.hpp"

#include <cmath>

#include "dilmax/errors.hpp"

namespace dilmax {
namespace {

// exp(-1/t) is below the smallest normal double once 1/t > 708; treating it
// as exactly zero there keeps jets free of 0 * inf.
constexpr double kEtaCutoff = 1.0 / 700.0;

double eta(double t) { return t <= kEtaCutoff ? 0.0 : std::exp(-1.0 / t); }

}  // namespace

double smooth_transition(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = eta(t);
  const double b = eta(1.0 - t);
  return a / (a + b);
}

ProfileJet smooth_transition(const ProfileJet& t) {
  const double t0 = t.value();
  if (t0 <= kEtaCutoff) return ProfileJet{};
  if (t0 >= 1.0 - kEtaCutoff) return ProfileJet::constant(1.0);
  const ProfileJet a = exp(-1.0 * (ProfileJet::constant(1.0) / t));
  const ProfileJet b = exp(-1.0 * (ProfileJet::constant(1.0) / (1.0 - t)));
  return a / (a + b);
}

double cutoff_ramp(double r) { return smooth_transition(4.0 * r - 2.0); }

double annulus_cutoff(double r) {
  if (r <= 0.5 || r >= 1.5) return 0.0;
  return cutoff_ramp(r) - cutoff_ramp(0.5 * r);
}

ProfileJet annulus_cutoff(const ProfileJet& r) {
  const double r0 = r.value();
  if (r0 <= 0.5 || r0 >= 1.5) return ProfileJet{};
  return smooth_transition(4.0 * r + (-2.0)) - smooth_transition(2.0 * r + (-2.0));
}

SmoothProfile::SmoothProfile(DyadicInterval outer, DyadicInterval flat, std::string name)
    : outer_(outer), flat_(flat), name_(std::move(name)) {
  if (!(outer_.lo <= flat_.lo && flat_.lo <= flat_.hi && flat_.hi < outer_.hi)) {
    throw InvalidArgument("profile: need a <= c <= d < b");
  }
  if (outer_.lo.sign() < 0) throw InvalidArgument("profile: radial support must be nonnegative");
  a_ = outer_.lo.to_double();
  b_ = outer_.hi.to_double();
  c_ = flat_.lo.to_double();
  d_ = flat_.hi.to_double();
}

const SmoothProfile& SmoothProfile::standard_bump() {
  static const SmoothProfile p({Dyadic(3, -2), Dyadic(5, -2)}, {Dyadic(7, -3), Dyadic(9, -3)}, "phi-standard");
  return p;
}

const SmoothProfile& SmoothProfile::envelope_hat() {
  static const SmoothProfile p({Dyadic(), Dyadic(1, -3)}, {Dyadic(), Dyadic(1, -4)}, "psi-standard");
  return p;
}

double SmoothProfile::operator()(double r) const {
  if (c_ > a_) {
    if (r <= a_) return 0.0;
  } else if (r < a_) {
    return 0.0;
  }
  if (r >= b_) return 0.0;
  const double lower = c_ > a_ ? smooth_transition((r - a_) / (c_ - a_)) : 1.0;
  const double upper = smooth_transition((b_ - r) / (b_ - d_));
  return lower * upper;
}

ProfileJet SmoothProfile::operator()(const ProfileJet& r) const {
  const double r0 = r.value();
  if ((c_ > a_ && r0 <= a_) || r0 < a_ || r0 >= b_) return ProfileJet{};
  ProfileJet upper = smooth_transition((b_ - r) * (1.0 / (b_ - d_)));
  if (c_ > a_) {
    ProfileJet lower = smooth_transition((r + (-a_)) * (1.0 / (c_ - a_)));
    return lower * upper;
  }
  return upper;
}

double SmoothProfile::derivative(double r, std::size_t order) const {
  if (order > kMaxDerivativeOrder) throw InvalidArgument("profile derivative order above 4");
  return (*this)(ProfileJet::variable(r)).derivative(order);
}

}  // namespace dilmax

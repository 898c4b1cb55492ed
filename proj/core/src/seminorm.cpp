#include "dilmax/seminorm.hpp"

#include <algorithm>
#include <cmath>

#include "dilmax/errors.hpp"
#include "dilmax/profile.hpp"

namespace dilmax {
namespace {

void check(int order, const SeminormSampling& s) {
  if (order < 0 || order > 2) throw InvalidArgument("seminorm order must be 0, 1 or 2");
  if (!(s.xi_min > 0.0) || !(s.xi_max > s.xi_min) || s.points_per_octave < 1) {
    throw InvalidArgument("seminorm sampling needs 0 < xi_min < xi_max");
  }
}

template <typename Fn>
void for_each_radius(const SeminormSampling& s, Fn&& fn) {
  const double octaves = std::log2(s.xi_max / s.xi_min);
  const auto count = static_cast<std::int64_t>(std::ceil(octaves * s.points_per_octave));
  for (std::int64_t i = 0; i <= count; ++i) {
    fn(std::min(s.xi_max, s.xi_min * std::exp2(static_cast<double>(i) / s.points_per_octave)));
  }
}

double modulus(const ProfileJet& re, const ProfileJet& im, std::size_t a) {
  return std::hypot(re.derivative(a), im.derivative(a));
}

}  // namespace

double mikhlin_seminorm(const bump::BumpSumMultiplier& m, int order, const SeminormSampling& s) {
  check(order, s);
  double best = 0.0;
  for_each_radius(s, [&](double xi) {
    const auto [re, im] = m.dilated_jet(0, xi);
    double pw = 1.0;
    for (int a = 0; a <= order; ++a) {
      best = std::max(best, pw * modulus(re, im, static_cast<std::size_t>(a)));
      pw *= xi;
    }
  });
  return best;
}

double mikhlin_seminorm(const std::function<grid::cplx(double)>& m, int order, const SeminormSampling& s) {
  check(order, s);
  double best = 0.0;
  for_each_radius(s, [&](double xi) {
    const double h = xi * 1e-4;
    const grid::cplx f0 = m(xi);
    best = std::max(best, std::abs(f0));
    if (order < 1) return;
    const grid::cplx fp = m(xi + h), fm = m(xi - h);
    best = std::max(best, xi * std::abs((fp - fm) / (2.0 * h)));
    if (order < 2) return;
    best = std::max(best, xi * xi * std::abs((fp - 2.0 * f0 + fm) / (h * h)));
  });
  return best;
}

double localized_derivative_sup(const bump::BumpSumMultiplier& m, std::int64_t k, int order, int samples) {
  if (order < 0 || order > static_cast<int>(kMaxDerivativeOrder)) throw InvalidArgument("derivative order");
  if (samples < 2) throw InvalidArgument("need at least two samples");
  double best = 0.0;
  for (int i = 1; i < samples; ++i) {
    const double xi = 0.5 + static_cast<double>(i) / samples;
    const ProfileJet phi = annulus_cutoff(ProfileJet::variable(xi));
    const auto [re, im] = m.dilated_jet(k, xi);
    const ProfileJet pre = phi * re;
    const ProfileJet pim = phi * im;
    for (int a = 0; a <= order; ++a) best = std::max(best, modulus(pre, pim, static_cast<std::size_t>(a)));
  }
  return best;
}

}  // namespace dilmax

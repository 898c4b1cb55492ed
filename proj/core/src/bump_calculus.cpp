#include "dilmax/bump_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "dilmax/errors.hpp"
#include "dilmax/fft.hpp"
#include "dilmax/parallel.hpp"

namespace dilmax::bump {
namespace {

constexpr std::int64_t kMaxFreqExp = 60;

// exp(2 pi i 2^j y). ldexp is exact, so the phase is reduced without error
// before the trig call even for large j.
cplx modulation_phase(std::int64_t j, double y) {
  const double t = std::ldexp(y, static_cast<int>(j));
  const double frac = t - std::floor(t);
  const double ang = 2.0 * std::numbers::pi * frac;
  return {std::cos(ang), std::sin(ang)};
}

double finite_pow(double base, double p) { return p == 2.0 ? base * base : std::pow(base, p); }

}  // namespace

// ---------------------------------------------------------------- multiplier

BumpSumMultiplier::BumpSumMultiplier(std::vector<BumpTerm> terms, const SmoothProfile& profile)
    : profile_(profile) {
  std::stable_sort(terms.begin(), terms.end(), [](const BumpTerm& a, const BumpTerm& b) { return a.scale < b.scale; });
  for (const auto& t : terms) {
    if (!terms_.empty() && terms_.back().scale == t.scale) {
      terms_.back().coeff += t.coeff;
    } else {
      terms_.push_back(t);
    }
  }
}

std::pair<std::size_t, std::size_t> BumpSumMultiplier::active_range(std::int64_t k, double r) const {
  const double a = profile_.outer_lo();
  const double b = profile_.outer_hi();
  if (r <= 0.0) {
    if (a == 0.0) return {0, terms_.size()};
    return {0, 0};
  }
  // a < 2^(k - M) r < b  <=>  k + log2(r / b) < M < k + log2(r / a); pad by one.
  const double lr = std::log2(r) + static_cast<double>(k);
  const auto lo = static_cast<std::int64_t>(std::floor(lr - std::log2(b))) - 1;
  auto first = std::lower_bound(terms_.begin(), terms_.end(), lo,
                                [](const BumpTerm& t, std::int64_t v) { return t.scale < v; });
  auto last = terms_.end();
  if (a > 0.0) {
    const auto hi = static_cast<std::int64_t>(std::ceil(lr - std::log2(a))) + 1;
    last = std::upper_bound(first, terms_.end(), hi, [](std::int64_t v, const BumpTerm& t) { return v < t.scale; });
  }
  return {static_cast<std::size_t>(first - terms_.begin()), static_cast<std::size_t>(last - terms_.begin())};
}

cplx BumpSumMultiplier::dilated(std::int64_t k, double xi) const {
  const double r = std::abs(xi);
  const auto [first, last] = active_range(k, r);
  cplx sum{};
  for (std::size_t i = first; i < last; ++i) {
    const std::int64_t shift = k - terms_[i].scale;
    const double arg = shift > 2000 ? HUGE_VAL : (shift < -2000 ? 0.0 : std::ldexp(r, static_cast<int>(shift)));
    const double v = profile_(arg);
    if (v != 0.0) sum += terms_[i].coeff * v;
  }
  return sum;
}

std::pair<ProfileJet, ProfileJet> BumpSumMultiplier::dilated_jet(std::int64_t k, double xi) const {
  // |xi| as a jet in xi: the identity for xi > 0, its negative for xi < 0.
  ProfileJet radius = ProfileJet::variable(std::abs(xi));
  if (xi < 0.0) radius.c[1] = -1.0;
  const auto [first, last] = active_range(k, std::abs(xi));
  ProfileJet re, im;
  for (std::size_t i = first; i < last; ++i) {
    const std::int64_t shift = k - terms_[i].scale;
    if (shift > 2000 || shift < -2000) continue;
    const ProfileJet v = profile_(radius * std::ldexp(1.0, static_cast<int>(shift)));
    re += v * terms_[i].coeff.real();
    im += v * terms_[i].coeff.imag();
  }
  return {re, im};
}

// --------------------------------------------------------------- envelope

struct Envelope::Table {
  SmoothProfile hat;
  EnvelopeCacheParams params;
  Dyadic radius;
  double spacing = 0.0;
  std::vector<double> values;  // Psi(-W + i * spacing), i = 0..n (last = first)
};

Envelope::Envelope(const SmoothProfile& hat, EnvelopeCacheParams params) {
  if (params.log2_points < 8 || params.log2_points > 24) throw InvalidArgument("envelope table size");
  if (!(params.half_width > 0.0)) throw InvalidArgument("envelope half width must be positive");
  if (hat.outer().lo.sign() != 0 || hat.flat().lo.sign() != 0) {
    throw InvalidArgument("envelope transform must be flat at the origin");
  }
  auto table = std::make_shared<Table>(Table{hat, params, hat.outer().hi, 0.0, {}});
  const std::size_t n = std::size_t{1} << params.log2_points;
  const double period = 2.0 * params.half_width;
  table->spacing = period / static_cast<double>(n);
  if (hat.outer_hi() >= 0.5 * static_cast<double>(n) / period) {
    throw InvalidArgument("envelope table does not resolve the transform's band");
  }

  // Psi(x) = (1/P) sum_m hat(|m/P|) exp(2 pi i m x / P): the P-periodization of
  // Psi, exact by Poisson summation because hat is smooth and compactly supported.
  std::vector<fft::cplx> buf(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto m = static_cast<std::int64_t>(i) - (i >= n / 2 ? static_cast<std::int64_t>(n) : 0);
    buf[i] = hat(std::abs(static_cast<double>(m) / period)) / period;
  }
  fft::transform_1d(buf, fft::Direction::Backward);
  table->values.resize(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    // Table index i holds x = -W + i * spacing, i.e. FFT index i - n/2 (mod n).
    const std::size_t src = (i + n / 2) % n;
    table->values[i] = buf[src].real();
  }
  table->values[n] = table->values[0];
  table_ = std::move(table);
}

const Envelope& Envelope::standard() {
  static const Envelope env;
  return env;
}

Envelope Envelope::normalized(double p) const {
  Envelope copy = *this;
  copy.scale_ = 1.0;
  const double norm = copy.lp_norm(p);
  copy.scale_ = 1.0 / norm;
  return copy;
}

Envelope Envelope::with_scale(double scale) const {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw InvalidArgument("envelope scale must be positive");
  Envelope copy = *this;
  copy.scale_ = scale;
  return copy;
}

const SmoothProfile& Envelope::hat() const noexcept { return table_->hat; }
const Dyadic& Envelope::support_radius() const noexcept { return table_->radius; }
double Envelope::half_width() const noexcept { return table_->params.half_width; }
double Envelope::spacing() const noexcept { return table_->spacing; }

double Envelope::transform(double xi) const { return scale_ * table_->hat(std::abs(xi)); }

double Envelope::operator()(double x) const {
  const Table& t = *table_;
  const double w = t.params.half_width;
  if (!(std::abs(x) <= w)) throw OutOfWindow("envelope evaluated outside [-W, W]");
  const double u = (x + w) / t.spacing;
  const auto n = static_cast<std::ptrdiff_t>(t.values.size()) - 1;
  auto i = static_cast<std::ptrdiff_t>(std::floor(u));
  i = std::clamp<std::ptrdiff_t>(i, 0, n - 1);
  const double s = u - static_cast<double>(i);
  // Four-point Lagrange interpolation on i-1 .. i+2, periodic at the ends.
  auto at = [&](std::ptrdiff_t k) { return t.values[static_cast<std::size_t>(((k % n) + n) % n)]; };
  const double f0 = at(i - 1), f1 = at(i), f2 = at(i + 1), f3 = at(i + 2);
  const double v = -s * (s - 1.0) * (s - 2.0) / 6.0 * f0 + (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0 * f1 -
                   (s + 1.0) * s * (s - 2.0) / 2.0 * f2 + (s + 1.0) * s * (s - 1.0) / 6.0 * f3;
  return scale_ * v;
}

double Envelope::lp_norm(double p) const {
  if (!(p >= 1.0)) throw InvalidArgument("lp_norm needs p >= 1");
  const auto& v = table_->values;
  const std::size_t n = v.size() - 1;
  if (std::isinf(p)) {
    double mx = 0.0;
    for (std::size_t i = 0; i < n; ++i) mx = std::max(mx, std::abs(v[i]));
    return scale_ * mx;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += finite_pow(std::abs(v[i]), p);
  return scale_ * std::pow(acc * table_->spacing, 1.0 / p);
}

// ------------------------------------------------------ modulated function

ModulatedFunction::ModulatedFunction(std::vector<Modulation> terms, Envelope envelope, std::int64_t dilation_exp,
                                     double scalar, std::optional<double> norm_index)
    : terms_(std::move(terms)),
      envelope_(std::move(envelope)),
      dilation_exp_(dilation_exp),
      scalar_(scalar),
      norm_index_(norm_index) {
  std::sort(terms_.begin(), terms_.end(), [](const Modulation& a, const Modulation& b) { return a.freq < b.freq; });
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].freq < 1 || terms_[i].freq > kMaxFreqExp) {
      throw InvalidArgument("frequency exponent must lie in [1, 60]");
    }
    if (i > 0 && terms_[i].freq == terms_[i - 1].freq) throw InvalidArgument("duplicate frequency exponent");
  }
  if (norm_index_ && !(*norm_index_ >= 1.0)) throw InvalidArgument("norm index must be >= 1");
  if (!(envelope_.support_radius() < Dyadic(1, -1))) {
    throw InvalidArgument("envelope transform radius must be below 1/2 for disjoint modulations");
  }
}

ModulatedFunction ModulatedFunction::with_terms(std::vector<Modulation> terms) const {
  return ModulatedFunction(std::move(terms), envelope_, dilation_exp_, scalar_, norm_index_);
}

ModulatedFunction operator+(const ModulatedFunction& a, const ModulatedFunction& b) {
  if (a.dilation_exp_ != b.dilation_exp_ || a.scalar_ != b.scalar_ || a.norm_index_ != b.norm_index_ ||
      a.envelope_.scale() != b.envelope_.scale()) {
    throw InvalidArgument("sum of modulated functions needs identical envelope and rescaling");
  }
  std::map<std::int64_t, cplx> acc;
  for (const auto& t : a.terms_) acc[t.freq] += t.coeff;
  for (const auto& t : b.terms_) acc[t.freq] += t.coeff;
  std::vector<Modulation> terms;
  for (const auto& [j, c] : acc) terms.push_back({j, c});
  return a.with_terms(std::move(terms));
}

// --------------------------------------------------------------- operations

OverlapClass overlap_class(std::int64_t scale, std::int64_t k, std::int64_t freq, const SmoothProfile& profile,
                           const Envelope& envelope) {
  if (freq < 1) throw InvalidArgument("overlap_class needs freq >= 1");
  const Dyadic center = Dyadic::power_of_two(freq);
  const Dyadic& r = envelope.support_radius();
  const DyadicInterval target{center - r, center + r};
  // Phi(2^(k - M) |xi|) lives on 2^(M - k) [a, b] and is flat on 2^(M - k) [c, d].
  const std::int64_t shift = scale - k;
  if (profile.flat().scaled(shift).contains(target)) return OverlapClass::Flat;
  if (!profile.outer().scaled(shift).intersects(target)) return OverlapClass::Disjoint;
  return OverlapClass::Partial;
}

ModulatedFunction apply_dilated(const BumpSumMultiplier& m, std::int64_t k, const ModulatedFunction& f) {
  const auto terms = m.terms();
  const std::int64_t eff = k + f.dilation_exp();  // f^ lives at 2^(e + j)
  const double r = f.envelope().support_radius().to_double();
  const double a = m.profile().outer_lo();
  const double b = m.profile().outer_hi();
  std::vector<Modulation> out;
  for (const auto& mod : f.terms()) {
    const double center = std::ldexp(1.0, static_cast<int>(mod.freq));
    // Only scales M with 2^(M - eff) [a, b] near [2^j - r, 2^j + r] can be
    // non-disjoint; everything outside this padded range is checked implicitly.
    const auto lo = eff + static_cast<std::int64_t>(std::floor(std::log2((center - r) / b))) - 1;
    auto first = std::lower_bound(terms.begin(), terms.end(), lo,
                                  [](const BumpTerm& t, std::int64_t v) { return t.scale < v; });
    auto last = terms.end();
    if (a > 0.0) {
      const auto hi = eff + static_cast<std::int64_t>(std::ceil(std::log2((center + r) / a))) + 1;
      last = std::upper_bound(first, terms.end(), hi, [](std::int64_t v, const BumpTerm& t) { return v < t.scale; });
    }
    cplx coeff{};
    bool hit = false;
    for (auto it = first; it != last; ++it) {
      switch (overlap_class(it->scale, eff, mod.freq, m.profile(), f.envelope())) {
        case OverlapClass::Flat:
          coeff += it->coeff * mod.coeff;
          hit = true;
          break;
        case OverlapClass::Disjoint:
          break;
        case OverlapClass::Partial:
          throw PartialOverlap(it->scale, k, mod.freq);
      }
    }
    if (hit && coeff != cplx{}) out.push_back({mod.freq, coeff});
  }
  return f.with_terms(std::move(out));
}

namespace {

double amplitude(const ModulatedFunction& f) {
  double a = f.scalar();
  if (f.norm_index() && f.dilation_exp() != 0) {
    a *= std::exp2(static_cast<double>(f.dilation_exp()) / *f.norm_index());
  }
  return a;
}

double rescaled_point(const ModulatedFunction& f, double x) {
  const std::int64_t e = f.dilation_exp();
  if (e > 2000 || e < -2000) {
    if (x != 0.0) throw OutOfWindow("point leaves the envelope window after rescaling");
    return 0.0;
  }
  return std::ldexp(x, static_cast<int>(e));
}

// Norm factor of x -> A u(2^e x) relative to ||u||_p, exact in e as far as
// the double range allows.
double rescaled_norm_factor(const ModulatedFunction& f, double p) {
  double expo = 0.0;
  const auto e = static_cast<double>(f.dilation_exp());
  if (f.norm_index()) expo += e / *f.norm_index();
  if (!std::isinf(p)) expo -= e / p;
  return std::abs(f.scalar()) * std::exp2(expo);
}

// sum over lattice y = i/S, |y| <= W, of |Psi(y)|^p * Q(i mod S)^p with Q
// tabulated on residues (Q is 1-periodic). Returns the L^p norm of Psi * Q
// (or the sup for p = infinity) in the y variable.
double periodic_weighted_norm(const Envelope& env, std::span<const double> residue_factor, int samples_per_unit,
                              double p) {
  const double w = env.half_width();
  const auto s = static_cast<std::int64_t>(samples_per_unit);
  const auto imax = static_cast<std::int64_t>(std::floor(w * static_cast<double>(s)));
  const std::size_t count = static_cast<std::size_t>(2 * imax + 1);
  std::vector<double> per_chunk;
  const bool sup = std::isinf(p);
  // Fixed chunking and in-order reduction keep the sum deterministic.
  constexpr std::size_t kChunk = 1 << 16;
  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  per_chunk.assign(chunks, 0.0);
  parallel_for(chunks, [&](std::size_t c0, std::size_t c1) {
    for (std::size_t c = c0; c < c1; ++c) {
      double acc = 0.0;
      const std::size_t begin = c * kChunk;
      const std::size_t end = std::min(count, begin + kChunk);
      for (std::size_t idx = begin; idx < end; ++idx) {
        const std::int64_t i = static_cast<std::int64_t>(idx) - imax;
        const double q = residue_factor[static_cast<std::size_t>(((i % s) + s) % s)];
        if (q == 0.0) continue;
        const double v = std::abs(env(static_cast<double>(i) / static_cast<double>(s))) * q;
        acc = sup ? std::max(acc, v) : acc + finite_pow(v, p);
      }
      per_chunk[c] = acc;
    }
  });
  double total = 0.0;
  for (double v : per_chunk) total = sup ? std::max(total, v) : total + v;
  if (sup) return total;
  return std::pow(total / static_cast<double>(s), 1.0 / p);
}

// Residue table of sup over coefficient sets of |sum_j c_j exp(2 pi i 2^j y)|.
std::vector<double> trig_sup_table(const std::vector<std::vector<Modulation>>& sets, int samples_per_unit) {
  std::int64_t jmax = 0;
  for (const auto& set : sets)
    for (const auto& t : set) jmax = std::max(jmax, t.freq);
  const auto s = static_cast<std::size_t>(samples_per_unit);
  std::vector<double> table(s, 0.0);
  parallel_for(s, [&](std::size_t r0, std::size_t r1) {
    std::vector<cplx> phase(static_cast<std::size_t>(jmax) + 1);
    for (std::size_t r = r0; r < r1; ++r) {
      const double y = static_cast<double>(r) / static_cast<double>(s);
      for (std::int64_t j = 1; j <= jmax; ++j) phase[static_cast<std::size_t>(j)] = modulation_phase(j, y);
      double best = 0.0;
      for (const auto& set : sets) {
        cplx acc{};
        for (const auto& t : set) acc += t.coeff * phase[static_cast<std::size_t>(t.freq)];
        best = std::max(best, std::abs(acc));
      }
      table[r] = best;
    }
  });
  return table;
}

}  // namespace

cplx pointwise_eval(const ModulatedFunction& f, double x) {
  if (f.terms().empty()) return {};
  const double y = rescaled_point(f, x);
  const double psi = f.envelope()(y);
  cplx acc{};
  for (const auto& t : f.terms()) acc += t.coeff * modulation_phase(t.freq, y);
  return amplitude(f) * psi * acc;
}

std::vector<double> maximal_pointwise(const BumpSumMultiplier& m, std::span<const std::int64_t> ks,
                                      const ModulatedFunction& f, std::span<const double> points) {
  if (ks.empty()) throw EmptyDilationSet();
  std::vector<ModulatedFunction> outputs;
  outputs.reserve(ks.size());
  for (auto k : ks) outputs.push_back(apply_dilated(m, k, f));
  std::vector<double> result(points.size(), 0.0);
  const double amp = std::abs(amplitude(f));
  std::int64_t jmax = 0;
  for (const auto& t : f.terms()) jmax = std::max(jmax, t.freq);
  parallel_for(points.size(), [&](std::size_t p0, std::size_t p1) {
    std::vector<cplx> phase(static_cast<std::size_t>(jmax) + 1);
    for (std::size_t i = p0; i < p1; ++i) {
      const double y = rescaled_point(f, points[i]);
      const double psi = std::abs(f.envelope()(y));
      for (const auto& t : f.terms()) phase[static_cast<std::size_t>(t.freq)] = modulation_phase(t.freq, y);
      double best = 0.0;
      for (const auto& out : outputs) {
        cplx acc{};
        for (const auto& t : out.terms()) acc += t.coeff * phase[static_cast<std::size_t>(t.freq)];
        best = std::max(best, std::abs(acc));
      }
      result[i] = amp * psi * best;
    }
  });
  return result;
}

int Quadrature::resolve(const ModulatedFunction& f) const {
  if (samples_per_unit > 0) return samples_per_unit;
  std::int64_t jmax = 0;
  for (const auto& t : f.terms()) jmax = std::max(jmax, t.freq);
  return static_cast<int>(std::max<std::int64_t>(128, std::int64_t{1} << std::min<std::int64_t>(jmax + 6, 24)));
}

double lp_norm(const ModulatedFunction& f, double p, Quadrature q) {
  if (!(p >= 1.0)) throw InvalidArgument("lp_norm needs p >= 1");
  if (f.terms().empty()) return 0.0;
  const int s = q.resolve(f);
  const auto table = trig_sup_table({std::vector<Modulation>(f.terms().begin(), f.terms().end())}, s);
  return rescaled_norm_factor(f, p) * periodic_weighted_norm(f.envelope(), table, s, p);
}

double maximal_lp_norm(const BumpSumMultiplier& m, std::span<const std::int64_t> ks, const ModulatedFunction& f,
                       double p, Quadrature q) {
  if (ks.empty()) throw EmptyDilationSet();
  if (!(p >= 1.0)) throw InvalidArgument("lp_norm needs p >= 1");
  std::vector<std::vector<Modulation>> sets;
  sets.reserve(ks.size());
  for (auto k : ks) {
    auto out = apply_dilated(m, k, f);
    if (!out.terms().empty()) sets.emplace_back(out.terms().begin(), out.terms().end());
  }
  if (sets.empty()) return 0.0;
  const int s = q.resolve(f);
  const auto table = trig_sup_table(sets, s);
  return rescaled_norm_factor(f, p) * periodic_weighted_norm(f.envelope(), table, s, p);
}

}  // namespace dilmax::bump

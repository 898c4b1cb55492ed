#include "dilmax/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "dilmax/errors.hpp"
#include "dilmax/fft.hpp"
#include "dilmax/parallel.hpp"
#include "dilmax/profile.hpp"

namespace dilmax::grid {
namespace {

void require_same(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw SpecMismatch("grid specs differ");
}

void transform(std::vector<cplx>& data, const GridSpec& spec, fft::Direction dir) {
  const auto ext = spec.extents();
  fft::transform(data, std::span<const std::size_t>(ext.data(), static_cast<std::size_t>(spec.dim)), dir);
}

double cell_volume(const GridSpec& spec) { return std::pow(spec.spacing(), spec.dim); }

double finite_pow(double v, double p) { return p == 2.0 ? v * v : std::pow(v, p); }

// Symbol values on the lattice scaled by t and 2^k, times the transform of f.
std::vector<cplx> multiplied_transform(const GridSymbol& m, double t, std::int64_t k, const GridFunction& f) {
  require_same(m.spec(), f.spec());
  std::vector<cplx> buf(f.samples().begin(), f.samples().end());
  transform(buf, f.spec(), fft::Direction::Forward);
  // Forward scaling dx^d and inverse scaling 1/L^d combine to 1/size.
  const double scale = 1.0 / static_cast<double>(f.spec().size());
  for (std::size_t i = 0; i < buf.size(); ++i) {
    if (buf[i] == cplx{}) continue;
    buf[i] *= m.at(i, t, k) * scale;
  }
  transform(buf, f.spec(), fft::Direction::Backward);
  return buf;
}

GridFunction pointwise_sup(const GridSpec& spec, std::size_t count,
                           const std::function<std::vector<cplx>(std::size_t)>& member) {
  std::vector<cplx> best(spec.size(), cplx{});
  // One member at a time; max is exact, so the order of evaluation is irrelevant.
  for (std::size_t i = 0; i < count; ++i) {
    const auto out = member(i);
    for (std::size_t x = 0; x < out.size(); ++x) {
      const double v = std::abs(out[x]);
      if (v > best[x].real()) best[x] = v;
    }
  }
  return {spec, std::move(best)};
}

}  // namespace

GridSpec::GridSpec(int dim_, std::size_t n_, double length_) : dim(dim_), n(n_), length(length_) {
  if (dim != 1 && dim != 2) throw InvalidArgument("grid dimension must be 1 or 2");
  if (n < 16 || !std::has_single_bit(n)) throw InvalidArgument("grid size must be a power of two >= 16");
  if (!(length > 0.0) || !std::isfinite(length)) throw InvalidArgument("grid period must be positive");
}

Point GridSpec::position(std::size_t flat) const noexcept {
  if (dim == 1) return {coordinate(flat), 0.0};
  return {coordinate(flat / n), coordinate(flat % n)};
}

Point GridSpec::frequency_point(std::size_t flat) const noexcept {
  if (dim == 1) return {frequency(flat), 0.0};
  return {frequency(flat / n), frequency(flat % n)};
}

SymbolFn make_symbol(std::function<cplx(const Point&)> fn) {
  return [fn = std::move(fn)](const Point& xi, std::int64_t k) {
    if (k == 0) return fn(xi);
    const int e = static_cast<int>(std::clamp<std::int64_t>(k, -4000, 4000));
    return fn({std::ldexp(xi[0], e), std::ldexp(xi[1], e)});
  };
}

SymbolFn make_symbol(const bump::BumpSumMultiplier& m) {
  return [m](const Point& xi, std::int64_t k) { return m.dilated(k, norm(xi)); };
}

GridFunction::GridFunction(GridSpec spec, std::vector<cplx> samples) : spec_(spec), samples_(std::move(samples)) {
  if (samples_.size() != spec_.size()) throw SpecMismatch("sample count does not match grid");
}

GridFunction GridFunction::sample(const GridSpec& spec, const std::function<cplx(const Point&)>& fn) {
  std::vector<cplx> v(spec.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(spec.position(i));
  return {spec, std::move(v)};
}

GridSymbol GridSymbol::lazy(const GridSpec& spec, SymbolFn fn) {
  if (!fn) throw InvalidArgument("lazy symbol needs a callback");
  GridSymbol s;
  s.spec_ = spec;
  s.fn_ = std::move(fn);
  return s;
}

GridSymbol GridSymbol::stored(const GridSpec& spec, std::vector<cplx> values) {
  if (values.size() != spec.size()) throw SpecMismatch("symbol value count does not match grid");
  GridSymbol s;
  s.spec_ = spec;
  s.values_ = std::move(values);
  return s;
}

cplx GridSymbol::at(std::size_t index, double t, std::int64_t log2_scale) const {
  if (fn_) {
    Point xi = spec_.frequency_point(index);
    xi[0] *= t;
    xi[1] *= t;
    return fn_(xi, log2_scale);
  }
  if (t != 1.0 || log2_scale != 0) throw NotEvaluable("stored symbol cannot be dilated off the lattice");
  return values_[index];
}

GridSymbol dft(const GridFunction& f) {
  std::vector<cplx> buf(f.samples().begin(), f.samples().end());
  transform(buf, f.spec(), fft::Direction::Forward);
  const double dv = cell_volume(f.spec());
  for (auto& v : buf) v *= dv;
  return GridSymbol::stored(f.spec(), std::move(buf));
}

GridFunction idft(const GridSymbol& s) {
  std::vector<cplx> buf(s.spec().size());
  if (s.is_lazy()) {
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = s.at(i);
  } else {
    buf.assign(s.values().begin(), s.values().end());
  }
  transform(buf, s.spec(), fft::Direction::Backward);
  const double inv = 1.0 / std::pow(s.spec().length, s.spec().dim);
  for (auto& v : buf) v *= inv;
  return {s.spec(), std::move(buf)};
}

GridFunction apply_symbol(const GridSymbol& m, double t, const GridFunction& f) {
  if (!(t > 0.0)) throw InvalidArgument("dilation must be positive");
  return {f.spec(), multiplied_transform(m, t, 0, f)};
}

GridFunction apply_dyadic(const GridSymbol& m, std::int64_t k, const GridFunction& f) {
  return {f.spec(), multiplied_transform(m, 1.0, k, f)};
}

GridFunction maximal(const GridSymbol& m, std::span<const double> ts, const GridFunction& f) {
  if (ts.empty()) throw EmptyDilationSet();
  for (double t : ts)
    if (!(t > 0.0)) throw InvalidArgument("dilation must be positive");
  return pointwise_sup(f.spec(), ts.size(), [&](std::size_t i) { return multiplied_transform(m, ts[i], 0, f); });
}

GridFunction maximal_dyadic(const GridSymbol& m, std::span<const std::int64_t> ks, const GridFunction& f) {
  if (ks.empty()) throw EmptyDilationSet();
  return pointwise_sup(f.spec(), ks.size(), [&](std::size_t i) { return multiplied_transform(m, 1.0, ks[i], f); });
}

GridFunction finite_family_maximal(std::span<const GridSymbol> ms, const GridFunction& f) {
  if (ms.empty()) throw EmptyDilationSet();
  return pointwise_sup(f.spec(), ms.size(), [&](std::size_t i) { return multiplied_transform(ms[i], 1.0, 0, f); });
}

double lp_norm(const GridFunction& f, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("lp_norm needs p >= 1");
  const auto s = f.samples();
  if (std::isinf(p)) {
    double mx = 0.0;
    for (const auto& v : s) mx = std::max(mx, std::abs(v));
    return mx;
  }
  double acc = 0.0;
  for (const auto& v : s) acc += finite_pow(std::abs(v), p);
  return std::pow(cell_volume(f.spec()) * acc, 1.0 / p);
}

const Radial& standard_localizer() {
  static const Radial phi = [](double r) { return annulus_cutoff(r); };
  return phi;
}

GridFunction localized_kernel(const GridSymbol& m, std::int64_t k, const Radial& phi) {
  const GridSpec& spec = m.spec();
  if (spec.nyquist() < 1.5) throw SpecMismatch("grid does not resolve the localizer band |xi| < 3/2");
  std::vector<cplx> buf(spec.size());
  for (std::size_t i = 0; i < buf.size(); ++i) {
    const double w = phi(norm(spec.frequency_point(i)));
    if (w != 0.0) buf[i] = w * m.at(i, 1.0, k);
  }
  return idft(GridSymbol::stored(spec, std::move(buf)));
}

KernelNorm weighted_kernel_norm(const GridSymbol& m, std::int64_t k, double p_dual, double alpha, const Radial& phi) {
  if (!(p_dual >= 1.0) || std::isinf(p_dual)) throw InvalidArgument("kernel norm exponent must lie in [1, inf)");
  const GridFunction kernel = localized_kernel(m, k, phi);
  const GridSpec& spec = kernel.spec();
  double total = 0.0;
  double outer = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double r = norm(spec.position(i));
    const double v = finite_pow(std::abs(kernel[i]) * std::pow(1.0 + r, alpha), p_dual);
    total += v;
    if (r > 0.25 * spec.length) outer += v;
  }
  KernelNorm out;
  out.value = std::pow(cell_volume(spec) * total, 1.0 / p_dual);
  out.alias_fraction = total > 0.0 ? outer / total : 0.0;
  out.alias_warning = out.alias_fraction > kAliasThreshold;
  return out;
}

KernelNorm weighted_kernel_sup(const GridSymbol& m, std::int64_t k, double eps, const Radial& phi) {
  if (!(eps > 0.0)) throw InvalidArgument("epsilon must be positive");
  const GridFunction kernel = localized_kernel(m, k, phi);
  const GridSpec& spec = kernel.spec();
  double best = 0.0;
  double outer = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double r = norm(spec.position(i));
    const double v = std::pow(1.0 + r, spec.dim + eps) * std::abs(kernel[i]);
    best = std::max(best, v);
    if (r > 0.25 * spec.length) outer = std::max(outer, v);
  }
  KernelNorm out;
  out.value = best;
  out.alias_fraction = best > 0.0 ? outer / best : 0.0;
  out.alias_warning = out.alias_fraction > kAliasThreshold;
  return out;
}

KernelNorm sobolev_norm(const GridFunction& u, int r, double gamma) {
  if (r != 1 && r != 2) throw InvalidArgument("sobolev exponent r must be 1 or 2");
  if (!(gamma >= 0.0)) throw InvalidArgument("sobolev order must be nonnegative");
  const GridSpec& spec = u.spec();
  // Support check on the xi side.
  double mass = 0.0, outside = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double v = finite_pow(std::abs(u[i]), r);
    mass += v;
    if (norm(spec.position(i)) > 0.25 * spec.length) outside += v;
  }
  GridSymbol hat = dft(u);
  std::vector<cplx> weighted(hat.values().begin(), hat.values().end());
  double spectrum = 0.0, edge = 0.0;
  for (std::size_t i = 0; i < weighted.size(); ++i) {
    const double x = norm(spec.frequency_point(i));
    weighted[i] *= std::pow(1.0 + 4.0 * std::numbers::pi * std::numbers::pi * x * x, 0.5 * gamma);
    const double e = std::norm(weighted[i]);
    spectrum += e;
    if (x > 0.5 * spec.nyquist()) edge += e;
  }
  const GridFunction lifted = idft(GridSymbol::stored(spec, std::move(weighted)));
  KernelNorm out;
  out.value = lp_norm(lifted, static_cast<double>(r));
  out.alias_fraction = std::max(mass > 0.0 ? outside / mass : 0.0, spectrum > 0.0 ? edge / spectrum : 0.0);
  out.alias_warning = out.alias_fraction > kAliasThreshold;
  return out;
}

KernelNorm sobolev_norm(const GridSymbol& u, int r, double gamma) {
  if (!u.is_lazy()) throw NotEvaluable("sobolev_norm samples a lazy symbol at spatial positions");
  const auto& fn = u.function();
  return sobolev_norm(GridFunction::sample(u.spec(), [&](const Point& x) { return fn(x, 0); }), r, gamma);
}

}  // namespace dilmax::grid

#include "dilmax/fft.hpp"

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "dilmax/errors.hpp"

namespace dilmax::fft {
namespace {

// Plans are created once per shape under a lock (the FFTW planner is not
// thread-safe) and executed through the new-array interface, which is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n0, std::size_t n1, int rank, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_tuple(n0, n1, rank, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const std::size_t total = rank == 1 ? n0 : n0 * n1;
    auto* buf = fftw_alloc_complex(total);
    fftw_plan plan = nullptr;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    if (rank == 1) {
      plan = fftw_plan_dft_1d(static_cast<int>(n0), buf, buf, sign, flags);
    } else {
      plan = fftw_plan_dft_2d(static_cast<int>(n0), static_cast<int>(n1), buf, buf, sign, flags);
    }
    fftw_free(buf);
    if (plan == nullptr) throw Error("fftw planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<std::size_t, std::size_t, int, int>, fftw_plan> plans_;
};

PlanCache& plans() {
  static PlanCache cache;
  return cache;
}

// exp(-i pi beta v^2) with the phase reduced before the trig call.
cplx chirp(double beta, double v) {
  double turns = beta * v * v * 0.5;
  turns -= std::floor(turns);
  const double ang = -2.0 * std::numbers::pi * turns;
  return {std::cos(ang), std::sin(ang)};
}

cplx unit(double turns) {
  turns -= std::floor(turns);
  const double ang = 2.0 * std::numbers::pi * turns;
  return {std::cos(ang), std::sin(ang)};
}

}  // namespace

void transform(std::span<cplx> data, std::span<const std::size_t> extents, Direction dir) {
  const int sign = dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan plan = nullptr;
  if (extents.size() == 1) {
    if (data.size() != extents[0]) throw SpecMismatch("fft: extent does not match data");
    plan = plans().get(extents[0], 1, 1, sign);
  } else if (extents.size() == 2) {
    if (data.size() != extents[0] * extents[1]) throw SpecMismatch("fft: extent does not match data");
    plan = plans().get(extents[0], extents[1], 2, sign);
  } else {
    throw InvalidArgument("fft: rank must be 1 or 2");
  }
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, p, p);
}

std::vector<cplx> affine_fourier_sum(std::span<const cplx> in, double x0, double dx, double eta0, double deta,
                                     std::size_t count) {
  const std::size_t n = in.size();
  std::vector<cplx> out(count);
  if (n == 0 || count == 0) return out;
  const double beta = dx * deta;
  const std::size_t size = std::bit_ceil(n + count - 1);

  std::vector<cplx> u(size), v(size);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = in[i] * unit(-dx * eta0 * static_cast<double>(i)) * chirp(beta, static_cast<double>(i));
  }
  // v[j] = conj(chirp(j)) for j in (-n, count), stored circularly.
  for (std::size_t j = 0; j < count; ++j) v[j] = std::conj(chirp(beta, static_cast<double>(j)));
  for (std::size_t j = 1; j < n; ++j) v[size - j] = std::conj(chirp(beta, static_cast<double>(j)));

  transform_1d(u, Direction::Forward);
  transform_1d(v, Direction::Forward);
  for (std::size_t i = 0; i < size; ++i) u[i] *= v[i];
  transform_1d(u, Direction::Backward);

  const double inv = 1.0 / static_cast<double>(size);
  for (std::size_t m = 0; m < count; ++m) {
    const double eta = eta0 + deta * static_cast<double>(m);
    out[m] = u[m] * inv * chirp(beta, static_cast<double>(m)) * unit(-x0 * eta);
  }
  return out;
}

std::vector<cplx> affine_fourier_sum_direct(std::span<const cplx> in, double x0, double dx, double eta0,
                                            double deta, std::size_t count) {
  std::vector<cplx> out(count);
  for (std::size_t m = 0; m < count; ++m) {
    const double eta = eta0 + deta * static_cast<double>(m);
    cplx acc{};
    for (std::size_t i = 0; i < in.size(); ++i) {
      const double x = x0 + dx * static_cast<double>(i);
      acc += in[i] * unit(-x * eta);
    }
    out[m] = acc;
  }
  return out;
}

}  // namespace dilmax::fft

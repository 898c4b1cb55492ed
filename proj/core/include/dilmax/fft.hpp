#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace dilmax::fft {

using cplx = std::complex<double>;

enum class Direction { Forward = -1, Backward = +1 };

/// Unnormalized in-place DFT: data[m] <- sum_n data[n] exp(sign 2 pi i nm/n)
/// over a row-major array with the given extents (rank 1 or 2).
void transform(std::span<cplx> data, std::span<const std::size_t> extents, Direction dir);

inline void transform_1d(std::span<cplx> data, Direction dir) {
  const std::size_t n = data.size();
  transform(data, std::span<const std::size_t>(&n, 1), dir);
}

/// out[m] = sum_n in[n] exp(-2 pi i (x0 + n dx)(eta0 + m deta)), 0 <= m < count.
///
/// Fourier sums sampled on an arbitrary affine frequency lattice, evaluated
/// exactly (no interpolation) by Bluestein's chirp-z convolution.
std::vector<cplx> affine_fourier_sum(std::span<const cplx> in, double x0, double dx, double eta0, double deta,
                                     std::size_t count);

/// Direct O(n * count) evaluation of the same sum; reference path for tests.
std::vector<cplx> affine_fourier_sum_direct(std::span<const cplx> in, double x0, double dx, double eta0,
                                            double deta, std::size_t count);

}  // namespace dilmax::fft

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dilmax/bump_calculus.hpp"

namespace dilmax::counterexample {

using cplx = std::complex<double>;

/// Sign alphabet in enumeration order; digit d stands for kAlphabet[d].
inline const std::array<cplx, 4> kAlphabet = {cplx{1, 0}, cplx{-1, 0}, cplx{0, 1}, cplx{0, -1}};

/// Largest block index the builders accept (m_6 already has 24576 terms).
inline constexpr int kMaxBlockIndex = 6;

/// The kappa-th sequence of length N over the alphabet: digit j - 1 (base 4,
/// little-endian) of kappa - 1 selects the j-th sign.
class SignSequence {
 public:
  SignSequence(int N, std::int64_t kappa);
  static SignSequence from_digits(std::vector<int> digits);

  int length() const noexcept { return static_cast<int>(digits_.size()); }
  std::int64_t kappa() const noexcept { return kappa_; }
  const std::vector<int>& digits() const noexcept { return digits_; }
  /// s_kappa(j), 1 <= j <= N.
  cplx operator()(int j) const;

 private:
  SignSequence() = default;
  std::int64_t kappa_ = 1;
  std::vector<int> digits_;
};

/// s_kappa(j) without building the sequence.
cplx sign(int N, std::int64_t kappa, int j);

/// Positive nondecreasing weight l -> v(l), validated on the values of l the
/// construction actually uses; it must strictly increase between the first
/// and last of them (a constant weight is rejected).
class GrowthWeight {
 public:
  GrowthWeight(std::function<double(double)> v, std::vector<double> realized, std::string name = "custom");

  /// v(l) = sqrt(log(l + 2)) checked at l = 4^N, N = 1..n_max.
  static GrowthWeight sqrt_log(int n_max);

  double operator()(double l) const { return v_(l); }
  const std::string& name() const noexcept { return name_; }
  const std::vector<double>& realized() const noexcept { return realized_; }

 private:
  std::function<double(double)> v_;
  std::vector<double> realized_;
  std::string name_;
};

/// 4^N as a double (exact for the supported N).
double block_length(int N);

/// m_N = sum_{kappa, j} s_kappa(j) Phi(2^-(N kappa + j) .).
bump::BumpSumMultiplier build_mN(int N, int capacity = kMaxBlockIndex);
/// g_N = sum_{j=1..N} exp(2 pi i 2^j x1) Psi(x), Psi the given envelope.
bump::ModulatedFunction build_gN(int N, const bump::Envelope& envelope = bump::Envelope::standard());
/// f_{N,p}(x) = N^-1/2 2^(N 8^N / p) g_N(2^(N 8^N) x) with ||Psi||_p = 1; the
/// dilation exponent is kept symbolic.
bump::ModulatedFunction build_fNp(int N, double p);
/// N 8^N.
std::int64_t block_dilation_exp(int N);

/// Hull [a 2^Mmin, b 2^Mmax] of the multiplier's radial support, exact.
DyadicInterval support_hull(const bump::BumpSumMultiplier& m);

struct Block {
  int N;
  double scalar;             // a_N = N^-1/2 v(4^N)
  std::int64_t dilation_exp; // N 8^N
  bump::BumpSumMultiplier mN;
};

/// m = sum_{N <= n_max} a_N m_N(2^(-N 8^N) .).
class CounterexampleSpec {
 public:
  CounterexampleSpec(int n_max, GrowthWeight weight);

  int n_max() const noexcept { return n_max_; }
  const GrowthWeight& weight() const noexcept { return weight_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }

  /// Support hulls of the dilated blocks, in block order.
  std::vector<DyadicInterval> block_supports() const;
  /// True iff the dilated block supports are pairwise disjoint.
  bool blocks_disjoint() const;
  /// The assembled multiplier as a single bump sum.
  const bump::BumpSumMultiplier& assembled() const noexcept { return assembled_; }

 private:
  int n_max_;
  GrowthWeight weight_;
  std::vector<Block> blocks_;
  bump::BumpSumMultiplier assembled_;
};

struct KappaChoice {
  std::int64_t kappa = 1;
  std::vector<cplx> choices;  // c_j(x), j = 1..N
  bool undefined = false;     // |Psi(x)| below 1e-12
};

/// argmax over the alphabet of Re(c exp(2 pi i 2^j x) Psi(x)) for each j, ties
/// to the earlier letter, and the kappa with those signs.
KappaChoice choose_kappa(double x, int N, const bump::Envelope& envelope = bump::Envelope::standard());

/// Index of the letter maximizing Re(c z) (first on ties).
int best_letter(cplx z);

struct LowerBoundReport {
  int N = 0;
  double p = 0.0;
  double norm_value = 0.0;  // || sup_k |F^-1[m_N(2^k .) g_N^]| ||_p
  double psi_norm = 1.0;
  double bound = 0.0;       // N ||Psi||_p / sqrt 2
  bool pass = false;
};

/// Relative slack allowed below the proof constant.
inline constexpr double kLowerBoundSlack = 1e-2;

LowerBoundReport verify_lower_bound(int N, double p, bump::Quadrature q = {});

struct ConclusionReport {
  int N = 0;
  double p = 0.0;
  double a_N = 0.0;
  double weight = 0.0;        // v(4^N)
  double norm_value = 0.0;    // as in LowerBoundReport
  double constant = 0.0;      // C_N = norm_value / N
  double bound = 0.0;         // C_N v(4^N) = a_N N^1/2 C_N
  double maximal_norm = 0.0;  // || M_m f_{N,p} ||_p over 1 <= k <= N 4^N
  double f_norm = 0.0;        // || f_{N,p} ||_p
};

/// Evaluates M_m f_{N,p} for the assembled m of the spec in rescaled
/// coordinates. Requires N <= spec.n_max().
ConclusionReport verify_conclusion(const CounterexampleSpec& spec, int N, double p, bump::Quadrature q = {});

/// Sorted k with phi(.) m(2^k .) not identically zero, phi the standard
/// localizer: with the standard bump profile each scale M contributes k = M
/// and k = M + 1.
std::vector<std::int64_t> realized_octaves(const bump::BumpSumMultiplier& m);

/// v(|k|) / sqrt(log(|k| + 2)): the decay allowed at octave k.
double example_envelope(const GrowthWeight& v, std::int64_t k);

/// k = 1..N 4^N.
std::vector<std::int64_t> dilation_range(int N);

}  // namespace dilmax::counterexample

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dilmax/grid.hpp"

namespace dilmax::decomposition {

using grid::cplx;

/// k -> omega(k) >= 0 on a finite window; absent k mean zero.
class WeightSequence {
 public:
  WeightSequence() = default;
  explicit WeightSequence(std::map<std::int64_t, double> values);

  const std::map<std::int64_t, double>& values() const noexcept { return values_; }
  double operator()(std::int64_t k) const;
  std::size_t support_size() const;

 private:
  std::map<std::int64_t, double> values_;
};

/// omega*: nonzero values sorted descending, extended by zero.
class Rearrangement {
 public:
  explicit Rearrangement(const WeightSequence& w);

  const std::vector<double>& values() const noexcept { return values_; }
  /// omega*(t), constant on [n, n + 1).
  double operator()(double t) const;

 private:
  std::vector<double> values_;
};

inline Rearrangement rearrange(const WeightSequence& w) { return Rearrangement(w); }

struct CriterionSum {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// omega*(0) + sum_{l=1..tail} omega*(l) / l. tail must cover the support.
CriterionSum criterion_sum(const WeightSequence& w, std::size_t tail);

/// E_0 = {omega*(2) < omega <= omega*(0)}, E_j = {omega*(2^2^j) < omega <=
/// omega*(2^2^(j-1))}; blocks past the first with omega*(2^2^(j-1)) = 0 are
/// dropped, so every returned block after E_0 has a positive upper threshold.
std::vector<std::vector<std::int64_t>> build_blocks(const WeightSequence& w);

/// Frequency partition: phi the annulus cutoff, psi = phi / sum_j phi(2^-j .)^2,
/// so sum_k psi(2^-k xi) phi(2^-k xi) = 1 for xi != 0.
struct PartitionPair {
  static double phi(double r);
  static double psi(double r);
  /// sum_k psi phi(2^-k r) over the scales where phi can be nonzero.
  static double reproduce(double r);
};

/// chi_l(x) = chi(2^-l |x|) for l > 0, chi_0 = 1 - sum_{l>0} chi_l.
struct SpatialCutoffs {
  static double chi(int l, double r);
  /// Radial annulus carrying the piece h^{j,l}: [0, 4] for l = 0,
  /// [2^(l-4), 2^(l+4)] otherwise.
  static bool in_annulus(int l, double r);
};

struct PieceKey {
  std::size_t j;
  int l;
  std::int64_t k;
  friend auto operator<=>(const PieceKey&, const PieceKey&) = default;
};

/// h_k^{j,l}: F^-1[phi m(2^k .)] on the kernel grid, sharply restricted to the
/// annulus of l.
class KernelPieces {
 public:
  KernelPieces(grid::GridSymbol m, std::vector<std::vector<std::int64_t>> blocks, int lmax);

  const grid::GridSpec& spec() const noexcept { return m_.spec(); }
  const grid::GridSymbol& symbol() const noexcept { return m_; }
  const std::vector<std::vector<std::int64_t>>& blocks() const noexcept { return blocks_; }
  int lmax() const noexcept { return lmax_; }

  const grid::GridFunction& kernel(std::int64_t k) const;
  const grid::GridFunction& piece(std::size_t j, int l, std::int64_t k) const;
  /// Largest alias fraction among the full kernels.
  double alias_fraction() const noexcept { return alias_; }

  /// sum_{j, l <= lmax} h_k^{j,l} chi_l on the kernel grid.
  grid::GridFunction reassembled(std::int64_t k) const;

 private:
  grid::GridSymbol m_;
  std::vector<std::vector<std::int64_t>> blocks_;
  int lmax_;
  double alias_ = 0.0;
  std::map<std::int64_t, grid::GridFunction> kernels_;
  std::map<PieceKey, grid::GridFunction> pieces_;
};

KernelPieces build_pieces(const grid::GridSymbol& m, const std::vector<std::vector<std::int64_t>>& blocks, int lmax);

/// m_j(xi) = sum_{k in E_j} psi phi(2^-k xi) m(xi) as a lazy symbol.
grid::SymbolFn block_symbol(const grid::SymbolFn& m, const std::vector<std::int64_t>& block);

/// T_t^{E,l}[H, f] = F^-1[ sum_{k in E} psi(2^-k t xi) G_k(2^-k t xi) f^(xi) ],
/// G_k the Fourier transform of chi_l h_k^{j,l} evaluated exactly on the
/// needed frequencies by a chirp-z sum. f lives on its own grid.
grid::GridFunction apply_TEl(const KernelPieces& H, std::size_t j, int l, double t, const grid::GridFunction& f);

/// sum_j sum_{l <= lmax} T_t^{E_j,l}[H^{j,l}, f].
grid::GridFunction reconstruct(const KernelPieces& H, double t, const grid::GridFunction& f);

enum class CriterionKind { KernelLp, KernelSup, Sobolev };
enum class Verdict { Satisfied, Violated, Inconclusive };

std::string to_string(CriterionKind kind);
std::string to_string(Verdict v);

struct CriterionParams {
  CriterionKind kind = CriterionKind::KernelLp;
  double p = 2.0;       // KernelLp uses p' = p / (p - 1)
  double alpha = 1.0;   // KernelLp weight exponent
  double eps = 0.5;     // KernelSup
  int r = 2;            // Sobolev
  double gamma = 1.0;   // Sobolev
};

struct CriterionReport {
  CriterionParams params;
  std::vector<std::int64_t> ks;
  std::vector<double> omega;
  std::vector<double> omega_star;
  double sum = 0.0;
  double max_alias = 0.0;
  bool alias_warning = false;
  Verdict verdict = Verdict::Inconclusive;
};

/// omega(k) for one k under the chosen criterion.
grid::KernelNorm criterion_weight(const grid::GridSymbol& m, std::int64_t k, const CriterionParams& params);

/// omega over the declared window and the criterion sum. The verdict is
/// Satisfied when omega vanishes at both window edges and no alias warning
/// fired, Inconclusive otherwise.
CriterionReport evaluate_criteria(const grid::GridSymbol& m, std::vector<std::int64_t> ks,
                                  const CriterionParams& params);

struct HorizonStep {
  std::size_t count;  // window = first count entries of the k list
  double sum;
};

struct HorizonTrend {
  std::vector<HorizonStep> steps;
  Verdict verdict = Verdict::Inconclusive;
};

/// Criterion sums over nested windows (prefixes of the report's k list of the
/// given sizes). Violated when the sum strictly increases at every step,
/// Satisfied when the last step leaves it unchanged (relative 1e-12).
HorizonTrend horizon_trend(const CriterionReport& report, const std::vector<std::size_t>& counts);

}  // namespace dilmax::decomposition

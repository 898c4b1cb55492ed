#include "dilmax/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "dilmax/errors.hpp"
#include "dilmax/fft.hpp"
#include "dilmax/parallel.hpp"
#include "dilmax/profile.hpp"

namespace dilmax::decomposition {

// ------------------------------------------------------------- weights

WeightSequence::WeightSequence(std::map<std::int64_t, double> values) : values_(std::move(values)) {
  for (const auto& [k, v] : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("weights must be finite and nonnegative");
  }
}

double WeightSequence::operator()(std::int64_t k) const {
  const auto it = values_.find(k);
  return it == values_.end() ? 0.0 : it->second;
}

std::size_t WeightSequence::support_size() const {
  return static_cast<std::size_t>(std::count_if(values_.begin(), values_.end(), [](const auto& kv) { return kv.second > 0.0; }));
}

Rearrangement::Rearrangement(const WeightSequence& w) {
  for (const auto& [k, v] : w.values())
    if (v > 0.0) values_.push_back(v);
  std::sort(values_.begin(), values_.end(), std::greater<>());
}

double Rearrangement::operator()(double t) const {
  if (!(t >= 0.0)) throw InvalidArgument("rearrangement is defined on [0, inf)");
  if (t >= static_cast<double>(values_.size())) return 0.0;
  return values_[static_cast<std::size_t>(std::floor(t))];
}

CriterionSum criterion_sum(const WeightSequence& w, std::size_t tail) {
  const Rearrangement r(w);
  if (tail < r.values().size()) throw InvalidArgument("criterion tail shorter than the support");
  CriterionSum out;
  out.value = r(0.0);
  // omega*(l) vanishes for l >= support size, so the loop stops there.
  for (std::size_t l = 1; l < r.values().size(); ++l) out.value += r.values()[l] / static_cast<double>(l);
  return out;
}

std::vector<std::vector<std::int64_t>> build_blocks(const WeightSequence& w) {
  const Rearrangement r(w);
  const auto n = static_cast<double>(r.values().size());
  std::vector<std::pair<double, double>> bands;  // (lower, upper]
  bands.emplace_back(r(2.0), r(0.0));
  for (int j = 1; j < 63; ++j) {
    const double upper_at = std::exp2(std::exp2(j - 1));
    if (upper_at >= n) break;  // omega*(upper_at) = 0: nothing left
    const double lower_at = std::exp2(std::exp2(j));
    bands.emplace_back(lower_at >= n ? 0.0 : r(lower_at), r(upper_at));
  }
  std::vector<std::vector<std::int64_t>> blocks(bands.size());
  for (const auto& [k, v] : w.values()) {
    for (std::size_t j = 0; j < bands.size(); ++j) {
      if (bands[j].first < v && v <= bands[j].second) {
        blocks[j].push_back(k);
        break;
      }
    }
  }
  return blocks;
}

// ------------------------------------------------------------ partitions

double PartitionPair::phi(double r) { return annulus_cutoff(std::abs(r)); }

double PartitionPair::psi(double r) {
  r = std::abs(r);
  const double ph = phi(r);
  if (ph == 0.0) return 0.0;
  const int c = std::ilogb(r);
  double den = 0.0;
  for (int j = c - 2; j <= c + 2; ++j) {
    const double v = phi(std::ldexp(r, -j));
    den += v * v;
  }
  return ph / den;
}

double PartitionPair::reproduce(double r) {
  r = std::abs(r);
  if (r == 0.0) return 0.0;
  const int c = std::ilogb(r);
  double sum = 0.0;
  for (int k = c - 2; k <= c + 2; ++k) {
    const double s = std::ldexp(r, -k);
    sum += psi(s) * phi(s);
  }
  return sum;
}

double SpatialCutoffs::chi(int l, double r) {
  if (l < 0) throw InvalidArgument("cutoff index must be >= 0");
  r = std::abs(r);
  if (l == 0) return 1.0 - cutoff_ramp(0.5 * r);
  return annulus_cutoff(std::ldexp(r, -l));
}

bool SpatialCutoffs::in_annulus(int l, double r) {
  r = std::abs(r);
  if (l == 0) return r <= 4.0;
  return std::ldexp(1.0, l - 4) <= r && r <= std::ldexp(1.0, l + 4);
}

// ---------------------------------------------------------------- pieces

KernelPieces::KernelPieces(grid::GridSymbol m, std::vector<std::vector<std::int64_t>> blocks, int lmax)
    : m_(std::move(m)), blocks_(std::move(blocks)), lmax_(lmax) {
  const auto& spec = m_.spec();
  if (spec.dim != 1) throw InvalidArgument("kernel pieces are implemented in one dimension");
  if (lmax < 0 || lmax > 40) throw InvalidArgument("lmax must lie in [0, 40]");
  std::set<std::int64_t> seen;
  for (const auto& b : blocks_)
    for (auto k : b)
      if (!seen.insert(k).second) throw InvalidArgument("blocks must be disjoint");

  for (auto k : seen) {
    auto K = grid::localized_kernel(m_, k);
    double total = 0.0, outer = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
      const double v = std::norm(K[i]);
      total += v;
      if (std::abs(spec.coordinate(i)) > 0.25 * spec.length) outer += v;
    }
    if (total > 0.0) alias_ = std::max(alias_, outer / total);
    kernels_.emplace(k, std::move(K));
  }
  for (std::size_t j = 0; j < blocks_.size(); ++j) {
    for (auto k : blocks_[j]) {
      const auto& K = kernels_.at(k);
      for (int l = 0; l <= lmax_; ++l) {
        std::vector<cplx> v(spec.size());
        for (std::size_t i = 0; i < v.size(); ++i)
          if (SpatialCutoffs::in_annulus(l, spec.coordinate(i))) v[i] = K[i];
        pieces_.emplace(PieceKey{j, l, k}, grid::GridFunction(spec, std::move(v)));
      }
    }
  }
}

const grid::GridFunction& KernelPieces::kernel(std::int64_t k) const {
  const auto it = kernels_.find(k);
  if (it == kernels_.end()) throw InvalidArgument("no kernel for k = " + std::to_string(k));
  return it->second;
}

const grid::GridFunction& KernelPieces::piece(std::size_t j, int l, std::int64_t k) const {
  const auto it = pieces_.find(PieceKey{j, l, k});
  if (it == pieces_.end()) throw InvalidArgument("no kernel piece for this (j, l, k)");
  return it->second;
}

grid::GridFunction KernelPieces::reassembled(std::int64_t k) const {
  const auto& spec = this->spec();
  std::vector<cplx> acc(spec.size());
  for (std::size_t j = 0; j < blocks_.size(); ++j) {
    if (std::find(blocks_[j].begin(), blocks_[j].end(), k) == blocks_[j].end()) continue;
    for (int l = 0; l <= lmax_; ++l) {
      const auto& h = piece(j, l, k);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += h[i] * SpatialCutoffs::chi(l, spec.coordinate(i));
    }
  }
  return {spec, std::move(acc)};
}

KernelPieces build_pieces(const grid::GridSymbol& m, const std::vector<std::vector<std::int64_t>>& blocks, int lmax) {
  return KernelPieces(m, blocks, lmax);
}

grid::SymbolFn block_symbol(const grid::SymbolFn& m, const std::vector<std::int64_t>& block) {
  return [m, block](const grid::Point& xi, std::int64_t s) {
    const double r = grid::norm(xi);
    double w = 0.0;
    for (auto k : block) {
      const std::int64_t e = s - k;
      if (e > 2000 || e < -2000) continue;
      const double u = std::ldexp(r, static_cast<int>(e));
      w += PartitionPair::psi(u) * PartitionPair::phi(u);
    }
    return w == 0.0 ? cplx{} : w * m(xi, s);
  };
}

// ------------------------------------------------------------- operators

namespace {

// Adds psi(s xi_m) G(s xi_m) f^(xi_m) for lattice indices m with s|xi_m| in
// the support of psi, G the transform of the sampled piece.
void accumulate_band(const grid::GridSpec& fs, std::span<const cplx> fhat, std::span<const cplx> natural,
                     double x0, double dx, double s, std::vector<cplx>& acc) {
  const auto half = static_cast<std::int64_t>(fs.n / 2);
  const double L = fs.length;
  // 1/2 < s |m| / L < 3/2
  const auto lo = static_cast<std::int64_t>(std::floor(0.5 * L / s)) + 1;
  const auto hi = std::min<std::int64_t>(static_cast<std::int64_t>(std::ceil(1.5 * L / s)) - 1, half - 1);
  if (lo > hi) return;
  const auto count = static_cast<std::size_t>(hi - lo + 1);
  for (int side : {+1, -1}) {
    const std::int64_t start = side > 0 ? lo : -hi;
    if (side < 0 && -hi < -half) continue;
    const auto G = fft::affine_fourier_sum(natural, x0, dx, s * static_cast<double>(start) / L, s / L, count);
    for (std::size_t q = 0; q < count; ++q) {
      const std::int64_t m = start + static_cast<std::int64_t>(q);
      const std::size_t idx = static_cast<std::size_t>(m < 0 ? m + static_cast<std::int64_t>(fs.n) : m);
      const double eta = s * static_cast<double>(m) / L;
      const double w = PartitionPair::psi(eta);
      if (w != 0.0 && fhat[idx] != cplx{}) acc[idx] += w * G[q] * fhat[idx];
    }
  }
}

std::vector<cplx> natural_order(const grid::GridFunction& h, int l) {
  const auto& spec = h.spec();
  const std::size_t n = spec.n;
  const double dx = spec.spacing();
  std::vector<cplx> out(n);
  for (std::size_t q = 0; q < n; ++q) {
    const std::size_t i = (q + n / 2) % n;
    const double x = spec.coordinate(i);
    const double c = SpatialCutoffs::chi(l, x);
    if (c != 0.0) out[q] = h[i] * c * dx;
  }
  return out;
}

void check_f(const KernelPieces& H, const grid::GridFunction& f, double t) {
  if (f.spec().dim != 1 || H.spec().dim != 1) throw SpecMismatch("operators T_t act in one dimension");
  if (!(t > 0.0)) throw InvalidArgument("dilation must be positive");
}

}  // namespace

grid::GridFunction apply_TEl(const KernelPieces& H, std::size_t j, int l, double t, const grid::GridFunction& f) {
  check_f(H, f, t);
  if (j >= H.blocks().size()) throw InvalidArgument("block index out of range");
  if (l < 0 || l > H.lmax()) throw InvalidArgument("piece index out of range");
  const auto fhat = grid::dft(f);
  const auto& ks = H.spec();
  const double x0 = -static_cast<double>(ks.n / 2) * ks.spacing();
  std::vector<cplx> acc(f.spec().size());
  for (auto k : H.blocks()[j]) {
    const auto natural = natural_order(H.piece(j, l, k), l);
    const double s = std::ldexp(t, static_cast<int>(-k));
    accumulate_band(f.spec(), fhat.values(), natural, x0, ks.spacing(), s, acc);
  }
  return grid::idft(grid::GridSymbol::stored(f.spec(), std::move(acc)));
}

grid::GridFunction reconstruct(const KernelPieces& H, double t, const grid::GridFunction& f) {
  check_f(H, f, t);
  std::vector<cplx> acc(f.spec().size());
  for (std::size_t j = 0; j < H.blocks().size(); ++j) {
    for (int l = 0; l <= H.lmax(); ++l) {
      const auto part = apply_TEl(H, j, l, t, f);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += part[i];
    }
  }
  return {f.spec(), std::move(acc)};
}

// -------------------------------------------------------------- criteria

std::string to_string(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::KernelLp: return "kernel-lp";
    case CriterionKind::KernelSup: return "kernel-sup";
    case CriterionKind::Sobolev: return "sobolev";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Satisfied: return "satisfied";
    case Verdict::Violated: return "violated-at-horizon";
    case Verdict::Inconclusive: return "inconclusive-truncation";
  }
  return "?";
}

grid::KernelNorm criterion_weight(const grid::GridSymbol& m, std::int64_t k, const CriterionParams& params) {
  switch (params.kind) {
    case CriterionKind::KernelLp: {
      if (!(params.p > 1.0)) throw InvalidArgument("kernel criterion needs p > 1");
      const double pd = std::isinf(params.p) ? 1.0 : params.p / (params.p - 1.0);
      return grid::weighted_kernel_norm(m, k, pd, params.alpha);
    }
    case CriterionKind::KernelSup:
      return grid::weighted_kernel_sup(m, k, params.eps);
    case CriterionKind::Sobolev: {
      if (!m.is_lazy()) throw NotEvaluable("sobolev criterion needs a lazy symbol");
      const auto& fn = m.function();
      const auto u = grid::GridFunction::sample(m.spec(), [&](const grid::Point& x) {
        const double w = PartitionPair::phi(grid::norm(x));
        return w == 0.0 ? cplx{} : w * fn(x, k);
      });
      return grid::sobolev_norm(u, params.r, params.gamma);
    }
  }
  throw InvalidArgument("unknown criterion");
}

CriterionReport evaluate_criteria(const grid::GridSymbol& m, std::vector<std::int64_t> ks,
                                  const CriterionParams& params) {
  if (ks.empty()) throw EmptyDilationSet();
  CriterionReport out;
  out.params = params;
  out.ks = std::move(ks);
  out.omega.assign(out.ks.size(), 0.0);
  std::vector<double> alias(out.ks.size(), 0.0);
  parallel_for(out.ks.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const auto w = criterion_weight(m, out.ks[i], params);
      out.omega[i] = w.value;
      alias[i] = w.alias_fraction;
    }
  });
  std::map<std::int64_t, double> values;
  for (std::size_t i = 0; i < out.ks.size(); ++i) {
    values[out.ks[i]] = out.omega[i];
    // Alias fractions of vanishing kernels carry no information.
    if (out.omega[i] > 0.0) out.max_alias = std::max(out.max_alias, alias[i]);
  }
  const WeightSequence w(values);
  out.omega_star = Rearrangement(w).values();
  out.sum = criterion_sum(w, w.values().size()).value;
  out.alias_warning = out.max_alias > grid::kAliasThreshold;
  const double edge = std::max(w(values.begin()->first), w(values.rbegin()->first));
  out.verdict = (!out.alias_warning && edge == 0.0) ? Verdict::Satisfied : Verdict::Inconclusive;
  return out;
}

HorizonTrend horizon_trend(const CriterionReport& report, const std::vector<std::size_t>& counts) {
  if (counts.size() < 2) throw InvalidArgument("horizon trend needs two or more windows");
  HorizonTrend out;
  for (auto c : counts) {
    if (c == 0 || c > report.ks.size()) throw InvalidArgument("window larger than the evaluated k list");
    if (!out.steps.empty() && c <= out.steps.back().count) throw InvalidArgument("windows must be nested");
    std::map<std::int64_t, double> values;
    for (std::size_t i = 0; i < c; ++i) values[report.ks[i]] = report.omega[i];
    const WeightSequence w(values);
    out.steps.push_back({c, criterion_sum(w, values.size()).value});
  }
  constexpr double kTol = 1e-12;
  bool increasing = true;
  for (std::size_t i = 1; i < out.steps.size(); ++i)
    if (!(out.steps[i].sum > out.steps[i - 1].sum * (1.0 + kTol))) increasing = false;
  const double last = out.steps.back().sum, prev = out.steps[out.steps.size() - 2].sum;
  if (report.alias_warning) {
    out.verdict = Verdict::Inconclusive;
  } else if (increasing) {
    out.verdict = Verdict::Violated;
  } else if (std::abs(last - prev) <= kTol * std::max(1.0, std::abs(last))) {
    out.verdict = Verdict::Satisfied;
  }
  return out;
}

}  // namespace dilmax::decomposition

#include "dilmax/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dilmax/errors.hpp"

namespace dilmax::counterexample {
namespace {

void check_block(int N, int capacity) {
  if (N < 1) throw InvalidArgument("block index must be >= 1");
  if (N > capacity || N > kMaxBlockIndex) {
    throw CapacityExceeded("block index " + std::to_string(N) + " above capacity " +
                           std::to_string(std::min(capacity, kMaxBlockIndex)));
  }
}

std::int64_t pow4(int N) { return std::int64_t{1} << (2 * N); }

}  // namespace

SignSequence::SignSequence(int N, std::int64_t kappa) : kappa_(kappa) {
  if (N < 1 || N > 30) throw InvalidArgument("sign sequence length must lie in [1, 30]");
  if (kappa < 1 || kappa > pow4(N)) throw InvalidArgument("kappa must lie in [1, 4^N]");
  digits_.resize(static_cast<std::size_t>(N));
  std::int64_t rest = kappa - 1;
  for (auto& d : digits_) {
    d = static_cast<int>(rest % 4);
    rest /= 4;
  }
}

SignSequence SignSequence::from_digits(std::vector<int> digits) {
  if (digits.empty() || digits.size() > 30) throw InvalidArgument("sign sequence length must lie in [1, 30]");
  SignSequence s;
  std::int64_t kappa = 0;
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (digits[i] < 0 || digits[i] > 3) throw InvalidArgument("sign digit must lie in [0, 3]");
    kappa = 4 * kappa + digits[i];
  }
  s.kappa_ = kappa + 1;
  s.digits_ = std::move(digits);
  return s;
}

cplx SignSequence::operator()(int j) const {
  if (j < 1 || j > length()) throw InvalidArgument("sign index out of range");
  return kAlphabet[static_cast<std::size_t>(digits_[static_cast<std::size_t>(j - 1)])];
}

cplx sign(int N, std::int64_t kappa, int j) {
  if (j < 1 || j > N) throw InvalidArgument("sign index out of range");
  if (kappa < 1 || kappa > pow4(N)) throw InvalidArgument("kappa must lie in [1, 4^N]");
  return kAlphabet[static_cast<std::size_t>(((kappa - 1) >> (2 * (j - 1))) & 3)];
}

GrowthWeight::GrowthWeight(std::function<double(double)> v, std::vector<double> realized, std::string name)
    : v_(std::move(v)), realized_(std::move(realized)), name_(std::move(name)) {
  if (!v_) throw InvalidArgument("growth weight needs an evaluator");
  if (realized_.size() < 2) throw InvalidArgument("growth weight needs at least two realized arguments");
  double prev = -1.0;
  for (std::size_t i = 0; i < realized_.size(); ++i) {
    if (i > 0 && !(realized_[i] > realized_[i - 1])) throw InvalidArgument("realized arguments must increase");
    const double val = v_(realized_[i]);
    if (!(val > 0.0) || !std::isfinite(val)) throw InvalidArgument("growth weight must be positive");
    if (val < prev) throw InvalidArgument("growth weight must be nondecreasing");
    prev = val;
  }
  if (!(v_(realized_.back()) > v_(realized_.front()))) {
    throw InvalidArgument("growth weight does not grow on the realized range");
  }
}

GrowthWeight GrowthWeight::sqrt_log(int n_max) {
  std::vector<double> ls;
  for (int N = 1; N <= std::max(n_max, 2); ++N) ls.push_back(block_length(N));
  return GrowthWeight([](double l) { return std::sqrt(std::log(l + 2.0)); }, std::move(ls), "sqrt-log");
}

double block_length(int N) { return std::ldexp(1.0, 2 * N); }

std::int64_t block_dilation_exp(int N) {
  if (N < 1 || N > 20) throw InvalidArgument("block index out of range");
  return static_cast<std::int64_t>(N) << (3 * N);
}

bump::BumpSumMultiplier build_mN(int N, int capacity) {
  check_block(N, capacity);
  const std::int64_t count = pow4(N);
  std::vector<bump::BumpTerm> terms;
  terms.reserve(static_cast<std::size_t>(count * N));
  for (std::int64_t kappa = 1; kappa <= count; ++kappa) {
    for (int j = 1; j <= N; ++j) terms.push_back({N * kappa + j, sign(N, kappa, j)});
  }
  return bump::BumpSumMultiplier(std::move(terms));
}

bump::ModulatedFunction build_gN(int N, const bump::Envelope& envelope) {
  if (N < 1) throw InvalidArgument("block index must be >= 1");
  std::vector<bump::Modulation> terms;
  for (int j = 1; j <= N; ++j) terms.push_back({j, 1.0});
  return bump::ModulatedFunction(std::move(terms), envelope);
}

bump::ModulatedFunction build_fNp(int N, double p) {
  if (!(p >= 1.0) || std::isinf(p)) throw InvalidArgument("f_{N,p} needs 1 <= p < inf");
  const auto g = build_gN(N, bump::Envelope::standard().normalized(p));
  std::vector<bump::Modulation> terms(g.terms().begin(), g.terms().end());
  return bump::ModulatedFunction(std::move(terms), g.envelope(), block_dilation_exp(N),
                                 1.0 / std::sqrt(static_cast<double>(N)), p);
}

DyadicInterval support_hull(const bump::BumpSumMultiplier& m) {
  if (m.empty()) throw InvalidArgument("empty multiplier has no support hull");
  const auto& outer = m.profile().outer();
  return {outer.lo.scaled(m.terms().front().scale), outer.hi.scaled(m.terms().back().scale)};
}

CounterexampleSpec::CounterexampleSpec(int n_max, GrowthWeight weight) : n_max_(n_max), weight_(std::move(weight)) {
  check_block(n_max, kMaxBlockIndex);
  std::vector<bump::BumpTerm> all;
  for (int N = 1; N <= n_max; ++N) {
    const double a = weight_(block_length(N)) / std::sqrt(static_cast<double>(N));
    const std::int64_t e = block_dilation_exp(N);
    auto mN = build_mN(N);
    for (const auto& t : mN.terms()) all.push_back({t.scale + e, a * t.coeff});
    blocks_.push_back({N, a, e, std::move(mN)});
  }
  assembled_ = bump::BumpSumMultiplier(std::move(all));
}

std::vector<DyadicInterval> CounterexampleSpec::block_supports() const {
  std::vector<DyadicInterval> out;
  for (const auto& b : blocks_) out.push_back(support_hull(b.mN).scaled(b.dilation_exp));
  return out;
}

bool CounterexampleSpec::blocks_disjoint() const {
  const auto s = block_supports();
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s[i].intersects(s[j])) return false;
  return true;
}

int best_letter(cplx z) {
  int best = 0;
  double value = (kAlphabet[0] * z).real();
  for (int d = 1; d < 4; ++d) {
    const double v = (kAlphabet[static_cast<std::size_t>(d)] * z).real();
    if (v > value) {
      value = v;
      best = d;
    }
  }
  return best;
}

KappaChoice choose_kappa(double x, int N, const bump::Envelope& envelope) {
  if (N < 1 || N > 30) throw InvalidArgument("block index out of range");
  KappaChoice out;
  const double psi = envelope(x);
  if (std::abs(psi) < 1e-12) {
    out.undefined = true;
    out.choices.assign(static_cast<std::size_t>(N), kAlphabet[0]);
    return out;
  }
  std::vector<int> digits;
  for (int j = 1; j <= N; ++j) {
    const double t = std::ldexp(x, j);
    const double ang = 2.0 * std::numbers::pi * (t - std::floor(t));
    const int d = best_letter(std::polar(1.0, ang) * psi);
    digits.push_back(d);
    out.choices.push_back(kAlphabet[static_cast<std::size_t>(d)]);
  }
  out.kappa = SignSequence::from_digits(std::move(digits)).kappa();
  return out;
}

std::vector<std::int64_t> realized_octaves(const bump::BumpSumMultiplier& m) {
  std::vector<std::int64_t> ks;
  for (const auto& t : m.terms()) {
    if (t.coeff == cplx{}) continue;
    ks.push_back(t.scale);
    ks.push_back(t.scale + 1);
  }
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

double example_envelope(const GrowthWeight& v, std::int64_t k) {
  const double a = std::abs(static_cast<double>(k));
  return v(a) / std::sqrt(std::log(a + 2.0));
}

std::vector<std::int64_t> dilation_range(int N) {
  if (N < 1 || N > kMaxBlockIndex) throw CapacityExceeded("block index out of range");
  std::vector<std::int64_t> ks(static_cast<std::size_t>(N * pow4(N)));
  for (std::size_t i = 0; i < ks.size(); ++i) ks[i] = static_cast<std::int64_t>(i) + 1;
  return ks;
}

LowerBoundReport verify_lower_bound(int N, double p, bump::Quadrature q) {
  LowerBoundReport r;
  r.N = N;
  r.p = p;
  const auto env = bump::Envelope::standard().normalized(p);
  const auto m = build_mN(N);
  const auto g = build_gN(N, env);
  const auto ks = dilation_range(N);
  r.norm_value = bump::maximal_lp_norm(m, ks, g, p, q);
  r.psi_norm = env.lp_norm(p);
  r.bound = N * r.psi_norm / std::numbers::sqrt2;
  r.pass = r.norm_value >= r.bound * (1.0 - kLowerBoundSlack);
  return r;
}

ConclusionReport verify_conclusion(const CounterexampleSpec& spec, int N, double p, bump::Quadrature q) {
  if (N < 1 || N > spec.n_max()) throw InvalidArgument("block index outside the assembled multiplier");
  ConclusionReport r;
  r.N = N;
  r.p = p;
  r.a_N = spec.blocks()[static_cast<std::size_t>(N - 1)].scalar;
  r.weight = spec.weight()(block_length(N));
  const auto ks = dilation_range(N);
  const auto f = build_fNp(N, p);
  r.f_norm = bump::lp_norm(f, p, q);
  r.maximal_norm = bump::maximal_lp_norm(spec.assembled(), ks, f, p, q);
  // ||M_m f|| = a_N N^-1/2 * (the block's maximal norm on g_N), so recover it.
  r.norm_value = r.maximal_norm * std::sqrt(static_cast<double>(N)) / r.a_N;
  r.constant = r.norm_value / N;
  r.bound = r.a_N * std::sqrt(static_cast<double>(N)) * r.constant;
  return r;
}

}  // namespace dilmax::counterexample

#include "dilmax_cli/harness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "dilmax/counterexample.hpp"
#include "dilmax/decomposition.hpp"
#include "dilmax/errors.hpp"
#include "dilmax/fit.hpp"
#include "dilmax/seminorm.hpp"
#include "dilmax/tiling.hpp"

namespace dilmax::cli {
namespace {

using nlohmann::ordered_json;
namespace ce = dilmax::counterexample;
namespace dc = dilmax::decomposition;

struct Common {
  std::string out_path;
  std::string csv_path;
  std::uint64_t seed = 20240601;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--out", c.out_path, "write the JSON report here instead of stdout");
  app->add_option("--csv", c.csv_path, "also write the table as CSV");
  app->add_option("--seed", c.seed, "seed of the single random generator");
}

ordered_json report_head(const std::string& command, ordered_json config) {
  ordered_json r;
  r["command"] = command;
  r["version"] = DILMAX_VERSION;
  r["config"] = std::move(config);
  return r;
}

void emit(const Common& c, const ordered_json& report, std::ostream& out) {
  if (c.out_path.empty()) {
    out << report.dump(2) << '\n';
    return;
  }
  std::ofstream f(c.out_path);
  if (!f) throw ConfigError("cannot write " + c.out_path);
  f << report.dump(2) << '\n';
}

void emit_csv(const Common& c, const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows) {
  if (c.csv_path.empty()) return;
  std::ofstream f(c.csv_path);
  if (!f) throw ConfigError("cannot write " + c.csv_path);
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) f << (i ? "," : "") << cells[i];
    f << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

double parse_p(const std::string& s) {
  if (s == "inf") return HUGE_VAL;
  return std::stod(s);
}

// ------------------------------------------------------------------- tile

struct TileOpts {
  std::string set;
  int cap_exp = -1;
  int range = 8;
  int random_count = 0;
};

int cmd_tile(const TileOpts& o, const Common& c, std::ostream& out) {
  std::vector<std::int64_t> E;
  int N = o.cap_exp;
  if (o.random_count > 0) {
    if (!o.set.empty()) throw ConfigError("--set and --random are exclusive");
    if (N < 0) throw ConfigError("--random needs --cap-exp");
    std::mt19937_64 gen(c.seed);
    const std::int64_t span = std::int64_t{1} << (2 * N + 2);
    std::uniform_int_distribution<std::int64_t> pick(0, span - 1);
    while (static_cast<int>(E.size()) < std::min<std::int64_t>(o.random_count, span)) {
      E.push_back(pick(gen));
      std::sort(E.begin(), E.end());
      E.erase(std::unique(E.begin(), E.end()), E.end());
    }
  } else {
    E = parse_int_list(o.set);
    if (E.empty()) throw ConfigError("--set must name at least one integer");
    if (N < 0) {
      N = 0;
      while ((std::size_t{1} << N) < E.size()) ++N;
    }
  }
  const tiling::TilingInstance inst(E, N, o.range);
  auto res = tiling::build_tiling(inst);
  tiling::certify(res, inst.E);
  const bool localized = tiling::verify_localized(res);
  const bool counted = res.max_forbidden <= (std::int64_t{1} << (2 * N + 1));

  ordered_json cfg{{"set", o.set}, {"cap_exp", N}, {"range", o.range}, {"random", o.random_count}, {"seed", c.seed}};
  auto r = report_head("tile", cfg);
  r["E"] = inst.E;
  r["N"] = N;
  r["I"] = o.range;
  ordered_json centers = ordered_json::array();
  std::vector<std::vector<std::string>> rows;
  for (int i = -o.range; i <= o.range; ++i) {
    centers.push_back({{"i", i}, {"b", res.center(i)}});
    rows.push_back({std::to_string(i), std::to_string(res.center(i)),
                    std::to_string(res.forbidden[static_cast<std::size_t>(i + o.range)])});
  }
  r["centers"] = centers;
  r["maxForbidden"] = res.max_forbidden;
  r["forbiddenBound"] = std::int64_t{1} << (2 * N + 1);
  r["verified"] = {{"disjoint", res.disjoint->ok}, {"cover", res.cover->ok}, {"localized", localized},
                   {"counting", counted}};
  const bool pass = res.disjoint->ok && res.cover->ok && localized && counted;
  r["pass"] = pass;
  emit(c, r, out);
  emit_csv(c, {"i", "b", "forbidden"}, rows);
  return pass ? kExitOk : kExitCheckFailed;
}

// --------------------------------------------------------- counterexample

struct CounterOpts {
  std::string N = "1..3";
  std::string p = "2";
  bool conclusion = false;
  int samples = 0;
};

int cmd_counterexample(const CounterOpts& o, const Common& c, std::ostream& out) {
  const auto Ns = parse_int_list(o.N);
  if (Ns.empty()) throw ConfigError("--N is empty");
  std::vector<double> ps;
  std::istringstream ss(o.p);
  for (std::string tok; std::getline(ss, tok, ',');) ps.push_back(parse_p(tok));
  for (double p : ps)
    if (!(p > 1.0) || std::isinf(p)) throw ConfigError("--p values must lie in (1, inf)");
  const auto nmax = static_cast<int>(*std::max_element(Ns.begin(), Ns.end()));
  for (auto N : Ns)
    if (N < 1 || N > ce::kMaxBlockIndex) throw ConfigError("--N outside [1, 6]");

  ordered_json cfg{{"N", o.N}, {"p", o.p}, {"conclusion", o.conclusion}, {"samples", o.samples}};
  auto r = report_head("counterexample", cfg);
  const bump::Quadrature q{o.samples};
  bool pass = true;
  ordered_json rows = ordered_json::array();
  std::vector<std::vector<std::string>> csv;
  std::optional<ce::CounterexampleSpec> spec;
  if (o.conclusion) spec.emplace(nmax, ce::GrowthWeight::sqrt_log(nmax));
  ordered_json slopes = ordered_json::object();
  for (double p : ps) {
    std::vector<double> xs, ys, bounds, consts;
    for (auto N : Ns) {
      const auto lb = ce::verify_lower_bound(static_cast<int>(N), p, q);
      ordered_json row{{"N", N}, {"p", p}, {"normValue", lb.norm_value}, {"bound", lb.bound}, {"pass", lb.pass}};
      pass = pass && lb.pass;
      xs.push_back(static_cast<double>(N));
      ys.push_back(lb.norm_value);
      std::vector<std::string> line{std::to_string(N), num(p), num(lb.norm_value), num(lb.bound)};
      if (spec) {
        const auto cr = ce::verify_conclusion(*spec, static_cast<int>(N), p, q);
        row["constant"] = cr.constant;
        row["a_N"] = cr.a_N;
        row["conclusionBound"] = cr.bound;
        row["maximalNorm"] = cr.maximal_norm;
        row["fNorm"] = cr.f_norm;
        bounds.push_back(cr.bound);
        consts.push_back(cr.constant);
        line.push_back(num(cr.bound));
      }
      rows.push_back(row);
      csv.push_back(line);
    }
    ordered_json s;
    if (xs.size() >= 2) {
      s["slope"] = least_squares_slope(xs, ys);
      s["slopeBound"] = 0.70;
      s["pass"] = s["slope"].get<double>() >= 0.70;
      pass = pass && s["pass"].get<bool>();
    }
    if (spec) {
      bool increasing = true;
      for (std::size_t i = 1; i < bounds.size(); ++i) increasing = increasing && bounds[i] > bounds[i - 1];
      const auto [lo, hi] = std::minmax_element(consts.begin(), consts.end());
      s["boundsIncreasing"] = increasing;
      s["constantSpread"] = *hi / *lo;
      s["constants"] = consts;
      pass = pass && increasing && *hi / *lo <= 2.0;
    }
    slopes[num(p)] = s;
  }
  if (spec) r["blocksDisjoint"] = spec->blocks_disjoint();
  if (spec) pass = pass && spec->blocks_disjoint();
  r["rows"] = rows;
  r["fits"] = slopes;
  r["pass"] = pass;
  emit(c, r, out);
  std::vector<std::string> header{"N", "p", "value", "bound"};
  if (spec) header.push_back("conclusion_bound");
  emit_csv(c, header, csv);
  return pass ? kExitOk : kExitCheckFailed;
}

// --------------------------------------------------------------- seminorm

struct SeminormOpts {
  std::string multiplier = "one";
  int order = 2;
  int nmax = 3;
  int points_per_octave = 64;
  double ratio_bound = 1e4;
};

int cmd_seminorm(const SeminormOpts& o, const Common& c, std::ostream& out) {
  if (o.order < 0 || o.order > 2) throw ConfigError("--order must be 0, 1 or 2");
  ordered_json cfg{{"multiplier", o.multiplier}, {"order", o.order}, {"nmax", o.nmax},
                   {"points_per_octave", o.points_per_octave}, {"ratio_bound", o.ratio_bound}};
  auto r = report_head("seminorm", cfg);
  SeminormSampling s;
  s.points_per_octave = o.points_per_octave;
  bool pass = true;
  if (o.multiplier == "one") {
    const double v = mikhlin_seminorm([](double) { return grid::cplx{1.0, 0.0}; }, o.order, s);
    r["value"] = v;
    pass = v == 1.0;
  } else if (o.multiplier == "bump") {
    const double v = mikhlin_seminorm(bump_multiplier({0}), o.order, s);
    r["value"] = v;
    pass = std::isfinite(v) && v >= 1.0;
  } else if (o.multiplier == "counterexample") {
    if (o.nmax < 1 || o.nmax > ce::kMaxBlockIndex) throw ConfigError("--nmax outside [1, 6]");
    const ce::CounterexampleSpec spec(o.nmax, ce::GrowthWeight::sqrt_log(o.nmax));
    const auto ks = ce::realized_octaves(spec.assembled());
    std::vector<double> ratios(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
      ratios[i] = localized_derivative_sup(spec.assembled(), ks[i], o.order) /
                  ce::example_envelope(spec.weight(), ks[i]);
    }
    const double mx = *std::max_element(ratios.begin(), ratios.end());
    // Per-block maxima: bounded means they do not grow with the block index.
    std::vector<double> per_block;
    for (const auto& b : spec.blocks()) {
      const std::int64_t lo = b.mN.terms().front().scale + b.dilation_exp;
      const std::int64_t hi = b.mN.terms().back().scale + b.dilation_exp + 1;
      double best = 0.0;
      for (std::size_t i = 0; i < ks.size(); ++i)
        if (ks[i] >= lo && ks[i] <= hi) best = std::max(best, ratios[i]);
      per_block.push_back(best);
    }
    const bool flat = *std::max_element(per_block.begin(), per_block.end()) <= per_block.front() * 1.05;
    r["octaves"] = ks.size();
    r["maxRatio"] = mx;
    r["blockMaxRatios"] = per_block;
    r["blockMaximaBounded"] = flat;
    pass = std::isfinite(mx) && mx <= o.ratio_bound && flat;
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < ks.size(); ++i) rows.push_back({std::to_string(ks[i]), num(ratios[i])});
    emit_csv(c, {"k", "ratio"}, rows);
  } else {
    throw ConfigError("--multiplier must be one, bump or counterexample");
  }
  r["pass"] = pass;
  emit(c, r, out);
  return pass ? kExitOk : kExitCheckFailed;
}

// -------------------------------------------------------------- decompose

struct DecomposeOpts {
  std::string scales = "-3,-1,1,3";
  std::string t = "1,1.37,2";
  int lmax = 8;
  int kernel_exp = 15;
  double kernel_length = 1024.0;
  int grid_exp = 12;
  double length = 128.0;
  double tol = 1e-3;
};

int cmd_decompose(const DecomposeOpts& o, const Common& c, std::ostream& out) {
  const auto scales = parse_int_list(o.scales);
  const auto ts = parse_real_list(o.t);
  if (scales.empty()) throw ConfigError("--scales is empty");
  if (ts.empty()) throw EmptyDilationSet();
  const grid::GridSpec kspec(1, std::size_t{1} << o.kernel_exp, o.kernel_length);
  const grid::GridSpec fspec(1, std::size_t{1} << o.grid_exp, o.length);
  const auto m = bump_multiplier(scales);
  const auto sym = grid::GridSymbol::lazy(kspec, grid::make_symbol(m));
  const auto fsym = grid::GridSymbol::lazy(fspec, grid::make_symbol(m));

  ordered_json cfg{{"scales", o.scales}, {"t", o.t}, {"lmax", o.lmax}, {"kernel_exp", o.kernel_exp},
                   {"kernel_length", o.kernel_length}, {"grid_exp", o.grid_exp}, {"length", o.length},
                   {"tol", o.tol}, {"seed", c.seed}};
  auto r = report_head("decompose", cfg);

  const auto ks = ce::realized_octaves(m);
  std::map<std::int64_t, double> omega;
  ordered_json omegas = ordered_json::array();
  for (auto k : ks) {
    const auto w = grid::weighted_kernel_norm(sym, k, 2.0, 1.0);
    omega[k] = w.value;
    omegas.push_back({{"k", k}, {"omega", w.value}, {"alias", w.alias_fraction}});
  }
  const auto blocks = dc::build_blocks(dc::WeightSequence(omega));
  ordered_json bj = ordered_json::array();
  for (std::size_t j = 0; j < blocks.size(); ++j) bj.push_back({{"j", j}, {"card", blocks[j].size()}, {"k", blocks[j]}});
  r["omega"] = omegas;
  r["blocks"] = bj;

  const dc::KernelPieces H(sym, blocks, o.lmax);
  r["kernelAlias"] = H.alias_fraction();
  const auto f = wave_packets(fspec, c.seed);
  bool pass = true;
  ordered_json errs = ordered_json::array();
  std::vector<std::vector<std::string>> rows;
  for (double t : ts) {
    const auto ref = grid::apply_symbol(fsym, t, f);
    std::vector<grid::cplx> acc(fspec.size());
    double last = 0.0;
    for (int l = 0; l <= o.lmax; ++l) {
      for (std::size_t j = 0; j < blocks.size(); ++j) {
        const auto part = dc::apply_TEl(H, j, l, t, f);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += part[i];
      }
      last = relative_l2(grid::GridFunction(fspec, acc), ref);
      errs.push_back({{"t", t}, {"l", l}, {"error", last}});
      rows.push_back({num(t), std::to_string(l), num(last)});
    }
    pass = pass && last <= o.tol;
  }
  r["reconstruction"] = errs;
  r["pass"] = pass;
  emit(c, r, out);
  emit_csv(c, {"t", "l", "error"}, rows);
  return pass ? kExitOk : kExitCheckFailed;
}

// -------------------------------------------------------------- criterion

struct CriterionOpts {
  std::string multiplier = "bump";
  std::string kind = "kernel-lp";
  double p = 2.0;
  double alpha = 1.0;
  double eps = 0.5;
  int r = 2;
  double gamma = 1.0;
  std::string window = "-8..8";
  int nmax = 3;
  std::string horizons = "24,48,96,192";
  std::optional<int> grid_exp;
  std::optional<double> length;
};

int cmd_criterion(const CriterionOpts& o, const Common& c, std::ostream& out) {
  dc::CriterionParams params;
  if (o.kind == "kernel-lp") params.kind = dc::CriterionKind::KernelLp;
  else if (o.kind == "kernel-sup") params.kind = dc::CriterionKind::KernelSup;
  else if (o.kind == "sobolev") params.kind = dc::CriterionKind::Sobolev;
  else throw ConfigError("--kind must be kernel-lp, kernel-sup or sobolev");
  params.p = o.p;
  params.alpha = o.alpha;
  params.eps = o.eps;
  params.r = o.r;
  params.gamma = o.gamma;
  // Kernel criteria sample x on a long period (Nyquist 2 covers |xi| < 3/2);
  // the Sobolev criterion samples xi itself and needs a fine short grid.
  // The sup-weighted kernel decays slowest relative to its peak.
  int default_exp = 12;
  double default_length = 1024.0;
  if (params.kind == dc::CriterionKind::KernelSup) {
    default_exp = 14;
    default_length = 4096.0;
  } else if (params.kind == dc::CriterionKind::Sobolev) {
    default_exp = 14;
    default_length = 8.0;
  }
  const int grid_exp = o.grid_exp.value_or(default_exp);
  const double length = o.length.value_or(default_length);
  const grid::GridSpec spec(1, std::size_t{1} << grid_exp, length);

  ordered_json cfg{{"multiplier", o.multiplier}, {"kind", o.kind}, {"p", o.p}, {"alpha", o.alpha}, {"eps", o.eps},
                   {"r", o.r}, {"gamma", o.gamma}, {"window", o.window}, {"nmax", o.nmax},
                   {"horizons", o.horizons}, {"grid_exp", grid_exp}, {"length", length}};
  auto r = report_head("criterion", cfg);
  std::optional<bump::BumpSumMultiplier> m;
  std::vector<std::int64_t> ks;
  std::vector<std::size_t> horizons;
  if (o.multiplier == "bump") {
    m = bump_multiplier({0});
    ks = parse_int_list(o.window);
  } else if (o.multiplier == "counterexample") {
    if (o.nmax < 1 || o.nmax > ce::kMaxBlockIndex) throw ConfigError("--nmax outside [1, 6]");
    const ce::CounterexampleSpec cs(o.nmax, ce::GrowthWeight::sqrt_log(o.nmax));
    m = cs.assembled();
    ks = ce::realized_octaves(*m);
    for (auto h : parse_int_list(o.horizons)) horizons.push_back(static_cast<std::size_t>(h));
    if (horizons.size() < 2) throw ConfigError("--horizons needs two or more window sizes");
    if (horizons.back() > ks.size()) {
      throw ConfigError("largest horizon exceeds the " + std::to_string(ks.size()) + " realized octaves");
    }
    ks.resize(horizons.back());
  } else {
    throw ConfigError("--multiplier must be bump or counterexample");
  }
  if (ks.empty()) throw EmptyDilationSet();
  const auto sym = grid::GridSymbol::lazy(spec, grid::make_symbol(*m));
  const auto rep = dc::evaluate_criteria(sym, ks, params);
  ordered_json om = ordered_json::array();
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < rep.ks.size(); ++i) {
    om.push_back({{"k", rep.ks[i]}, {"omega", rep.omega[i]}});
    rows.push_back({std::to_string(rep.ks[i]), num(rep.omega[i])});
  }
  r["omega"] = om;
  r["sum"] = rep.sum;
  r["maxAlias"] = rep.max_alias;
  r["aliasWarning"] = rep.alias_warning;
  bool pass = true;
  if (horizons.empty()) {
    r["verdict"] = dc::to_string(rep.verdict);
    pass = rep.verdict == dc::Verdict::Satisfied;
  } else {
    const auto trend = dc::horizon_trend(rep, horizons);
    ordered_json steps = ordered_json::array();
    for (const auto& s : trend.steps) steps.push_back({{"count", s.count}, {"sum", s.sum}});
    r["horizon"] = steps;
    r["verdict"] = dc::to_string(trend.verdict);
    // The declared expectation for the counterexample is divergence.
    pass = trend.verdict == dc::Verdict::Violated;
  }
  r["pass"] = pass;
  emit(c, r, out);
  emit_csv(c, {"k", "omega"}, rows);
  return pass ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- maximal

struct MaximalOpts {
  std::string scales = "0";
  std::optional<std::string> dilations;
  std::optional<std::string> dyadic;
  int octave_samples = 0;
  bool family = false;
  int grid_exp = 12;
  double length = 128.0;
  std::string p = "2,4";
};

int cmd_maximal(const MaximalOpts& o, const Common& c, std::ostream& out) {
  const int modes = (o.dilations ? 1 : 0) + (o.dyadic ? 1 : 0) + (o.octave_samples > 0 ? 1 : 0);
  if (modes != 1) throw ConfigError("give exactly one of --dilations, --dyadic, --octave-samples");
  const grid::GridSpec spec(1, std::size_t{1} << o.grid_exp, o.length);
  const auto m = bump_multiplier(parse_int_list(o.scales));
  const auto sym = grid::GridSymbol::lazy(spec, grid::make_symbol(m));
  const auto f = wave_packets(spec, c.seed);
  std::vector<double> ps;
  std::istringstream ss(o.p);
  for (std::string tok; std::getline(ss, tok, ',');) ps.push_back(parse_p(tok));

  ordered_json cfg{{"scales", o.scales}, {"dilations", o.dilations.value_or("")}, {"dyadic", o.dyadic.value_or("")},
                   {"octave_samples", o.octave_samples}, {"family", o.family}, {"grid_exp", o.grid_exp},
                   {"length", o.length}, {"p", o.p}, {"seed", c.seed}};
  auto r = report_head("maximal", cfg);
  bool pass = true;
  auto norms = [&](const grid::GridFunction& g) {
    ordered_json j = ordered_json::object();
    for (double p : ps) j[num(p)] = grid::lp_norm(g, p);
    return j;
  };
  if (o.dyadic) {
    const auto ks = parse_int_list(*o.dyadic);
    const auto out_max = grid::maximal_dyadic(sym, ks, f);
    r["norms"] = norms(out_max);
    if (o.family) {
      std::vector<grid::GridSymbol> family;
      for (auto k : ks) {
        const auto fn = grid::make_symbol(m);
        family.push_back(grid::GridSymbol::lazy(spec, [fn, k](const grid::Point& xi, std::int64_t s) {
          return fn(xi, s + k);
        }));
      }
      const auto fam = grid::finite_family_maximal(family, f);
      double diff = 0.0;
      for (std::size_t i = 0; i < spec.size(); ++i) diff = std::max(diff, std::abs(fam[i] - out_max[i]));
      r["familyMaxDifference"] = diff;
      pass = diff == 0.0;
    }
  } else {
    std::vector<double> ts;
    if (o.dilations) {
      ts = parse_real_list(*o.dilations);
    } else {
      for (int i = 0; i < o.octave_samples; ++i) ts.push_back(std::exp2(static_cast<double>(i) / o.octave_samples));
    }
    const auto out_max = grid::maximal(sym, ts, f);
    r["norms"] = norms(out_max);
    if (o.octave_samples > 0) {
      std::vector<double> fine;
      for (int i = 0; i < 2 * o.octave_samples; ++i) {
        fine.push_back(std::exp2(static_cast<double>(i) / (2 * o.octave_samples)));
      }
      const auto refined = grid::maximal(sym, fine, f);
      r["refinedNorms"] = norms(refined);
      ordered_json change = ordered_json::object();
      for (double p : ps) {
        const double a = grid::lp_norm(out_max, p), b = grid::lp_norm(refined, p);
        change[num(p)] = b > 0.0 ? (b - a) / b : 0.0;
      }
      r["refinementChange"] = change;
    }
  }
  r["pass"] = pass;
  emit(c, r, out);
  return pass ? kExitOk : kExitCheckFailed;
}

// ----------------------------------------------------------------- growth

struct GrowthOpts {
  std::string N = "2..12";
  double p = 4.0;
  double lo = 0.4;
  double hi = 0.6;
};

int cmd_growth(const GrowthOpts& o, const Common& c, std::ostream& out) {
  const auto Ns = parse_int_list(o.N);
  if (Ns.size() < 2) throw ConfigError("--N needs two or more values");
  if (!(o.p >= 1.0) || std::isinf(o.p)) throw ConfigError("--p must lie in [1, inf)");
  for (auto N : Ns)
    if (N < 1 || N > 16) throw ConfigError("--N outside [1, 16]");
  ordered_json cfg{{"N", o.N}, {"p", o.p}, {"lo", o.lo}, {"hi", o.hi}};
  auto r = report_head("growth", cfg);
  std::vector<double> lx, ly;
  ordered_json rows = ordered_json::array();
  std::vector<std::vector<std::string>> csv;
  const double psi = bump::Envelope::standard().lp_norm(o.p);
  for (auto N : Ns) {
    const auto g = ce::build_gN(static_cast<int>(N));
    // |g|^p for even p is band-limited below 2^(N+1) (p/2); oversample by 4.
    const bump::Quadrature q{static_cast<int>(std::max<std::int64_t>(128, std::int64_t{1} << (N + 3)))};
    const double v = bump::lp_norm(g, o.p, q);
    lx.push_back(std::log(static_cast<double>(N)));
    ly.push_back(std::log(v));
    rows.push_back({{"N", N}, {"norm", v}, {"normOverSqrtN", v / std::sqrt(static_cast<double>(N))},
                    {"psiNorm", psi}});
    csv.push_back({std::to_string(N), num(v), num(psi)});
  }
  const double e = least_squares_slope(lx, ly);
  r["rows"] = rows;
  r["exponent"] = e;
  const bool pass = e >= o.lo && e <= o.hi;
  r["pass"] = pass;
  emit(c, r, out);
  emit_csv(c, {"N", "norm", "psi_norm"}, csv);
  return pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  if (text.empty()) return out;
  try {
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
      const std::int64_t a = std::stoll(text.substr(0, dots));
      const std::int64_t b = std::stoll(text.substr(dots + 2));
      if (b - a > 10'000'000) throw ConfigError("range too long: " + text);
      for (std::int64_t k = a; k <= b; ++k) out.push_back(k);
      return out;
    }
    std::istringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ',');) {
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw ConfigError("not an integer: " + tok);
    }
  } catch (const std::logic_error&) {
    throw ConfigError("cannot parse integer list '" + text + "'");
  }
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream ss(text);
  try {
    for (std::string tok; std::getline(ss, tok, ',');) {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw ConfigError("not a number: " + tok);
    }
  } catch (const std::logic_error&) {
    throw ConfigError("cannot parse number list '" + text + "'");
  }
  return out;
}

bump::BumpSumMultiplier bump_multiplier(const std::vector<std::int64_t>& scales) {
  std::vector<bump::BumpTerm> terms;
  for (auto s : scales) terms.push_back({s, 1.0});
  return bump::BumpSumMultiplier(std::move(terms));
}

grid::GridFunction wave_packets(const grid::GridSpec& spec, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  struct Packet {
    double amp, phase, center, freq;
  };
  std::vector<Packet> packets;
  for (int i = 0; i < 4; ++i) {
    Packet pk;
    pk.amp = 0.5 + unit(gen);
    pk.phase = 2.0 * std::numbers::pi * unit(gen);
    pk.center = 16.0 * unit(gen) - 8.0;
    pk.freq = 0.1 + 5.9 * unit(gen);
    packets.push_back(pk);
  }
  return grid::GridFunction::sample(spec, [&](const grid::Point& x) {
    grid::cplx acc{};
    for (const auto& pk : packets) {
      double g = 1.0;
      double arg = 0.0;
      for (int d = 0; d < spec.dim; ++d) {
        const double u = x[static_cast<std::size_t>(d)] - pk.center;
        g *= std::exp(-std::numbers::pi * u * u / 4.0);
        arg += pk.freq * x[static_cast<std::size_t>(d)];
      }
      acc += pk.amp * g * std::polar(1.0, pk.phase + 2.0 * std::numbers::pi * arg);
    }
    return acc;
  });
}

double relative_l2(const grid::GridFunction& a, const grid::GridFunction& b) {
  if (!(a.spec() == b.spec())) throw SpecMismatch("relative_l2 needs a shared grid");
  double num2 = 0.0, den2 = 0.0;
  for (std::size_t i = 0; i < a.spec().size(); ++i) {
    num2 += std::norm(a[i] - b[i]);
    den2 += std::norm(b[i]);
  }
  return den2 > 0.0 ? std::sqrt(num2 / den2) : std::sqrt(num2);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"dilmax: maximal operators of dilated Fourier multipliers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(DILMAX_VERSION));
  Common common;

  TileOpts tile;
  auto* t = app.add_subcommand("tile", "build and verify translate centers for a finite integer set");
  t->add_option("--set", tile.set, "integers, e.g. 0,5");
  t->add_option("--cap-exp", tile.cap_exp, "N with card(E) <= 2^N (default: smallest such N)");
  t->add_option("--range", tile.range, "build b_i for |i| <= range");
  t->add_option("--random", tile.random_count, "draw this many distinct integers from [0, 4^(N+1))");
  add_common(t, common);

  CounterOpts counter;
  auto* ctr = app.add_subcommand("counterexample", "lower bounds for the dyadic maximal function of m_N");
  ctr->add_option("--N", counter.N, "block indices, e.g. 1..4");
  ctr->add_option("--p", counter.p, "comma-separated exponents");
  ctr->add_flag("--conclusion", counter.conclusion, "also evaluate the assembled multiplier on f_{N,p}");
  ctr->add_option("--samples", counter.samples, "quadrature samples per unit (0: automatic)");
  add_common(ctr, common);

  SeminormOpts semi;
  auto* sm = app.add_subcommand("seminorm", "Mikhlin seminorms and the localized derivative ratio");
  sm->add_option("--multiplier", semi.multiplier, "one | bump | counterexample");
  sm->add_option("--order", semi.order, "derivative order, at most 2");
  sm->add_option("--nmax", semi.nmax, "blocks of the assembled counterexample");
  sm->add_option("--points-per-octave", semi.points_per_octave, "sampling density");
  sm->add_option("--ratio-bound", semi.ratio_bound, "declared bound on the localized ratio");
  add_common(sm, common);

  DecomposeOpts dec;
  auto* dcmd = app.add_subcommand("decompose", "kernel pieces, operators T_t and reconstruction error");
  dcmd->add_option("--scales", dec.scales, "bump scales of the test multiplier");
  dcmd->add_option("--t", dec.t, "dilations t");
  dcmd->add_option("--lmax", dec.lmax, "largest spatial cutoff index");
  dcmd->add_option("--kernel-exp", dec.kernel_exp, "log2 of kernel grid points");
  dcmd->add_option("--kernel-length", dec.kernel_length, "kernel grid period");
  dcmd->add_option("--grid-exp", dec.grid_exp, "log2 of function grid points");
  dcmd->add_option("--length", dec.length, "function grid period");
  dcmd->add_option("--tol", dec.tol, "declared relative L2 tolerance");
  add_common(dcmd, common);

  CriterionOpts crit;
  auto* cr = app.add_subcommand("criterion", "evaluate the summability criterion on a k window");
  cr->add_option("--multiplier", crit.multiplier, "bump | counterexample");
  cr->add_option("--kind", crit.kind, "kernel-lp | kernel-sup | sobolev");
  cr->add_option("--p", crit.p, "exponent p (kernel-lp uses p')");
  cr->add_option("--alpha", crit.alpha, "weight exponent");
  cr->add_option("--eps", crit.eps, "decay excess for kernel-sup");
  cr->add_option("--r", crit.r, "Sobolev integrability, 1 or 2");
  cr->add_option("--gamma", crit.gamma, "Sobolev order");
  cr->add_option("--window", crit.window, "k window for the bump multiplier");
  cr->add_option("--nmax", crit.nmax, "blocks of the assembled counterexample");
  cr->add_option("--horizons", crit.horizons, "nested window sizes over realized octaves");
  cr->add_option("--grid-exp", crit.grid_exp, "log2 of kernel grid points");
  cr->add_option("--length", crit.length, "kernel grid period");
  add_common(cr, common);

  MaximalOpts mx;
  auto* mc = app.add_subcommand("maximal", "grid maximal function of a bump-sum multiplier");
  mc->add_option("--scales", mx.scales, "bump scales");
  mc->add_option("--dilations", mx.dilations, "explicit dilations t");
  mc->add_option("--dyadic", mx.dyadic, "dyadic exponents k");
  mc->add_option("--octave-samples", mx.octave_samples, "geometric samples of t in [1, 2)");
  mc->add_flag("--family", mx.family, "cross-check against the finite-family maximal operator");
  mc->add_option("--grid-exp", mx.grid_exp, "log2 of grid points");
  mc->add_option("--length", mx.length, "grid period");
  mc->add_option("--p", mx.p, "comma-separated exponents (inf allowed)");
  add_common(mc, common);

  GrowthOpts gr;
  auto* gc = app.add_subcommand("growth", "growth exponent of ||g_N||_p");
  gc->add_option("--N", gr.N, "range of N");
  gc->add_option("--p", gr.p, "exponent");
  gc->add_option("--lo", gr.lo, "smallest accepted exponent");
  gc->add_option("--hi", gr.hi, "largest accepted exponent");
  add_common(gc, common);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::Success&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return e.get_exit_code() == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (t->parsed()) return cmd_tile(tile, common, out);
    if (ctr->parsed()) return cmd_counterexample(counter, common, out);
    if (sm->parsed()) return cmd_seminorm(semi, common, out);
    if (dcmd->parsed()) return cmd_decompose(dec, common, out);
    if (cr->parsed()) return cmd_criterion(crit, common, out);
    if (mc->parsed()) return cmd_maximal(mx, common, out);
    if (gc->parsed()) return cmd_growth(gr, common, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const InvalidArgument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const EmptyDilationSet& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const CapacityExceeded& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const WindowTooWide& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const Error& e) {
    err << "check failed: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitConfigError;
}

}  // namespace dilmax::cli

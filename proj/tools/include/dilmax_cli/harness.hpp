#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "dilmax/bump_calculus.hpp"
#include "dilmax/grid.hpp"

namespace dilmax::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs one subcommand (args excludes the program name). Reports go to out
/// unless --out is given; diagnostics go to err. Returns 0 when every
/// declared check passes, 1 when one fails, 2 on a configuration error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "a..b" (inclusive, empty when b < a) or "a,b,c".
std::vector<std::int64_t> parse_int_list(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);

/// Unit-coefficient bump sum at the given scales.
bump::BumpSumMultiplier bump_multiplier(const std::vector<std::int64_t>& scales);

/// Sum of four Gaussian wave packets (width 2, centers within |x| <= 8,
/// frequencies in [0.1, 6]) with amplitudes and phases drawn from a
/// mt19937_64 seeded with seed. Spectrum well inside |xi| < 8.
grid::GridFunction wave_packets(const grid::GridSpec& spec, std::uint64_t seed);

/// ||a - b||_2 / ||b||_2 on a shared grid.
double relative_l2(const grid::GridFunction& a, const grid::GridFunction& b);

}  // namespace dilmax::cli

#pragma once

#include <filesystem>
#include <string>

#include "dilmax/bump_calculus.hpp"
#include "dilmax/grid.hpp"

namespace dilmax::io {

/// {"terms":[{"scale":M,"coeff":[re,im]}],"profile":"phi-standard"}
std::string to_json(const bump::BumpSumMultiplier& m);
bump::BumpSumMultiplier multiplier_from_json(const std::string& text);

/// {"terms":[{"freq":j,"coeff":[re,im]}],"envelope":"psi-standard"} plus
/// "dilation_exp", "scalar", "norm_index", "envelope_scale" when they differ
/// from their defaults.
std::string to_json(const bump::ModulatedFunction& f);
bump::ModulatedFunction modulated_from_json(const std::string& text);

/// Writes a JSON header {"d","n","L","kind","data"} to path and the samples to
/// a sidecar (path with extension .f64) as interleaved little-endian float64
/// (re, im) pairs in FFT order. kind is "function" or "symbol"; lazy symbols
/// are rejected.
void write_grid(const std::filesystem::path& path, const grid::GridFunction& f);
void write_grid(const std::filesystem::path& path, const grid::GridSymbol& s);

struct GridRecord {
  std::string kind;
  grid::GridSpec spec;
  std::vector<grid::cplx> values;
};

GridRecord read_grid(const std::filesystem::path& path);

}  // namespace dilmax::io

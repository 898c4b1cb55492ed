#include "dilmax/serialization.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "dilmax/errors.hpp"

namespace dilmax::io {
namespace {

using nlohmann::json;

json coeff(const std::complex<double>& c) { return json::array({c.real(), c.imag()}); }

std::complex<double> coeff(const json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidArgument("coefficient must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
}

std::uint64_t to_le(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) return __builtin_bswap64(v);
  return v;
}

void write_samples(const std::filesystem::path& path, const char* kind, const grid::GridSpec& spec,
                   std::span<const grid::cplx> values) {
  auto sidecar = path;
  sidecar.replace_extension(".f64");
  json header{{"d", spec.dim}, {"n", spec.n}, {"L", spec.length}, {"kind", kind},
              {"data", sidecar.filename().string()}};
  std::ofstream h(path);
  if (!h) throw Error("cannot write " + path.string());
  h << header.dump(2) << '\n';
  std::ofstream d(sidecar, std::ios::binary);
  if (!d) throw Error("cannot write " + sidecar.string());
  for (const auto& v : values) {
    for (double part : {v.real(), v.imag()}) {
      const std::uint64_t bits = to_le(std::bit_cast<std::uint64_t>(part));
      d.write(reinterpret_cast<const char*>(&bits), sizeof bits);
    }
  }
  if (!d) throw Error("short write to " + sidecar.string());
}

}  // namespace

std::string to_json(const bump::BumpSumMultiplier& m) {
  json terms = json::array();
  for (const auto& t : m.terms()) terms.push_back({{"scale", t.scale}, {"coeff", coeff(t.coeff)}});
  return json{{"terms", terms}, {"profile", m.profile().name()}}.dump();
}

bump::BumpSumMultiplier multiplier_from_json(const std::string& text) try {
  const json j = parse(text);
  if (j.value("profile", std::string("phi-standard")) != "phi-standard") {
    throw InvalidArgument("only the phi-standard profile can be deserialized");
  }
  std::vector<bump::BumpTerm> terms;
  for (const auto& t : j.at("terms")) terms.push_back({t.at("scale").get<std::int64_t>(), coeff(t.at("coeff"))});
  return bump::BumpSumMultiplier(std::move(terms));
} catch (const json::exception& e) {
  throw InvalidArgument(std::string("bad multiplier document: ") + e.what());
}

std::string to_json(const bump::ModulatedFunction& f) {
  json terms = json::array();
  for (const auto& t : f.terms()) terms.push_back({{"freq", t.freq}, {"coeff", coeff(t.coeff)}});
  json out{{"terms", terms}, {"envelope", f.envelope().hat().name()}};
  if (f.dilation_exp() != 0) out["dilation_exp"] = f.dilation_exp();
  if (f.scalar() != 1.0) out["scalar"] = f.scalar();
  if (f.norm_index()) out["norm_index"] = *f.norm_index();
  if (f.envelope().scale() != 1.0) out["envelope_scale"] = f.envelope().scale();
  return out.dump();
}

bump::ModulatedFunction modulated_from_json(const std::string& text) try {
  const json j = parse(text);
  if (j.value("envelope", std::string("psi-standard")) != "psi-standard") {
    throw InvalidArgument("only the psi-standard envelope can be deserialized");
  }
  std::vector<bump::Modulation> terms;
  for (const auto& t : j.at("terms")) terms.push_back({t.at("freq").get<std::int64_t>(), coeff(t.at("coeff"))});
  auto env = bump::Envelope::standard();
  if (j.contains("envelope_scale")) env = env.with_scale(j["envelope_scale"].get<double>());
  std::optional<double> norm_index;
  if (j.contains("norm_index")) norm_index = j["norm_index"].get<double>();
  return bump::ModulatedFunction(std::move(terms), env, j.value("dilation_exp", std::int64_t{0}),
                                 j.value("scalar", 1.0), norm_index);
} catch (const json::exception& e) {
  throw InvalidArgument(std::string("bad modulated function document: ") + e.what());
}

void write_grid(const std::filesystem::path& path, const grid::GridFunction& f) {
  write_samples(path, "function", f.spec(), f.samples());
}

void write_grid(const std::filesystem::path& path, const grid::GridSymbol& s) {
  if (s.is_lazy()) throw NotEvaluable("lazy symbols have no stored samples");
  write_samples(path, "symbol", s.spec(), s.values());
}

GridRecord read_grid(const std::filesystem::path& path) {
  std::ifstream h(path);
  if (!h) throw Error("cannot read " + path.string());
  json header;
  try {
    header = json::parse(h);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed grid header: ") + e.what());
  }
  GridRecord rec;
  rec.kind = header.at("kind").get<std::string>();
  if (rec.kind != "function" && rec.kind != "symbol") throw InvalidArgument("unknown grid kind " + rec.kind);
  rec.spec = grid::GridSpec(header.at("d").get<int>(), header.at("n").get<std::size_t>(),
                            header.at("L").get<double>());
  const auto sidecar = path.parent_path() / header.at("data").get<std::string>();
  std::ifstream d(sidecar, std::ios::binary);
  if (!d) throw Error("cannot read " + sidecar.string());
  rec.values.resize(rec.spec.size());
  for (auto& v : rec.values) {
    double parts[2];
    for (double& part : parts) {
      std::uint64_t bits = 0;
      d.read(reinterpret_cast<char*>(&bits), sizeof bits);
      part = std::bit_cast<double>(to_le(bits));
    }
    v = {parts[0], parts[1]};
  }
  if (!d) throw Error("sidecar " + sidecar.string() + " is shorter than the header says");
  return rec;
}

}  // namespace dilmax::io

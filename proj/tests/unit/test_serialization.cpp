#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "dilmax/errors.hpp"
#include "dilmax/serialization.hpp"

using namespace dilmax;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "dilmax_serialization_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Json, MultiplierLayout) {
  const bump::BumpSumMultiplier m({{2, 1.0}, {3, {0, -1}}});
  const auto j = nlohmann::json::parse(io::to_json(m));
  EXPECT_EQ(j["profile"], "phi-standard");
  ASSERT_EQ(j["terms"].size(), 2u);
  EXPECT_EQ(j["terms"][1]["scale"], 3);
  EXPECT_EQ(j["terms"][1]["coeff"][1].get<double>(), -1.0);
}

TEST(Json, MultiplierRoundTrip) {
  const bump::BumpSumMultiplier m({{-4, {0.1, 0.2}}, {7, -3.5}, {1'000'000, 1e-300}});
  const auto back = io::multiplier_from_json(io::to_json(m));
  ASSERT_EQ(back.terms().size(), m.terms().size());
  for (std::size_t i = 0; i < m.terms().size(); ++i) {
    EXPECT_EQ(back.terms()[i].scale, m.terms()[i].scale);
    EXPECT_EQ(back.terms()[i].coeff, m.terms()[i].coeff);
  }
}

TEST(Json, ModulatedRoundTrip) {
  const auto env = bump::Envelope::standard().normalized(4);
  const bump::ModulatedFunction f({{1, 1.0}, {5, {0, 2}}}, env, 1536, 0.5, 4.0);
  const auto j = nlohmann::json::parse(io::to_json(f));
  EXPECT_EQ(j["envelope"], "psi-standard");
  EXPECT_EQ(j["dilation_exp"], 1536);
  const auto back = io::modulated_from_json(io::to_json(f));
  EXPECT_EQ(back.dilation_exp(), 1536);
  EXPECT_EQ(back.scalar(), 0.5);
  EXPECT_EQ(back.norm_index(), 4.0);
  EXPECT_EQ(back.envelope().scale(), env.scale());
  ASSERT_EQ(back.terms().size(), 2u);
  EXPECT_EQ(back.terms()[1].coeff, std::complex<double>(0, 2));
  // Defaults are omitted.
  const auto plain = nlohmann::json::parse(io::to_json(bump::ModulatedFunction({{2, 1.0}})));
  EXPECT_FALSE(plain.contains("dilation_exp"));
}

TEST(Json, MalformedInputRejected) {
  EXPECT_THROW(io::multiplier_from_json("{"), InvalidArgument);
  EXPECT_THROW(io::multiplier_from_json(R"({"terms":[{"scale":1,"coeff":[1]}]})"), InvalidArgument);
  EXPECT_THROW(io::modulated_from_json(R"({"terms":[{"freq":0,"coeff":[1,0]}]})"), InvalidArgument);
}

TEST(GridFile, FunctionRoundTripAndLayout) {
  const grid::GridSpec s(2, 16, 3.0);
  std::vector<grid::cplx> v(s.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = {0.1 * i, -1.0 / (1 + i)};
  const auto path = scratch("f.json");
  io::write_grid(path, grid::GridFunction(s, v));
  const auto rec = io::read_grid(path);
  EXPECT_EQ(rec.kind, "function");
  EXPECT_EQ(rec.spec, s);
  EXPECT_EQ(rec.values, v);
  // Sidecar: interleaved little-endian doubles.
  std::ifstream raw(scratch("f.f64"), std::ios::binary);
  unsigned char bytes[16];
  raw.seekg(16 * 3);
  raw.read(reinterpret_cast<char*>(bytes), 16);
  double re = 0, im = 0;
  std::uint64_t a = 0, b = 0;
  for (int i = 7; i >= 0; --i) {
    a = (a << 8) | bytes[i];
    b = (b << 8) | bytes[8 + i];
  }
  std::memcpy(&re, &a, 8);
  std::memcpy(&im, &b, 8);
  EXPECT_EQ(re, v[3].real());
  EXPECT_EQ(im, v[3].imag());
  EXPECT_EQ(fs::file_size(scratch("f.f64")), 16 * s.size());
}

TEST(GridFile, SymbolKindAndLazyRejection) {
  const grid::GridSpec s(1, 32, 2.0);
  const auto path = scratch("s.json");
  io::write_grid(path, grid::GridSymbol::stored(s, std::vector<grid::cplx>(s.size(), {1, 2})));
  EXPECT_EQ(io::read_grid(path).kind, "symbol");
  const auto lazy = grid::GridSymbol::lazy(s, grid::make_symbol([](const grid::Point&) { return grid::cplx(1); }));
  EXPECT_THROW(io::write_grid(scratch("lazy.json"), lazy), NotEvaluable);
}

TEST(GridFile, TruncatedSidecarRejected) {
  const grid::GridSpec s(1, 32, 2.0);
  const auto path = scratch("t.json");
  io::write_grid(path, grid::GridFunction::zeros(s));
  fs::resize_file(scratch("t.f64"), 100);
  EXPECT_THROW(io::read_grid(path), Error);
}

TEST(Json, MissingFieldsRejected) {
  EXPECT_THROW(io::multiplier_from_json("{}"), InvalidArgument);
  EXPECT_THROW(io::modulated_from_json(R"({"terms":[{"coeff":[1,0]}]})"), InvalidArgument);
}

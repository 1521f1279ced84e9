#include <doctest.h>

#include <cstring>

#include "nilsol/catalogue.hpp"
#include "nilsol/io.hpp"
#include "test_support.hpp"

using namespace nilsol;
using namespace nilsol::testing;

namespace {

bool bit_exact(const StructureTuple& a, const StructureTuple& b) {
  if (a.q() != b.q() || a.p() != b.p() || a.label() != b.label()) return false;
  for (int k = 0; k < a.p(); ++k)
    if (std::memcmp(a.matrix(k).data(), b.matrix(k).data(),
                    sizeof(double) * static_cast<std::size_t>(a.q() * a.q())) != 0)
      return false;
  return true;
}

}  // namespace

TEST_CASE("parse: minimal heisenberg document") {
  const StructureTuple t = parse_tuple(R"({"q":2,"p":1,"matrices":[[0,1,-1,0]]})");
  CHECK(t.q() == 2);
  CHECK(t.p() == 1);
  CHECK((t.matrix(0) - basis_matrix("J")).norm() == 0.0);
  CHECK(t.label().empty());
}

TEST_CASE("round trip is bit-exact on every catalogue family") {
  const std::vector<FamilySpec> specs = {
      {"heisenberg", {}},
      {"a1", {{"k", 2.0}, {"a", 0.3141592653589793}}},
      {"b_basis", {{"j", 6.0}}},
      {"will", {{"a2", 0.6180339887498949}}},
      {"example2", {{"a1", 1.1}, {"k", 1.0}, {"b1", 0.6}, {"c1", 0.8}, {"d1", 1.0 / 3.0}}},
      {"example3", {{"a1", 1.0}, {"ell2", 2.0 / 3.0}, {"b1", 1.0}}},
  };
  for (const FamilySpec& spec : specs) {
    const StructureTuple t = build(spec);
    CHECK(bit_exact(parse_tuple(serialize_tuple(t)), t));
  }
}

TEST_CASE("round trip survives adversarial doubles") {
  std::mt19937 rng(61);
  std::vector<Eigen::MatrixXd> mats;
  for (int k = 0; k < 3; ++k) mats.push_back(random_skew(rng, 5) * 1e-7);
  mats[0] *= 1e13;
  const StructureTuple t(std::move(mats), "adversarial \"label\" with \\ and \n newline");
  CHECK(bit_exact(parse_tuple(serialize_tuple(t)), t));
}

TEST_CASE("schema errors name the offending matrix") {
  CHECK_THROWS_AS(parse_tuple(R"({"q":2,"p":1,"matrices":[[0,1,0,-1,0,0,0,0,0]]})"),
                  SchemaError);
  try {
    parse_tuple(R"({"q":2,"p":1,"matrices":[[0,1,0,-1,0,0,0,0,0]]})");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("matrix 0") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_tuple(R"({"q":2,"p":2,"matrices":[[0,1,-1,0]]})"), SchemaError);
  CHECK_THROWS_AS(parse_tuple(R"({"p":1,"matrices":[[0,1,-1,0]]})"), SchemaError);
  CHECK_THROWS_AS(parse_tuple(R"({"q":0,"p":1,"matrices":[[ ]]})"), SchemaError);
  CHECK_THROWS_AS(parse_tuple(R"({"q":2,"p":1,"matrices":[["x",1,-1,0]]})"), SchemaError);
  CHECK_THROWS_AS(parse_tuple(R"({"q":2,"p":1,"matrices":[[0,1,-1,0]],"label":7})"),
                  SchemaError);
  CHECK_THROWS_AS(parse_tuple(R"({"q":100,"p":1,"matrices":[[0]]})"), SchemaError);
  CHECK_THROWS_AS(parse_tuple(R"({"q":2,"p":100000,"matrices":[[0,1,-1,0]]})"), SchemaError);
  CHECK_THROWS_AS(parse_tuple(R"([1,2,3])"), SchemaError);
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_tuple("{\n  \"q\": 2,\n  broken\n}");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(e.column >= 1);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("file round trip with label and provenance") {
  const std::string path = "io_roundtrip_test.json";
  const StructureTuple t = build({"will", {{"a", 1.0}}});
  save_tuple(t, path, "unit test");
  const StructureTuple back = load_tuple(path);
  CHECK(bit_exact(back, t));
  CHECK(back.label() == t.label());
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_tuple("does_not_exist.json"), Error);
}

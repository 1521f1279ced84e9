#include <doctest.h>

#include <cmath>

#include "nilsol/actions.hpp"
#include "nilsol/catalogue.hpp"
#include "nilsol/soliton.hpp"
#include "test_support.hpp"

using namespace nilsol;
using namespace nilsol::testing;

TEST_CASE("basis matrices: exact entries, skewness, orthogonality") {
  const Eigen::MatrixXd j = basis_matrix("J");
  CHECK(j(0, 1) == 1.0);
  CHECK(j(1, 0) == -1.0);

  const Eigen::MatrixXd b2 = basis_matrix("B2");
  CHECK(b2(0, 3) == 1.0);
  CHECK(b2(1, 2) == 1.0);
  CHECK(b2(2, 1) == -1.0);
  CHECK(b2(3, 0) == -1.0);

  for (int i = 1; i <= 6; ++i) {
    const Eigen::MatrixXd b = basis_matrix("B" + std::to_string(i));
    CHECK((b + b.transpose()).norm() == 0.0);
    CHECK(b.squaredNorm() == 4.0);
    for (int k = i + 1; k <= 6; ++k)
      CHECK(b.cwiseProduct(basis_matrix("B" + std::to_string(k))).sum() == 0.0);
  }
  CHECK_THROWS_AS(basis_matrix("B7"), ParameterError);
  CHECK_THROWS_AS(basis_matrix("Q"), ParameterError);
}

TEST_CASE("concat: block placement and padding") {
  const StructureTuple j = single(basis_matrix("J"));
  const StructureTuple a1 = concat(j, j);
  CHECK(a1.q() == 4);
  CHECK(a1.p() == 1);
  CHECK((a1.matrix(0) - build({"a1", {{"k", 2.0}}}).matrix(0)).norm() == 0.0);

  const StructureTuple pair({basis_matrix("B1"), basis_matrix("B2")});
  const StructureTuple padded = concat(a1, pair);
  CHECK(padded.q() == 8);
  CHECK(padded.p() == 2);
  CHECK((padded.matrix(0).topLeftCorner(4, 4) - a1.matrix(0)).norm() == 0.0);
  CHECK((padded.matrix(0).bottomRightCorner(4, 4) - basis_matrix("B1")).norm() == 0.0);
  CHECK(padded.matrix(1).topLeftCorner(4, 4).norm() == 0.0);
  CHECK((padded.matrix(1).bottomRightCorner(4, 4) - basis_matrix("B2")).norm() == 0.0);

  CHECK_THROWS_AS(concat(pair, a1), StructuralError);
}

TEST_CASE("concat: moment map splits into blocks (two-route check)") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const StructureTuple a = random_tuple(rng, 3, 2);
    const StructureTuple b = random_tuple(rng, 4, 2);
    const StructureTuple c = concat(a, b);
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(7, 7);
    expected.topLeftCorner(3, 3) = moment_glq(a);
    expected.bottomRightCorner(4, 4) = moment_glq(b);
    CHECK((moment_glq(c) - expected).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("will family: moment diagonal at a = 1") {
  const StructureTuple will = build({"will", {{"a", 1.0}}});
  Eigen::VectorXd expected(6);
  expected << 6, 6, 4, 4, 4, 4;
  CHECK((moment_glq(will) - Eigen::MatrixXd(expected.asDiagonal())).norm() == 0.0);
  // a and a2 parameterizations agree
  CHECK(max_abs_diff(will, build({"will", {{"a2", 1.0}}})) == 0.0);
}

TEST_CASE("example2: soliton iff the squared sums balance") {
  // a1^2 = b1^2 + c1^2 = d1^2 exactly
  const FamilySpec spec{
      "example2",
      {{"a1", 1.0}, {"k", 1.0}, {"b1", 0.6}, {"c1", 0.8}, {"d1", 1.0}}};
  const StructureTuple t = build(spec);
  CHECK(t.q() == 10);
  CHECK(t.p() == 2);
  CHECK(validate(t).is_regular);

  const Certificate cert = certify_rym(t);
  CHECK(cert.verdict);
  CHECK(cert.residual < 1e-12);
  CHECK(cert.derivation->norm() < 1e-12);
  CHECK(cert.r == doctest::Approx(4.0));  // both moment blocks equal 2 a1^2

  // the m1 block structure matches the closed form
  Eigen::VectorXd diag(10);
  diag << 2, 2, 2, 2, 2, 2, 2, 2, 2, 2;
  CHECK((moment_glq(t) - Eigen::MatrixXd(diag.asDiagonal())).norm() < 1e-13);
}

TEST_CASE("example2: random draws on and off the constraint surface") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> amp(0.5, 1.5);
  std::uniform_real_distribution<double> angle(0.2, 1.3);
  for (int trial = 0; trial < 50; ++trial) {
    const double a1 = amp(rng);
    const int k = 1 + static_cast<int>(rng() % 2);
    const int n_pairs = static_cast<int>(rng() % 3);  // 0..2 pairs
    const int j = 1 + static_cast<int>(rng() % 3);

    FamilySpec spec{"example2", {{"a1", a1}, {"k", static_cast<double>(k)}}};
    for (int i = 1; i <= n_pairs; ++i) {
      const double th = angle(rng);
      spec.parameters["b" + std::to_string(i)] = a1 * std::cos(th);
      spec.parameters["c" + std::to_string(i)] = a1 * std::sin(th);
    }
    Eigen::VectorXd d = random_matrix(rng, j, 1).cwiseAbs();
    d.array() += 0.1;
    d *= a1 / d.norm();
    for (int i = 0; i < j; ++i) spec.parameters["d" + std::to_string(i + 1)] = d(i);

    const Certificate good = certify_rym(build(spec));
    CHECK(good.verdict);
    CHECK(good.residual < 1e-9);
    CHECK(good.derivation->norm() < 1e-9 * (1.0 + good.r));

    // break the constraint by at least 1%
    FamilySpec broken = spec;
    broken.parameters["d1"] *= 1.02;
    CHECK_FALSE(certify_rym(build(broken)).verdict);
  }
}

TEST_CASE("example3: nontrivial derivation along the documented direction") {
  const FamilySpec spec{"example3", {{"a1", 1.0}, {"ell2", 2.0 / 3.0}, {"b1", 1.0}}};
  const StructureTuple t = build(spec);
  CHECK(t.q() == 9);
  CHECK(t.p() == 2);
  CHECK(validate(t).is_regular);

  const Certificate cert = certify_rym(t);
  CHECK(cert.verdict);
  CHECK(cert.residual < 1e-12);
  CHECK(cert.r == doctest::Approx(4.0));
  REQUIRE(cert.derivation.has_value());
  CHECK(cert.derivation->norm() > 0.1);

  Eigen::VectorXd direction(9);
  direction << 0, 0, -1, 1, -1, 0, 0, 0, 0;
  const Eigen::MatrixXd expected = (1.0 / 6.0) * Eigen::MatrixXd(direction.asDiagonal());
  CHECK((*cert.derivation - expected).norm() < 1e-12);
}

TEST_CASE("example3: soliton members are not ricci solitons") {
  for (double b1 : {1.0, 0.8}) {
    const double ell2 = 4.0 * b1 * b1 / 6.0;     // 6 ell^2 = 4 b1^2
    const FamilySpec spec{"example3", {{"a1", b1}, {"ell2", ell2}, {"b1", b1}}};
    const StructureTuple t = build(spec);
    CHECK(certify_rym(t).verdict);
    CHECK_FALSE(certify_ricci(t).verdict);
  }
  // example2 soliton members are not ricci solitons either
  const StructureTuple e2 = build(
      {"example2", {{"a1", 1.0}, {"k", 1.0}, {"b1", 0.6}, {"c1", 0.8}, {"d1", 1.0}}});
  CHECK_FALSE(certify_ricci(e2).verdict);
}

TEST_CASE("example2: varying b at fixed constraints changes the fingerprint") {
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> angle(0.2, 1.3);
  std::vector<Fingerprint> prints;
  for (int draw = 0; draw < 5; ++draw) {
    const double th = angle(rng);
    const FamilySpec spec{"example2",
                          {{"a1", 1.0},
                           {"k", 1.0},
                           {"b1", std::cos(th)},
                           {"c1", std::sin(th)},
                           {"d1", 1.0}}};
    prints.push_back(fingerprint(build(spec)));
  }
  for (std::size_t i = 0; i < prints.size(); ++i)
    for (std::size_t k = i + 1; k < prints.size(); ++k)
      CHECK_FALSE(fingerprints_equal(prints[i], prints[k], 1e-6));
}

TEST_CASE("family parameter validation") {
  CHECK_THROWS_AS(build({"unknown", {}}), ParameterError);
  CHECK_THROWS_AS(build({"will", {}}), ParameterError);
  CHECK_THROWS_AS(build({"will", {{"a", 1.0}, {"a2", 1.0}}}), ParameterError);
  CHECK_THROWS_AS(build({"will", {{"a", -1.0}}}), ParameterError);
  CHECK_THROWS_AS(build({"will", {{"a", 1.0}, {"bogus", 2.0}}}), ParameterError);
  CHECK_THROWS_AS(build({"a1", {{"k", 2.5}}}), ParameterError);
  CHECK_THROWS_AS(build({"example2", {{"a1", 1.0}, {"k", 1.0}}}), ParameterError);
  CHECK_THROWS_AS(build({"example2", {{"a1", 1.0}, {"k", 1.0}, {"b1", 1.0}, {"d1", 1.0}}}),
                  ParameterError);  // unpaired b
  CHECK_THROWS_AS(
      build({"example3", {{"a1", 1.0}, {"ell", 0.5}, {"b2", 1.0}}}),
      ParameterError);  // b indices must start at 1
  CHECK_THROWS_AS(build({"b_basis", {{"j", 7.0}}}), ParameterError);
}

TEST_CASE("catalogue members validate as regular") {
  const std::vector<FamilySpec> specs = {
      {"heisenberg", {}},
      {"a1", {{"k", 3.0}}},
      {"b_basis", {{"j", 3.0}}},
      {"will", {{"a2", 0.5}}},
      {"example2", {{"a1", 1.0}, {"k", 2.0}, {"b1", 0.3}, {"c1", 0.9}, {"d1", 0.5}, {"d2", 0.7}}},
      {"example3", {{"a1", 1.0}, {"ell", 0.8}, {"b1", 1.0}, {"b2", 0.4}, {"b3", 0.6}}},
  };
  for (const FamilySpec& spec : specs) {
    const StructureTuple t = build(spec);
    CHECK(validate(t).is_regular);
    CHECK_FALSE(t.label().empty());
  }
}

TEST_CASE("tune: will and example3 recover the closed-form parameters") {
  const TuneResult will = tune_parameter({"will", {}}, "a2", 0.01, 2.0, 1e-9);
  CHECK(std::abs(will.value - 0.5 * (std::sqrt(5.0) - 1.0)) < 1e-8);
  CHECK(will.residual < 1e-10);

  const TuneResult ex3 =
      tune_parameter({"example3", {{"a1", 1.0}, {"b1", 1.0}}}, "ell2", 0.1, 2.0, 1e-9);
  CHECK(std::abs(ex3.value - 2.0 / 3.0) < 1e-8);
  CHECK(ex3.residual < 1e-10);
}

TEST_CASE("tune: reports failure when the root is outside the bounds") {
  CHECK_THROWS_AS(tune_parameter({"will", {}}, "a2", 1.5, 2.0, 1e-9), TuneError);
  try {
    tune_parameter({"will", {}}, "a2", 1.5, 2.0, 1e-9);
  } catch (const TuneError& e) {
    CHECK(e.best_residual > 1e-3);
    CHECK(e.best_value >= 1.5);
    CHECK(e.best_value <= 2.0);
  }
  CHECK_THROWS_AS(tune_parameter({"will", {}}, "a2", 2.0, 1.0, 1e-9), ParameterError);
}

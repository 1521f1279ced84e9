// Acceptance suite: runs every advertised guarantee end to end and prints
// one pass/fail line per criterion.  Exits nonzero if any criterion fails.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nilsol/actions.hpp"
#include "nilsol/catalogue.hpp"
#include "nilsol/commands.hpp"
#include "nilsol/flow.hpp"
#include "nilsol/io.hpp"
#include "nilsol/moment.hpp"
#include "nilsol/soliton.hpp"
#include "test_support.hpp"

using namespace nilsol;
using namespace nilsol::testing;

namespace {

const double kGoldenA2 = 0.5 * (std::sqrt(5.0) - 1.0);

class Checker {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

std::vector<Certificate> g_rym_corpus;  // every rym certificate issued below

Certificate tracked_rym(const StructureTuple& c, double tol = kCertifyTol) {
  Certificate cert = certify_rym(c, tol);
  g_rym_corpus.push_back(cert);
  return cert;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// 1. the will family parameter found by the CLI tuner
void criterion_will_tune(Checker& check) {
  const CommandResult result = cmd_tune("will", {}, "a2", 0.01, 2.0, 1e-9);
  check.require(result.exit_code == 0, "cmd_tune exit code");
  const auto j = nlohmann::json::parse(result.json);
  check.require(j.at("found").get<bool>(), "tuner reports found");
  const double a2 = j.at("value").get<double>();
  check.require(std::abs(a2 - kGoldenA2) < 1e-8,
                "tuned a2 = " + std::to_string(a2) + " not within 1e-8 of " +
                    std::to_string(kGoldenA2));

  const Certificate cert = tracked_rym(build({"will", {{"a2", a2}}}));
  check.require(cert.verdict, "certificate verdict at tuned parameter");
  check.require(cert.residual < 1e-10, "residual " + fmt(cert.residual) + " >= 1e-10");
  check.require(cert.derivation && cert.derivation->norm() < 1e-10,
                "derivation norm not below 1e-10");
}

// 2. the closed-form moment diagonal of the will family
void criterion_will_moment(Checker& check) {
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> dist(1e-3, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double a = dist(rng);
    Eigen::VectorXd diag(6);
    const double top = 2.0 * (std::pow(a, 4) + 2.0 * a * a);
    const double bottom = 2.0 * (1.0 + a * a);
    diag << top, top, bottom, bottom, bottom, bottom;
    const Eigen::MatrixXd m1 = moment_glq(build({"will", {{"a", a}}}));
    const double err = (m1 - Eigen::MatrixXd(diag.asDiagonal())).cwiseAbs().maxCoeff();
    check.require(err < 1e-12, "entrywise error " + fmt(err) + " at a = " + std::to_string(a));
  }
}

// 3. the tuned will metric is not a ricci soliton
void criterion_will_not_ricci(Checker& check) {
  const Certificate cert = certify_ricci(build({"will", {{"a2", kGoldenA2}}}));
  check.require(!cert.verdict, "ricci verdict should be false");
  check.require(cert.residual > 1e-3, "ricci residual " + fmt(cert.residual) + " <= 1e-3");
}

// 4. example2 on and off the balance constraint
void criterion_example2(Checker& check) {
  std::mt19937 rng(102);
  std::uniform_real_distribution<double> amp(0.5, 1.5);
  std::uniform_real_distribution<double> angle(0.15, 1.4);
  for (int trial = 0; trial < 50; ++trial) {
    const double a1 = amp(rng);
    const int k = 1 + static_cast<int>(rng() % 3);
    const int n_pairs = static_cast<int>(rng() % 3);
    const int j = 1 + static_cast<int>(rng() % 6);

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

    const Certificate good = tracked_rym(build(spec));
    check.require(good.verdict && good.residual < 1e-9,
                  "balanced draw " + std::to_string(trial) + " not certified (residual " +
                      fmt(good.residual) + ")");
    check.require(good.derivation && good.derivation->norm() < 1e-9,
                  "balanced draw " + std::to_string(trial) + " has nonzero derivation");

    // scale the whole d block so the squared sum is off by 1%
    FamilySpec broken = spec;
    for (int i = 1; i <= j; ++i)
      broken.parameters["d" + std::to_string(i)] *= std::sqrt(1.01);
    const Certificate bad = tracked_rym(build(broken));
    check.require(!bad.verdict, "imbalanced draw " + std::to_string(trial) + " still certified");
  }
}

// 5. example3 tuning and the direction of the nontrivial derivation
void criterion_example3(Checker& check) {
  const CommandResult result = cmd_tune("example3", {{"a1", 1.0}, {"b1", 1.0}}, "ell2", 0.1,
                                        2.0, 1e-9);
  check.require(result.exit_code == 0, "cmd_tune exit code");
  const auto j = nlohmann::json::parse(result.json);
  const double ell2 = j.at("value").get<double>();
  check.require(std::abs(ell2 - 2.0 / 3.0) < 1e-8,
                "tuned ell2 = " + std::to_string(ell2) + " not within 1e-8 of 2/3");

  const Certificate cert =
      tracked_rym(build({"example3", {{"a1", 1.0}, {"ell2", ell2}, {"b1", 1.0}}}));
  check.require(cert.verdict, "certificate verdict at tuned parameter");
  check.require(cert.derivation.has_value() && cert.derivation->norm() > 1e-3,
                "derivation should be nonzero");
  if (cert.derivation) {
    Eigen::VectorXd direction(9);
    direction << 0, 0, -1, 1, -1, 0, 0, 0, 0;
    Eigen::MatrixXd unit_dir = Eigen::MatrixXd(direction.asDiagonal());
    unit_dir /= unit_dir.norm();
    const Eigen::MatrixXd unit_d = *cert.derivation / cert.derivation->norm();
    const double err = (unit_d - unit_dir).norm();
    check.require(err < 1e-8, "derivation direction off by " + fmt(err));
  }
}

// 6. the heisenberg baseline passes every certificate essentially exactly
void criterion_heisenberg(Checker& check) {
  const StructureTuple heis = build({"heisenberg", {}});
  const Certificate rym = tracked_rym(heis);
  check.require(rym.verdict && rym.residual < 1e-12, "rym certificate");
  check.require(rym.lambda && std::abs(*rym.lambda - 1.0) < 1e-12, "lambda = 1");
  check.require(rym.derivation && rym.derivation->norm() < 1e-12, "derivation = 0");

  const Certificate ricci = certify_ricci(heis);
  check.require(ricci.verdict && ricci.residual < 1e-12, "ricci certificate");
  check.require(std::abs(ricci.r - 6.0) < 1e-12, "ricci r = 6");

  const Certificate gfi = certify_gfi(heis);
  check.require(gfi.verdict && gfi.residual < 1e-12, "gfi certificate");

  const Certificate both = certify_ricci_gfi(heis);
  check.require(both.verdict && both.residual < 1e-12, "ricci_and_gfi certificate");
}

// 7. the defining identity of the moment maps
void criterion_defining_identity(Checker& check) {
  std::mt19937 rng(103);
  for (int trial = 0; trial < 200; ++trial) {
    const int q = 2 + static_cast<int>(rng() % 5);
    const int p = 1 + static_cast<int>(rng() % 5);
    const StructureTuple c = random_tuple(rng, q, p);
    const Eigen::MatrixXd x = random_symmetric(rng, q);
    const Eigen::MatrixXd y = random_symmetric(rng, p);

    const MomentValue m = moment_full(c);
    const double lhs = m.glq.cwiseProduct(x).sum() + m.glp.cwiseProduct(y).sum();
    const double rhs = inner(act_lie({x, y}, c), c);
    check.require(std::abs(lhs - rhs) / (1.0 + std::abs(lhs)) < 1e-11,
                  "identity violated at trial " + std::to_string(trial));
  }
}

// 8. fingerprints are invariant under the compact subgroup
void criterion_fingerprint_equivariance(Checker& check) {
  std::mt19937 rng(104);
  const std::vector<StructureTuple> corpus = {
      build({"heisenberg", {}}),
      build({"will", {{"a", 1.0}}}),
      build({"b_basis", {{"j", 3.0}}}),
      build({"a1", {{"k", 2.0}}}),
      build({"example3", {{"a1", 1.0}, {"ell2", 2.0 / 3.0}, {"b1", 1.0}}}),
  };
  for (int trial = 0; trial < 100; ++trial) {
    const StructureTuple& c = corpus[static_cast<std::size_t>(trial) % corpus.size()];
    const Eigen::MatrixXd k = random_orthogonal(rng, c.q());
    const Eigen::MatrixXd u = random_orthogonal(rng, c.p());
    const double dist = fingerprint_distance(fingerprint(c), fingerprint(act({k, u}, c)));
    check.require(dist < 1e-10, "fingerprint moved by " + fmt(dist) + " at trial " +
                                    std::to_string(trial));
  }
}

// 9. gradient-flow recovery of minimal points and degeneration detection
void criterion_flow(Checker& check) {
  std::mt19937 rng(105);
  for (int trial = 0; trial < 20; ++trial) {
    const int blocks = 2 + trial % 2;  // seeds in so(4) and so(6)
    const StructureTuple base = build({"a1", {{"k", static_cast<double>(blocks)}}});
    const Eigen::MatrixXd g = random_well_conditioned(rng, base.q(), 0.5, 2.0);  // cond <= 4
    const StructureTuple seed = act_glq(g, base);

    FlowConfig cfg;
    cfg.group = Group::SLq;
    const FlowTrace trace = integrate(seed, cfg);
    check.require(trace.outcome == FlowOutcome::ConvergedMinimal,
                  "seed " + std::to_string(trial) + ": outcome " + to_string(trace.outcome));
    check.require(trace.steps_taken <= 200000, "step budget exceeded");
    const Certificate gfi = certify_gfi(trace.final_state, 1e-8);
    check.require(gfi.residual < 1e-8,
                  "seed " + std::to_string(trial) + ": gfi residual " + fmt(gfi.residual));
    for (std::size_t i = 1; i < trace.samples.size(); ++i) {
      const double prev = trace.samples[i - 1].norm_moment * trace.samples[i - 1].norm_moment;
      const double curr = trace.samples[i].norm_moment * trace.samples[i].norm_moment;
      if (curr > prev + 1e-8 * (1.0 + prev)) {
        check.require(false, "lyapunov increase at step " + std::to_string(i));
        break;
      }
    }
  }

  Eigen::MatrixXd j_pad = Eigen::MatrixXd::Zero(4, 4);
  j_pad.topLeftCorner<2, 2>() = basis_matrix("J");
  FlowConfig plain;
  plain.group = Group::SLq;
  plain.projected = false;
  const FlowTrace collapse = integrate(StructureTuple({j_pad}), plain);
  check.require(collapse.outcome == FlowOutcome::Degenerated, "padded block should degenerate");
  check.require(collapse.final_state.norm() / collapse.initial_norm < 1e-6,
                "norm ratio should drop below 1e-6");
}

// 10. every successful rym certificate issued above is an expander
void criterion_expander(Checker& check) {
  int successes = 0;
  for (const Certificate& cert : g_rym_corpus) {
    if (!cert.verdict) continue;
    ++successes;
    check.require(cert.lambda.has_value() && *cert.lambda > 0.0,
                  "non-expanding certificate with r = " + std::to_string(cert.r));
  }
  check.require(successes >= 50, "corpus too small: " + std::to_string(successes));
}

// 11. serialization round trip is bit-exact on the catalogue
void criterion_round_trip(Checker& check) {
  const std::vector<FamilySpec> specs = {
      {"heisenberg", {}},
      {"a1", {{"k", 1.0}}},
      {"a1", {{"k", 3.0}, {"a", 0.123456789012345}}},
      {"b_basis", {{"j", 1.0}}},
      {"b_basis", {{"j", 6.0}}},
      {"will", {{"a2", kGoldenA2}}},
      {"will", {{"a", 1.9}}},
      {"example2", {{"a1", 1.0}, {"k", 1.0}, {"b1", 0.6}, {"c1", 0.8}, {"d1", 1.0}}},
      {"example2",
       {{"a1", 1.1}, {"k", 2.0}, {"b1", 0.3}, {"c1", 0.9}, {"b2", 0.5}, {"c2", 0.7},
        {"d1", 1.0 / 3.0}, {"d2", 2.0 / 7.0}}},
      {"example3", {{"a1", 1.0}, {"ell2", 2.0 / 3.0}, {"b1", 1.0}}},
      {"example3", {{"a1", 0.9}, {"ell", 0.8}, {"b1", 1.0}, {"b2", 0.4}, {"b3", 0.6}}},
  };
  for (const FamilySpec& spec : specs) {
    const StructureTuple t = build(spec);
    const StructureTuple back = parse_tuple(serialize_tuple(t));
    bool exact = back.q() == t.q() && back.p() == t.p() && back.label() == t.label();
    for (int k = 0; exact && k < t.p(); ++k)
      exact = std::memcmp(back.matrix(k).data(), t.matrix(k).data(),
                          sizeof(double) * static_cast<std::size_t>(t.q() * t.q())) == 0;
    check.require(exact, "round trip not bit-exact for " + t.label());
  }
}

struct Criterion {
  int id;
  const char* name;
  std::function<void(Checker&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "will soliton parameter recovered by cmd_tune", criterion_will_tune},
      {2, "will moment diagonal matches the closed form", criterion_will_moment},
      {3, "tuned will metric is not a ricci soliton", criterion_will_not_ricci},
      {4, "example2 certificates track the balance constraint", criterion_example2},
      {5, "example3 tuning and nontrivial derivation direction", criterion_example3},
      {6, "heisenberg baseline passes all four certificates", criterion_heisenberg},
      {7, "moment-map defining identity", criterion_defining_identity},
      {8, "fingerprint equivariance under the compact subgroup", criterion_fingerprint_equivariance},
      {9, "flow recovery of minimal points and degeneration", criterion_flow},
      {10, "successful rym certificates are expanders", criterion_expander},
      {11, "catalogue round trip is bit-exact", criterion_round_trip},
  };

  int failed = 0;
  for (const Criterion& criterion : criteria) {
    Checker check;
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.require(false, std::string("exception: ") + e.what());
    }
    std::printf("[%s] %2d. %s\n", check.ok() ? "PASS" : "FAIL", criterion.id, criterion.name);
    for (const std::string& failure : check.failures())
      std::printf("       - %s\n", failure.c_str());
    if (!check.ok()) ++failed;
  }
  std::printf("acceptance: %zu/%zu criteria passed\n", criteria.size() - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}

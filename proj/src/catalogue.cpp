#include "nilsol/catalogue.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <vector>

#include "nilsol/soliton.hpp"

namespace nilsol {

namespace {

Eigen::MatrixXd skew_from_upper(int n, std::initializer_list<std::array<double, 3>> entries) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : entries) {
    const int i = static_cast<int>(e[0]);
    const int j = static_cast<int>(e[1]);
    m(i, j) = e[2];
    m(j, i) = -e[2];
  }
  return m;
}

Eigen::MatrixXd matrix_j() { return skew_from_upper(2, {{0, 1, 1}}); }

// The six-element orthogonal basis of so(4); each has four +-1 entries.
Eigen::MatrixXd matrix_b(int index) {
  switch (index) {
    case 1: return skew_from_upper(4, {{0, 1, 1}, {2, 3, 1}});
    case 2: return skew_from_upper(4, {{0, 3, 1}, {1, 2, 1}});
    case 3: return skew_from_upper(4, {{0, 2, 1}, {1, 3, 1}});
    case 4: return skew_from_upper(4, {{0, 1, 1}, {2, 3, -1}});
    case 5: return skew_from_upper(4, {{0, 3, 1}, {1, 2, -1}});
    case 6: return skew_from_upper(4, {{0, 2, 1}, {1, 3, -1}});
  }
  throw ParameterError("basis_matrix: index out of range");
}

Eigen::MatrixXd block_j_repeated(int k) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * k, 2 * k);
  for (int b = 0; b < k; ++b) m.block<2, 2>(2 * b, 2 * b) = matrix_j();
  return m;
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Parameter access with range checks.
class Params {
 public:
  Params(const FamilySpec& spec) : spec_(spec) {}

  bool has(const std::string& key) const { return spec_.parameters.count(key) > 0; }

  double scalar(const std::string& key) const {
    auto it = spec_.parameters.find(key);
    if (it == spec_.parameters.end())
      throw ParameterError("family '" + spec_.name + "': missing parameter '" + key + "'");
    used_.insert(key);
    return it->second;
  }

  double scalar_or(const std::string& key, double fallback) const {
    return has(key) ? scalar(key) : fallback;
  }

  double positive(const std::string& key) const {
    const double v = scalar(key);
    if (!(v > 0.0))
      throw ParameterError("family '" + spec_.name + "': parameter '" + key +
                           "' must be positive, got " + format_value(v));
    return v;
  }

  int integer(const std::string& key, int lo, int hi) const {
    const double v = scalar(key);
    const int n = static_cast<int>(std::llround(v));
    if (v != static_cast<double>(n) || n < lo || n > hi) {
      std::ostringstream os;
      os << "family '" << spec_.name << "': parameter '" << key << "' must be an integer in ["
         << lo << ", " << hi << "], got " << format_value(v);
      throw ParameterError(os.str());
    }
    return n;
  }

  // Consecutive coefficients prefix1, prefix2, ...; indices must start at 1
  // with no gaps.  Out-of-sequence keys surface later via reject_unused().
  std::vector<double> run(const std::string& prefix, int max_count) const {
    std::vector<double> values;
    for (int i = 1; i <= max_count; ++i) {
      const std::string key = prefix + std::to_string(i);
      if (!has(key)) break;
      values.push_back(scalar(key));
    }
    return values;
  }

  void reject_unused() const {
    for (const auto& kv : spec_.parameters) {
      if (!used_.count(kv.first))
        throw ParameterError("family '" + spec_.name + "': unknown or out-of-sequence parameter '" +
                             kv.first + "'");
    }
  }

 private:
  const FamilySpec& spec_;
  mutable std::set<std::string> used_;
};

// Accepts either `key` or `key2` (the squared value); exactly one of them.
double squared_or_plain(const Params& params, const FamilySpec& spec, const std::string& key) {
  const std::string squared_key = key + "2";
  const bool plain = params.has(key);
  const bool squared = params.has(squared_key);
  if (plain == squared)
    throw ParameterError("family '" + spec.name + "': provide exactly one of '" + key +
                         "' or '" + squared_key + "'");
  if (plain) return params.positive(key);
  return std::sqrt(params.positive(squared_key));
}

StructureTuple pad_coordinates(const StructureTuple& t, int p) {
  if (t.p() >= p) return t;
  std::vector<Eigen::MatrixXd> mats = t.matrices();
  while (static_cast<int>(mats.size()) < p)
    mats.push_back(Eigen::MatrixXd::Zero(t.q(), t.q()));
  return StructureTuple(std::move(mats));
}

StructureTuple build_heisenberg() {
  return StructureTuple({matrix_j()}, "heisenberg");
}

StructureTuple build_a1(const Params& params) {
  const int k = params.integer("k", 1, kMaxQ / 2);
  const double a = params.scalar_or("a", 1.0);
  std::ostringstream label;
  label << "a1(k=" << k;
  if (a != 1.0) label << ", a=" << format_value(a);
  label << ")";
  return StructureTuple({a * block_j_repeated(k)}, label.str());
}

StructureTuple build_b_basis(const Params& params) {
  const int j = params.integer("j", 1, 6);
  std::vector<Eigen::MatrixXd> mats;
  for (int i = 1; i <= j; ++i) mats.push_back(params.scalar_or("b" + std::to_string(i), 1.0) * matrix_b(i));
  std::ostringstream label;
  label << "b_basis(j=" << j << ")";
  return StructureTuple(std::move(mats), label.str());
}

StructureTuple build_will(const Params& params, const FamilySpec& spec) {
  const double a = squared_or_plain(params, spec, "a");
  const double a2 = a * a;
  const Eigen::MatrixXd c1 =
      skew_from_upper(6, {{0, 1, a2}, {2, 5, 1.0}, {3, 4, -1.0}});
  const Eigen::MatrixXd c2 = skew_from_upper(6, {{0, 5, a}, {1, 4, -a}});
  const Eigen::MatrixXd c3 = skew_from_upper(6, {{0, 3, a}, {1, 2, -a}});
  return StructureTuple({c1, c2, c3}, "will(a2=" + format_value(a2) + ")");
}

StructureTuple build_example2(const Params& params) {
  const double a1 = params.positive("a1");
  const int k = params.integer("k", 1, kMaxQ / 2);
  const std::vector<double> bs = params.run("b", 1000);
  const std::vector<double> cs = params.run("c", 1000);
  if (bs.size() != cs.size())
    throw ParameterError("family 'example2': b and c coefficients must come in pairs");
  const std::vector<double> ds = params.run("d", 6);
  if (ds.empty())
    throw ParameterError("family 'example2': at least one d coefficient is required");

  StructureTuple t({a1 * block_j_repeated(k)});
  for (std::size_t i = 0; i < bs.size(); ++i)
    t = concat(t, StructureTuple({bs[i] * matrix_b(1), cs[i] * matrix_b(2)}));

  std::vector<Eigen::MatrixXd> dmats;
  for (std::size_t i = 0; i < ds.size(); ++i) dmats.push_back(ds[i] * matrix_b(static_cast<int>(i) + 1));
  StructureTuple dtuple(std::move(dmats));
  if (dtuple.p() < t.p()) dtuple = pad_coordinates(dtuple, t.p());
  t = concat(t, dtuple);

  std::ostringstream label;
  label << "example2(a1=" << format_value(a1) << ", k=" << k << ", n=" << bs.size() + 1
        << ", j=" << ds.size() << ")";
  return t.with_label(label.str());
}

StructureTuple build_example3(const Params& params, const FamilySpec& spec) {
  const double a1 = params.positive("a1");
  const double ell = squared_or_plain(params, spec, "ell");
  const std::vector<double> bs = params.run("b", 6);
  if (bs.empty())
    throw ParameterError("family 'example3': at least one b coefficient is required");

  // Middle block: two overlapping rotation planes inside R^3.
  Eigen::MatrixXd mid1 = Eigen::MatrixXd::Zero(3, 3);
  mid1.topLeftCorner<2, 2>() = matrix_j();
  Eigen::MatrixXd mid2 = Eigen::MatrixXd::Zero(3, 3);
  mid2.bottomRightCorner<2, 2>() = matrix_j();

  StructureTuple t({a1 * matrix_j()});
  t = concat(t, StructureTuple({ell * mid1, ell * mid2}));

  std::vector<Eigen::MatrixXd> bmats;
  for (std::size_t i = 0; i < bs.size(); ++i) bmats.push_back(bs[i] * matrix_b(static_cast<int>(i) + 1));
  StructureTuple btuple(std::move(bmats));
  if (btuple.p() < t.p()) btuple = pad_coordinates(btuple, t.p());
  t = concat(t, btuple);

  std::ostringstream label;
  label << "example3(a1=" << format_value(a1) << ", ell2=" << format_value(ell * ell)
        << ", j=" << bs.size() << ")";
  return t.with_label(label.str());
}

}  // namespace

Eigen::MatrixXd basis_matrix(const std::string& name) {
  if (name == "J") return matrix_j();
  if (name.size() == 2 && name[0] == 'B' && name[1] >= '1' && name[1] <= '6')
    return matrix_b(name[1] - '0');
  throw ParameterError("basis_matrix: unknown name '" + name + "' (expected J or B1..B6)");
}

StructureTuple concat(const StructureTuple& a, const StructureTuple& b) {
  if (a.p() > b.p()) {
    std::ostringstream os;
    os << "concat: left tuple has p = " << a.p() << " > " << b.p()
       << " = right tuple's p; pad the right tuple explicitly if that is intended";
    throw StructuralError(os.str());
  }
  const int q = a.q() + b.q();
  std::vector<Eigen::MatrixXd> out;
  out.reserve(static_cast<std::size_t>(b.p()));
  for (int k = 0; k < b.p(); ++k) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(q, q);
    if (k < a.p()) m.topLeftCorner(a.q(), a.q()) = a.matrix(k);
    m.bottomRightCorner(b.q(), b.q()) = b.matrix(k);
    out.push_back(std::move(m));
  }
  return StructureTuple(std::move(out));
}

StructureTuple build(const FamilySpec& spec) {
  const Params params(spec);
  StructureTuple t = [&] {
    if (spec.name == "heisenberg") return build_heisenberg();
    if (spec.name == "a1") return build_a1(params);
    if (spec.name == "b_basis") return build_b_basis(params);
    if (spec.name == "will") return build_will(params, spec);
    if (spec.name == "example2") return build_example2(params);
    if (spec.name == "example3") return build_example3(params, spec);
    throw ParameterError("unknown family '" + spec.name +
                         "' (expected heisenberg, a1, b_basis, will, example2 or example3)");
  }();
  params.reject_unused();
  return t;
}

namespace {

constexpr int kScanSamples = 200;
constexpr double kGoldenRatio = 0.6180339887498949;

double residual_at(FamilySpec spec, const std::string& free_name, double value) {
  spec.parameters[free_name] = value;
  return rym_residual(build(spec));
}

}  // namespace

TuneResult tune_parameter(const FamilySpec& spec, const std::string& free_name, double lo,
                          double hi, double tol) {
  if (!(lo < hi)) throw ParameterError("tune: bounds must satisfy lo < hi");
  if (!(tol > 0.0)) throw ParameterError("tune: tol must be positive");

  int evaluations = 0;
  auto f = [&](double v) {
    ++evaluations;
    return residual_at(spec, free_name, v);
  };

  // Coarse scan.
  double best_value = lo;
  double best_residual = f(lo);
  const double span = hi - lo;
  for (int i = 1; i <= kScanSamples; ++i) {
    const double v = lo + span * static_cast<double>(i) / kScanSamples;
    const double r = f(v);
    if (r < best_residual) {
      best_residual = r;
      best_value = v;
    }
  }

  // Golden-section refinement in the bracket around the best scan sample.
  double a = std::max(lo, best_value - span / kScanSamples);
  double b = std::min(hi, best_value + span / kScanSamples);
  double x1 = b - kGoldenRatio * (b - a);
  double x2 = a + kGoldenRatio * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > 1e-13 * std::max(1.0, std::abs(a) + std::abs(b))) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGoldenRatio * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGoldenRatio * (b - a);
      f2 = f(x2);
    }
  }
  const double refined = 0.5 * (a + b);
  const double refined_residual = f(refined);
  if (refined_residual < best_residual) {
    best_residual = refined_residual;
    best_value = refined;
  }

  if (best_residual >= tol) {
    std::ostringstream os;
    os << "tune: no parameter value with residual < " << tol << " in [" << lo << ", " << hi
       << "]; best residual " << best_residual << " at " << free_name << " = " << best_value;
    throw TuneError(os.str(), best_value, best_residual);
  }
  return {best_value, best_residual, evaluations};
}

}  // namespace nilsol

#include "nilsol/algebra.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <sstream>

namespace nilsol {

namespace {

std::string shape_of(const Eigen::MatrixXd& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

}  // namespace

StructureTuple::StructureTuple(std::vector<Eigen::MatrixXd> matrices, std::string label)
    : matrices_(std::move(matrices)), label_(std::move(label)) {
  if (matrices_.empty()) throw StructuralError("tuple needs at least one matrix (p >= 1)");
  q_ = static_cast<int>(matrices_.front().rows());
  if (q_ < 1) throw StructuralError("tuple matrices must be at least 1x1");
  if (q_ > kMaxQ) {
    std::ostringstream os;
    os << "q = " << q_ << " exceeds the supported envelope q <= " << kMaxQ;
    throw StructuralError(os.str());
  }
  for (std::size_t k = 0; k < matrices_.size(); ++k) {
    const auto& m = matrices_[k];
    if (m.rows() != q_ || m.cols() != q_) {
      std::ostringstream os;
      os << "matrix " << k << " has shape " << shape_of(m) << ", expected " << q_ << "x" << q_;
      throw StructuralError(os.str());
    }
  }
}

StructureTuple StructureTuple::zero(int q, int p) {
  if (p < 1) throw StructuralError("tuple needs at least one matrix (p >= 1)");
  return StructureTuple(std::vector<Eigen::MatrixXd>(
      static_cast<std::size_t>(p), Eigen::MatrixXd::Zero(q, q)));
}

StructureTuple StructureTuple::with_label(std::string label) const {
  StructureTuple out = *this;
  out.label_ = std::move(label);
  return out;
}

double StructureTuple::squared_norm() const {
  double acc = 0.0;
  for (const auto& m : matrices_) acc += m.squaredNorm();
  return acc;
}

double StructureTuple::norm() const { return std::sqrt(squared_norm()); }

double StructureTuple::skewness_defect() const {
  double worst = 0.0;
  for (const auto& m : matrices_) {
    const double d = (m + m.transpose()).cwiseAbs().maxCoeff();
    worst = std::max(worst, d);
  }
  return worst;
}

bool StructureTuple::all_finite() const {
  for (const auto& m : matrices_)
    if (!m.allFinite()) return false;
  return true;
}

namespace {

void check_same_shape(const StructureTuple& a, const StructureTuple& b, const char* op) {
  if (a.q() != b.q() || a.p() != b.p()) {
    std::ostringstream os;
    os << op << ": tuple shapes differ, (" << a.p() << "," << a.q() << ") vs (" << b.p()
       << "," << b.q() << ")";
    throw StructuralError(os.str());
  }
}

}  // namespace

StructureTuple& StructureTuple::operator+=(const StructureTuple& other) {
  check_same_shape(*this, other, "tuple sum");
  for (int k = 0; k < p(); ++k) matrices_[static_cast<std::size_t>(k)] += other.matrix(k);
  label_.clear();
  return *this;
}

StructureTuple& StructureTuple::operator-=(const StructureTuple& other) {
  check_same_shape(*this, other, "tuple difference");
  for (int k = 0; k < p(); ++k) matrices_[static_cast<std::size_t>(k)] -= other.matrix(k);
  label_.clear();
  return *this;
}

StructureTuple& StructureTuple::operator*=(double c) {
  for (auto& m : matrices_) m *= c;
  label_.clear();
  return *this;
}

bool ValidationReport::all_skew() const {
  for (bool s : is_skew)
    if (!s) return false;
  return true;
}

ValidationReport validate(const StructureTuple& tuple, double skew_tol, double rank_tol) {
  ValidationReport report;
  const int q = tuple.q();
  const int p = tuple.p();

  for (int k = 0; k < p; ++k) {
    const Eigen::MatrixXd& m = tuple.matrix(k);
    // The defect matrix is symmetric; scan the upper triangle so the
    // reported coordinates are deterministic.
    double worst = 0.0;
    int wi = 0, wj = 0;
    for (int i = 0; i < q; ++i)
      for (int j = i; j < q; ++j) {
        const double d = std::abs(m(i, j) + m(j, i));
        if (d > worst) {
          worst = d;
          wi = i;
          wj = j;
        }
      }
    const bool ok = worst <= skew_tol;
    report.is_skew.push_back(ok);
    if (!ok) {
      std::ostringstream os;
      os << "matrix " << k << ": skewness defect " << worst << " at entry (" << wi << "," << wj
         << ") exceeds tolerance " << skew_tol;
      report.messages.push_back(os.str());
    }
  }

  // Rank of the span inside so(q), from the strict upper triangles.
  const int dim_so = q * (q - 1) / 2;
  if (dim_so == 0) {
    report.effective_p = 0;
  } else {
    Eigen::MatrixXd flat(p, dim_so);
    for (int k = 0; k < p; ++k) {
      int col = 0;
      for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j) flat(k, col++) = tuple.matrix(k)(i, j);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(flat);
    const auto& sv = svd.singularValues();
    const double top = sv.size() > 0 ? sv(0) : 0.0;
    int rank = 0;
    if (top > 0.0)
      for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > rank_tol * top) ++rank;
    report.effective_p = rank;
  }

  report.is_regular = report.effective_p == p;
  if (p > dim_so) {
    std::ostringstream os;
    os << "p = " << p << " exceeds dim so(" << q << ") = " << dim_so
       << "; the tuple cannot be regular";
    report.messages.push_back(os.str());
  }
  if (!report.is_regular) {
    std::ostringstream os;
    os << "coordinates are linearly dependent: effective p = " << report.effective_p
       << " < p = " << p;
    report.messages.push_back(os.str());
  }
  return report;
}

Eigen::VectorXd bracket(const StructureTuple& tuple, const Eigen::VectorXd& u,
                        const Eigen::VectorXd& v) {
  const int n = tuple.dim();
  if (u.size() != n || v.size() != n) {
    std::ostringstream os;
    os << "bracket: vectors must have length q + p = " << n << ", got " << u.size() << " and "
       << v.size();
    throw StructuralError(os.str());
  }
  const int q = tuple.q();
  const auto ux = u.head(q);
  const auto vx = v.head(q);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < tuple.p(); ++k) out(q + k) = ux.dot(tuple.matrix(k) * vx);
  return out;
}

std::pair<int, int> algebra_type(const StructureTuple& tuple) {
  return {validate(tuple).effective_p, tuple.q()};
}

}  // namespace nilsol

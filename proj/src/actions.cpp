#include "nilsol/actions.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <sstream>

#include "nilsol/moment.hpp"

namespace nilsol {

namespace {

void check_square(const Eigen::MatrixXd& m, int n, const char* who) {
  if (m.rows() != n || m.cols() != n) {
    std::ostringstream os;
    os << who << ": expected a " << n << "x" << n << " matrix, got " << m.rows() << "x"
       << m.cols();
    throw StructuralError(os.str());
  }
}

void check_invertible(const Eigen::MatrixXd& m, const char* who) {
  const double det = m.determinant();
  if (!std::isfinite(det) || std::abs(det) <= kSingularityTol) {
    std::ostringstream os;
    os << who << ": element is singular (|det| = " << std::abs(det) << " <= " << kSingularityTol
       << ")";
    throw InvalidElementError(os.str());
  }
}

}  // namespace

StructureTuple act_glq(const Eigen::MatrixXd& g, const StructureTuple& c) {
  check_square(g, c.q(), "act_glq");
  check_invertible(g, "act_glq");
  std::vector<Eigen::MatrixXd> out;
  out.reserve(static_cast<std::size_t>(c.p()));
  for (int k = 0; k < c.p(); ++k) out.push_back(g * c.matrix(k) * g.transpose());
  return StructureTuple(std::move(out));
}

StructureTuple act_glp(const Eigen::MatrixXd& h, const StructureTuple& c) {
  check_square(h, c.p(), "act_glp");
  check_invertible(h, "act_glp");
  std::vector<Eigen::MatrixXd> out;
  out.reserve(static_cast<std::size_t>(c.p()));
  for (int k = 0; k < c.p(); ++k) {
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(c.q(), c.q());
    for (int l = 0; l < c.p(); ++l) acc += h(l, k) * c.matrix(l);
    out.push_back(std::move(acc));
  }
  return StructureTuple(std::move(out));
}

StructureTuple act(const GroupElement& e, const StructureTuple& c) {
  StructureTuple out = e.g ? act_glq(*e.g, c) : c;
  if (e.h) out = act_glp(*e.h, out);
  return out;
}

StructureTuple act_lie_glq(const Eigen::MatrixXd& X, const StructureTuple& c) {
  check_square(X, c.q(), "act_lie_glq");
  std::vector<Eigen::MatrixXd> out;
  out.reserve(static_cast<std::size_t>(c.p()));
  for (int k = 0; k < c.p(); ++k)
    out.push_back(X * c.matrix(k) + c.matrix(k) * X.transpose());
  return StructureTuple(std::move(out));
}

StructureTuple act_lie_glp(const Eigen::MatrixXd& Y, const StructureTuple& c) {
  check_square(Y, c.p(), "act_lie_glp");
  std::vector<Eigen::MatrixXd> out;
  out.reserve(static_cast<std::size_t>(c.p()));
  for (int k = 0; k < c.p(); ++k) {
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(c.q(), c.q());
    for (int l = 0; l < c.p(); ++l) acc += Y(l, k) * c.matrix(l);
    out.push_back(std::move(acc));
  }
  return StructureTuple(std::move(out));
}

StructureTuple act_lie(const TangentElement& t, const StructureTuple& c) {
  StructureTuple out = StructureTuple::zero(c.q(), c.p());
  if (t.X) out += act_lie_glq(*t.X, c);
  if (t.Y) out += act_lie_glp(*t.Y, c);
  return out;
}

Fingerprint fingerprint(const StructureTuple& c) {
  Fingerprint fp;
  fp.q = c.q();
  fp.p = c.p();
  fp.norm = c.norm();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> glq_eigen(moment_glq(c));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> glp_eigen(moment_glp(c));
  fp.glq_spectrum = glq_eigen.eigenvalues();  // ascending
  fp.glp_spectrum = glp_eigen.eigenvalues();
  return fp;
}

double fingerprint_distance(const Fingerprint& a, const Fingerprint& b) {
  if (a.p != b.p || a.q != b.q) return std::numeric_limits<double>::infinity();
  double d = std::abs(a.norm - b.norm);
  d = std::max(d, (a.glq_spectrum - b.glq_spectrum).cwiseAbs().maxCoeff());
  d = std::max(d, (a.glp_spectrum - b.glp_spectrum).cwiseAbs().maxCoeff());
  return d;
}

bool fingerprints_equal(const Fingerprint& a, const Fingerprint& b, double tol) {
  return fingerprint_distance(a, b) <= tol;
}

}  // namespace nilsol

#include "nilsol/moment.hpp"

#include <cmath>
#include <sstream>

#include "nilsol/actions.hpp"

namespace nilsol {

const char* to_string(Group g) {
  switch (g) {
    case Group::GLq: return "glq";
    case Group::SLq: return "slq";
    case Group::Full: return "full";
  }
  return "?";
}

double inner(const StructureTuple& c, const StructureTuple& d) {
  if (c.q() != d.q() || c.p() != d.p()) {
    std::ostringstream os;
    os << "inner: tuple shapes differ, (" << c.p() << "," << c.q() << ") vs (" << d.p() << ","
       << d.q() << ")";
    throw StructuralError(os.str());
  }
  double acc = 0.0;
  for (int k = 0; k < c.p(); ++k)
    acc += c.matrix(k).cwiseProduct(d.matrix(k)).sum();  // trace(C D^t)
  return acc;
}

namespace {

// For exactly skew input the accumulated product is symmetric to the last
// bit, so any defect here traces back to a non-skew tuple.
Eigen::MatrixXd symmetrized(Eigen::MatrixXd m, const char* who) {
  const double defect = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (defect > 1e-12 * std::max(1.0, m.norm())) {
    std::ostringstream os;
    os << who << ": pre-symmetrization defect " << defect
       << " exceeds 1e-12; the input tuple is not skew-symmetric";
    throw StructuralError(os.str());
  }
  return 0.5 * (m + m.transpose());
}

}  // namespace

Eigen::MatrixXd moment_glq(const StructureTuple& c) {
  const int q = c.q();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(q, q);
  for (int k = 0; k < c.p(); ++k)
    acc.noalias() -= 2.0 * (c.matrix(k) * c.matrix(k));
  return symmetrized(std::move(acc), "moment_glq");
}

Eigen::MatrixXd moment_glp(const StructureTuple& c) {
  const int p = c.p();
  Eigen::MatrixXd gram(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = i; j < p; ++j)
      gram(i, j) = gram(j, i) = c.matrix(i).cwiseProduct(c.matrix(j)).sum();
  return gram;
}

Eigen::MatrixXd moment_slq(const StructureTuple& c) {
  Eigen::MatrixXd m = moment_glq(c);
  const double mean = m.trace() / static_cast<double>(c.q());
  m.diagonal().array() -= mean;
  return m;
}

MomentValue moment_full(const StructureTuple& c) {
  MomentValue value;
  value.glq = moment_glq(c);
  value.glp = moment_glp(c);
  value.slq = value.glq;
  value.slq.diagonal().array() -= value.glq.trace() / static_cast<double>(c.q());
  return value;
}

StructureTuple moment_action(const StructureTuple& c, Group group) {
  switch (group) {
    case Group::GLq:
      return act_lie_glq(moment_glq(c), c);
    case Group::SLq:
      return act_lie_glq(moment_slq(c), c);
    case Group::Full: {
      const MomentValue m = moment_full(c);
      return act_lie({m.glq, m.glp}, c);
    }
  }
  throw ParameterError("moment_action: unknown group");
}

double moment_norm(const StructureTuple& c, Group group) {
  switch (group) {
    case Group::GLq:
      return moment_glq(c).norm();
    case Group::SLq:
      return moment_slq(c).norm();
    case Group::Full: {
      const MomentValue m = moment_full(c);
      return std::sqrt(m.glq.squaredNorm() + m.glp.squaredNorm());
    }
  }
  throw ParameterError("moment_norm: unknown group");
}

}  // namespace nilsol

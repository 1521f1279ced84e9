#include "nilsol/soliton.hpp"

#include <cmath>
#include <sstream>

#include "nilsol/actions.hpp"

namespace nilsol {

const char* to_string(CertMode mode) {
  switch (mode) {
    case CertMode::Rym: return "rym";
    case CertMode::Ricci: return "ricci";
    case CertMode::Gfi: return "gfi";
    case CertMode::RicciGfi: return "ricci_and_gfi";
  }
  return "?";
}

CertMode cert_mode_from_string(const std::string& name) {
  if (name == "rym") return CertMode::Rym;
  if (name == "ricci") return CertMode::Ricci;
  if (name == "gfi") return CertMode::Gfi;
  if (name == "ricci_and_gfi") return CertMode::RicciGfi;
  throw ParameterError("unknown certification mode '" + name +
                       "' (expected rym, ricci, gfi or ricci_and_gfi)");
}

namespace {

void require_nonzero(const StructureTuple& c, const char* who) {
  if (c.squared_norm() == 0.0) {
    std::ostringstream os;
    os << who << ": the zero tuple is degenerate";
    throw DegenerateInputError(os.str());
  }
}

struct RymParts {
  double r = 0.0;
  double lambda = 0.0;
  Eigen::MatrixXd derivation;
  double distinguished_residual = 0.0;
  double stabilizer_residual = 0.0;
};

RymParts rym_parts(const StructureTuple& c) {
  RymParts parts;
  const Eigen::MatrixXd m1 = moment_glq(c);
  const StructureTuple field = act_lie_glq(m1, c);
  const double cc = c.squared_norm();
  const double cn = std::sqrt(cc);
  parts.r = inner(field, c) / cc;
  parts.distinguished_residual =
      (field - parts.r * c).norm() / (cn * (1.0 + std::abs(parts.r)));
  parts.lambda = 0.25 * parts.r;
  parts.derivation =
      0.25 * (m1 - 2.0 * parts.lambda * Eigen::MatrixXd::Identity(c.q(), c.q()));
  parts.stabilizer_residual = act_lie_glq(parts.derivation, c).norm() /
                              (cn * (1.0 + parts.derivation.norm()));
  return parts;
}

}  // namespace

double best_r(const StructureTuple& c, Group group) {
  require_nonzero(c, "best_r");
  return inner(moment_action(c, group), c) / c.squared_norm();
}

Certificate certify_rym(const StructureTuple& c, double tol) {
  require_nonzero(c, "certify_rym");
  const RymParts parts = rym_parts(c);
  Certificate cert;
  cert.mode = CertMode::Rym;
  cert.tol = tol;
  cert.r = parts.r;
  if (parts.distinguished_residual <= tol) {
    cert.residual = std::max(parts.distinguished_residual, parts.stabilizer_residual);
    cert.verdict = cert.residual <= tol;
    if (cert.verdict) {
      cert.lambda = parts.lambda;
      cert.derivation = parts.derivation;
    }
  } else {
    cert.residual = parts.distinguished_residual;
  }
  return cert;
}

double rym_residual(const StructureTuple& c) {
  require_nonzero(c, "rym_residual");
  const RymParts parts = rym_parts(c);
  return std::max(parts.distinguished_residual, parts.stabilizer_residual);
}

Certificate certify_ricci(const StructureTuple& c, double tol) {
  require_nonzero(c, "certify_ricci");
  const StructureTuple field = moment_action(c, Group::Full);
  const double cc = c.squared_norm();
  const double cn = std::sqrt(cc);
  Certificate cert;
  cert.mode = CertMode::Ricci;
  cert.tol = tol;
  cert.r = inner(field, c) / cc;
  cert.residual = (field - cert.r * c).norm() / (cn * (1.0 + std::abs(cert.r)));
  cert.verdict = cert.residual <= tol;
  return cert;
}

Certificate certify_gfi(const StructureTuple& c, double tol) {
  require_nonzero(c, "certify_gfi");
  const Eigen::MatrixXd slq = moment_slq(c);
  const StructureTuple field = act_lie_glq(slq, c);
  Certificate cert;
  cert.mode = CertMode::Gfi;
  cert.tol = tol;
  cert.r = 0.0;  // minimal point target
  cert.residual = field.norm() / (c.norm() * (1.0 + slq.norm()));
  cert.verdict = cert.residual <= tol;
  return cert;
}

Certificate certify_ricci_gfi(const StructureTuple& c, double tol) {
  require_nonzero(c, "certify_ricci_gfi");
  const MomentValue m = moment_full(c);
  const int q = c.q();
  const int p = c.p();
  Certificate cert;
  cert.mode = CertMode::RicciGfi;
  cert.tol = tol;
  cert.r = m.glq.trace() / static_cast<double>(q);
  cert.s = m.glp.trace() / static_cast<double>(p);
  // trace(m1) = 2 ||C||^2 and trace(m2) = ||C||^2, so both norms are
  // positive for a nonzero tuple.
  const double glq_residual =
      (m.glq - cert.r * Eigen::MatrixXd::Identity(q, q)).norm() / m.glq.norm();
  const double glp_residual =
      (m.glp - *cert.s * Eigen::MatrixXd::Identity(p, p)).norm() / m.glp.norm();
  cert.residual = std::max(glq_residual, glp_residual);
  cert.verdict = cert.residual <= tol;
  return cert;
}

}  // namespace nilsol

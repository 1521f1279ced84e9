#pragma once

#include <Eigen/Dense>
#include <optional>

#include "nilsol/moment.hpp"

namespace nilsol {

/// Default certification tolerance on relative residuals.
inline constexpr double kCertifyTol = 1e-9;

enum class CertMode { Rym, Ricci, Gfi, RicciGfi };

const char* to_string(CertMode mode);
CertMode cert_mode_from_string(const std::string& name);

/// Outcome of a soliton / minimality test with its numeric witnesses.  All
/// residuals are relative and scale-invariant; verdict == (residual <= tol).
struct Certificate {
  CertMode mode = CertMode::Rym;
  bool verdict = false;
  double r = 0.0;         // coefficient in m_G(C) . C = r C (0 target for gfi)
  double residual = 0.0;  // max over the mode's checks
  double tol = 0.0;

  std::optional<double> lambda;              // rym only: soliton constant r/4
  std::optional<Eigen::MatrixXd> derivation; // rym only: (m1 - 2 lambda Id)/4
  std::optional<double> s;                   // ricci_and_gfi only: tr(m2)/p
};

/// Least-squares optimum of m_G(C) . C = r C, i.e. the projection
/// coefficient <m_G(C) . C, C> / <C, C>.
double best_r(const StructureTuple& c, Group group);

/// Ricci Yang-Mills soliton test (symmetric Lie type): C must be a
/// distinguished point of the GLq action.  On success the certificate
/// carries lambda = r/4 and the symmetric derivation D = (m1 - 2 lambda Id)/4,
/// which satisfies m1 = 2 lambda Id + 4 D identically; the reported residual
/// is the max of the distinguished-point residual and the stabilizer
/// residual ||D . C|| / (||C|| (1 + ||D||)).
Certificate certify_rym(const StructureTuple& c, double tol = kCertifyTol);

/// Ricci soliton (nilsoliton) test: distinguished point of the full
/// GLq x GLp action.
Certificate certify_ricci(const StructureTuple& c, double tol = kCertifyTol);

/// Geodesic-flow-invariance test: minimal point of the SLq action,
/// ||m_slq(C) . C|| / (||C|| (1 + ||m_slq(C)||)) <= tol.
Certificate certify_gfi(const StructureTuple& c, double tol = kCertifyTol);

/// Simultaneous Ricci soliton + geodesic flow invariance: both moment maps
/// must be scalar, m1 = r Id_q and m2 = s Id_p.
Certificate certify_ricci_gfi(const StructureTuple& c, double tol = kCertifyTol);

/// The always-defined rym residual max(distinguished, stabilizer); used by
/// the parameter tuner, which needs a continuous objective regardless of
/// the verdict gate.
double rym_residual(const StructureTuple& c);

}  // namespace nilsol

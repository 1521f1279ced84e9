#pragma once

#include <Eigen/Dense>
#include <optional>

#include "nilsol/algebra.hpp"

namespace nilsol {

/// Group elements with |det| at or below this are rejected.
inline constexpr double kSingularityTol = 1e-12;

/// Default tolerance for fingerprint comparison and for the PSD check on
/// the moment spectra.
inline constexpr double kFingerprintTol = 1e-10;

/// An element (g, h) of GLq x GLp; either factor may be omitted (identity).
struct GroupElement {
  std::optional<Eigen::MatrixXd> g;  // q x q
  std::optional<Eigen::MatrixXd> h;  // p x p
};

/// An element (X, Y) of the Lie algebra glq x glp; either factor may be
/// omitted (zero).
struct TangentElement {
  std::optional<Eigen::MatrixXd> X;  // q x q
  std::optional<Eigen::MatrixXd> Y;  // p x p
};

/// g . C = (g C^1 g^t, ..., g C^p g^t); acts on each coordinate.
StructureTuple act_glq(const Eigen::MatrixXd& g, const StructureTuple& c);

/// h . C = D with D^k = sum_l h_{lk} C^l; takes linear combinations of the
/// coordinates.  Commutes with act_glq.
StructureTuple act_glp(const Eigen::MatrixXd& h, const StructureTuple& c);

/// Combined action, g first (the two actions commute).
StructureTuple act(const GroupElement& e, const StructureTuple& c);

/// Infinitesimal action: X . C = (X C^k + C^k X^t)_k plus Y . C with
/// (Y . C)^k = sum_l Y_{lk} C^l.  This is the t-derivative at 0 of the
/// one-parameter group actions.
StructureTuple act_lie(const TangentElement& t, const StructureTuple& c);
StructureTuple act_lie_glq(const Eigen::MatrixXd& X, const StructureTuple& c);
StructureTuple act_lie_glp(const Eigen::MatrixXd& Y, const StructureTuple& c);

/// Isometry-invariant data of a tuple: the type, the sorted spectra of the
/// two moment maps and the tuple norm.  Equal fingerprints are a necessary
/// condition for the associated metric groups to be isometric; distinct
/// fingerprints certify non-isometry.
struct Fingerprint {
  int p = 0;
  int q = 0;
  Eigen::VectorXd glq_spectrum;  // ascending, q entries
  Eigen::VectorXd glp_spectrum;  // ascending, p entries
  double norm = 0.0;
};

Fingerprint fingerprint(const StructureTuple& c);

/// Max absolute difference over all fingerprint components; infinity when
/// the types differ.
double fingerprint_distance(const Fingerprint& a, const Fingerprint& b);

bool fingerprints_equal(const Fingerprint& a, const Fingerprint& b,
                        double tol = kFingerprintTol);

}  // namespace nilsol

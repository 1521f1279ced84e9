#pragma once

#include <Eigen/Dense>

#include "nilsol/algebra.hpp"

namespace nilsol {

/// The groups acting on tuples of structure matrices.  GLq rescales the
/// horizontal directions, SLq is its unimodular part, Full is the product
/// action of GLq x GLp.
enum class Group { GLq, SLq, Full };

const char* to_string(Group g);

/// Inner product sum_k trace(C^k (D^k)^t); coordinates of a tuple are
/// orthogonal to each other.
double inner(const StructureTuple& c, const StructureTuple& d);

/// Moment map of the GLq action: -2 sum_k (C^k)^2.  Symmetric positive
/// semidefinite; the output is explicitly symmetrized and the
/// pre-symmetrization defect (nonzero only for non-skew input) must stay
/// below 1e-12 relative.
Eigen::MatrixXd moment_glq(const StructureTuple& c);

/// Moment map of the GLp action: the Gram matrix of the coordinates.
Eigen::MatrixXd moment_glp(const StructureTuple& c);

/// Traceless part of moment_glq; the moment map of the SLq action.
Eigen::MatrixXd moment_slq(const StructureTuple& c);

struct MomentValue {
  Eigen::MatrixXd glq;  // q x q, symmetric PSD
  Eigen::MatrixXd glp;  // p x p, symmetric PSD
  Eigen::MatrixXd slq;  // q x q, symmetric, trace 0
};

MomentValue moment_full(const StructureTuple& c);

/// The squared-curvature endomorphism of the torus-bundle presentation of
/// the associated nilpotent group equals this multiple of moment_glq(c).
/// It is a fixed algebraic identity, never a separate computation.
inline constexpr double kCurvatureSquareScale = 0.5;

/// The vector field m_G(C) . C obtained by feeding the moment map of the
/// selected group back through the infinitesimal action.  This is the
/// gradient of ||m_G||^2 at C.
StructureTuple moment_action(const StructureTuple& c, Group group);

/// Norm of the moment-map value for the selected group (Frobenius; for the
/// full action the two components combine in quadrature).
double moment_norm(const StructureTuple& c, Group group);

}  // namespace nilsol

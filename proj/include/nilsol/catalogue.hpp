#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>

#include "nilsol/algebra.hpp"

namespace nilsol {

/// Named integer matrices used throughout the catalogue: the 2x2 rotation
/// generator "J" and the six 4x4 matrices "B1".."B6", which form an
/// orthogonal basis of so(4) with ||B_i||^2 = 4.
Eigen::MatrixXd basis_matrix(const std::string& name);

/// Block-diagonal concatenation.  Coordinate k of the result is
/// diag(A^k, B^k), with A padded by zero coordinates when it is the shorter
/// tuple; requires A.p() <= B.p(), the order of the blocks matters.
StructureTuple concat(const StructureTuple& a, const StructureTuple& b);

/// A catalogue family plus its named scalar parameters.
///
/// Families and parameter keys:
///   heisenberg  --                                    type (1,2)
///   a1          k (>=1 blocks), a (scale, default 1)  type (1,2k)
///   b_basis     j (1..6), b1..bj (default 1)          type (j,4)
///   will        a  (or a2 = a^2)                      type (3,6)
///   example2    a1, k, b1,c1 .. b{n-1},c{n-1}, d1..dj
///   example3    a1, ell (or ell2 = ell^2), b1..bj     type (max(2,j), 9)
struct FamilySpec {
  std::string name;
  std::map<std::string, double> parameters;
};

StructureTuple build(const FamilySpec& spec);

struct TuneResult {
  double value = 0.0;     // tuned parameter
  double residual = 0.0;  // rym residual at the tuned value
  int evaluations = 0;
};

/// Tuner failed to reach a sub-tol residual inside the bounds.
struct TuneError : Error {
  TuneError(const std::string& what, double value, double residual)
      : Error(what), best_value(value), best_residual(residual) {}
  double best_value;
  double best_residual;
};

/// Minimizes the rym residual of the family over one free scalar parameter:
/// a 200-sample coarse scan followed by golden-section refinement.
/// Succeeds only if the refined residual is below tol.
TuneResult tune_parameter(const FamilySpec& spec, const std::string& free_name,
                          double lo, double hi, double tol = 1e-9);

}  // namespace nilsol

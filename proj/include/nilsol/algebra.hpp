#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "nilsol/errors.hpp"

namespace nilsol {

/// Supported envelope for the codimension q (desk scale).
inline constexpr int kMaxQ = 64;

/// Default absolute tolerance on the skewness defect |M + M^t|.
inline constexpr double kSkewTol = 1e-12;

/// Default singular-value cutoff for the tuple rank, relative to the
/// largest singular value.
inline constexpr double kRankTol = 1e-10;

/// A p-tuple of skew-symmetric q x q matrices.  The k-th matrix holds the
/// coefficients of the k-th central coordinate of the bracket of the
/// associated metric 2-step nilpotent Lie algebra:
///
///   [e_i, e_j] = sum_k M^k_{ij} e_{q+k},   1 <= i, j <= q,
///
/// with all brackets involving e_{q+1}..e_{q+p} trivial.  Tuples are plain
/// values: construction checks shapes only, skewness and regularity are
/// reported by validate().  Tangent vectors to the space of tuples have the
/// same shape and reuse this type.
class StructureTuple {
 public:
  explicit StructureTuple(std::vector<Eigen::MatrixXd> matrices,
                          std::string label = {});

  static StructureTuple zero(int q, int p);

  int q() const { return q_; }
  int p() const { return static_cast<int>(matrices_.size()); }
  int dim() const { return q_ + p(); }

  const Eigen::MatrixXd& matrix(int k) const { return matrices_.at(static_cast<std::size_t>(k)); }
  const std::vector<Eigen::MatrixXd>& matrices() const { return matrices_; }
  const std::string& label() const { return label_; }

  StructureTuple with_label(std::string label) const;

  /// Frobenius norm over all coordinates; equals sqrt(inner(*this, *this)).
  double norm() const;
  double squared_norm() const;

  /// max_k max_{ij} |M^k_{ij} + M^k_{ji}|.
  double skewness_defect() const;

  bool all_finite() const;

  // Vector-space arithmetic (labels are dropped).
  StructureTuple& operator+=(const StructureTuple& other);
  StructureTuple& operator-=(const StructureTuple& other);
  StructureTuple& operator*=(double c);

  friend StructureTuple operator+(StructureTuple a, const StructureTuple& b) { return a += b; }
  friend StructureTuple operator-(StructureTuple a, const StructureTuple& b) { return a -= b; }
  friend StructureTuple operator*(double c, StructureTuple a) { return a *= c; }
  friend StructureTuple operator*(StructureTuple a, double c) { return a *= c; }

 private:
  int q_ = 0;
  std::vector<Eigen::MatrixXd> matrices_;
  std::string label_;
};

struct ValidationReport {
  std::vector<bool> is_skew;           // per coordinate
  int effective_p = 0;                 // numerical rank of the tuple's span
  bool is_regular = false;             // effective_p == p
  std::vector<std::string> messages;

  bool all_skew() const;
};

/// Checks skewness of every coordinate and computes the numerical rank of
/// the span of the tuple inside so(q).  Non-skew or rank-deficient tuples
/// are flagged in the report, never rejected.
ValidationReport validate(const StructureTuple& tuple, double skew_tol = kSkewTol,
                          double rank_tol = kRankTol);

/// Lie bracket of the algebra associated to the tuple, for vectors in the
/// standard orthonormal basis of R^q + R^p.  Bilinear and antisymmetric;
/// the image lies in the central block (last p coordinates).
Eigen::VectorXd bracket(const StructureTuple& tuple, const Eigen::VectorXd& u,
                        const Eigen::VectorXd& v);

/// Type (p, q) of the nilalgebra generated by the tuple; the first entry is
/// the effective commutator dimension (the tuple's numerical rank).
std::pair<int, int> algebra_type(const StructureTuple& tuple);

}  // namespace nilsol

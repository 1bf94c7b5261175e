#pragma once

#include <vector>

#include "lieortho/types.hpp"

namespace lieortho {

/// Matrix exponential by scaling-and-squaring with Pade approximants.
/// Works for any square complex matrix.
Mat mat_exp(const Mat& a);

/// Matrix exponential of a skew-Hermitian matrix through its unitary
/// eigendecomposition.  Throws StructureError if the skew-Hermitian defect of
/// `a` exceeds `tol` times max(1, ||a||).  Independent of mat_exp; the two
/// routes are cross-checked in tests and must agree on the overlap.
Mat mat_exp_skew(const Mat& a, double tol = 1e-10);

/// Eigendecomposition a = vectors * diag(values) * vectors^* of a
/// skew-Hermitian matrix.  Eigenvalues are purely imaginary, sorted by
/// increasing imaginary part; eigenvectors are orthonormal.
struct SkewEig {
  CVec values;
  Mat  vectors;
};
SkewEig eig_skew_hermitian(const Mat& a, double tol = 1e-10);

/// Real block decomposition q^T a q = blkdiag([[0, t_1], [-t_1, 0]], ..., 0)
/// of a real skew-symmetric matrix, with q real orthogonal and angles
/// t_1 >= t_2 >= ... > 0 followed by a zero block.
struct SkewRealBlocks {
  RMat                q;
  std::vector<double> angles;  ///< one entry per 2x2 block
  int                 zero_dim = 0;
};
SkewRealBlocks blocks_skew_symmetric(const RMat& a, double tol = 1e-10);

/// Minimum-norm least-squares solution of m x = b.  Singular values below
/// `tol_zero` times the largest are treated as zero; `rank` counts the rest.
/// `residual` is ||m x - b||.
struct LstsqResult {
  RVec   solution;
  double residual = 0.0;
  int    rank     = 0;
};
LstsqResult lstsq_min_norm(const RMat& m, const RVec& b, double tol_zero = 1e-10);

/// A linear subspace of R^n held as an orthonormal basis (columns).
class Subspace {
 public:
  /// Wraps columns that are already orthonormal (defect checked against `tol`).
  Subspace(RMat orthonormal_columns, double tol = 1e-10);

  /// Orthonormalizes arbitrary spanning columns, dropping directions whose
  /// remainder falls below `tol_zero` times the column scale.
  static Subspace from_spanning(const RMat& columns, double tol_zero = 1e-10);

  int         dim() const { return static_cast<int>(m_basis.cols()); }
  int         ambient() const { return static_cast<int>(m_basis.rows()); }
  const RMat& basis() const { return m_basis; }

  /// Orthogonal projection of v onto the subspace.
  RVec project(const RVec& v) const { return m_basis * (m_basis.transpose() * v); }

  /// Norm of the component of v orthogonal to the subspace.
  double defect(const RVec& v) const { return (v - project(v)).norm(); }

 private:
  RMat m_basis;
};

/// Symmetric gap between two subspaces of the same ambient space:
/// the operator norm of the difference of their orthogonal projectors.
/// Zero iff the spaces are equal.
double subspace_distance(const Subspace& a, const Subspace& b);

/// Largest defect of a unit basis vector of `inner` against `outer`.
/// Zero iff inner is contained in outer.
double containment_residual(const Subspace& inner, const Subspace& outer);

/// Dimension of the sum a + b, by rank of the concatenated bases.
int subspace_sum_dim(const Subspace& a, const Subspace& b, double tol_zero = 1e-10);

/// Euclidean distance from `q` to the convex hull of `points`, by Wolfe's
/// minimum-norm-point algorithm.  Exact (to roundoff) at the scales used
/// here; `max_iter` bounds the number of major cycles.
double hull_distance(const std::vector<RVec>& points, const RVec& q,
                     double tol = 1e-12, int max_iter = 10000);

}  // namespace lieortho

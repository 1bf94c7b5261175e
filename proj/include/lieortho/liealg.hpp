#pragma once

#include <string>
#include <vector>

#include "lieortho/numkernel.hpp"
#include "lieortho/types.hpp"

namespace lieortho {

/// The three families of compact classical algebras handled by the library:
/// su(n) traceless skew-Hermitian, so(n) real skew-symmetric, sp(n)
/// skew-Hermitian 2n x 2n matrices compatible with a symplectic form.
enum class Family { su, so, sp };

Family      family_from_string(const std::string& s);
std::string family_to_string(Family f);

/// Family plus parameter.  Validates the parameter range on construction:
/// su needs n >= 2, so needs n >= 3, sp needs n >= 1.
struct AlgebraDescriptor {
  Family family;
  int    n;

  AlgebraDescriptor(Family f, int n_);

  bool operator==(const AlgebraDescriptor&) const = default;

  int         matrix_size() const;  ///< side length of the realized matrices
  int         dim() const;          ///< real dimension
  int         rank() const;         ///< dimension of a maximal torus
  std::string name() const;         ///< e.g. "su(4)"
};

/// The symplectic form used for sp(n): J = [[0, D], [-D, 0]] with
/// D = diag(i, i*e, ..., i*e^(n-1)), e = exp(i*pi/n).  J is unitary,
/// antisymmetric and satisfies J * conj(J) = -I.  This form is compatible
/// with the cyclic-shift eigenbasis, which the circulant constructions need;
/// for n = 1 it is i times the usual [[0,1],[-1,0]].
Mat symplectic_form(int n);

/// A compact classical algebra realized as concrete matrices, with an
/// orthonormal basis under the negative Killing form.
///
/// Construction builds family generators, orthonormalizes them under the real
/// Frobenius pairing, then verifies against the adjoint representation that
/// the Killing Gram matrix is a scalar multiple c * I and rescales so the
/// basis is orthonormal for <x, y> = -Killing(x, y).  The scalar c is exposed
/// as trace_constant() and backs the fast trace formula used by inner().
class Algebra {
 public:
  explicit Algebra(AlgebraDescriptor desc, Tolerances tol = {});

  const AlgebraDescriptor& descriptor() const { return m_desc; }
  const Tolerances&        tol() const { return m_tol; }
  int                      dim() const { return m_desc.dim(); }
  int                      rank() const { return m_desc.rank(); }
  int                      matrix_size() const { return m_desc.matrix_size(); }

  /// Orthonormal basis matrices (unit norm under the negative Killing form).
  const std::vector<Mat>& basis() const { return m_basis; }

  /// The scalar c with -Killing(x, y) = -c * Re tr(xy) on this realization.
  double trace_constant() const { return m_c; }

  /// Structural distance of x from the algebra: skew-Hermitian defect plus
  /// the family constraint defect (trace for su, realness for so, symplectic
  /// compatibility for sp).  Zero for members.
  double membership_residual(const Mat& x) const;

  /// Throws StructureError if membership_residual(x) exceeds the residual
  /// tolerance relative to max(1, ||x||).
  void require_member(const Mat& x, const char* who) const;

  /// Distance of g from the compact group of this family: unitarity defect
  /// plus the family constraint (determinant for su, realness for so,
  /// symplectic compatibility for sp).
  double group_membership_residual(const Mat& g) const;

  /// Matrix commutator [x, y] = xy - yx.  Closed on the algebra.
  static Mat bracket(const Mat& x, const Mat& y);

  /// Inner product -c * Re tr(xy); equals minus the Killing form.
  double inner(const Mat& x, const Mat& y) const;
  double norm(const Mat& x) const { return std::sqrt(std::max(0.0, inner(x, x))); }

  /// Coordinates of x in the orthonormal basis, and the inverse map.
  RVec coords(const Mat& x) const;
  Mat  from_coords(const RVec& c) const;

  /// The operator ad(x) = [x, .] as a real dim x dim matrix in basis
  /// coordinates.  Skew-symmetric, because the inner product is ad-invariant.
  RMat ad_matrix(const Mat& x) const;

  /// Centralizer {y : [x, y] = 0} as a subspace in basis coordinates.
  Subspace centralizer(const Mat& x) const;

  /// Image of ad(x) as a subspace in basis coordinates.  Always the
  /// orthogonal complement of the centralizer.
  Subspace ad_image(const Mat& x) const;

  /// True when the centralizer dimension equals the rank (its minimum).
  bool is_regular(const Mat& x) const;

  /// Gaussian element in the orthonormal basis (distribution independent of
  /// the basis choice).  Consumes dim() gaussians from rng.
  Mat random_element(Rng& rng) const;

  /// Redraws until is_regular holds; throws ConvergenceError after the
  /// iteration budget (regularity fails only on a measure-zero set).
  Mat random_regular(Rng& rng) const;

  /// Haar-distributed element of the compact group of this realization.
  Mat random_group_element(Rng& rng) const;

 private:
  std::vector<Mat> raw_generators() const;
  void             orthonormalize_and_calibrate();

  AlgebraDescriptor m_desc;
  Tolerances        m_tol;
  std::vector<Mat>  m_basis;
  Mat               m_vec_basis;  ///< matrix_size^2 x dim, column j = vec(basis[j])
  Mat               m_J;          ///< symplectic form, sp only
  double            m_c = 0.0;
};

}  // namespace lieortho

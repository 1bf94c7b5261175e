#pragma once

#include <vector>

#include "lieortho/liealg.hpp"

namespace lieortho {

/// How a Cartan subalgebra was obtained.  Constructions preserve this so
/// certificates can name their provenance.
enum class CartanOrigin { standard, circulant, so_recursive, custom };

std::string cartan_origin_to_string(CartanOrigin o);

/// A Cartan subalgebra, held as an orthonormal subspace of basis coordinates.
/// Invariants (abelian, dimension = rank, self-centralizing) are checked by
/// verify_cartan rather than enforced on construction of the struct itself.
struct CartanSub {
  AlgebraDescriptor parent;
  CartanOrigin      origin;
  Subspace          space;

  int dim() const { return space.dim(); }

  /// Basis realized as matrices of the parent algebra.
  std::vector<Mat> matrix_basis(const Algebra& alg) const;
};

/// Verification report for the three Cartan invariants, with the measured
/// residuals that produced the verdicts.
struct CartanReport {
  bool   correct_dim       = false;
  bool   member            = false;
  bool   abelian           = false;
  bool   self_centralizing = false;
  double membership_residual  = 0.0;
  double bracket_residual     = 0.0;
  double centralizer_distance = 0.0;

  bool pass() const { return correct_dim && member && abelian && self_centralizing; }
};

/// The standard Cartan of each family: traceless imaginary diagonals for su;
/// the paired-plane block form [[0, L], [-L, 0]] (plus a trailing zero row
/// and column when the size is odd) for so; imaginary diagonals
/// diag(d, -d) for sp.
CartanSub standard_cartan(const Algebra& alg);

/// The circulant matrix with first row a (entry (j, k) is a[(k - j) mod n]).
Mat circulant_matrix(const CVec& a);

/// Simultaneous diagonalization of circulants: vectors is the DFT-type
/// unitary with columns (1/sqrt(n)) (1, e^l, ..., e^((n-1)l)), e = exp(2 pi
/// i / n), and values(l) = sum_j e^(lj) a_j.  The reconstruction residual is
/// checked against tol.
struct CirculantEig {
  Mat  vectors;
  CVec values;
};
CirculantEig circulant_diagonalize(const CVec& a, double tol = 1e-8);

/// Cartan subalgebra of su(n) made of circulant matrices: the solutions of
/// a_0 = 0, a_{n-l} = -conj(a_l).  Dimension n - 1, orthogonal to the
/// standard Cartan.
CartanSub circulant_cartan_su(const Algebra& alg);

/// Cartan subalgebra of sp(n) made of circulant 2n x 2n matrices, computed
/// as the kernel of the joint linear system {skew-Hermitian} + {symplectic
/// compatibility} over circulant coefficient vectors.  Dimension n,
/// orthogonal to the standard Cartan.
CartanSub circulant_cartan_sp(const Algebra& alg);

/// Cartan subalgebra of so(n) orthogonal to the standard one, built
/// recursively: explicit bases for n = 3, 4, 6; even n >= 8 by the
/// pad-and-extend step that adds the y, z pair; odd n >= 5 by embedding the
/// even case in the upper-left block.
CartanSub orthocartan_so(const Algebra& alg);

/// Measures the three Cartan invariants of C inside its parent algebra.
CartanReport verify_cartan(const Algebra& alg, const CartanSub& c);

/// Largest |inner(c_i, c'_j)| over basis pairs.  Zero for orthogonal
/// Cartans; 1 when the same space is passed twice.
double verify_orthogonal(const Algebra& alg, const CartanSub& a, const CartanSub& b);

/// Image of C under Ad(g), re-orthonormalized.
CartanSub conjugate_cartan(const Algebra& alg, const CartanSub& c, const Mat& g);

/// A group element g with Ad(g) C equal to the standard Cartan as a
/// subspace.  Deterministic: the generic element it diagonalizes is drawn
/// from a fixed coefficient pattern, with internally seeded retries.
/// Throws NumericalError if no attempt meets the tolerance.
Mat conjugate_to_standard(const Algebra& alg, const CartanSub& c);

/// A Cartan subalgebra orthogonal to C: the family's orthogonal partner of
/// the standard Cartan, pulled back through conjugate_to_standard(C).
CartanSub orthogonal_cartan(const Algebra& alg, const CartanSub& c);

}  // namespace lieortho

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lieortho/cartan.hpp"
#include "lieortho/liealg.hpp"
#include "lieortho/types.hpp"

namespace lieortho {

/// A Coxeter element of SU(m) lifted along exp: the signed cyclic
/// permutation n_mat, a unitary frame g_mat diagonalizing it, the diagonal
/// form d_mat, and a diagonal logarithm lambda chosen inside su(m), so that
/// n_log = g_mat lambda g_mat^* satisfies exp(n_log) = n_mat.
struct CoxeterLift {
  AlgebraDescriptor parent;

  Mat n_mat;   ///< signed cyclic permutation; normalizes the diagonal torus
  Mat g_mat;   ///< unitary, n_mat = g_mat d_mat g_mat^*
  Mat d_mat;   ///< diagonal form of n_mat
  Mat lambda;  ///< diagonal, exp(lambda) = d_mat entrywise, traceless
  Mat n_log;   ///< g_mat lambda g_mat^*; member of su(m) with exp = n_mat
};

/// Builds the lift for su(m), m >= 2.  Diagonal logarithm entries are
/// matched to the entries of d_mat they exponentiate to, so exp(lambda) =
/// d_mat holds by construction; all other invariants are verified against
/// `tol` before returning.  Throws std::invalid_argument for m < 2 and
/// StructureError if any residual survives.
CoxeterLift coxeter_lift_su(int m, double tol = 1e-9);

/// Residuals and verdict of one structural check.  The layout of
/// `residuals` (and whether `witnesses` is filled) is fixed by the
/// operation that produced the report.
struct ResidueReport {
  std::string         operation;
  std::vector<double> residuals;
  bool                verdict = false;
  std::vector<Mat>    witnesses;
};

/// Tests that conjugation by n_mat acts on the Cartan subalgebra c without
/// nonzero fixed vectors.  residuals = { |det(Ad(n_mat)|_c - id)|,
/// min |eig(Ad(n_mat)|_c) - 1| }; verdict is det-gap > tol.  Throws
/// StructureError if c is not invariant under the conjugation.
ResidueReport coxeter_fixed_point_check(const Algebra& alg, const CoxeterLift& lift,
                                        const CartanSub& c, double tol = 1e-8);

/// Tests c subset of [x, alg] by solving ad(x) y = h for every basis
/// element h of c.  residuals = per-element least-squares residuals,
/// witnesses = the minimum-norm solutions y, verdict = all residuals below
/// tol.
ResidueReport cartan_in_bracket_image(const Algebra& alg, const CartanSub& c,
                                      const Mat& x, double tol = 1e-8);

/// Returns a regular element a commuting with x, so that centralizer(a)
/// lies inside centralizer(x) and ad_image(x) lies inside ad_image(a).
/// Samples gaussian elements of centralizer(x) until one passes; the result
/// is deterministic for a fixed seed.  Throws ConvergenceError when the
/// attempt budget runs out.
Mat strengthen_to_regular(const Algebra& alg, const Mat& x, std::uint64_t seed = 0);

/// Minimum-norm b with [a, b] = x, by least squares on ad(a).  Throws
/// InfeasibleError when the best residual exceeds the algebra's residual
/// tolerance relative to max(1, ||x||); that signals a component of x
/// orthogonal to the bracket image, e.g. in the centralizer of a.
Mat solve_bracket(const Algebra& alg, const Mat& a, const Mat& x);

}  // namespace lieortho

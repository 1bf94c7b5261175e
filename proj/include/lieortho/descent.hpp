#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lieortho/cartan.hpp"
#include "lieortho/liealg.hpp"
#include "lieortho/types.hpp"

namespace lieortho {

/// One root plane of the decomposition relative to a Cartan subalgebra C.
/// The pair (u, v) is orthonormal, h = [u, v] lies in C, and for every
/// h' in C: [h', u] = alpha(h') v and [h', v] = -alpha(h') u, where
/// alpha(h') = inner(h, h').
struct RootEntry {
  RVec alpha;  ///< functional on C, written in the Cartan's orthonormal coordinates
  Mat  h;      ///< coroot direction [u, v]; realizes alpha under the inner product
  Mat  u;
  Mat  v;
};

/// Orthogonal decomposition L = C + sum of root planes, relative to the
/// regular element h_star whose adjoint eigenplanes cut the root spaces.
/// Roots are positive in the chamber of h_star: alpha(h_star) > 0.
struct RootBasis {
  AlgebraDescriptor      parent;
  CartanSub              cartan;
  Mat                    h_star;
  std::vector<RootEntry> roots;
};

/// Builds the root decomposition for a verified Cartan subalgebra.  The
/// element h_star starts from fixed deterministic coefficients and is
/// redrawn (seeded) when its centralizer exceeds C or when two root planes
/// collide in angle; after the retry budget the failure is a
/// ConvergenceError.  All root relations are verified before returning.
RootBasis root_space_decomposition(const Algebra& alg, const CartanSub& c);

/// Result of one rotation step: x_next = g x g^{-1} has no component along
/// the coroot line of the chosen root, while the alpha-kernel part of C and
/// the norms of all other root components are untouched.
struct ReduceResult {
  Mat    g;
  Mat    x_next;
  double angle   = 0.0;  ///< radians; zero when x already misses the coroot line
  double h_coord = 0.0;  ///< the coroot coordinate of x that the step removed
};

/// Conjugates by exp(angle * v) for the root plane `root_index`, with the
/// closed-form angle that zeroes the coroot coordinate of x.  Throws
/// StructureError when the stored root plane fails its bracket relation.
ReduceResult su2_reduce_step(const Algebra& alg, const Mat& x, const RootBasis& rb,
                             int root_index);

struct DescentStep {
  int         root_index;
  double      angle;
  std::string axis;  ///< generator of the rotation, for the record
  double      h_coord;
  double      c_before;  ///< norm of the C-component entering the step
  double      c_after;   ///< norm leaving it; strictly smaller
};

struct DescentTrace {
  std::vector<DescentStep> steps;
  int                      iterations = 0;
};

struct DescentResult {
  Mat          g;        ///< accumulated group element
  Mat          x_final;  ///< g x g^{-1}, orthogonal to C
  DescentTrace trace;
};

/// Thrown when the iteration budget runs out; carries everything achieved
/// so far so the caller can report the partial descent.
struct DescentNonConvergence : ConvergenceError {
  DescentNonConvergence(const std::string& what, DescentResult partial_result)
      : ConvergenceError(what), partial(std::move(partial_result)) {}

  DescentResult partial;
};

/// Drives the C-component of x to zero by repeated rotation steps, each
/// time picking the root with the largest coroot coordinate.  The norm of
/// the C-component decreases strictly per step (the decrement is the
/// squared coordinate that was zeroed).  Throws ConvergenceError when the
/// iteration budget is exhausted.
DescentResult descend_to_complement(const Algebra& alg, const Mat& x,
                                    const CartanSub& c);

enum class GotoStrategy { descent, coxeter };

std::string goto_strategy_to_string(GotoStrategy s);

/// Certificate for x = [a, b] with a regular.
struct GotoWitness {
  Mat          a;
  Mat          b;
  double       residual  = 0.0;  ///< ||[a, b] - x||
  bool         a_regular = false;
  GotoStrategy strategy  = GotoStrategy::descent;
};

/// Factorizes x = [a, b] with regular a.  The descent strategy conjugates
/// x into the orthogonal complement of the standard Cartan and solves
/// against a generic regular Cartan element; the coxeter strategy (su
/// families only) diagonalizes x and solves against the regularized
/// logarithm of the Coxeter lift.  Either way the witness is pulled back
/// through the conjugation used.
GotoWitness goto_factorize(const Algebra& alg, const Mat& x, GotoStrategy strategy,
                           std::uint64_t seed = 0);

/// For regular a: a regular b orthogonal to a, with orthogonal
/// centralizers, such that the images of ad(a) and ad(b) together span the
/// whole algebra.  b is a generic element of the Cartan partner orthogonal
/// to the centralizer of a.
Mat one_and_half_span(const Algebra& alg, const Mat& a, std::uint64_t seed = 0);

/// Convexity check for the diagonal projection of a conjugation orbit in
/// su(n), n <= 5: for `samples` pseudorandom unitaries the projection of
/// u x u^{-1} onto the diagonal Cartan must lie in the convex hull of the
/// coordinate permutations of x, and that hull must contain the origin.
struct KostantReport {
  int    samples       = 0;
  double max_distance  = 0.0;  ///< worst hull distance over all samples
  double zero_distance = 0.0;  ///< hull distance of the origin
  bool   verdict       = false;
};

KostantReport kostant_projection_check(const Algebra& alg, const Mat& x, int samples,
                                       std::uint64_t seed, double tol = 1e-7);

}  // namespace lieortho

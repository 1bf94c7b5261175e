#include "lieortho/coxeter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "lieortho/numkernel.hpp"

namespace lieortho {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Signed single-cycle permutation with determinant +1: subdiagonal ones,
// and the corner entry flips sign exactly when the cycle is odd.
Mat cycle_matrix(int m) {
  Mat n = Mat::Zero(m, m);
  for (int a = 0; a + 1 < m; ++a) n(a + 1, a) = 1.0;
  n(0, m - 1) = (m % 2 == 1) ? 1.0 : -1.0;
  return n;
}

}  // namespace

CoxeterLift coxeter_lift_su(int m, double tol) {
  if (m < 2) throw std::invalid_argument("coxeter_lift_su: need m >= 2");

  const Mat    n    = cycle_matrix(m);
  const double root = std::sqrt(static_cast<double>(m));
  Mat          g(m, m);
  Mat          d = Mat::Zero(m, m);
  std::vector<Cplx> logs(m);

  if (m % 2 == 1) {
    const int    k = (m - 1) / 2;
    const double c = 2.0 * kPi / m;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) g(a, b) = std::exp(Cplx(0.0, c * a * b)) / root;
    for (int a = 0; a < m; ++a) d(a, a) = std::exp(Cplx(0.0, -c * a));
    for (int a = 0; a < m; ++a)
      logs[a] = (a <= k) ? Cplx(0.0, -c * a) : Cplx(0.0, c * (m - a));
  } else {
    const int    k = m / 2;
    const double s = kPi / m;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        g(a, b) = std::exp(Cplx(0.0, s * a * (2 * b + 1))) / root;
    for (int a = 0; a < m; ++a) d(a, a) = std::exp(Cplx(0.0, -(2 * a + 1) * s));
    for (int a = 0; a < m; ++a)
      logs[a] = (a < k) ? Cplx(0.0, -(2 * a + 1) * s)
                        : Cplx(0.0, (2 * (m - a) - 1) * s);
  }

  // Place each logarithm at the diagonal position whose d-entry it
  // exponentiates to.  The natural order already matches; the placement by
  // value keeps exp(lambda) = d_mat authoritative either way.
  Mat lambda = Mat::Zero(m, m);
  std::vector<bool> used(m, false);
  for (int a = 0; a < m; ++a) {
    bool placed = false;
    for (int j = 0; j < m && !placed; ++j) {
      if (used[j] || std::abs(std::exp(logs[j]) - d(a, a)) >= tol) continue;
      lambda(a, a) = logs[j];
      used[j]      = true;
      placed       = true;
    }
    if (!placed)
      throw StructureError("coxeter_lift_su: no logarithm entry matches d_mat");
  }

  CoxeterLift lift{AlgebraDescriptor(Family::su, m), n, g, d, lambda,
                   g * lambda * g.adjoint()};

  const double defects[] = {
      (g.adjoint() * g - Mat::Identity(m, m)).norm(),
      (g * d * g.adjoint() - n).norm(),
      (mat_exp(lift.n_log) - n).norm(),
      (lift.n_log + lift.n_log.adjoint()).norm(),
      std::abs(lift.n_log.trace()),
  };
  for (double defect : defects) {
    if (!(defect <= tol))
      throw StructureError("coxeter_lift_su: construction residual above tolerance");
  }
  return lift;
}

ResidueReport coxeter_fixed_point_check(const Algebra& alg, const CoxeterLift& lift,
                                        const CartanSub& c, double tol) {
  if (!(alg.descriptor() == lift.parent) || !(c.parent == alg.descriptor()))
    throw std::invalid_argument("coxeter_fixed_point_check: mismatched parents");

  const int r     = c.dim();
  const Mat n_inv = lift.n_mat.adjoint();
  RMat      restricted(r, r);
  const std::vector<Mat> basis = c.matrix_basis(alg);
  for (int j = 0; j < r; ++j) {
    const Mat  moved  = lift.n_mat * basis[j] * n_inv;
    const RVec coords = alg.coords(moved);
    if (c.space.defect(coords) > tol * std::max(1.0, coords.norm()))
      throw StructureError(
          "coxeter_fixed_point_check: subalgebra moves under the conjugation");
    restricted.col(j) = c.space.basis().transpose() * coords;
  }

  const double det_gap =
      std::abs((restricted - RMat::Identity(r, r)).determinant());
  double min_gap = std::numeric_limits<double>::infinity();
  const Eigen::VectorXcd eig = restricted.eigenvalues();
  for (Eigen::Index i = 0; i < eig.size(); ++i)
    min_gap = std::min(min_gap, std::abs(eig(i) - Cplx(1.0, 0.0)));

  ResidueReport report;
  report.operation = "coxeter_fixed_point_check";
  report.residuals = {det_gap, min_gap};
  report.verdict   = det_gap > tol;
  return report;
}

ResidueReport cartan_in_bracket_image(const Algebra& alg, const CartanSub& c,
                                      const Mat& x, double tol) {
  if (!(c.parent == alg.descriptor()))
    throw std::invalid_argument("cartan_in_bracket_image: mismatched parents");
  alg.require_member(x, "cartan_in_bracket_image");

  const RMat ad = alg.ad_matrix(x);

  ResidueReport report;
  report.operation = "cartan_in_bracket_image";
  report.verdict   = true;
  report.residuals.reserve(c.dim());
  report.witnesses.reserve(c.dim());
  for (int j = 0; j < c.dim(); ++j) {
    const RVec        target = c.space.basis().col(j);
    const LstsqResult sol    = lstsq_min_norm(ad, target);
    report.residuals.push_back(sol.residual);
    report.witnesses.push_back(alg.from_coords(sol.solution));
    if (!(sol.residual < tol * std::max(1.0, target.norm()))) report.verdict = false;
  }
  return report;
}

Mat strengthen_to_regular(const Algebra& alg, const Mat& x, std::uint64_t seed) {
  alg.require_member(x, "strengthen_to_regular");
  const Subspace zx      = alg.centralizer(x);
  const Subspace image_x = alg.ad_image(x);
  const double   tol     = alg.tol().residual;

  // A gaussian draw from the centralizer is regular in the whole algebra
  // outside a measure-zero set, so a handful of attempts suffices.
  Rng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    RVec w(zx.dim());
    for (int i = 0; i < zx.dim(); ++i) w(i) = rng.gaussian();
    const Mat a = alg.from_coords(zx.basis() * w);
    if (!alg.is_regular(a)) continue;
    if (containment_residual(alg.centralizer(a), zx) > tol) continue;
    if (containment_residual(image_x, alg.ad_image(a)) > tol) continue;
    return a;
  }
  throw ConvergenceError(
      "strengthen_to_regular: no regular element found in the centralizer");
}

Mat solve_bracket(const Algebra& alg, const Mat& a, const Mat& x) {
  alg.require_member(a, "solve_bracket");
  alg.require_member(x, "solve_bracket");

  const RVec        target = alg.coords(x);
  const LstsqResult sol    = lstsq_min_norm(alg.ad_matrix(a), target);
  if (!(sol.residual < alg.tol().residual * std::max(1.0, target.norm())))
    throw InfeasibleError("solve_bracket: x lies outside the bracket image of a");
  return alg.from_coords(sol.solution);
}

}  // namespace lieortho

#include "lieortho/descent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lieortho/coxeter.hpp"
#include "lieortho/numkernel.hpp"

namespace lieortho {

namespace {

constexpr double kPrimes[] = {2.0,  3.0,  5.0,  7.0,  11.0, 13.0,
                              17.0, 19.0, 23.0, 29.0, 31.0, 37.0};

// Square roots of distinct primes share no rational relation, so a
// combination of commuting generators with these weights avoids the
// root-value collisions that plague small integer coefficients.
RVec pilot_weights(int r) {
  RVec w(r);
  for (int i = 0; i < r; ++i) w(i) = std::sqrt(kPrimes[i]);
  return w;
}

constexpr int kPilotLimit = static_cast<int>(sizeof(kPrimes) / sizeof(kPrimes[0]));

// Regular element of a coordinate subspace: deterministic weights first,
// seeded gaussian redraws if those land on a degenerate direction.
Mat generic_regular_in(const Algebra& alg, const Subspace& s, std::uint64_t seed) {
  if (s.dim() <= kPilotLimit) {
    const Mat cand = alg.from_coords(s.basis() * pilot_weights(s.dim()));
    if (alg.is_regular(cand)) return cand;
  }
  Rng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    RVec w(s.dim());
    for (int i = 0; i < s.dim(); ++i) w(i) = rng.gaussian();
    const Mat cand = alg.from_coords(s.basis() * w);
    if (alg.is_regular(cand)) return cand;
  }
  throw ConvergenceError("regular element search exhausted the attempt budget");
}

}  // namespace

RootBasis root_space_decomposition(const Algebra& alg, const CartanSub& c) {
  if (!(c.parent == alg.descriptor()))
    throw std::invalid_argument("root_space_decomposition: mismatched parents");
  if (c.dim() != alg.rank())
    throw std::invalid_argument("root_space_decomposition: subspace is not a Cartan");

  const int    r      = c.dim();
  const int    dim    = alg.dim();
  const int    planes = (dim - r) / 2;
  const double tol    = alg.tol().residual;
  if (dim - r != 2 * planes)
    throw StructureError("root_space_decomposition: odd complement dimension");

  const std::vector<Mat> cbasis = c.matrix_basis(alg);

  for (int attempt = 0; attempt < 8; ++attempt) {
    RVec w(r);
    if (attempt == 0 && r <= kPilotLimit) {
      w = pilot_weights(r);
    } else {
      Rng rng(0xA1FA + static_cast<std::uint64_t>(attempt));
      for (int i = 0; i < r; ++i) w(i) = rng.gaussian();
    }
    const Mat h_star = alg.from_coords(c.space.basis() * w);

    // the centralizer of the probe has to collapse onto C itself
    const Subspace zker = alg.centralizer(h_star);
    if (zker.dim() != r || subspace_distance(zker, c.space) > 1e-8) continue;

    const SkewRealBlocks blocks = blocks_skew_symmetric(alg.ad_matrix(h_star));
    if (blocks.zero_dim != r) continue;

    // equal rotation speeds would merge two root planes into one
    // eigenspace and the per-plane relations below would not close
    bool separated = true;
    for (int j = 0; j + 1 < planes; ++j) {
      if (std::abs(blocks.angles[j] - blocks.angles[j + 1]) <
          1e-6 * std::max(1.0, blocks.angles[0]))
        separated = false;
    }
    if (!separated) continue;

    RootBasis rb{alg.descriptor(), c, h_star, {}};
    rb.roots.reserve(planes);
    bool ok = true;
    for (int j = 0; j < planes && ok; ++j) {
      RootEntry e;
      e.u = alg.from_coords(blocks.q.col(2 * j));
      e.v = alg.from_coords(-blocks.q.col(2 * j + 1));
      e.h = Algebra::bracket(e.u, e.v);
      if (c.space.defect(alg.coords(e.h)) > tol * std::max(1.0, alg.norm(e.h))) {
        ok = false;
        break;
      }
      e.alpha = RVec(r);
      for (int i = 0; i < r && ok; ++i) {
        const Mat bu = Algebra::bracket(cbasis[i], e.u);
        const Mat bv = Algebra::bracket(cbasis[i], e.v);
        e.alpha(i)   = alg.inner(bu, e.v);
        if (alg.norm(bu - e.alpha(i) * e.v) > tol) ok = false;
        if (alg.norm(bv + e.alpha(i) * e.u) > tol) ok = false;
        if (std::abs(e.alpha(i) - alg.inner(e.h, cbasis[i])) > tol) ok = false;
      }
      if (ok && !(alg.inner(e.h, h_star) > 0.0)) ok = false;
      if (ok) rb.roots.push_back(std::move(e));
    }
    if (ok) return rb;
  }
  throw ConvergenceError(
      "root_space_decomposition: no separating regular element found");
}

ReduceResult su2_reduce_step(const Algebra& alg, const Mat& x, const RootBasis& rb,
                             int root_index) {
  if (!(rb.parent == alg.descriptor()))
    throw std::invalid_argument("su2_reduce_step: mismatched parents");
  if (root_index < 0 || root_index >= static_cast<int>(rb.roots.size()))
    throw std::invalid_argument("su2_reduce_step: root index out of range");
  const RootEntry& e = rb.roots[root_index];

  const double kappa = alg.norm(e.h);
  const Mat    h_hat = e.h / kappa;

  // ad(v) must rotate the (h, u)-plane with speed kappa for the closed
  // form below to hold
  if (alg.norm(Algebra::bracket(e.v, h_hat) - kappa * e.u) >
      1e-8 * std::max(1.0, kappa))
    throw StructureError("su2_reduce_step: root plane fails its bracket relation");

  const int    n     = alg.matrix_size();
  const double scale = std::max(1.0, alg.norm(x));

  ReduceResult out;
  out.h_coord = alg.inner(x, h_hat);
  if (std::abs(out.h_coord) <= alg.tol().zero * scale) {
    out.g      = Mat::Identity(n, n);
    out.x_next = x;
    return out;
  }

  const double gamma = alg.inner(x, e.u);
  out.angle          = std::atan2(out.h_coord, gamma) / kappa;
  out.g              = mat_exp_skew(out.angle * e.v);
  out.x_next         = out.g * x * out.g.adjoint();

  if (std::abs(alg.inner(out.x_next, h_hat)) > alg.tol().residual * scale)
    throw NumericalError("su2_reduce_step: coroot coordinate survived the rotation");
  return out;
}

DescentResult descend_to_complement(const Algebra& alg, const Mat& x,
                                    const CartanSub& c) {
  alg.require_member(x, "descend_to_complement");
  const RootBasis rb    = root_space_decomposition(alg, c);
  const int       n     = alg.matrix_size();
  const double    stop  = alg.tol().residual * std::max(1.0, alg.norm(x));

  std::vector<RVec> coroot_dirs;
  coroot_dirs.reserve(rb.roots.size());
  for (const RootEntry& e : rb.roots) {
    const RVec hc = alg.coords(e.h);
    coroot_dirs.push_back(hc / hc.norm());
  }

  DescentResult out;
  out.g       = Mat::Identity(n, n);
  out.x_final = x;

  for (int iter = 0; iter < alg.tol().max_iter; ++iter) {
    const RVec   coords = alg.coords(out.x_final);
    const double before = c.space.project(coords).norm();
    if (before < stop) {
      out.trace.iterations = iter;
      return out;
    }
    if (coroot_dirs.empty())
      throw StructureError(
          "descend_to_complement: no root planes to rotate through");

    int    best       = 0;
    double best_coord = -1.0;
    for (std::size_t a = 0; a < coroot_dirs.size(); ++a) {
      const double coord = std::abs(coroot_dirs[a].dot(coords));
      if (coord > best_coord) {
        best_coord = coord;
        best       = static_cast<int>(a);
      }
    }

    const ReduceResult step  = su2_reduce_step(alg, out.x_final, rb, best);
    const double       after = c.space.project(alg.coords(step.x_next)).norm();
    if (!(after < before))
      throw ConvergenceError(
          "descend_to_complement: step failed to shrink the C-component");

    out.x_final = step.x_next;
    out.g       = step.g * out.g;
    out.trace.steps.push_back({best, step.angle, "v[" + std::to_string(best) + "]",
                               step.h_coord, before, after});
  }
  out.trace.iterations = alg.tol().max_iter;
  throw DescentNonConvergence("descend_to_complement: iteration budget exhausted",
                              std::move(out));
}

std::string goto_strategy_to_string(GotoStrategy s) {
  return s == GotoStrategy::descent ? "descent" : "coxeter";
}

GotoWitness goto_factorize(const Algebra& alg, const Mat& x, GotoStrategy strategy,
                           std::uint64_t seed) {
  alg.require_member(x, "goto_factorize");

  GotoWitness out;
  out.strategy = strategy;
  if (strategy == GotoStrategy::descent) {
    const CartanSub     c  = standard_cartan(alg);
    const Mat           a0 = generic_regular_in(alg, c.space, seed);
    const DescentResult dr = descend_to_complement(alg, x, c);
    const Mat           b0 = solve_bracket(alg, a0, dr.x_final);
    out.a = dr.g.adjoint() * a0 * dr.g;
    out.b = dr.g.adjoint() * b0 * dr.g;
  } else {
    if (alg.descriptor().family != Family::su)
      throw std::invalid_argument("goto_factorize: coxeter strategy needs su(m)");
    const int         m    = alg.matrix_size();
    const CoxeterLift lift = coxeter_lift_su(m);
    const Mat         a0   = strengthen_to_regular(alg, lift.n_log, seed);

    // move x onto the diagonal, which the bracket image of a0 covers
    const SkewEig eig   = eig_skew_hermitian(x);
    Mat           frame = eig.vectors;
    frame.col(0) *= std::conj(frame.determinant());
    const Mat h  = frame.adjoint();
    const Mat b0 = solve_bracket(alg, a0, h * x * h.adjoint());
    out.a = h.adjoint() * a0 * h;
    out.b = h.adjoint() * b0 * h;
  }

  out.residual  = alg.norm(Algebra::bracket(out.a, out.b) - x);
  out.a_regular = alg.is_regular(out.a);
  if (!out.a_regular ||
      !(out.residual < 10.0 * alg.tol().residual * std::max(1.0, alg.norm(x))))
    throw NumericalError("goto_factorize: witness failed verification");
  return out;
}

Mat one_and_half_span(const Algebra& alg, const Mat& a, std::uint64_t seed) {
  alg.require_member(a, "one_and_half_span");
  if (!alg.is_regular(a))
    throw std::invalid_argument("one_and_half_span: a must be regular");

  const CartanSub za{alg.descriptor(), CartanOrigin::custom, alg.centralizer(a)};
  const CartanSub partner = orthogonal_cartan(alg, za);
  const Mat       b       = generic_regular_in(alg, partner.space, seed);

  const double tol = alg.tol().residual;
  if (std::abs(alg.inner(a, b)) > tol * std::max(1.0, alg.norm(a) * alg.norm(b)))
    throw NumericalError("one_and_half_span: partner element is not orthogonal");
  if (subspace_sum_dim(alg.ad_image(a), alg.ad_image(b)) != alg.dim())
    throw NumericalError("one_and_half_span: bracket images fail to span");
  return b;
}

KostantReport kostant_projection_check(const Algebra& alg, const Mat& x, int samples,
                                       std::uint64_t seed, double tol) {
  if (alg.descriptor().family != Family::su || alg.descriptor().n > 5)
    throw std::invalid_argument("kostant_projection_check: needs su(n) with n <= 5");
  if (samples < 1)
    throw std::invalid_argument("kostant_projection_check: needs samples >= 1");
  alg.require_member(x, "kostant_projection_check");

  const int n = alg.matrix_size();
  if ((x - Mat(x.diagonal().asDiagonal())).norm() >
      alg.tol().zero * std::max(1.0, x.norm()))
    throw std::invalid_argument("kostant_projection_check: x must be diagonal");

  const CartanSub c = standard_cartan(alg);

  // orbit of the diagonal under coordinate permutations; iterating the
  // sorted sequence enumerates each distinct arrangement exactly once
  std::vector<double> diag(n);
  for (int j = 0; j < n; ++j) diag[j] = x(j, j).imag();
  std::sort(diag.begin(), diag.end());
  std::vector<RVec> orbit;
  do {
    Mat m = Mat::Zero(n, n);
    for (int j = 0; j < n; ++j) m(j, j) = Cplx(0.0, diag[j]);
    orbit.push_back(c.space.basis().transpose() * alg.coords(m));
  } while (std::next_permutation(diag.begin(), diag.end()));

  KostantReport report;
  report.samples = samples;
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    Mat gauss(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) gauss(i, j) = Cplx(rng.gaussian(), rng.gaussian());
    Eigen::HouseholderQR<Mat> qr(gauss);
    Mat                       u = qr.householderQ();
    const Mat                 rm = qr.matrixQR();
    for (int j = 0; j < n; ++j) {
      const double mag = std::abs(rm(j, j));
      if (mag > 0.0) u.col(j) *= rm(j, j) / mag;
    }
    u *= std::pow(u.determinant(), Cplx(-1.0 / n, 0.0));

    const Mat  y = u * x * u.adjoint();
    const RVec p = c.space.basis().transpose() * alg.coords(y);
    report.max_distance = std::max(report.max_distance, hull_distance(orbit, p));
  }
  report.zero_distance = hull_distance(orbit, RVec::Zero(c.dim()));
  report.verdict = report.max_distance < tol && report.zero_distance < tol;
  return report;
}

}  // namespace lieortho

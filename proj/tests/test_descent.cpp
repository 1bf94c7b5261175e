#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "lieortho/descent.hpp"
#include "lieortho/numkernel.hpp"

using namespace lieortho;

namespace {

constexpr double kPi = 3.14159265358979323846;

Algebra make(Family f, int n) { return Algebra(AlgebraDescriptor(f, n)); }

double relations_residual(const Algebra& alg, const RootBasis& rb) {
  const std::vector<Mat> cbasis = rb.cartan.matrix_basis(alg);
  double worst = 0.0;
  for (const RootEntry& e : rb.roots) {
    worst = std::max(worst, alg.norm(Algebra::bracket(e.u, e.v) - e.h));
    worst = std::max(worst, rb.cartan.space.defect(alg.coords(e.h)));
    for (std::size_t i = 0; i < cbasis.size(); ++i) {
      const Mat bu = Algebra::bracket(cbasis[i], e.u);
      const Mat bv = Algebra::bracket(cbasis[i], e.v);
      worst = std::max(worst, alg.norm(bu - e.alpha(i) * e.v));
      worst = std::max(worst, alg.norm(bv + e.alpha(i) * e.u));
      worst = std::max(worst, std::abs(e.alpha(i) - alg.inner(e.h, cbasis[i])));
    }
  }
  return worst;
}

// max off-diagonal entry of the Gram matrix of { C basis } U { u_a, v_a }
double decomposition_gram_defect(const Algebra& alg, const RootBasis& rb) {
  std::vector<RVec> cols;
  for (int i = 0; i < rb.cartan.dim(); ++i)
    cols.push_back(rb.cartan.space.basis().col(i));
  for (const RootEntry& e : rb.roots) {
    cols.push_back(alg.coords(e.u));
    cols.push_back(alg.coords(e.v));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const double target = (i == j) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(cols[i].dot(cols[j]) - target));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("su(2) has a single root plane spanned by the two real rotations") {
  const Algebra   alg = make(Family::su, 2);
  const CartanSub c   = standard_cartan(alg);
  const RootBasis rb  = root_space_decomposition(alg, c);
  REQUIRE(rb.roots.size() == 1);

  Mat r1 = Mat::Zero(2, 2), r2 = Mat::Zero(2, 2);
  r1(0, 1) = 1.0;
  r1(1, 0) = -1.0;
  r2(0, 1) = Cplx(0.0, 1.0);
  r2(1, 0) = Cplx(0.0, 1.0);
  RMat span(alg.dim(), 2);
  span.col(0) = alg.coords(r1);
  span.col(1) = alg.coords(r2);
  const Subspace plane = Subspace::from_spanning(span);

  const RootEntry& e = rb.roots[0];
  CHECK(plane.defect(alg.coords(e.u)) < 1e-9);
  CHECK(plane.defect(alg.coords(e.v)) < 1e-9);
  CHECK(relations_residual(alg, rb) < 1e-10);
}

TEST_CASE("root counts and the orthogonal decomposition across families") {
  struct Row {
    Family f;
    int    n;
    int    positive_roots;
  };
  for (const Row& row : {Row{Family::su, 3, 3}, Row{Family::su, 4, 6},
                         Row{Family::so, 5, 4}, Row{Family::sp, 2, 4}}) {
    const Algebra   alg = make(row.f, row.n);
    const RootBasis rb  = root_space_decomposition(alg, standard_cartan(alg));
    CHECK(static_cast<int>(rb.roots.size()) == row.positive_roots);
    CHECK(static_cast<int>(rb.roots.size()) == (alg.dim() - alg.rank()) / 2);
    CHECK(relations_residual(alg, rb) < 1e-8);
    CHECK(decomposition_gram_defect(alg, rb) < 1e-8);
    for (const RootEntry& e : rb.roots) {
      // positivity convention: every root sees the probe from one side
      CHECK(alg.inner(e.h, rb.h_star) > 0.0);
      // the coroot realizes its own functional with a positive value
      CHECK(alg.inner(e.h, e.h) > 0.0);
    }
  }
}

TEST_CASE("reduce step flattens a pure Cartan element of su(2)") {
  const Algebra   alg = make(Family::su, 2);
  const RootBasis rb  = root_space_decomposition(alg, standard_cartan(alg));

  Mat x = Mat::Zero(2, 2);
  x(0, 0) = Cplx(0.0, 1.0);
  x(1, 1) = Cplx(0.0, -1.0);

  const ReduceResult step = su2_reduce_step(alg, x, rb, 0);
  CHECK(std::abs(step.x_next(0, 0)) < 1e-9);
  CHECK(std::abs(step.x_next(1, 1)) < 1e-9);
  CHECK(alg.norm(step.x_next) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-10));

  // x has no component along u, so the rotation is a quarter turn
  const double kappa = alg.norm(rb.roots[0].h);
  CHECK(std::abs(step.angle) * kappa == doctest::Approx(kPi / 2.0).epsilon(1e-12));
  CHECK((step.g * x * step.g.adjoint() - step.x_next).norm() < 1e-12);
}

TEST_CASE("reduce step is the identity when the coroot coordinate vanishes") {
  const Algebra   alg = make(Family::su, 3);
  const RootBasis rb  = root_space_decomposition(alg, standard_cartan(alg));

  const Mat          x    = rb.roots[1].u;  // lives in one root plane, misses C
  const ReduceResult step = su2_reduce_step(alg, x, rb, 0);
  CHECK(step.angle == 0.0);
  CHECK((step.x_next - x).norm() == 0.0);
  CHECK((step.g - Mat::Identity(3, 3)).norm() == 0.0);
}

TEST_CASE("reduce step preserves the kernel part and the far component") {
  const Algebra   alg = make(Family::su, 3);
  const CartanSub c   = standard_cartan(alg);
  const RootBasis rb  = root_space_decomposition(alg, c);

  Rng       rng(42);
  const Mat x = alg.random_element(rng);

  const RootEntry& e     = rb.roots[0];
  const double     kappa = alg.norm(e.h);
  const Mat        h_hat = e.h / kappa;

  // unit direction of C orthogonal to the coroot line
  const RVec hc = alg.coords(h_hat);
  const RVec w  = c.space.basis().transpose() * hc;
  RVec       perp(2);
  perp(0) = -w(1);
  perp(1) = w(0);
  perp.normalize();
  const Mat k = alg.from_coords(c.space.basis() * perp);

  RMat uv(alg.dim(), 2);
  uv.col(0) = alg.coords(e.u);
  uv.col(1) = alg.coords(e.v);
  const Subspace plane(uv);

  const ReduceResult step = su2_reduce_step(alg, x, rb, 0);

  CHECK(std::abs(alg.inner(step.x_next, h_hat)) < 1e-9);
  CHECK(std::abs(alg.inner(step.x_next, k) - alg.inner(x, k)) < 1e-9);

  const auto far_norm = [&](const Mat& y) {
    const RVec cy = alg.coords(y);
    return (cy - c.space.project(cy) - plane.project(cy)).norm();
  };
  CHECK(std::abs(far_norm(step.x_next) - far_norm(x)) < 1e-9);
}

TEST_CASE("rotations in one root plane respect the three-way splitting") {
  const Algebra   alg = make(Family::su, 3);
  const CartanSub c   = standard_cartan(alg);
  const RootBasis rb  = root_space_decomposition(alg, c);

  const RootEntry& e     = rb.roots[2];
  const Mat        h_hat = e.h / alg.norm(e.h);
  const Mat        g     = mat_exp_skew(0.37 * e.v);

  // kernel of the root inside C, as a subspace
  RMat cb = c.space.basis();
  const RVec  hc   = alg.coords(h_hat);
  RMat        kerc = cb - hc * (hc.transpose() * cb);
  const Subspace ker = Subspace::from_spanning(kerc);
  CHECK(ker.dim() == c.dim() - 1);

  RMat sa(alg.dim(), 3);
  sa.col(0) = hc;
  sa.col(1) = alg.coords(e.u);
  sa.col(2) = alg.coords(e.v);
  const Subspace s_plane(sa);

  // the rest of the algebra, orthogonal to both
  RMat rest = RMat::Identity(alg.dim(), alg.dim());
  for (int i = 0; i < alg.dim(); ++i) {
    RVec col = rest.col(i);
    col -= ker.project(col);
    col -= s_plane.project(col);
    rest.col(i) = col;
  }
  const Subspace far = Subspace::from_spanning(rest);
  CHECK(far.dim() == alg.dim() - ker.dim() - 3);

  for (int i = 0; i < ker.dim(); ++i) {
    const Mat k = alg.from_coords(ker.basis().col(i));
    CHECK(alg.norm(g * k * g.adjoint() - k) < 1e-9);  // fixed pointwise
  }
  for (int i = 0; i < 3; ++i) {
    const Mat s = alg.from_coords(sa.col(i));
    CHECK(s_plane.defect(alg.coords(g * s * g.adjoint())) < 1e-9);
  }
  for (int i = 0; i < far.dim(); ++i) {
    const Mat m = alg.from_coords(far.basis().col(i));
    CHECK(far.defect(alg.coords(g * m * g.adjoint())) < 1e-9);
  }
}

TEST_CASE("descent on a pure su(2) Cartan element takes a single step") {
  const Algebra   alg = make(Family::su, 2);
  const CartanSub c   = standard_cartan(alg);

  Mat x = Mat::Zero(2, 2);
  x(0, 0) = Cplx(0.0, 1.0);
  x(1, 1) = Cplx(0.0, -1.0);

  const DescentResult res = descend_to_complement(alg, x, c);
  CHECK(res.trace.steps.size() == 1);
  CHECK(c.space.project(alg.coords(res.x_final)).norm() < 1e-9);
  CHECK((res.g * x * res.g.adjoint() - res.x_final).norm() < 1e-10);
  CHECK(alg.group_membership_residual(res.g) < 1e-10);
}

TEST_CASE("descent is a no-op on an element already orthogonal to C") {
  const Algebra   alg = make(Family::su, 3);
  const CartanSub c   = standard_cartan(alg);
  const RootBasis rb  = root_space_decomposition(alg, c);

  const DescentResult res = descend_to_complement(alg, rb.roots[0].u, c);
  CHECK(res.trace.steps.empty());
  CHECK(res.trace.iterations == 0);
  CHECK((res.g - Mat::Identity(3, 3)).norm() == 0.0);
}

TEST_CASE("random descents converge with an honest strictly decreasing trace") {
  struct Row {
    Family f;
    int    n;
  };
  for (const Row& row : {Row{Family::su, 4}, Row{Family::so, 5}, Row{Family::sp, 2}}) {
    const Algebra   alg = make(row.f, row.n);
    const CartanSub c   = standard_cartan(alg);
    Rng             rng(100 + row.n);
    const Mat       x     = alg.random_element(rng);
    const double    scale = std::max(1.0, alg.norm(x));

    const DescentResult res = descend_to_complement(alg, x, c);
    CHECK(c.space.project(alg.coords(res.x_final)).norm() < 1e-8 * scale);
    CHECK((res.g * x * res.g.adjoint() - res.x_final).norm() < 1e-8 * scale);
    CHECK(alg.group_membership_residual(res.g) < 1e-9);

    for (const DescentStep& s : res.trace.steps) {
      CHECK(s.c_after < s.c_before);
      // the squared norm drops by exactly the squared zeroed coordinate
      const double drop = s.c_before * s.c_before - s.c_after * s.c_after;
      CHECK(std::abs(drop - s.h_coord * s.h_coord) <
            1e-9 * std::max(1.0, s.c_before * s.c_before));
    }
  }
}

TEST_CASE("goto factorization certifies x = [a, b] for both strategies") {
  const Algebra alg = make(Family::su, 3);
  Rng           rng(2024);
  const Mat     x     = alg.random_element(rng);
  const double  scale = std::max(1.0, alg.norm(x));

  for (GotoStrategy s : {GotoStrategy::descent, GotoStrategy::coxeter}) {
    const GotoWitness w = goto_factorize(alg, x, s, 1);
    CHECK(w.a_regular);
    CHECK(alg.is_regular(w.a));
    CHECK(w.residual < 1e-7 * scale);
    CHECK(alg.norm(Algebra::bracket(w.a, w.b) - x) < 1e-7 * scale);
    CHECK(alg.membership_residual(w.a) < 1e-9);
    CHECK(alg.membership_residual(w.b) < 1e-9);

    // the factored element is orthogonal to the centralizer of a
    const Subspace za = alg.centralizer(w.a);
    const RVec     xc = alg.coords(x);
    CHECK((za.project(xc)).norm() < 1e-7 * scale);
  }
}

TEST_CASE("goto factorization covers the other families through descent") {
  for (auto [f, n] : std::vector<std::pair<Family, int>>{{Family::so, 6}, {Family::sp, 2}}) {
    const Algebra alg = make(f, n);
    Rng           rng(7 + n);
    const Mat     x     = alg.random_element(rng);
    const double  scale = std::max(1.0, alg.norm(x));
    const GotoWitness w = goto_factorize(alg, x, GotoStrategy::descent, 1);
    CHECK(w.a_regular);
    CHECK(w.residual < 1e-7 * scale);
  }
}

TEST_CASE("goto factorization edge cases and determinism") {
  const Algebra alg = make(Family::su, 3);

  const GotoWitness z = goto_factorize(alg, Mat::Zero(3, 3), GotoStrategy::descent, 1);
  CHECK(alg.norm(z.b) < 1e-10);
  CHECK(z.a_regular);

  Rng       rng(5);
  const Mat x  = alg.random_element(rng);
  const GotoWitness w1 = goto_factorize(alg, x, GotoStrategy::descent, 9);
  const GotoWitness w2 = goto_factorize(alg, x, GotoStrategy::descent, 9);
  CHECK((w1.a - w2.a).norm() == 0.0);
  CHECK((w1.b - w2.b).norm() == 0.0);

  CHECK_THROWS_AS(goto_factorize(make(Family::so, 5), Mat::Zero(5, 5),
                                 GotoStrategy::coxeter, 1),
                  std::invalid_argument);
}

TEST_CASE("one_and_half_span produces an orthogonal regular partner") {
  for (auto [f, n] : std::vector<std::pair<Family, int>>{{Family::su, 3}, {Family::so, 5}}) {
    const Algebra alg = make(f, n);
    Rng           rng(31 + n);
    const Mat     a = alg.random_regular(rng);
    const Mat     b = one_and_half_span(alg, a, 2);

    CHECK(alg.is_regular(b));
    CHECK(std::abs(alg.inner(a, b)) < 1e-8 * alg.norm(a) * alg.norm(b));
    CHECK(subspace_sum_dim(alg.ad_image(a), alg.ad_image(b)) == alg.dim());

    // centralizers are orthogonal Cartan subalgebras
    const CartanSub za{alg.descriptor(), CartanOrigin::custom, alg.centralizer(a)};
    const CartanSub zb{alg.descriptor(), CartanOrigin::custom, alg.centralizer(b)};
    CHECK(verify_orthogonal(alg, za, zb) < 1e-8);
  }
}

TEST_CASE("one_and_half_span rejects a degenerate element") {
  const Algebra alg = make(Family::su, 3);
  Mat           x   = Mat::Zero(3, 3);
  x(0, 0) = Cplx(0.0, 1.0);
  x(1, 1) = Cplx(0.0, 1.0);
  x(2, 2) = Cplx(0.0, -2.0);
  CHECK_THROWS_AS(one_and_half_span(alg, x, 0), std::invalid_argument);
}

TEST_CASE("diagonal projections of conjugation orbits stay in the permutation hull") {
  const Algebra su2 = make(Family::su, 2);
  Mat           x2  = Mat::Zero(2, 2);
  x2(0, 0) = Cplx(0.0, 0.7);
  x2(1, 1) = Cplx(0.0, -0.7);
  const KostantReport r2 = kostant_projection_check(su2, x2, 60, 1);
  CHECK(r2.verdict);
  CHECK(r2.max_distance < 1e-7);
  CHECK(r2.zero_distance < 1e-9);

  const Algebra su3 = make(Family::su, 3);
  Mat           x3  = Mat::Zero(3, 3);
  x3(0, 0) = Cplx(0.0, 0.9);
  x3(1, 1) = Cplx(0.0, -0.2);
  x3(2, 2) = Cplx(0.0, -0.7);
  const KostantReport r3 = kostant_projection_check(su3, x3, 200, 2);
  CHECK(r3.verdict);
  CHECK(r3.max_distance < 1e-7);
  CHECK(r3.samples == 200);
}

TEST_CASE("the convexity check validates its inputs") {
  const Algebra su3 = make(Family::su, 3);
  CHECK(kostant_projection_check(su3, Mat::Zero(3, 3), 5, 0).verdict);

  Mat off = Mat::Zero(3, 3);
  off(0, 1) = 1.0;
  off(1, 0) = -1.0;
  CHECK_THROWS_AS(kostant_projection_check(su3, off, 5, 0), std::invalid_argument);
  CHECK_THROWS_AS(kostant_projection_check(make(Family::su, 6), Mat::Zero(6, 6), 5, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(kostant_projection_check(make(Family::so, 4), Mat::Zero(4, 4), 5, 0),
                  std::invalid_argument);
}

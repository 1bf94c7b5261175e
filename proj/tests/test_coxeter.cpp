#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lieortho/coxeter.hpp"
#include "lieortho/numkernel.hpp"

using namespace lieortho;

namespace {

constexpr double kPi = 3.14159265358979323846;

Algebra make_su(int m) { return Algebra(AlgebraDescriptor(Family::su, m)); }

double lift_residual(const CoxeterLift& l) {
  const int    m = static_cast<int>(l.n_mat.rows());
  const double defects[] = {
      (l.g_mat * l.d_mat * l.g_mat.adjoint() - l.n_mat).norm(),
      (mat_exp(l.lambda) - l.d_mat).norm(),
      (l.g_mat * l.lambda * l.g_mat.adjoint() - l.n_log).norm(),
      (mat_exp(l.n_log) - l.n_mat).norm(),
      (l.n_log + l.n_log.adjoint()).norm(),
      std::abs(l.n_log.trace()),
      (l.g_mat.adjoint() * l.g_mat - Mat::Identity(m, m)).norm(),
  };
  double worst = 0.0;
  for (double d : defects) worst = std::max(worst, d);
  return worst;
}

}  // namespace

TEST_CASE("odd lift at m = 3 reproduces the closed form") {
  const CoxeterLift l = coxeter_lift_su(3);

  Mat n3 = Mat::Zero(3, 3);
  n3(1, 0) = 1.0;
  n3(2, 1) = 1.0;
  n3(0, 2) = 1.0;
  CHECK((l.n_mat - n3).norm() < 1e-14);

  const double c = 2.0 * kPi / 3.0;
  CHECK(std::abs(l.lambda(0, 0)) < 1e-14);
  CHECK(std::abs(l.lambda(1, 1) - Cplx(0.0, -c)) < 1e-14);
  CHECK(std::abs(l.lambda(2, 2) - Cplx(0.0, c)) < 1e-14);
  CHECK(lift_residual(l) < 1e-9);
}

TEST_CASE("even lift at m = 2 reproduces the closed form") {
  const CoxeterLift l = coxeter_lift_su(2);

  Mat n2 = Mat::Zero(2, 2);
  n2(0, 1) = -1.0;
  n2(1, 0) = 1.0;
  CHECK((l.n_mat - n2).norm() < 1e-14);

  CHECK(std::abs(l.lambda(0, 0) - Cplx(0.0, -kPi / 2.0)) < 1e-14);
  CHECK(std::abs(l.lambda(1, 1) - Cplx(0.0, kPi / 2.0)) < 1e-14);
  CHECK(std::abs(l.d_mat(0, 0) - Cplx(0.0, -1.0)) < 1e-14);
  CHECK(std::abs(l.d_mat(1, 1) - Cplx(0.0, 1.0)) < 1e-14);
  CHECK(lift_residual(l) < 1e-9);
}

TEST_CASE("all lift invariants hold through m = 8 and n_log is a member") {
  for (int m = 2; m <= 8; ++m) {
    const CoxeterLift l = coxeter_lift_su(m);
    CHECK(lift_residual(l) < 1e-9);

    const Algebra alg = make_su(m);
    CHECK(alg.membership_residual(l.n_log) < 1e-12);
    CHECK(alg.group_membership_residual(l.n_mat) < 1e-12);

    // the determinant constraint is what forces the signed corner entry
    CHECK(std::abs(l.n_mat.determinant() - Cplx(1.0, 0.0)) < 1e-12);
  }
  CHECK_THROWS_AS(coxeter_lift_su(1), std::invalid_argument);
  CHECK_THROWS_AS(coxeter_lift_su(0), std::invalid_argument);
}

TEST_CASE("conjugation by the lift fixes no direction of the diagonal Cartan") {
  for (int m = 2; m <= 8; ++m) {
    const Algebra       alg = make_su(m);
    const CoxeterLift   l   = coxeter_lift_su(m);
    const ResidueReport rep =
        coxeter_fixed_point_check(alg, l, standard_cartan(alg));
    CHECK(rep.verdict);
    CHECK(rep.residuals.size() == 2);
    // the eigenvalues are the nontrivial m-th roots of unity, so the
    // identity-gap determinant collapses to m itself
    CHECK(rep.residuals[0] == doctest::Approx(m).epsilon(1e-6));
    CHECK(rep.residuals[1] > 0.1);
  }
}

TEST_CASE("a circulant Cartan is pointwise fixed and fails the check honestly") {
  const Algebra       alg = make_su(3);
  const CoxeterLift   l   = coxeter_lift_su(3);
  const ResidueReport rep =
      coxeter_fixed_point_check(alg, l, circulant_cartan_su(alg));
  // circulant matrices commute with the plain cycle, so the restriction is
  // the identity
  CHECK_FALSE(rep.verdict);
  CHECK(rep.residuals[0] < 1e-10);
  CHECK(rep.residuals[1] < 1e-10);
}

TEST_CASE("a generically conjugated Cartan is not invariant and is rejected") {
  const Algebra     alg = make_su(3);
  const CoxeterLift l   = coxeter_lift_su(3);
  Rng               rng(7);
  const CartanSub moved =
      conjugate_cartan(alg, standard_cartan(alg), alg.random_group_element(rng));
  CHECK_THROWS_AS(coxeter_fixed_point_check(alg, l, moved), StructureError);
}

TEST_CASE("the diagonal Cartan lies in the bracket image of the lift logarithm") {
  for (int m : {2, 3, 5, 8}) {
    const Algebra       alg = make_su(m);
    const CartanSub     c   = standard_cartan(alg);
    const CoxeterLift   l   = coxeter_lift_su(m);
    const ResidueReport rep = cartan_in_bracket_image(alg, c, l.n_log);
    CHECK(rep.verdict);
    REQUIRE(static_cast<int>(rep.witnesses.size()) == c.dim());

    const std::vector<Mat> basis = c.matrix_basis(alg);
    for (std::size_t j = 0; j < rep.witnesses.size(); ++j) {
      CHECK(rep.residuals[j] < 1e-8);
      const Mat reconstructed = Algebra::bracket(l.n_log, rep.witnesses[j]);
      CHECK(alg.norm(reconstructed - basis[j]) < 1e-7);
    }
  }
}

TEST_CASE("a Cartan element cannot cover its own Cartan in the bracket image") {
  const Algebra   alg = make_su(3);
  const CartanSub c   = standard_cartan(alg);
  const Mat       h   = c.matrix_basis(alg)[0];

  const ResidueReport rep = cartan_in_bracket_image(alg, c, h);
  CHECK_FALSE(rep.verdict);
  // the Cartan is orthogonal to ad(h)'s image, so each unit target keeps
  // its full norm as residual
  for (double r : rep.residuals) CHECK(r == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("strengthen_to_regular upgrades the lift logarithm") {
  const Algebra     alg = make_su(5);
  const CoxeterLift l   = coxeter_lift_su(5);
  const Mat         a   = strengthen_to_regular(alg, l.n_log, 11);

  CHECK(alg.is_regular(a));
  CHECK(alg.norm(Algebra::bracket(a, l.n_log)) < 1e-10);
  CHECK(containment_residual(alg.centralizer(a), alg.centralizer(l.n_log)) < 1e-8);
  CHECK(containment_residual(alg.ad_image(l.n_log), alg.ad_image(a)) < 1e-8);

  // chained containment: the diagonal Cartan sits inside ad_image(a)
  const CartanSub c = standard_cartan(alg);
  CHECK(containment_residual(c.space, alg.ad_image(a)) < 1e-8);
}

TEST_CASE("strengthen_to_regular handles degenerate and zero inputs") {
  const Algebra alg = make_su(3);

  Mat degenerate = Mat::Zero(3, 3);
  degenerate(0, 0) = Cplx(0.0, 1.0);
  degenerate(1, 1) = Cplx(0.0, 1.0);
  degenerate(2, 2) = Cplx(0.0, -2.0);
  CHECK_FALSE(alg.is_regular(degenerate));

  const Mat a = strengthen_to_regular(alg, degenerate, 3);
  CHECK(alg.is_regular(a));
  CHECK(containment_residual(alg.centralizer(a), alg.centralizer(degenerate)) < 1e-8);
  CHECK(containment_residual(alg.ad_image(degenerate), alg.ad_image(a)) < 1e-8);

  const Mat from_zero = strengthen_to_regular(alg, Mat::Zero(3, 3), 5);
  CHECK(alg.is_regular(from_zero));

  // fixed seed, fixed result
  const Mat again = strengthen_to_regular(alg, degenerate, 3);
  CHECK((again - a).norm() == 0.0);
}

TEST_CASE("solve_bracket returns the minimum-norm preimage in su(2)") {
  const Algebra alg = make_su(2);

  Mat a = Mat::Zero(2, 2);
  a(0, 0) = Cplx(0.0, 1.0);
  a(1, 1) = Cplx(0.0, -1.0);
  Mat x = Mat::Zero(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = -1.0;

  const Mat b = solve_bracket(alg, a, x);
  CHECK(alg.norm(Algebra::bracket(a, b) - x) < 1e-10);

  Mat expected = Mat::Zero(2, 2);
  expected(0, 1) = Cplx(0.0, -0.5);
  expected(1, 0) = Cplx(0.0, -0.5);
  CHECK((b - expected).norm() < 1e-9);

  // minimality: no component along the centralizer of a
  CHECK(std::abs(alg.inner(b, a)) < 1e-9);
}

TEST_CASE("solve_bracket edge cases: zero target and infeasible target") {
  const Algebra alg = make_su(2);

  Mat a = Mat::Zero(2, 2);
  a(0, 0) = Cplx(0.0, 1.0);
  a(1, 1) = Cplx(0.0, -1.0);

  const Mat b0 = solve_bracket(alg, a, Mat::Zero(2, 2));
  CHECK(b0.norm() < 1e-12);

  // a commutes with itself, so a is orthogonal to [a, su(2)]
  CHECK_THROWS_AS(solve_bracket(alg, a, a), InfeasibleError);
}

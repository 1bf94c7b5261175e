#include "lieortho/cartan.hpp"

#include <algorithm>
#include <cmath>

namespace lieortho {

namespace {

constexpr double kPrimes[] = {2.0, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0, 23.0, 29.0};

CartanSub make_cartan(const Algebra& alg, CartanOrigin origin, const std::vector<Mat>& mats,
                      const char* who) {
  RMat cols(alg.dim(), static_cast<int>(mats.size()));
  for (size_t j = 0; j < mats.size(); ++j) {
    alg.require_member(mats[j], who);
    cols.col(int(j)) = alg.coords(mats[j]);
  }
  Subspace space = Subspace::from_spanning(cols, alg.tol().zero);
  if (space.dim() != alg.rank()) {
    throw StructureError(std::string(who) + ": spanned dimension " +
                         std::to_string(space.dim()) + " does not equal the rank " +
                         std::to_string(alg.rank()));
  }
  return CartanSub{alg.descriptor(), origin, std::move(space)};
}

void require_parent(const Algebra& alg, const CartanSub& c, const char* who) {
  if (!(c.parent == alg.descriptor())) {
    throw std::invalid_argument(std::string(who) + ": Cartan belongs to " + c.parent.name() +
                                ", not " + alg.descriptor().name());
  }
}

void require_family(const Algebra& alg, Family f, const char* who) {
  if (alg.descriptor().family != f) {
    throw std::invalid_argument(std::string(who) + ": not defined for " +
                                alg.descriptor().name());
  }
}

/// Generic element of the space spanned by C.  Attempt 0 uses square roots
/// of primes as coefficients (rationally independent, so eigenvalue
/// collisions do not occur for the constructions in this library); later
/// attempts use an internally seeded gaussian draw.
Mat generic_element(const Algebra& alg, const CartanSub& c, int attempt) {
  const int r = c.dim();
  RVec      coef(r);
  if (attempt == 0) {
    for (int j = 0; j < r; ++j) coef(j) = std::sqrt(kPrimes[j % 10] * (1.0 + j / 10));
  } else {
    Rng rng(0x5EED0ull + static_cast<std::uint64_t>(attempt));
    for (int j = 0; j < r; ++j) coef(j) = rng.gaussian();
  }
  coef.normalize();
  return alg.from_coords(c.space.basis() * coef);
}

}  // namespace

std::string cartan_origin_to_string(CartanOrigin o) {
  switch (o) {
    case CartanOrigin::standard: return "standard";
    case CartanOrigin::circulant: return "circulant";
    case CartanOrigin::so_recursive: return "so-recursive";
    case CartanOrigin::custom: return "custom";
  }
  throw std::logic_error("cartan_origin_to_string: bad enum value");
}

std::vector<Mat> CartanSub::matrix_basis(const Algebra& alg) const {
  require_parent(alg, *this, "matrix_basis");
  std::vector<Mat> mats;
  mats.reserve(dim());
  for (int j = 0; j < dim(); ++j) mats.push_back(alg.from_coords(space.basis().col(j)));
  return mats;
}

CartanSub standard_cartan(const Algebra& alg) {
  const int        n = alg.descriptor().n;
  std::vector<Mat> mats;
  switch (alg.descriptor().family) {
    case Family::su: {
      for (int j = 0; j + 1 < n; ++j) {
        Mat m           = Mat::Zero(n, n);
        m(j, j)         = Cplx(0, 1);
        m(j + 1, j + 1) = Cplx(0, -1);
        mats.push_back(m);
      }
      break;
    }
    case Family::so: {
      const int k = n / 2;
      for (int j = 0; j < k; ++j) {
        Mat m         = Mat::Zero(n, n);
        m(j, k + j)   = 1.0;
        m(k + j, j)   = -1.0;
        mats.push_back(m);
      }
      break;
    }
    case Family::sp: {
      for (int j = 0; j < n; ++j) {
        Mat m           = Mat::Zero(2 * n, 2 * n);
        m(j, j)         = Cplx(0, 1);
        m(n + j, n + j) = Cplx(0, -1);
        mats.push_back(m);
      }
      break;
    }
  }
  return make_cartan(alg, CartanOrigin::standard, mats, "standard_cartan");
}

Mat circulant_matrix(const CVec& a) {
  const int n = static_cast<int>(a.size());
  if (n < 1) throw std::invalid_argument("circulant_matrix: empty coefficient vector");
  Mat m(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) m(j, k) = a(((k - j) % n + n) % n);
  }
  return m;
}

CirculantEig circulant_diagonalize(const CVec& a, double tol) {
  const int    n    = static_cast<int>(a.size());
  const double root = 1.0 / std::sqrt(double(n));
  CirculantEig out;
  out.vectors = Mat(n, n);
  out.values  = CVec::Zero(n);
  for (int l = 0; l < n; ++l) {
    for (int j = 0; j < n; ++j) {
      const Cplx eps = std::exp(Cplx(0.0, 2.0 * M_PI * double(j) * double(l) / double(n)));
      out.vectors(j, l) = root * eps;
      out.values(l) += eps * a(j);
    }
  }
  const Mat    m        = circulant_matrix(a);
  const double residual = (m * out.vectors - out.vectors * out.values.asDiagonal()).norm();
  if (residual > tol * std::max(1.0, m.norm())) {
    throw NumericalError("circulant_diagonalize: reconstruction residual " +
                         std::to_string(residual));
  }
  return out;
}

CartanSub circulant_cartan_su(const Algebra& alg) {
  require_family(alg, Family::su, "circulant_cartan_su");
  const int        n = alg.descriptor().n;
  std::vector<Mat> mats;
  // Solutions of a_0 = 0, a_{n-l} = -conj(a_l): a real pair and an imaginary
  // pair for each l < n/2, plus a lone imaginary middle coefficient when n
  // is even.
  for (int l = 1; 2 * l < n; ++l) {
    CVec a    = CVec::Zero(n);
    a(l)      = 1.0;
    a(n - l)  = -1.0;
    mats.push_back(circulant_matrix(a));
    a.setZero();
    a(l)     = Cplx(0, 1);
    a(n - l) = Cplx(0, 1);
    mats.push_back(circulant_matrix(a));
  }
  if (n % 2 == 0) {
    CVec a   = CVec::Zero(n);
    a(n / 2) = Cplx(0, 1);
    mats.push_back(circulant_matrix(a));
  }
  return make_cartan(alg, CartanOrigin::circulant, mats, "circulant_cartan_su");
}

CartanSub circulant_cartan_sp(const Algebra& alg) {
  require_family(alg, Family::sp, "circulant_cartan_sp");
  const int n = alg.descriptor().n;
  const int s = 2 * n;
  const Mat j = symplectic_form(n);

  // Real-linear system over circulant coefficient vectors a in C^(2n),
  // realified as (Re a, Im a): rows are the entries of A + A^* and of
  // A^T J + J A.  The kernel is the circulant Cartan; its dimension n is a
  // structural fact this constructor asserts.
  RMat sys(4 * s * s, 2 * s);
  for (int d = 0; d < 2 * s; ++d) {
    CVec a = CVec::Zero(s);
    if (d < s) {
      a(d) = 1.0;
    } else {
      a(d - s) = Cplx(0, 1);
    }
    const Mat cm   = circulant_matrix(a);
    const Mat skew = cm + cm.adjoint();
    const Mat symp = cm.transpose() * j + j * cm;
    for (int e = 0; e < s * s; ++e) {
      const Cplx sv = *(skew.data() + e);
      const Cplx tv = *(symp.data() + e);
      sys(e, d)             = sv.real();
      sys(s * s + e, d)     = sv.imag();
      sys(2 * s * s + e, d) = tv.real();
      sys(3 * s * s + e, d) = tv.imag();
    }
  }
  Eigen::JacobiSVD<RMat> svd(sys, Eigen::ComputeFullV);
  const double           smax = svd.singularValues()(0);
  std::vector<Mat>       mats;
  for (int col = 0; col < svd.singularValues().size(); ++col) {
    if (svd.singularValues()(col) <= alg.tol().zero * std::max(1.0, smax)) {
      const RVec v = svd.matrixV().col(col);
      CVec       a(s);
      for (int q = 0; q < s; ++q) a(q) = Cplx(v(q), v(s + q));
      mats.push_back(circulant_matrix(a));
    }
  }
  if (static_cast<int>(mats.size()) != n) {
    throw StructureError("circulant_cartan_sp: kernel dimension " +
                         std::to_string(mats.size()) + " does not equal n = " +
                         std::to_string(n));
  }
  return make_cartan(alg, CartanOrigin::circulant, mats, "circulant_cartan_sp");
}

namespace {

// Pads a k x k block to (k+2) x (k+2) inside the quartered layout, keeping
// the four blocks in their quadrants.
RMat hat_extend(const RMat& x, int k) {
  RMat out = RMat::Zero(2 * k + 4, 2 * k + 4);
  out.block(0, 0, k, k)             = x.block(0, 0, k, k);
  out.block(0, k + 2, k, k)         = x.block(0, k, k, k);
  out.block(k + 2, 0, k, k)         = x.block(k, 0, k, k);
  out.block(k + 2, k + 2, k, k)     = x.block(k, k, k, k);
  return out;
}

std::vector<RMat> ortho_so_basis(int n) {
  if (n == 3) {
    RMat x = RMat::Zero(3, 3);
    x(0, 2) = 1.0;
    x(2, 0) = -1.0;
    return {x};
  }
  if (n == 4) {
    RMat x1 = RMat::Zero(4, 4), x2 = RMat::Zero(4, 4);
    x1(0, 3) = 1.0;
    x1(1, 2) = 1.0;
    x1(2, 1) = -1.0;
    x1(3, 0) = -1.0;
    x2(0, 3) = -1.0;
    x2(1, 2) = 1.0;
    x2(2, 1) = -1.0;
    x2(3, 0) = 1.0;
    return {x1, x2};
  }
  if (n == 6) {
    RMat x1 = RMat::Zero(6, 6), x2 = RMat::Zero(6, 6), x3 = RMat::Zero(6, 6);
    x1(0, 1) = -1.0;
    x1(1, 0) = 1.0;
    x2(2, 3) = 1.0;  // the lone entry of the B block, placed as [[0, B], [-B^T, 0]]
    x2(3, 2) = -1.0;
    x3(4, 5) = -1.0;
    x3(5, 4) = 1.0;
    return {x1, x2, x3};
  }
  if (n % 2 == 1) {
    // Upper-left embedding of the even case; ranks agree, so the image is
    // still maximal.
    std::vector<RMat> base = ortho_so_basis(n - 1);
    std::vector<RMat> out;
    for (const RMat& x : base) {
      RMat y                          = RMat::Zero(n, n);
      y.topLeftCorner(n - 1, n - 1)   = x;
      out.push_back(y);
    }
    return out;
  }
  // Even n >= 8: pad the basis of so(n-4) and add the y, z pair acting in
  // the four new coordinates.
  const int         k    = (n - 4) / 2;
  std::vector<RMat> base = ortho_so_basis(n - 4);
  std::vector<RMat> out;
  for (const RMat& x : base) out.push_back(hat_extend(x, k));

  RMat s = RMat::Zero(k + 2, k + 2), t = RMat::Zero(k + 2, k + 2);
  s(k, k + 1) = 1.0;
  s(k + 1, k) = 1.0;
  t(k, k + 1) = -1.0;
  t(k + 1, k) = 1.0;
  RMat y = RMat::Zero(n, n), z = RMat::Zero(n, n);
  y.topRightCorner(k + 2, k + 2)   = s;
  y.bottomLeftCorner(k + 2, k + 2) = -s;
  z.topRightCorner(k + 2, k + 2)   = t;
  z.bottomLeftCorner(k + 2, k + 2) = t;
  out.push_back(y);
  out.push_back(z);
  return out;
}

}  // namespace

CartanSub orthocartan_so(const Algebra& alg) {
  require_family(alg, Family::so, "orthocartan_so");
  const int        n    = alg.descriptor().n;
  std::vector<RMat> real = ortho_so_basis(n);
  std::vector<Mat>  mats;
  double            worst_bracket = 0.0;
  for (const RMat& x : real) mats.push_back(x.cast<Cplx>());
  for (size_t i = 0; i < mats.size(); ++i) {
    for (size_t j = i + 1; j < mats.size(); ++j) {
      worst_bracket = std::max(worst_bracket, Algebra::bracket(mats[i], mats[j]).norm());
    }
  }
  if (worst_bracket > 1e-12) {
    throw StructureError("orthocartan_so: generators do not commute");
  }
  CartanSub c = make_cartan(alg, CartanOrigin::so_recursive, mats, "orthocartan_so");
  const CartanSub std_c = standard_cartan(alg);
  const double    ortho = verify_orthogonal(alg, c, std_c);
  if (ortho > alg.tol().residual) {
    throw StructureError("orthocartan_so: not orthogonal to the standard Cartan");
  }
  return c;
}

CartanReport verify_cartan(const Algebra& alg, const CartanSub& c) {
  require_parent(alg, c, "verify_cartan");
  const double tol = alg.tol().residual;

  CartanReport rep;
  rep.correct_dim = (c.dim() == alg.rank());

  const std::vector<Mat> mats = c.matrix_basis(alg);
  for (const Mat& m : mats) {
    rep.membership_residual = std::max(rep.membership_residual, alg.membership_residual(m));
  }
  rep.member = rep.membership_residual < tol;

  for (size_t i = 0; i < mats.size(); ++i) {
    for (size_t j = i + 1; j < mats.size(); ++j) {
      rep.bracket_residual =
          std::max(rep.bracket_residual, alg.norm(Algebra::bracket(mats[i], mats[j])));
    }
  }
  rep.abelian = rep.bracket_residual < tol;

  // Centralizer of the whole space: kernel of the stacked adjoint operators.
  const int r = c.dim();
  RMat      stacked(r * alg.dim(), alg.dim());
  for (int i = 0; i < r; ++i) {
    stacked.middleRows(i * alg.dim(), alg.dim()) = alg.ad_matrix(mats[i]);
  }
  Eigen::JacobiSVD<RMat> svd(stacked, Eigen::ComputeFullV);
  const double           smax = svd.singularValues()(0);
  std::vector<int>       cols;
  for (int j = 0; j < svd.singularValues().size(); ++j) {
    if (svd.singularValues()(j) <= alg.tol().zero * std::max(1.0, smax)) cols.push_back(j);
  }
  RMat kernel(alg.dim(), static_cast<int>(cols.size()));
  for (size_t i = 0; i < cols.size(); ++i) kernel.col(int(i)) = svd.matrixV().col(cols[i]);
  const Subspace centralizer{std::move(kernel)};
  rep.centralizer_distance = subspace_distance(centralizer, c.space);
  rep.self_centralizing    = rep.centralizer_distance < tol;
  return rep;
}

double verify_orthogonal(const Algebra& alg, const CartanSub& a, const CartanSub& b) {
  require_parent(alg, a, "verify_orthogonal");
  require_parent(alg, b, "verify_orthogonal");
  if (a.dim() == 0 || b.dim() == 0) return 0.0;
  return (a.space.basis().transpose() * b.space.basis()).cwiseAbs().maxCoeff();
}

CartanSub conjugate_cartan(const Algebra& alg, const CartanSub& c, const Mat& g) {
  require_parent(alg, c, "conjugate_cartan");
  const double gr = alg.group_membership_residual(g);
  if (gr > alg.tol().residual) {
    throw StructureError("conjugate_cartan: conjugator is not in the group (residual " +
                         std::to_string(gr) + ")");
  }
  std::vector<Mat> mats;
  for (const Mat& m : c.matrix_basis(alg)) mats.push_back(g * m * g.adjoint());
  CartanSub out = make_cartan(alg, CartanOrigin::custom, mats, "conjugate_cartan");
  return out;
}

namespace {

Mat conjugator_su(const Algebra& alg, const Mat& t) {
  const int     n   = alg.matrix_size();
  const SkewEig eig = eig_skew_hermitian(t, alg.tol().residual);
  // Columns reordered to decreasing imaginary part, then one column absorbs
  // the determinant phase so that g lands in SU(n).
  Mat v(n, n);
  for (int j = 0; j < n; ++j) v.col(j) = eig.vectors.col(n - 1 - j);
  v.col(0) *= std::conj(v.determinant());
  return v.adjoint();
}

Mat conjugator_so(const Algebra& alg, const Mat& t) {
  const int            n  = alg.matrix_size();
  const SkewRealBlocks bl = blocks_skew_symmetric(t.real(), alg.tol().residual);
  const int            k  = static_cast<int>(bl.angles.size());
  if (2 * k + bl.zero_dim != n || bl.zero_dim > 1) {
    throw NumericalError("conjugator_so: element is not generic");
  }
  // Columns (p_1..p_k | q_1..q_k | kernel) map the element to the paired
  // block form of the standard Cartan.
  RMat q(n, n);
  for (int j = 0; j < k; ++j) {
    q.col(j)     = bl.q.col(2 * j);
    q.col(k + j) = bl.q.col(2 * j + 1);
  }
  if (bl.zero_dim == 1) q.col(n - 1) = bl.q.col(n - 1);
  if (q.determinant() < 0.0) q.col(n - 1) = -q.col(n - 1);
  return q.transpose().cast<Cplx>();
}

Mat conjugator_sp(const Algebra& alg, const Mat& t) {
  const int     nn = alg.descriptor().n;
  const int     s  = 2 * nn;
  const Mat     j  = symplectic_form(nn);
  const SkewEig eig = eig_skew_hermitian(t, alg.tol().residual);

  // Eigenvalues come in pairs (i*theta, -i*theta); the positive half, in
  // decreasing theta, fills the first n columns.  The partner column for
  // -i*theta is -J(a, n+a) * conj(J w): this choice makes V symplectic for
  // the twisted form, not just unitary.
  std::vector<int> pos;
  for (int c = 0; c < s; ++c) {
    if (eig.values(c).imag() > 1e-12) pos.push_back(c);
  }
  if (static_cast<int>(pos.size()) != nn) {
    throw NumericalError("conjugator_sp: element has a degenerate spectrum");
  }
  std::sort(pos.begin(), pos.end(), [&](int a, int b) {
    return eig.values(a).imag() > eig.values(b).imag();
  });

  Mat v(s, s);
  for (int a = 0; a < nn; ++a) {
    const CVec w = eig.vectors.col(pos[a]);
    v.col(a)      = w;
    v.col(nn + a) = -j(a, nn + a) * (j.conjugate() * w.conjugate());
  }
  const double unit = (v.adjoint() * v - Mat::Identity(s, s)).norm();
  const double symp = (v.transpose() * j * v - j).norm();
  if (unit > 1e-8 || symp > 1e-8) {
    throw NumericalError("conjugator_sp: assembled frame is not symplectic-unitary");
  }
  return v.adjoint();
}

}  // namespace

Mat conjugate_to_standard(const Algebra& alg, const CartanSub& c) {
  require_parent(alg, c, "conjugate_to_standard");
  const double    tol   = alg.tol().residual;
  const CartanSub std_c = standard_cartan(alg);
  const int       s     = alg.matrix_size();

  if (subspace_distance(c.space, std_c.space) < tol) return Mat::Identity(s, s);

  for (int attempt = 0; attempt < 8; ++attempt) {
    const Mat t = generic_element(alg, c, attempt);
    if (!alg.is_regular(t)) continue;
    Mat g;
    try {
      switch (alg.descriptor().family) {
        case Family::su: g = conjugator_su(alg, t); break;
        case Family::so: g = conjugator_so(alg, t); break;
        case Family::sp: g = conjugator_sp(alg, t); break;
      }
    } catch (const NumericalError&) {
      continue;
    }
    if (alg.group_membership_residual(g) > tol) continue;
    const CartanSub moved = conjugate_cartan(alg, c, g);
    if (subspace_distance(moved.space, std_c.space) < tol) return g;
  }
  throw NumericalError("conjugate_to_standard: no attempt met the tolerance for " +
                       alg.descriptor().name());
}

CartanSub orthogonal_cartan(const Algebra& alg, const CartanSub& c) {
  require_parent(alg, c, "orthogonal_cartan");
  CartanSub partner = [&] {
    switch (alg.descriptor().family) {
      case Family::su: return circulant_cartan_su(alg);
      case Family::sp: return circulant_cartan_sp(alg);
      case Family::so: return orthocartan_so(alg);
    }
    throw std::logic_error("orthogonal_cartan: bad family");
  }();

  const Mat g = conjugate_to_standard(alg, c);
  const int s = alg.matrix_size();
  CartanSub out =
      (g - Mat::Identity(s, s)).norm() == 0.0 ? partner : conjugate_cartan(alg, partner, g.adjoint());

  const double ortho = verify_orthogonal(alg, c, out);
  if (ortho > alg.tol().residual || !verify_cartan(alg, out).pass()) {
    throw NumericalError("orthogonal_cartan: result failed verification (orthogonality " +
                         std::to_string(ortho) + ")");
  }
  return out;
}

}  // namespace lieortho

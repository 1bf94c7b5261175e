#include "lieortho/liealg.hpp"

#include <cmath>

namespace lieortho {

namespace {

CVec vec_of(const Mat& x) {
  return Eigen::Map<const CVec>(x.data(), x.size());
}

Mat unvec(const CVec& v, int n) {
  return Eigen::Map<const Mat>(v.data(), n, n);
}

double frob_inner(const Mat& a, const Mat& b) {
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

}  // namespace

Family family_from_string(const std::string& s) {
  if (s == "su") return Family::su;
  if (s == "so") return Family::so;
  if (s == "sp") return Family::sp;
  throw std::invalid_argument("unknown family '" + s + "' (expected su, so or sp)");
}

std::string family_to_string(Family f) {
  switch (f) {
    case Family::su: return "su";
    case Family::so: return "so";
    case Family::sp: return "sp";
  }
  throw std::logic_error("family_to_string: bad enum value");
}

AlgebraDescriptor::AlgebraDescriptor(Family f, int n_) : family(f), n(n_) {
  const int least = (f == Family::su) ? 2 : (f == Family::so) ? 3 : 1;
  if (n < least) {
    throw std::invalid_argument(family_to_string(f) + "(" + std::to_string(n) +
                                "): parameter must be at least " + std::to_string(least));
  }
}

int AlgebraDescriptor::matrix_size() const {
  return family == Family::sp ? 2 * n : n;
}

int AlgebraDescriptor::dim() const {
  switch (family) {
    case Family::su: return n * n - 1;
    case Family::so: return n * (n - 1) / 2;
    case Family::sp: return n * (2 * n + 1);
  }
  return 0;
}

int AlgebraDescriptor::rank() const {
  switch (family) {
    case Family::su: return n - 1;
    case Family::so: return n / 2;
    case Family::sp: return n;
  }
  return 0;
}

std::string AlgebraDescriptor::name() const {
  return family_to_string(family) + "(" + std::to_string(n) + ")";
}

Mat symplectic_form(int n) {
  if (n < 1) throw std::invalid_argument("symplectic_form: n must be positive");
  Mat       j   = Mat::Zero(2 * n, 2 * n);
  const Cplx eps = std::exp(Cplx(0.0, M_PI / n));
  Cplx       d(0.0, 1.0);
  for (int a = 0; a < n; ++a) {
    j(a, n + a) = d;
    j(n + a, a) = -d;
    d *= eps;
  }
  return j;
}

Algebra::Algebra(AlgebraDescriptor desc, Tolerances tol) : m_desc(desc), m_tol(tol) {
  if (m_desc.family == Family::sp) m_J = symplectic_form(m_desc.n);
  orthonormalize_and_calibrate();
}

std::vector<Mat> Algebra::raw_generators() const {
  const int        n = m_desc.n;
  std::vector<Mat> gens;
  gens.reserve(m_desc.dim());

  switch (m_desc.family) {
    case Family::su: {
      for (int j = 0; j + 1 < n; ++j) {
        Mat g       = Mat::Zero(n, n);
        g(j, j)     = Cplx(0.0, 1.0);
        g(j + 1, j + 1) = Cplx(0.0, -1.0);
        gens.push_back(g);
      }
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          Mat g   = Mat::Zero(n, n);
          g(i, j) = 1.0;
          g(j, i) = -1.0;
          gens.push_back(g);
          Mat h   = Mat::Zero(n, n);
          h(i, j) = Cplx(0.0, 1.0);
          h(j, i) = Cplx(0.0, 1.0);
          gens.push_back(h);
        }
      }
      break;
    }
    case Family::so: {
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          Mat g   = Mat::Zero(n, n);
          g(i, j) = 1.0;
          g(j, i) = -1.0;
          gens.push_back(g);
        }
      }
      break;
    }
    case Family::sp: {
      // Quaternion-block generators [[u, -conj(v)], [v, conj(u)]] with u
      // skew-Hermitian and v complex symmetric, conjugated by W = diag(D, I)
      // into the realization compatible with symplectic_form(n).
      const int s = 2 * n;
      Mat       w = Mat::Identity(s, s);
      {
        const Cplx eps = std::exp(Cplx(0.0, M_PI / n));
        Cplx       d(0.0, 1.0);
        for (int a = 0; a < n; ++a) {
          w(a, a) = d;
          d *= eps;
        }
      }
      const Mat winv = w.conjugate();

      auto push_block = [&](const Mat& u, const Mat& v) {
        Mat x                  = Mat::Zero(s, s);
        x.topLeftCorner(n, n)     = u;
        x.topRightCorner(n, n)    = -v.conjugate();
        x.bottomLeftCorner(n, n)  = v;
        x.bottomRightCorner(n, n) = u.conjugate();
        gens.push_back(winv * x * w);
      };

      const Mat zero = Mat::Zero(n, n);
      for (int j = 0; j < n; ++j) {
        Mat u   = Mat::Zero(n, n);
        u(j, j) = Cplx(0.0, 1.0);
        push_block(u, zero);
      }
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          Mat u   = Mat::Zero(n, n);
          u(i, j) = 1.0;
          u(j, i) = -1.0;
          push_block(u, zero);
          u.setZero();
          u(i, j) = Cplx(0.0, 1.0);
          u(j, i) = Cplx(0.0, 1.0);
          push_block(u, zero);
        }
      }
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
          Mat v   = Mat::Zero(n, n);
          v(i, j) = 1.0;
          v(j, i) = 1.0;
          push_block(zero, v);
          v.setZero();
          v(i, j) = Cplx(0.0, 1.0);
          v(j, i) = Cplx(0.0, 1.0);
          push_block(zero, v);
        }
      }
      break;
    }
  }
  return gens;
}

void Algebra::orthonormalize_and_calibrate() {
  const int dim = m_desc.dim();
  const int s   = m_desc.matrix_size();

  // Stage one: orthonormalize the generators under the Frobenius pairing.
  std::vector<Mat> frob;
  frob.reserve(dim);
  for (Mat g : raw_generators()) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const Mat& f : frob) g -= frob_inner(f, g) * f;
    }
    const double r = g.norm();
    if (r > 1e-12) frob.push_back(g / r);
  }
  if (static_cast<int>(frob.size()) != dim) {
    throw StructureError(m_desc.name() + ": generator count " + std::to_string(frob.size()) +
                         " does not match dimension " + std::to_string(dim));
  }

  // Stage two: the adjoint representation is the ground truth for the Killing
  // form.  The Gram matrix -tr(ad e_i ad e_j) must be c * I for a single
  // scalar c, which certifies both orthogonality and the trace shortcut.
  Mat fm(s * s, dim);
  for (int j = 0; j < dim; ++j) fm.col(j) = vec_of(frob[j]);

  RMat vads(dim * dim, dim), vads_t(dim * dim, dim);
  for (int j = 0; j < dim; ++j) {
    RMat ad(dim, dim);
    for (int k = 0; k < dim; ++k) {
      const Mat br = bracket(frob[j], frob[k]);
      ad.col(k)    = (fm.adjoint() * vec_of(br)).real();
    }
    vads.col(j)   = Eigen::Map<const RVec>(ad.data(), dim * dim);
    const RMat adt = ad.transpose();
    vads_t.col(j) = Eigen::Map<const RVec>(adt.data(), dim * dim);
  }
  const RMat gram = -(vads_t.transpose() * vads);

  const double c      = gram.diagonal().mean();
  const double defect = (gram - c * RMat::Identity(dim, dim)).norm();
  if (c <= 0.0 || defect > 1e-8 * std::max(1.0, c) * std::sqrt(double(dim))) {
    throw StructureError(m_desc.name() + ": Killing Gram matrix is not a positive scalar");
  }
  m_c = c;

  const double scale = 1.0 / std::sqrt(c);
  m_basis.reserve(dim);
  for (Mat& f : frob) m_basis.push_back(f * scale);
  m_vec_basis = fm * scale;
}

double Algebra::membership_residual(const Mat& x) const {
  const int s = m_desc.matrix_size();
  if (x.rows() != s || x.cols() != s) {
    throw std::invalid_argument(m_desc.name() + ": matrix has the wrong size");
  }
  double r = (x + x.adjoint()).norm();
  switch (m_desc.family) {
    case Family::su: r += std::abs(x.trace()); break;
    case Family::so: r += x.imag().norm(); break;
    case Family::sp: r += (x.transpose() * m_J + m_J * x).norm(); break;
  }
  return r;
}

void Algebra::require_member(const Mat& x, const char* who) const {
  const double r = membership_residual(x);
  if (r > m_tol.residual * std::max(1.0, x.norm())) {
    throw StructureError(std::string(who) + ": matrix is not in " + m_desc.name() +
                         " (residual " + std::to_string(r) + ")");
  }
}

double Algebra::group_membership_residual(const Mat& g) const {
  const int s = m_desc.matrix_size();
  if (g.rows() != s || g.cols() != s) {
    throw std::invalid_argument(m_desc.name() + ": matrix has the wrong size");
  }
  double r = (g.adjoint() * g - Mat::Identity(s, s)).norm();
  switch (m_desc.family) {
    case Family::su: r += std::abs(g.determinant() - 1.0); break;
    case Family::so: r += g.imag().norm() + std::abs(g.determinant() - 1.0); break;
    case Family::sp: r += (g.transpose() * m_J * g - m_J).norm(); break;
  }
  return r;
}

Mat Algebra::bracket(const Mat& x, const Mat& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw std::invalid_argument("bracket: size mismatch");
  }
  return x * y - y * x;
}

double Algebra::inner(const Mat& x, const Mat& y) const {
  // -c * Re tr(xy); tr(xy) contracted without forming the product.
  const Cplx t = (x.transpose().cwiseProduct(y)).sum();
  return -m_c * t.real();
}

RVec Algebra::coords(const Mat& x) const {
  return m_c * (m_vec_basis.adjoint() * vec_of(x)).real();
}

Mat Algebra::from_coords(const RVec& c) const {
  if (c.size() != m_desc.dim()) {
    throw std::invalid_argument(m_desc.name() + ": coordinate vector has the wrong length");
  }
  const CVec v = m_vec_basis * c.cast<Cplx>();
  return unvec(v, m_desc.matrix_size());
}

RMat Algebra::ad_matrix(const Mat& x) const {
  const int dim = m_desc.dim();
  RMat      ad(dim, dim);
  for (int k = 0; k < dim; ++k) ad.col(k) = coords(bracket(x, m_basis[k]));
  return ad;
}

Subspace Algebra::centralizer(const Mat& x) const {
  const RMat             ad = ad_matrix(x);
  Eigen::JacobiSVD<RMat> svd(ad, Eigen::ComputeFullV);
  const double           smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  std::vector<int>       cols;
  for (int j = 0; j < svd.singularValues().size(); ++j) {
    if (svd.singularValues()(j) <= m_tol.zero * std::max(1.0, smax)) cols.push_back(j);
  }
  RMat basis(dim(), static_cast<int>(cols.size()));
  for (size_t i = 0; i < cols.size(); ++i) basis.col(int(i)) = svd.matrixV().col(cols[i]);
  return Subspace(std::move(basis));
}

Subspace Algebra::ad_image(const Mat& x) const {
  const RMat             ad = ad_matrix(x);
  Eigen::JacobiSVD<RMat> svd(ad, Eigen::ComputeFullU);
  const double           smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  std::vector<int>       cols;
  for (int j = 0; j < svd.singularValues().size(); ++j) {
    if (svd.singularValues()(j) > m_tol.zero * std::max(1.0, smax)) cols.push_back(j);
  }
  RMat basis(dim(), static_cast<int>(cols.size()));
  for (size_t i = 0; i < cols.size(); ++i) basis.col(int(i)) = svd.matrixU().col(cols[i]);
  return Subspace(std::move(basis));
}

bool Algebra::is_regular(const Mat& x) const {
  return centralizer(x).dim() == m_desc.rank();
}

Mat Algebra::random_element(Rng& rng) const {
  RVec c(m_desc.dim());
  for (int j = 0; j < c.size(); ++j) c(j) = rng.gaussian();
  return from_coords(c);
}

Mat Algebra::random_regular(Rng& rng) const {
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Mat x = random_element(rng);
    if (is_regular(x)) return x;
  }
  throw ConvergenceError(m_desc.name() + ": could not draw a regular element");
}

Mat Algebra::random_group_element(Rng& rng) const {
  const int s = m_desc.matrix_size();
  if (m_desc.family == Family::sp) {
    // Exponential image of a random algebra element: exactly in the group,
    // which is all the seeded verification paths need.
    return mat_exp_skew(random_element(rng), m_tol.residual);
  }
  if (m_desc.family == Family::so) {
    RMat z(s, s);
    for (int i = 0; i < s; ++i) {
      for (int j = 0; j < s; ++j) z(i, j) = rng.gaussian();
    }
    Eigen::HouseholderQR<RMat> qr(z);
    RMat                       q = qr.householderQ();
    const RMat                 r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < s; ++j) {
      if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    }
    if (q.determinant() < 0.0) q.col(0) = -q.col(0);
    return q.cast<Cplx>();
  }
  Mat z(s, s);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) z(i, j) = Cplx(rng.gaussian(), rng.gaussian());
  }
  Eigen::HouseholderQR<Mat> qr(z);
  Mat                       q = qr.householderQ();
  const Mat                 r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < s; ++j) {
    const Cplx d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  const Cplx det = q.determinant();
  q.col(0) *= std::conj(det);
  return q;
}

}  // namespace lieortho

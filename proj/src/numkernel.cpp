#include "lieortho/numkernel.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace lieortho {

namespace {

void require_square(const Mat& a, const char* who) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
  }
}

}  // namespace

Mat mat_exp(const Mat& a) {
  require_square(a, "mat_exp");
  return a.exp();
}

SkewEig eig_skew_hermitian(const Mat& a, double tol) {
  require_square(a, "eig_skew_hermitian");
  const double scale  = std::max(1.0, a.norm());
  const double defect = (a + a.adjoint()).norm();
  if (defect > tol * scale) {
    throw StructureError("eig_skew_hermitian: input is not skew-Hermitian (defect " +
                         std::to_string(defect) + ")");
  }
  // i*a is Hermitian; its real eigenvalues mu correspond to eigenvalues -i*mu
  // of a, so ascending imaginary part of a means descending mu.
  Eigen::SelfAdjointEigenSolver<Mat> es(Cplx(0.0, 1.0) * a);
  if (es.info() != Eigen::Success) {
    throw NumericalError("eig_skew_hermitian: eigensolver failed");
  }
  const int n = static_cast<int>(a.rows());
  SkewEig out;
  out.values  = CVec(n);
  out.vectors = Mat(n, n);
  for (int j = 0; j < n; ++j) {
    const int src = n - 1 - j;
    out.values(j)      = Cplx(0.0, -es.eigenvalues()(src));
    out.vectors.col(j) = es.eigenvectors().col(src);
  }
  return out;
}

Mat mat_exp_skew(const Mat& a, double tol) {
  const SkewEig eig = eig_skew_hermitian(a, tol);
  const int     n   = static_cast<int>(a.rows());
  CVec          phases(n);
  for (int j = 0; j < n; ++j) phases(j) = std::exp(eig.values(j));
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

SkewRealBlocks blocks_skew_symmetric(const RMat& a, double tol) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("blocks_skew_symmetric: matrix must be square");
  }
  const int    n      = static_cast<int>(a.rows());
  const double scale  = std::max(1.0, a.norm());
  const double defect = (a + a.transpose()).norm();
  if (defect > tol * scale) {
    throw StructureError("blocks_skew_symmetric: input is not skew-symmetric");
  }

  // Rotation planes from the Hermitian form i*a.  An eigenvector w = p + i*q
  // with eigenvalue mu < 0 satisfies a*p = -theta*q, a*q = theta*p for
  // theta = -mu, and sqrt(2)*(p, q) is an orthonormal pair.
  Eigen::SelfAdjointEigenSolver<Mat> es(Cplx(0.0, 1.0) * a.cast<Cplx>());
  if (es.info() != Eigen::Success) {
    throw NumericalError("blocks_skew_symmetric: eigensolver failed");
  }
  const double floor = tol * scale;

  struct Plane {
    double theta;
    RVec   p, q;
  };
  std::vector<Plane> planes;
  for (int j = 0; j < n; ++j) {
    const double mu = es.eigenvalues()(j);
    if (mu < -floor) {
      const CVec w = es.eigenvectors().col(j);
      Plane      pl;
      pl.theta = -mu;
      pl.p     = std::sqrt(2.0) * w.real();
      pl.q     = std::sqrt(2.0) * w.imag();
      planes.push_back(std::move(pl));
    }
  }
  std::sort(planes.begin(), planes.end(),
            [](const Plane& l, const Plane& r) { return l.theta > r.theta; });

  // Kernel from the real SVD: right singular vectors of the vanishing
  // singular values form a real orthonormal kernel basis.
  Eigen::JacobiSVD<RMat> svd(a, Eigen::ComputeFullV);
  const double           smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  std::vector<int>       kernel_cols;
  for (int j = 0; j < svd.singularValues().size(); ++j) {
    if (svd.singularValues()(j) <= std::max(floor, tol * smax)) kernel_cols.push_back(j);
  }

  if (static_cast<int>(2 * planes.size() + kernel_cols.size()) != n) {
    throw NumericalError("blocks_skew_symmetric: plane/kernel split does not fill the space");
  }

  SkewRealBlocks out;
  out.q        = RMat(n, n);
  out.zero_dim = static_cast<int>(kernel_cols.size());
  int col      = 0;
  for (const Plane& pl : planes) {
    out.q.col(col++) = pl.p;
    out.q.col(col++) = pl.q;
    out.angles.push_back(pl.theta);
  }
  for (int j : kernel_cols) out.q.col(col++) = svd.matrixV().col(j);

  const double orth = (out.q.transpose() * out.q - RMat::Identity(n, n)).norm();
  if (orth > 1e-8 * std::max(1.0, std::sqrt(double(n)))) {
    throw NumericalError("blocks_skew_symmetric: assembled frame lost orthonormality");
  }
  return out;
}

LstsqResult lstsq_min_norm(const RMat& m, const RVec& b, double tol_zero) {
  if (m.rows() != b.size()) {
    throw std::invalid_argument("lstsq_min_norm: incompatible right-hand side");
  }
  Eigen::JacobiSVD<RMat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVec&            sv   = svd.singularValues();
  const double           smax = sv.size() ? sv(0) : 0.0;

  LstsqResult out;
  RVec        y = svd.matrixU().transpose() * b;
  RVec        z = RVec::Zero(sv.size());
  for (int j = 0; j < sv.size(); ++j) {
    if (sv(j) > tol_zero * std::max(1.0, smax)) {
      z(j) = y(j) / sv(j);
      ++out.rank;
    }
  }
  out.solution = svd.matrixV() * z;
  out.residual = (m * out.solution - b).norm();
  return out;
}

Subspace::Subspace(RMat orthonormal_columns, double tol) : m_basis(std::move(orthonormal_columns)) {
  if (m_basis.cols() > 0) {
    const RMat   gram   = m_basis.transpose() * m_basis;
    const double defect = (gram - RMat::Identity(gram.rows(), gram.cols())).norm();
    if (defect > tol * std::max(1.0, std::sqrt(double(m_basis.cols())))) {
      throw StructureError("Subspace: columns are not orthonormal");
    }
  }
}

Subspace Subspace::from_spanning(const RMat& columns, double tol_zero) {
  const int n     = static_cast<int>(columns.rows());
  double    scale = 0.0;
  for (int j = 0; j < columns.cols(); ++j) scale = std::max(scale, columns.col(j).norm());
  const double drop = tol_zero * std::max(1.0, scale);

  RMat basis(n, columns.cols());
  int  kept = 0;
  for (int j = 0; j < columns.cols(); ++j) {
    RVec v = columns.col(j);
    // Two Gram-Schmidt passes keep the defect at roundoff level.
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < kept; ++i) v -= basis.col(i).dot(v) * basis.col(i);
    }
    const double r = v.norm();
    if (r > drop) basis.col(kept++) = v / r;
  }
  basis.conservativeResize(n, kept);
  return Subspace(std::move(basis));
}

double subspace_distance(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) {
    throw std::invalid_argument("subspace_distance: ambient dimensions differ");
  }
  const RMat pa = a.basis() * a.basis().transpose();
  const RMat pb = b.basis() * b.basis().transpose();
  Eigen::JacobiSVD<RMat> svd(pa - pb);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

double containment_residual(const Subspace& inner, const Subspace& outer) {
  if (inner.ambient() != outer.ambient()) {
    throw std::invalid_argument("containment_residual: ambient dimensions differ");
  }
  double worst = 0.0;
  for (int j = 0; j < inner.dim(); ++j) {
    worst = std::max(worst, outer.defect(inner.basis().col(j)));
  }
  return worst;
}

int subspace_sum_dim(const Subspace& a, const Subspace& b, double tol_zero) {
  if (a.ambient() != b.ambient()) {
    throw std::invalid_argument("subspace_sum_dim: ambient dimensions differ");
  }
  RMat joint(a.ambient(), a.dim() + b.dim());
  joint << a.basis(), b.basis();
  if (joint.cols() == 0) return 0;
  Eigen::JacobiSVD<RMat> svd(joint);
  const double           smax = svd.singularValues()(0);
  int                    rank = 0;
  for (int j = 0; j < svd.singularValues().size(); ++j) {
    if (svd.singularValues()(j) > tol_zero * std::max(1.0, smax)) ++rank;
  }
  return rank;
}

namespace {

// Minimum-norm point in the affine hull of the selected columns, by the
// bordered normal system [G 1; 1^T 0] [alpha; nu] = [0; 1].
bool affine_min_norm(const RMat& pts, const std::vector<int>& corral, RVec& alpha) {
  const int m = static_cast<int>(corral.size());
  RMat      sys(m + 1, m + 1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) sys(i, j) = pts.col(corral[i]).dot(pts.col(corral[j]));
    sys(i, m) = 1.0;
    sys(m, i) = 1.0;
  }
  sys(m, m) = 0.0;
  RVec rhs  = RVec::Zero(m + 1);
  rhs(m)    = 1.0;

  Eigen::FullPivLU<RMat> lu(sys);
  if (!lu.isInvertible()) return false;
  const RVec sol = lu.solve(rhs);
  alpha          = sol.head(m);
  return true;
}

}  // namespace

double hull_distance(const std::vector<RVec>& points, const RVec& q, double tol, int max_iter) {
  if (points.empty()) throw std::invalid_argument("hull_distance: empty point set");
  const int d = static_cast<int>(q.size());
  RMat      pts(d, static_cast<int>(points.size()));
  double    scale = 0.0;
  for (int j = 0; j < pts.cols(); ++j) {
    if (points[j].size() != d) {
      throw std::invalid_argument("hull_distance: point dimension mismatch");
    }
    pts.col(j) = points[j] - q;
    scale      = std::max(scale, pts.col(j).norm());
  }
  if (scale == 0.0) return 0.0;
  const double eps = tol * std::max(1.0, scale * scale);

  // Wolfe's algorithm: maintain a corral of points whose convex combination x
  // is the current candidate; add the most violating vertex, then repair
  // feasibility in the minor cycle.
  int j0 = 0;
  for (int j = 1; j < pts.cols(); ++j) {
    if (pts.col(j).squaredNorm() < pts.col(j0).squaredNorm()) j0 = j;
  }
  std::vector<int>    corral{j0};
  std::vector<double> lam{1.0};
  RVec                x = pts.col(j0);

  for (int major = 0; major < max_iter; ++major) {
    int    jbest = 0;
    double best  = x.dot(pts.col(0));
    for (int j = 1; j < pts.cols(); ++j) {
      const double v = x.dot(pts.col(j));
      if (v < best) {
        best  = v;
        jbest = j;
      }
    }
    if (x.squaredNorm() - best <= eps) break;
    if (std::find(corral.begin(), corral.end(), jbest) != corral.end()) break;

    corral.push_back(jbest);
    lam.push_back(0.0);

    while (true) {
      RVec alpha;
      if (!affine_min_norm(pts, corral, alpha)) {
        // Affinely dependent corral from roundoff: drop the newest point.
        corral.pop_back();
        lam.pop_back();
        break;
      }
      bool feasible = true;
      for (int i = 0; i < alpha.size(); ++i) {
        if (alpha(i) < -1e-14) feasible = false;
      }
      if (feasible) {
        for (size_t i = 0; i < corral.size(); ++i) lam[i] = std::max(alpha(int(i)), 0.0);
        break;
      }
      double theta = 1.0;
      for (size_t i = 0; i < corral.size(); ++i) {
        if (alpha(int(i)) <= 0.0 && lam[i] > alpha(int(i))) {
          theta = std::min(theta, lam[i] / (lam[i] - alpha(int(i))));
        }
      }
      std::vector<int>    next_corral;
      std::vector<double> next_lam;
      for (size_t i = 0; i < corral.size(); ++i) {
        const double w = (1.0 - theta) * lam[i] + theta * alpha(int(i));
        if (w > 1e-14) {
          next_corral.push_back(corral[i]);
          next_lam.push_back(w);
        }
      }
      double total = 0.0;
      for (double w : next_lam) total += w;
      for (double& w : next_lam) w /= total;
      corral = std::move(next_corral);
      lam    = std::move(next_lam);
    }

    x.setZero();
    for (size_t i = 0; i < corral.size(); ++i) x += lam[i] * pts.col(corral[i]);
  }
  return x.norm();
}

}  // namespace lieortho

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lieortho {

using Cplx = std::complex<double>;
using Mat  = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

/// Numerical thresholds shared across the library.  Residual thresholds are
/// relative to max(1, scale of the data) unless a function documents otherwise.
struct Tolerances {
  double orth     = 1e-10;  ///< orthonormality defect accepted in constructed bases
  double residual = 1e-8;   ///< residual accepted when verifying algebraic identities
  double zero     = 1e-10;  ///< cutoff below which singular values count as zero
  int    max_iter = 10000;  ///< iteration budget for descent and search loops
};

/// Failure of a numerical contract.  Caller mistakes (wrong dimensions, values
/// outside the supported range) are reported as std::invalid_argument instead.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input matrix does not satisfy the structural property an operation requires.
class StructureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// An iteration exhausted its budget without meeting its stopping criterion.
class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A linear problem has no solution within tolerance.
class InfeasibleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Deterministic random source.  The engine is mt19937_64; the uniform and
/// gaussian maps are fixed here (53-bit mantissa map, Box-Muller) rather than
/// delegated to std distributions, so streams are identical across standard
/// library implementations.  Equal seeds give bit-identical streams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : m_engine(seed) {}

  /// Uniform draw in [0, 1) with 53 random mantissa bits.
  double uniform() { return static_cast<double>(m_engine() >> 11) * 0x1.0p-53; }

  /// Standard normal draw (Box-Muller, cached spare).
  double gaussian() {
    if (m_have_spare) {
      m_have_spare = false;
      return m_spare;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r  = std::sqrt(-2.0 * std::log(u1));
    const double a  = 6.283185307179586476925286766559 * u2;
    m_spare      = r * std::sin(a);
    m_have_spare = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 m_engine;
  bool   m_have_spare = false;
  double m_spare      = 0.0;
};

}  // namespace lieortho

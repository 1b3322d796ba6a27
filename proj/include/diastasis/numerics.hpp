#pragma once

/// @file
/// Shared numerical substrate: real/complex chart conventions, the complex
/// structure, finite-difference oracles and seeded samplers.
///
/// Real coordinates are interleaved: (Re z1, Im z1, ..., Re zn, Im zn).
/// Matrix points use the row-major order of their entries.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>

namespace diastasis {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using Rng = std::mt19937_64;

/// A point or argument violates the domain invariant of its geometry.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative method ran out of iterations or a linear system was too
/// ill-conditioned to trust.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Symmetric real bilinear form on a real 2n-dimensional tangent space.
class RealForm {
 public:
  RealForm() = default;
  /// Throws std::invalid_argument unless `entries` is square, of even size
  /// and symmetric to 1e-12 relative. Stores the exact symmetrization.
  explicit RealForm(const Mat& entries);

  const Mat& matrix() const { return entries_; }
  Eigen::Index size() const { return entries_.rows(); }
  double operator()(const Vec& u, const Vec& v) const { return u.dot(entries_ * v); }

 private:
  Mat entries_;
};

/// Real tangent vector in chart coordinates, together with the chart
/// coordinates of its basepoint.
struct TangentVector {
  Vec components;
  Vec basepoint;
};

/// Complex structure J in the interleaved convention.
struct ComplexStructure {
  int n = 0;
  Mat matrix;
};

/// J(e_{2k-1}) = e_{2k}, J(e_{2k}) = -e_{2k-1}. Throws for n < 1.
ComplexStructure j_operator(int n);

// Chart conversions.
Vec to_real(const CVec& z);
CVec to_complex(const Vec& x);
Vec matrix_to_real(const CMat& z);
CMat real_to_matrix(const Vec& x, Eigen::Index m);

/// Real 2N x 2N matrix of the real form Re(sum h_jk u_j conj(v_k)).
Mat hermitian_to_real(const CMat& h);

/// Real matrix of a complex-linear map C^N -> C^M given as a complex matrix.
Mat complex_linear_to_real(const CMat& a);

/// Real Jacobian of a complex-linear map on m x m matrices.
Mat complex_linear_to_real(const std::function<CMat(const CMat&)>& map, Eigen::Index m);

using ScalarFunction = std::function<double(const Vec&)>;
using VectorFunction = std::function<Vec(const Vec&)>;
using MetricFunction = std::function<Mat(const Vec&)>;

inline constexpr double kGradientStep = 1e-4;
inline constexpr double kHessianStep = 1e-3;

/// Central-difference gradient, O(h^2). DomainError from `f` propagates when
/// the stencil leaves the domain.
Vec fd_gradient(const ScalarFunction& f, const Vec& x, double h = kGradientStep);

/// Central-difference Hessian, O(h^2), symmetrized.
RealForm fd_hessian(const ScalarFunction& f, const Vec& x, double h = kHessianStep);

/// Central-difference Jacobian of a vector function (rows: outputs).
Mat fd_jacobian(const VectorFunction& f, const Vec& x, double h = kGradientStep);

/// Covariant (Levi-Civita) Hessian by finite differences: the coordinate
/// Hessian minus Christoffel terms built from finite differences of the
/// metric.
RealForm fd_covariant_hessian(const ScalarFunction& f, const MetricFunction& metric, const Vec& x,
                              double h_hessian = kHessianStep, double h_gradient = kGradientStep);

/// Symmetric-definite helpers.
Mat sym_sqrt(const Mat& spd);
Mat sym_inv_sqrt(const Mat& spd);
/// Eigenvalues of the pencil (form, metric), ascending.
Vec generalized_eigenvalues(const Mat& form, const Mat& metric);

}  // namespace diastasis

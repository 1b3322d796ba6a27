#pragma once

/// Points of the model spaces and the geometry descriptor shared by the
/// samplers, the entropy probes and the CLI.

#include "diastasis/numerics.hpp"

#include <cstdint>
#include <string>
#include <variant>

namespace diastasis {

inline constexpr double kBallBoundaryMargin = 1e-12;
inline constexpr double kDomainBoundaryMargin = 1e-10;

/// Point of the unit ball in C^n, ||z|| < 1.
class BallPoint {
 public:
  explicit BallPoint(CVec z);
  static BallPoint from_real(const Vec& x) { return BallPoint(to_complex(x)); }
  static BallPoint origin(Eigen::Index n) { return BallPoint(CVec::Zero(n)); }

  const CVec& z() const { return z_; }
  Eigen::Index dim() const { return z_.size(); }
  Vec real() const { return to_real(z_); }

 private:
  CVec z_;
};

/// Point of the polydisc, |z_j| < 1 for every factor.
class PolydiscPoint {
 public:
  explicit PolydiscPoint(CVec z);
  static PolydiscPoint from_real(const Vec& x) { return PolydiscPoint(to_complex(x)); }

  const CVec& z() const { return z_; }
  Eigen::Index rank() const { return z_.size(); }
  Vec real() const { return to_real(z_); }

 private:
  CVec z_;
};

/// Point of the first classical domain: square Z with I - ZZ* positive definite.
class DomainMatrixPoint {
 public:
  explicit DomainMatrixPoint(CMat z);
  static DomainMatrixPoint from_real(const Vec& x, Eigen::Index m) {
    return DomainMatrixPoint(real_to_matrix(x, m));
  }
  static DomainMatrixPoint origin(Eigen::Index m) { return DomainMatrixPoint(CMat::Zero(m, m)); }

  const CMat& z() const { return z_; }
  Eigen::Index size() const { return z_.rows(); }
  Vec real() const { return matrix_to_real(z_); }

 private:
  CMat z_;
};

bool in_ball(const CVec& z);
bool in_polydisc(const CVec& z);
bool in_omega1(const CMat& z);

/// Smallest eigenvalue of I - ZZ*.
double omega1_margin(const CMat& z);

using AnyPoint = std::variant<BallPoint, PolydiscPoint, DomainMatrixPoint>;

enum class GeometryKind { Ball, Polydisc, Omega1 };

/// Model space with its constants. `param` is n for the ball, r for the
/// polydisc and m for the matrix domain.
struct GeometrySpec {
  GeometryKind kind = GeometryKind::Ball;
  int param = 1;

  static GeometrySpec ball(int n);
  static GeometrySpec polydisc(int r);
  static GeometrySpec omega1(int m);

  int complex_dimension() const;
  int rank() const;
  /// Supremum of the metric norm of the diastasis gradient.
  double x_constant() const;
  std::string name() const;
  /// Parses "ball2", "poly3", "omega2". Throws std::invalid_argument.
  static GeometrySpec parse(const std::string& text);
};

/// Uniform draw in the Euclidean ball (or Frobenius ball of radius
/// rmax*sqrt(m) for the matrix domain), rejecting draws whose Euclidean,
/// per-factor or spectral radius exceeds rmax. Requires 0 < rmax < 1.
AnyPoint sample_point(Rng& rng, const GeometrySpec& geometry, double rmax);
AnyPoint sample_point(std::uint64_t seed, const GeometrySpec& geometry, double rmax);

BallPoint sample_ball(Rng& rng, Eigen::Index n, double rmax);
PolydiscPoint sample_polydisc(Rng& rng, Eigen::Index r, double rmax);
DomainMatrixPoint sample_omega1(Rng& rng, Eigen::Index m, double rmax);

/// Haar-ish random unitary (QR of a complex Gaussian matrix, phases fixed).
CMat sample_unitary(Rng& rng, Eigen::Index n);

}  // namespace diastasis

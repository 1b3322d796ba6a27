#pragma once

/// Complex hyperbolic space as the unit ball with holomorphic sectional
/// curvature -4 and Kaehler potential -log(1 - ||z||^2).
///
/// Gradients are Riemannian (inverse metric applied to the differential)
/// and Hessians are covariant. All real quantities use the interleaved chart.

#include "diastasis/geometry_types.hpp"
#include "diastasis/numerics.hpp"

namespace diastasis::ball {

/// -log[(1-|z|^2)(1-|w|^2) / |1 - <z,w>|^2].
double diastasis(const BallPoint& w, const BallPoint& z);

/// Geodesic distance, arccosh(exp(D/2)).
double distance(const BallPoint& w, const BallPoint& z);

/// Squared modulus of the Moebius image of z under the map centred at w,
/// i.e. tanh^2 of the distance, computed without cancellation.
double tanh2_distance(const BallPoint& w, const BallPoint& z);

/// Hermitian metric coefficients d d-bar of the potential at z.
CMat hermitian_metric(const BallPoint& z);

/// Real metric matrix G(z); G(0) = I.
RealForm metric_matrix(const BallPoint& z);

/// Differential d_x D_w as a covector in chart coordinates.
Vec differential(const BallPoint& w, const BallPoint& x);

TangentVector grad_diastasis(const BallPoint& w, const BallPoint& x);

/// 2G(x) - 1/2 a(x)a + 1/2 (a o J)(x)(a o J), a = d_x D_w.
RealForm hessian_diastasis(const BallPoint& w, const BallPoint& x);

/// Metric norm of a chart vector at x.
double metric_norm(const BallPoint& x, const Vec& v);

/// Holomorphic isometry sending `center` to the origin:
///   z -> U (P z + s Q z - a) / (1 - <z,a>),  s = sqrt(1 - |a|^2),
/// with P the orthogonal projection onto span(a) and Q = I - P. Without the
/// unitary its derivative at a is positive along a.
class MobiusIsometry {
 public:
  explicit MobiusIsometry(const BallPoint& center);
  MobiusIsometry(const BallPoint& center, CMat unitary);

  const BallPoint& center() const { return center_; }
  const CMat& unitary() const { return unitary_; }

  BallPoint apply(const BallPoint& z) const;
  BallPoint inverse_apply(const BallPoint& u) const;

  /// Real Jacobian of apply at z (holomorphic, so a complex-linear block).
  Mat differential(const BallPoint& z) const;

 private:
  CVec involution(const CVec& z) const;

  BallPoint center_;
  CMat unitary_;
};

MobiusIsometry mobius(const BallPoint& w);

}  // namespace diastasis::ball

#include "diastasis/hyperbolic_ball.hpp"

#include <cmath>

namespace diastasis::ball {

namespace {

void require_same_dim(const BallPoint& w, const BallPoint& z) {
  if (w.dim() != z.dim()) {
    throw std::invalid_argument("ball: points of different dimension");
  }
}

// <z, w> = sum z_k conj(w_k)
Complex inner(const CVec& z, const CVec& w) { return w.dot(z); }

}  // namespace

double tanh2_distance(const BallPoint& w, const BallPoint& z) {
  require_same_dim(w, z);
  const CVec& a = w.z();
  const CVec& b = z.z();
  // |1-<z,w>|^2 - (1-|z|^2)(1-|w|^2) = |z-w|^2 - (|z|^2|w|^2 - |<z,w>|^2),
  // the bracket being the Lagrange sum below.
  double lagrange = 0;
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    for (Eigen::Index k = j + 1; k < a.size(); ++k) {
      lagrange += std::norm(b(j) * a(k) - b(k) * a(j));
    }
  }
  const double num = std::max(0.0, (b - a).squaredNorm() - lagrange);
  const double den = std::norm(1.0 - inner(b, a));
  return std::min(num / den, 1.0);
}

double diastasis(const BallPoint& w, const BallPoint& z) {
  const double s2 = tanh2_distance(w, z);
  if (s2 < 0.5) {
    return -std::log1p(-s2);
  }
  const double nz = z.z().norm();
  const double nw = w.z().norm();
  return std::log(std::norm(1.0 - inner(z.z(), w.z()))) - std::log((1 - nz) * (1 + nz)) -
         std::log((1 - nw) * (1 + nw));
}

double distance(const BallPoint& w, const BallPoint& z) {
  const double d = diastasis(w, z);
  if (d < 1e-8) {
    return std::sqrt(d) * (1.0 + d / 12.0);
  }
  return std::acosh(std::exp(0.5 * d));
}

CMat hermitian_metric(const BallPoint& z) {
  const CVec& v = z.z();
  const double q = 1.0 - v.squaredNorm();
  // h_jk = delta_jk / q + conj(z_j) z_k / q^2
  CMat h = CMat::Identity(v.size(), v.size()) / q;
  h += v.conjugate() * v.transpose() / (q * q);
  return h;
}

RealForm metric_matrix(const BallPoint& z) { return RealForm(hermitian_to_real(hermitian_metric(z))); }

Vec differential(const BallPoint& w, const BallPoint& x) {
  require_same_dim(w, x);
  const CVec& v = x.z();
  const CVec& c = w.z();
  const double q = 1.0 - v.squaredNorm();
  const Complex p = 1.0 - inner(v, c);
  Vec alpha(2 * v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    const Complex dz = std::conj(v(j)) / q - std::conj(c(j)) / p;
    alpha(2 * j) = 2.0 * dz.real();
    alpha(2 * j + 1) = -2.0 * dz.imag();
  }
  return alpha;
}

TangentVector grad_diastasis(const BallPoint& w, const BallPoint& x) {
  const Vec alpha = differential(w, x);
  return {metric_matrix(x).matrix().ldlt().solve(alpha), x.real()};
}

RealForm hessian_diastasis(const BallPoint& w, const BallPoint& x) {
  const Vec alpha = differential(w, x);
  const Mat& j = j_operator(static_cast<int>(x.dim())).matrix;
  const Vec alpha_j = j.transpose() * alpha;
  const Mat hess = 2.0 * metric_matrix(x).matrix() - 0.5 * alpha * alpha.transpose() +
                   0.5 * alpha_j * alpha_j.transpose();
  return RealForm(hess);
}

double metric_norm(const BallPoint& x, const Vec& v) { return std::sqrt(metric_matrix(x)(v, v)); }

MobiusIsometry::MobiusIsometry(const BallPoint& center)
    : MobiusIsometry(center, CMat::Identity(center.dim(), center.dim())) {}

MobiusIsometry::MobiusIsometry(const BallPoint& center, CMat unitary)
    : center_(center), unitary_(std::move(unitary)) {
  const Eigen::Index n = center_.dim();
  if (unitary_.rows() != n || unitary_.cols() != n) {
    throw std::invalid_argument("MobiusIsometry: unitary has wrong size");
  }
  if ((unitary_ * unitary_.adjoint() - CMat::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("MobiusIsometry: matrix is not unitary");
  }
}

// phi_a(z) = (a - P z - s Q z) / (1 - <z,a>), an involution swapping a and 0.
CVec MobiusIsometry::involution(const CVec& z) const {
  const CVec& a = center_.z();
  const double a2 = a.squaredNorm();
  const double s = std::sqrt((1 - a.norm()) * (1 + a.norm()));
  const Complex za = inner(z, a);
  CVec pz = CVec::Zero(z.size());
  if (a2 > 0) {
    pz = a * (za / a2);
  }
  const CVec qz = z - pz;
  return (a - pz - s * qz) / (1.0 - za);
}

BallPoint MobiusIsometry::apply(const BallPoint& z) const {
  require_same_dim(center_, z);
  return BallPoint(unitary_ * (-involution(z.z())));
}

BallPoint MobiusIsometry::inverse_apply(const BallPoint& u) const {
  require_same_dim(center_, u);
  return BallPoint(involution(-(unitary_.adjoint() * u.z())));
}

Mat MobiusIsometry::differential(const BallPoint& z) const {
  require_same_dim(center_, z);
  const CVec& a = center_.z();
  const Eigen::Index n = a.size();
  const double a2 = a.squaredNorm();
  const double s = std::sqrt((1 - a.norm()) * (1 + a.norm()));
  CMat proj = CMat::Zero(n, n);
  if (a2 > 0) {
    proj = a * a.adjoint() / a2;
  }
  const CMat m = proj + s * (CMat::Identity(n, n) - proj);
  const Complex d = 1.0 - inner(z.z(), a);
  const CVec num = m * z.z() - a;
  const CMat jac = m / d + num * a.adjoint() / (d * d);
  return complex_linear_to_real(unitary_ * jac);
}

MobiusIsometry mobius(const BallPoint& w) { return MobiusIsometry(w); }

}  // namespace diastasis::ball

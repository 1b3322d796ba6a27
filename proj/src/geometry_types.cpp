#include "diastasis/geometry_types.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <regex>

namespace diastasis {

bool in_ball(const CVec& z) { return 1.0 - z.norm() > kBallBoundaryMargin; }

bool in_polydisc(const CVec& z) {
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    if (!(1.0 - std::abs(z(j)) > kBallBoundaryMargin)) {
      return false;
    }
  }
  return true;
}

double omega1_margin(const CMat& z) {
  const Eigen::Index m = z.rows();
  const CMat gap = CMat::Identity(m, m) - z * z.adjoint();
  Eigen::SelfAdjointEigenSolver<CMat> es(gap, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool in_omega1(const CMat& z) {
  return z.rows() == z.cols() && z.rows() > 0 && omega1_margin(z) > kDomainBoundaryMargin;
}

BallPoint::BallPoint(CVec z) : z_(std::move(z)) {
  if (z_.size() < 1) {
    throw DomainError("BallPoint: dimension must be >= 1");
  }
  if (!z_.allFinite() || !in_ball(z_)) {
    throw DomainError("BallPoint: requires ||z|| < 1 (got " + std::to_string(z_.norm()) + ")");
  }
}

PolydiscPoint::PolydiscPoint(CVec z) : z_(std::move(z)) {
  if (z_.size() < 1) {
    throw DomainError("PolydiscPoint: rank must be >= 1");
  }
  if (!z_.allFinite() || !in_polydisc(z_)) {
    throw DomainError("PolydiscPoint: requires |z_j| < 1 for every factor");
  }
}

DomainMatrixPoint::DomainMatrixPoint(CMat z) : z_(std::move(z)) {
  if (z_.rows() != z_.cols() || z_.rows() < 1) {
    throw DomainError("DomainMatrixPoint: matrix must be square and non-empty");
  }
  if (!z_.allFinite() || !in_omega1(z_)) {
    throw DomainError("DomainMatrixPoint: requires I - ZZ* positive definite");
  }
}

GeometrySpec GeometrySpec::ball(int n) {
  if (n < 1) throw std::invalid_argument("ball dimension must be >= 1");
  return {GeometryKind::Ball, n};
}

GeometrySpec GeometrySpec::polydisc(int r) {
  if (r < 1) throw std::invalid_argument("polydisc rank must be >= 1");
  return {GeometryKind::Polydisc, r};
}

GeometrySpec GeometrySpec::omega1(int m) {
  if (m < 1) throw std::invalid_argument("matrix size must be >= 1");
  return {GeometryKind::Omega1, m};
}

int GeometrySpec::complex_dimension() const {
  return kind == GeometryKind::Omega1 ? param * param : param;
}

int GeometrySpec::rank() const { return kind == GeometryKind::Ball ? 1 : param; }

double GeometrySpec::x_constant() const {
  // 2 on every rank-one factor; sqrt(rank) from the orthogonal sum.
  return 2.0 * std::sqrt(static_cast<double>(rank()));
}

std::string GeometrySpec::name() const {
  switch (kind) {
    case GeometryKind::Ball:
      return "ball" + std::to_string(param);
    case GeometryKind::Polydisc:
      return "poly" + std::to_string(param);
    case GeometryKind::Omega1:
      return "omega" + std::to_string(param);
  }
  return {};
}

GeometrySpec GeometrySpec::parse(const std::string& text) {
  static const std::regex pattern("(ball|poly|omega)([1-9][0-9]*)");
  std::smatch match;
  if (!std::regex_match(text, match, pattern)) {
    throw std::invalid_argument("unknown space '" + text + "' (expected ballN, polyN or omegaN)");
  }
  const int param = std::stoi(match[2].str());
  if (match[1] == "ball") return ball(param);
  if (match[1] == "poly") return polydisc(param);
  return omega1(param);
}

namespace {

// Uniform in the Euclidean ball of the given radius in R^dim.
Vec uniform_in_ball(Rng& rng, Eigen::Index dim, double radius) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform;
  Vec x(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    x(i) = normal(rng);
  }
  const double norm = x.norm();
  if (norm == 0.0) {
    return x;
  }
  const double r = radius * std::pow(uniform(rng), 1.0 / static_cast<double>(dim));
  return x * (r / norm);
}

void check_rmax(double rmax) {
  if (!(rmax > 0.0 && rmax < 1.0)) {
    throw std::invalid_argument("sampler: rmax must lie in (0, 1)");
  }
}

}  // namespace

BallPoint sample_ball(Rng& rng, Eigen::Index n, double rmax) {
  check_rmax(rmax);
  return BallPoint::from_real(uniform_in_ball(rng, 2 * n, rmax));
}

PolydiscPoint sample_polydisc(Rng& rng, Eigen::Index r, double rmax) {
  check_rmax(rmax);
  for (;;) {
    const Vec x = uniform_in_ball(rng, 2 * r, rmax * std::sqrt(static_cast<double>(r)));
    const CVec z = to_complex(x);
    if (z.cwiseAbs().maxCoeff() <= rmax) {
      return PolydiscPoint(z);
    }
  }
}

DomainMatrixPoint sample_omega1(Rng& rng, Eigen::Index m, double rmax) {
  check_rmax(rmax);
  for (;;) {
    const Vec x = uniform_in_ball(rng, 2 * m * m, rmax * std::sqrt(static_cast<double>(m)));
    const CMat z = real_to_matrix(x, m);
    Eigen::JacobiSVD<CMat> svd(z);
    if (svd.singularValues()(0) <= rmax) {
      return DomainMatrixPoint(z);
    }
  }
}

AnyPoint sample_point(Rng& rng, const GeometrySpec& geometry, double rmax) {
  switch (geometry.kind) {
    case GeometryKind::Ball:
      return sample_ball(rng, geometry.param, rmax);
    case GeometryKind::Polydisc:
      return sample_polydisc(rng, geometry.param, rmax);
    case GeometryKind::Omega1:
      return sample_omega1(rng, geometry.param, rmax);
  }
  throw std::invalid_argument("sample_point: unknown geometry");
}

AnyPoint sample_point(std::uint64_t seed, const GeometrySpec& geometry, double rmax) {
  Rng rng(seed);
  return sample_point(rng, geometry, rmax);
}

CMat sample_unitary(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> normal;
  CMat a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      a(i, j) = Complex(normal(rng), normal(rng));
    }
  }
  Eigen::HouseholderQR<CMat> qr(a);
  CMat q = qr.householderQ();
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0) {
      q.col(j) *= r(j, j) / mag;
    }
  }
  return q;
}

}  // namespace diastasis

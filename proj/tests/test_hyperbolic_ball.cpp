#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diastasis/hyperbolic_ball.hpp"

#include <cmath>

using namespace diastasis;

namespace {

BallPoint point(std::initializer_list<Complex> values) {
  CVec z(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (const Complex& v : values) z(k++) = v;
  return BallPoint(z);
}

// Potential -log(1 - |z|^2); D_w(z) = Phi(z) + Phi(w) - 2 Re(log-kernel),
// evaluated the naive way as an independent oracle.
double naive_diastasis(const CVec& w, const CVec& z) {
  const Complex inner = z.dot(w);  // conj(z) . w = sum conj(z_k) w_k
  return -std::log((1 - z.squaredNorm()) * (1 - w.squaredNorm()) / std::norm(1.0 - std::conj(inner)));
}

}  // namespace

TEST_CASE("diastasis examples") {
  CHECK(ball::diastasis(BallPoint::origin(2), BallPoint::origin(2)) == 0.0);
  CHECK(ball::diastasis(BallPoint::origin(2), point({0.5, 0})) == doctest::Approx(0.28768207245178).epsilon(1e-13));
  CHECK(ball::distance(BallPoint::origin(1), point({0.5})) == doctest::Approx(0.54930614433405).epsilon(1e-13));
  CHECK(ball::diastasis(point({0.3}), point({0.3})) == 0.0);
}

TEST_CASE("diastasis agrees with the naive kernel formula and is symmetric") {
  Rng rng(17);
  for (int n = 1; n <= 3; ++n) {
    for (int i = 0; i < 200; ++i) {
      const BallPoint w = sample_ball(rng, n, 0.9);
      const BallPoint z = sample_ball(rng, n, 0.9);
      const double d = ball::diastasis(w, z);
      CHECK(d == doctest::Approx(naive_diastasis(w.z(), z.z())).epsilon(1e-10));
      CHECK(d == doctest::Approx(ball::diastasis(z, w)).epsilon(1e-12));
      CHECK(ball::tanh2_distance(w, z) == doctest::Approx(std::pow(std::tanh(ball::distance(w, z)), 2)).epsilon(1e-10));
    }
  }
}

TEST_CASE("nearby points keep full relative precision") {
  const BallPoint w = point({Complex(0.999, 0)});
  const BallPoint z = point({Complex(0.999, 1e-9)});
  // tanh rho = |z-w| / |1 - z conj(w)| to first order
  const double s = 1e-9 / (1 - 0.999 * 0.999);
  CHECK(ball::distance(w, z) == doctest::Approx(s).epsilon(1e-6));
  CHECK(ball::diastasis(w, z) == doctest::Approx(s * s).epsilon(1e-6));
  CHECK(ball::diastasis(BallPoint::origin(1), point({1e-12})) == doctest::Approx(1e-24).epsilon(1e-10));
}

TEST_CASE("metric matrix") {
  CHECK(ball::metric_matrix(BallPoint::origin(3)).matrix().isIdentity(0.0));
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const BallPoint z = sample_ball(rng, 1, 0.95);
    const double f = 1.0 / std::pow(1 - z.z().squaredNorm(), 2);
    CHECK((ball::metric_matrix(z).matrix() - f * Mat::Identity(2, 2)).norm() < 1e-12 * f);
  }
  // J-invariant part of the real Hessian of the potential is 2G
  const BallPoint z = point({Complex(0.2, -0.3), Complex(0.1, 0.4)});
  const ScalarFunction potential = [](const Vec& x) { return -std::log(1 - x.squaredNorm()); };
  const Mat fd = fd_hessian(potential, z.real()).matrix();
  const Mat g = ball::metric_matrix(z).matrix();
  const ComplexStructure j = j_operator(2);
  const Mat sym = 0.5 * (fd + j.matrix.transpose() * fd * j.matrix);
  CHECK((sym - 2 * g).norm() < 1e-5 * g.norm());
}

TEST_CASE("gradient examples") {
  const BallPoint x = point({0.5});
  const TangentVector g = ball::grad_diastasis(BallPoint::origin(1), x);
  CHECK(ball::metric_norm(x, g.components) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ball::grad_diastasis(x, x).components.norm() == 0.0);
  CHECK(g.basepoint == x.real());
}

TEST_CASE("gradient is the metric dual of the FD differential") {
  Rng rng(8);
  for (int n = 1; n <= 3; ++n) {
    for (int i = 0; i < 50; ++i) {
      const BallPoint w = sample_ball(rng, n, 0.9);
      const BallPoint x = sample_ball(rng, n, 0.9);
      const ScalarFunction f = [&](const Vec& p) { return ball::diastasis(w, BallPoint::from_real(p)); };
      const Vec fd = fd_gradient(f, x.real());
      CHECK((ball::differential(w, x) - fd).norm() < 1e-6 * std::max(1.0, fd.norm()));
      const Vec grad = ball::grad_diastasis(w, x).components;
      CHECK((ball::metric_matrix(x).matrix() * grad - ball::differential(w, x)).norm() < 1e-10 * std::max(1.0, fd.norm()));
    }
  }
}

TEST_CASE("hessian examples and FD agreement") {
  CHECK((ball::hessian_diastasis(BallPoint::origin(2), BallPoint::origin(2)).matrix() - 2 * Mat::Identity(4, 4)).norm() ==
        0.0);
  Rng rng(9);
  for (int n = 1; n <= 2; ++n) {
    for (int i = 0; i < 30; ++i) {
      const BallPoint w = sample_ball(rng, n, 0.8);
      const BallPoint x = sample_ball(rng, n, 0.8);
      const Mat h = ball::hessian_diastasis(w, x).matrix();
      const Mat fd = fd_covariant_hessian([&](const Vec& p) { return ball::diastasis(w, BallPoint::from_real(p)); },
                                          [](const Vec& p) { return ball::metric_matrix(BallPoint::from_real(p)).matrix(); },
                                          x.real())
                         .matrix();
      CHECK((h - fd).cwiseAbs().maxCoeff() < 1e-4 * h.cwiseAbs().maxCoeff());
      const Vec ev = generalized_eigenvalues(h, ball::metric_matrix(x).matrix());
      CHECK(ev.minCoeff() > 0);
      CHECK(ev.maxCoeff() < 4);
    }
  }
}

TEST_CASE("hessian eigenvalues along the geodesic are 2 +- 2 tanh^2 and 2") {
  // n = 2, w = 0, x = (s, 0): spectrum {2 + 2 s^2, 2 - 2 s^2, 2, 2} in g-units
  const double s = 0.6;
  const BallPoint x = point({s, 0});
  const Vec ev = generalized_eigenvalues(ball::hessian_diastasis(BallPoint::origin(2), x).matrix(),
                                         ball::metric_matrix(x).matrix());
  CHECK(ev(0) == doctest::Approx(2 - 2 * s * s).epsilon(1e-12));
  CHECK(ev(1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(ev(2) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(ev(3) == doctest::Approx(2 + 2 * s * s).epsilon(1e-12));
}

TEST_CASE("mobius isometries") {
  Rng rng(10);
  const BallPoint z = sample_ball(rng, 2, 0.9);
  const CMat u = sample_unitary(rng, 2);
  const ball::MobiusIsometry rot(BallPoint::origin(2), u);
  CHECK((rot.apply(z).z() - u * z.z()).norm() < 1e-15);

  const BallPoint a = sample_ball(rng, 2, 0.9);
  const ball::MobiusIsometry phi = ball::mobius(a);
  CHECK(phi.apply(a).z().norm() < 1e-15);
  CHECK((phi.inverse_apply(BallPoint::origin(2)).z() - a.z()).norm() < 1e-14);
  CHECK(phi.apply(z).z().norm() == doctest::Approx(std::tanh(ball::distance(a, z))).epsilon(1e-12));

  // differential against FD of apply
  const Mat fd = fd_jacobian([&](const Vec& p) { return phi.apply(BallPoint::from_real(p)).real(); }, z.real(), 1e-6);
  CHECK((phi.differential(z) - fd).norm() < 1e-6 * fd.norm());

  CHECK_THROWS(ball::MobiusIsometry(a, CMat::Identity(3, 3)));
  CHECK_THROWS(ball::MobiusIsometry(a, CMat::Constant(2, 2, 1.0)));
}

TEST_CASE("dimension mismatches are rejected") {
  CHECK_THROWS(ball::diastasis(BallPoint::origin(1), BallPoint::origin(2)));
  CHECK_THROWS(ball::mobius(BallPoint::origin(2)).apply(BallPoint::origin(3)));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diastasis/geometry_types.hpp"
#include "diastasis/numerics.hpp"

using namespace diastasis;

namespace {

CMat random_complex(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal;
  CMat a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = Complex(normal(rng), normal(rng));
  return a;
}

}  // namespace

TEST_CASE("j operator squares to minus identity") {
  for (int n = 1; n <= 4; ++n) {
    const ComplexStructure j = j_operator(n);
    CHECK((j.matrix * j.matrix + Mat::Identity(2 * n, 2 * n)).norm() == 0.0);
    // multiplication by i on C^n
    Rng rng(n);
    const CVec z = random_complex(rng, n, 1);
    CHECK((j.matrix * to_real(z) - to_real(Complex(0, 1) * z)).norm() < 1e-15);
  }
  CHECK_THROWS_AS(j_operator(0), std::invalid_argument);
}

TEST_CASE("chart conversions interleave re/im, matrices row-major") {
  CVec z(2);
  z << Complex(1, 2), Complex(3, 4);
  const Vec x = to_real(z);
  CHECK(x.size() == 4);
  CHECK(x(0) == 1);
  CHECK(x(1) == 2);
  CHECK(x(3) == 4);
  CHECK(to_complex(x) == z);

  CMat m(2, 2);
  m << Complex(1, 0), Complex(0, 1), Complex(2, 0), Complex(0, 3);
  const Vec mx = matrix_to_real(m);
  CHECK(mx(2) == 0);
  CHECK(mx(3) == 1);  // Im z_12
  CHECK(mx(4) == 2);  // Re z_21
  CHECK(real_to_matrix(mx, 2) == m);
  CHECK_THROWS(to_complex(Vec::Zero(3)));
  CHECK_THROWS(real_to_matrix(Vec::Zero(6), 2));
}

TEST_CASE("hermitian_to_real matches Re(sum h_jk u_j conj(v_k))") {
  Rng rng(3);
  const CMat a = random_complex(rng, 3, 3);
  const CMat h = a * a.adjoint();
  const Mat g = hermitian_to_real(h);
  for (int trial = 0; trial < 10; ++trial) {
    const CVec u = random_complex(rng, 3, 1);
    const CVec v = random_complex(rng, 3, 1);
    Complex s = 0;
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) s += h(j, k) * u(j) * std::conj(v(k));
    CHECK(to_real(u).dot(g * to_real(v)) == doctest::Approx(s.real()).epsilon(1e-12));
  }
}

TEST_CASE("complex_linear_to_real acts like the complex matrix") {
  Rng rng(5);
  const CMat a = random_complex(rng, 2, 3);
  const CVec v = random_complex(rng, 3, 1);
  CHECK((complex_linear_to_real(a) * to_real(v) - to_real(a * v)).norm() < 1e-13);

  const CMat l = random_complex(rng, 2, 2);
  const CMat r = random_complex(rng, 2, 2);
  const Mat m = complex_linear_to_real([&](const CMat& z) { return CMat(l * z * r); }, 2);
  const CMat z = random_complex(rng, 2, 2);
  CHECK((m * matrix_to_real(z) - matrix_to_real(l * z * r)).norm() < 1e-12);
}

TEST_CASE("RealForm validates shape and symmetry") {
  CHECK_THROWS_AS(RealForm(Mat::Identity(3, 3)), std::invalid_argument);
  CHECK_THROWS_AS(RealForm(Mat::Zero(2, 4)), std::invalid_argument);
  Mat a = Mat::Identity(2, 2);
  a(0, 1) = 1e-3;
  CHECK_THROWS_AS(RealForm{a}, std::invalid_argument);
  a(0, 1) = 1e-17;
  const RealForm f(a);
  CHECK(f.matrix()(0, 1) == f.matrix()(1, 0));
  CHECK(f(Vec::Ones(2), Vec::Ones(2)) == doctest::Approx(2.0));
}

TEST_CASE("finite differences reproduce closed forms") {
  const ScalarFunction cubic = [](const Vec& x) { return x(0) * x(0) * x(1) + std::sin(x(1)); };
  Vec x(2);
  x << 0.3, -0.7;
  const Vec g = fd_gradient(cubic, x);
  CHECK(g(0) == doctest::Approx(2 * x(0) * x(1)).epsilon(1e-8));
  CHECK(g(1) == doctest::Approx(x(0) * x(0) + std::cos(x(1))).epsilon(1e-8));

  const Mat h = fd_hessian(cubic, x).matrix();
  CHECK(h(0, 0) == doctest::Approx(2 * x(1)).epsilon(1e-6));
  CHECK(h(0, 1) == doctest::Approx(2 * x(0)).epsilon(1e-6));
  CHECK(h(1, 1) == doctest::Approx(-std::sin(x(1))).epsilon(1e-5));

  CHECK_THROWS(fd_hessian([](const Vec& v) { return v.sum(); }, Vec::Zero(3)));

  const VectorFunction map = [](const Vec& v) {
    Vec out(2);
    out << v(0) * v(1), std::exp(v(0));
    return out;
  };
  const Mat jac = fd_jacobian(map, x);
  CHECK(jac(0, 1) == doctest::Approx(x(0)).epsilon(1e-8));
  CHECK(jac(1, 0) == doctest::Approx(std::exp(x(0))).epsilon(1e-8));
}

TEST_CASE("covariant FD Hessian reduces to the plain one for a flat metric") {
  const ScalarFunction f = [](const Vec& x) { return std::exp(x(0)) * x(1) + x(1) * x(1) * x(1); };
  const MetricFunction flat = [](const Vec& x) { return Mat(Mat::Identity(x.size(), x.size())); };
  Vec x(2);
  x << 0.1, 0.2;
  CHECK((fd_covariant_hessian(f, flat, x).matrix() - fd_hessian(f, x).matrix()).norm() < 1e-9);
}

TEST_CASE("covariant FD Hessian on the hyperbolic half-line") {
  // Metric dx^2 / x^2 on x > 0; f = log x is a geodesic coordinate, so its
  // covariant Hessian vanishes.
  const ScalarFunction f = [](const Vec& x) { return std::log(x(0)) + 0 * x(1); };
  const MetricFunction metric = [](const Vec& x) {
    Mat g = Mat::Identity(2, 2);
    g(0, 0) = 1.0 / (x(0) * x(0));
    return g;
  };
  Vec x(2);
  x << 0.7, 0.0;
  CHECK(fd_covariant_hessian(f, metric, x).matrix().norm() < 1e-5);
}

TEST_CASE("symmetric square roots and generalized eigenvalues") {
  Rng rng(11);
  std::normal_distribution<double> normal;
  Mat a(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = normal(rng);
  const Mat spd = a * a.transpose() + Mat::Identity(4, 4);
  const Mat r = sym_sqrt(spd);
  CHECK((r * r - spd).norm() < 1e-12);
  CHECK((sym_inv_sqrt(spd) * r - Mat::Identity(4, 4)).norm() < 1e-12);
  const Vec ev = generalized_eigenvalues(3.0 * spd, spd);
  CHECK((ev.array() - 3.0).abs().maxCoeff() < 1e-12);
  const Vec ev2 = generalized_eigenvalues(Mat::Identity(4, 4), Mat::Identity(4, 4) * 2);
  CHECK(ev2(0) == doctest::Approx(0.5));
}

TEST_CASE("points enforce their domain invariants") {
  CVec z(2);
  z << Complex(0.6, 0), Complex(0, 0.8);
  CHECK_THROWS_AS(BallPoint{z}, DomainError);
  CHECK_NOTHROW(PolydiscPoint{z});
  z(1) = Complex(0, 1.0);
  CHECK_THROWS_AS(PolydiscPoint{z}, DomainError);
  CHECK_THROWS(BallPoint{CVec(0)});

  CMat m = CMat::Identity(2, 2) * 0.5;
  CHECK_NOTHROW(DomainMatrixPoint{m});
  m(0, 1) = 0.9;  // spectral norm > 1
  CHECK_THROWS_AS(DomainMatrixPoint{m}, DomainError);
  CHECK_THROWS(DomainMatrixPoint{CMat::Zero(2, 3)});
  CHECK(in_omega1(CMat::Identity(2, 2) * 0.99));
  CHECK_FALSE(in_omega1(CMat::Identity(2, 2)));
  CHECK(omega1_margin(CMat::Zero(2, 2)) == doctest::Approx(1.0));
}

TEST_CASE("geometry spec names and constants") {
  const GeometrySpec b = GeometrySpec::parse("ball3");
  CHECK(b.kind == GeometryKind::Ball);
  CHECK(b.complex_dimension() == 3);
  CHECK(b.x_constant() == doctest::Approx(2.0));
  const GeometrySpec p = GeometrySpec::parse("poly2");
  CHECK(p.rank() == 2);
  CHECK(p.x_constant() == doctest::Approx(2 * std::sqrt(2.0)));
  const GeometrySpec o = GeometrySpec::parse("omega2");
  CHECK(o.complex_dimension() == 4);
  CHECK(o.name() == "omega2");
  for (const char* bad : {"ball0", "ball", "disc2", "ball2x", ""}) {
    CHECK_THROWS_AS(GeometrySpec::parse(bad), std::invalid_argument);
  }
}

TEST_CASE("samplers are seeded and respect rmax") {
  for (const GeometrySpec& g : {GeometrySpec::ball(2), GeometrySpec::polydisc(3), GeometrySpec::omega1(2)}) {
    Rng rng(42);
    for (int i = 0; i < 200; ++i) {
      const AnyPoint p = sample_point(rng, g, 0.9);
      std::visit(
          [&](const auto& q) {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, BallPoint>) CHECK(q.z().norm() <= 0.9);
            if constexpr (std::is_same_v<T, PolydiscPoint>) CHECK(q.z().cwiseAbs().maxCoeff() <= 0.9);
            if constexpr (std::is_same_v<T, DomainMatrixPoint>) {
              CHECK(Eigen::JacobiSVD<CMat>(q.z()).singularValues()(0) <= 0.9 + 1e-15);
            }
          },
          p);
    }
    const AnyPoint a = sample_point(7, g, 0.5);
    const AnyPoint b = sample_point(7, g, 0.5);
    CHECK(std::visit([](const auto& q) { return q.real(); }, a) ==
          std::visit([](const auto& q) { return q.real(); }, b));
  }
  Rng rng(1);
  CHECK_THROWS(sample_ball(rng, 2, 1.0));
  CHECK_THROWS(sample_ball(rng, 2, 0.0));
  const CMat u = sample_unitary(rng, 3);
  CHECK((u * u.adjoint() - CMat::Identity(3, 3)).norm() < 1e-13);
}

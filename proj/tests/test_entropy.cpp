#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diastasis/entropy.hpp"

#include <algorithm>
#include <cmath>

using namespace diastasis;
using namespace diastasis::entropy;

namespace {

// int_0^R (1 - r^2)^{c-2} r dr in closed form
double disc_integral(double c, double radius) {
  const double v = 1 - radius * radius;
  if (std::abs(c - 1) < 1e-14) return -0.5 * std::log(v);
  return (1 - std::pow(v, c - 1)) / (2 * (c - 1));
}

// int_0^R (1 - r^2)^{c-3} r^3 dr for the ball n = 2, via s = 1 - r^2
double ball2_integral(double c, double radius) {
  const double v = 1 - radius * radius;
  const double a = c - 2;  // int_v^1 s^{c-3} (1 - s) ds / 2
  auto prim = [&](double s) { return std::pow(s, a) / a - std::pow(s, a + 1) / (a + 1); };
  return 0.5 * (prim(1) - prim(v));
}

double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
  return s * h / 3;
}

}  // namespace

TEST_CASE("partial integrals match closed forms") {
  for (double c : {0.5, 1.5, 2.5, 4.0}) {
    const ProbeResult r = radial_probe(GeometrySpec::ball(1), c);
    REQUIRE(r.partial.size() == static_cast<std::size_t>(kDefaultLevels));
    for (std::size_t k = 0; k < r.partial.size(); k += 7) {
      CHECK(r.radii[k] == doctest::Approx(1 - std::ldexp(1.0, -static_cast<int>(k) - 1)));
      CHECK(r.partial[k] == doctest::Approx(disc_integral(c, r.radii[k])).epsilon(1e-8));
    }
    const ProbeResult p = radial_probe(GeometrySpec::polydisc(3), c);
    for (std::size_t k = 0; k < p.partial.size(); k += 7) {
      CHECK(p.partial[k] == doctest::Approx(std::pow(disc_integral(c, p.radii[k]), 3)).epsilon(1e-8));
    }
  }
  for (double c : {2.5, 3.0, 5.0}) {
    const ProbeResult r = radial_probe(GeometrySpec::ball(2), c);
    for (std::size_t k = 0; k < r.partial.size(); k += 5) {
      CHECK(r.partial[k] == doctest::Approx(ball2_integral(c, r.radii[k])).epsilon(1e-10));
    }
  }
}

TEST_CASE("condition (a) integrand matches direct quadrature") {
  const double c = 2.5;
  const ProbeResult r = condition_a_probe(GeometrySpec::ball(1), c);
  for (int k : {0, 2, 4}) {
    const double radius = r.radii[k];
    const double direct =
        simpson([&](double t) { return std::pow(1 - t * t, c - 2) * t * std::atanh(t); }, 0.0, radius, 20000);
    CHECK(r.partial[k] == doctest::Approx(direct).epsilon(1e-9));
  }
  CHECK(r.partial[0] > 0);
  CHECK(r.partial[0] < 0.1);
}

TEST_CASE("probe examples") {
  const GeometrySpec b2 = GeometrySpec::ball(2);
  CHECK(radial_probe(b2, 3.0).verdict == Verdict::Convergent);
  CHECK(radial_probe(b2, 2.0).verdict == Verdict::Divergent);
  CHECK(condition_a_probe(b2, 2.5).verdict == Verdict::Convergent);
  CHECK(condition_a_probe(b2, 2.0).verdict == Verdict::Divergent);
  CHECK(radial_probe(GeometrySpec::polydisc(2), 1.5).verdict == Verdict::Convergent);
  CHECK(radial_probe(GeometrySpec::polydisc(2), 1.0).verdict == Verdict::Divergent);
  // just above the critical value the short window cannot decide yet
  CHECK(radial_probe(b2, 2.02).verdict == Verdict::Undecided);
}

TEST_CASE("partials are nonnegative and nondecreasing") {
  for (double c : {0.3, 1.0, 2.0, 3.7, 9.0}) {
    for (const GeometrySpec& g : {GeometrySpec::ball(1), GeometrySpec::ball(3), GeometrySpec::polydisc(2)}) {
      const ProbeResult r = radial_probe(g, c);
      CHECK(r.partial.front() >= 0);
      CHECK(std::is_sorted(r.partial.begin(), r.partial.end()));
      CHECK(std::is_sorted(r.radii.begin(), r.radii.end()));
    }
  }
}

TEST_CASE("verdict thresholds follow the config") {
  ProbeConfig loose;
  loose.decay_ratio = 0.99;
  // with a permissive decay ratio the near-critical probe becomes convergent
  CHECK(radial_probe(GeometrySpec::ball(2), 2.02, kDefaultLevels, loose).verdict == Verdict::Convergent);
  CHECK(to_string(Verdict::Convergent) == "convergent");
  CHECK(to_string(Verdict::Divergent) == "divergent");
  CHECK(to_string(Verdict::Undecided) == "undecided");
}

TEST_CASE("critical exponents and entropies") {
  for (int n = 1; n <= 3; ++n) {
    CHECK(std::abs(critical_exponent(GeometrySpec::ball(n), 0.05) - n) <= 0.05);
  }
  CHECK(std::abs(critical_exponent(GeometrySpec::polydisc(2), 0.05) - 1.0) <= 0.05);
  CHECK(std::abs(diastatic_entropy(GeometrySpec::ball(2), 0.05) - 4.0) <= 0.1);
  CHECK(std::abs(diastatic_entropy(GeometrySpec::ball(3), 0.05) - 6.0) <= 0.1);
  CHECK(std::abs(diastatic_entropy(GeometrySpec::polydisc(2), 0.05) - 2 * std::sqrt(2.0)) <= 2 * std::sqrt(2.0) * 0.05);
  // tighter tolerance converges too
  CHECK(std::abs(critical_exponent(GeometrySpec::ball(2), 1e-3) - 2.0) <= 0.02);
}

TEST_CASE("argument errors") {
  const GeometrySpec b = GeometrySpec::ball(2);
  CHECK_THROWS_AS(radial_probe(b, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(radial_probe(b, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(radial_probe(b, 2.0, 4), std::invalid_argument);
  ProbeConfig wide;
  wide.window = 40;
  CHECK_THROWS_AS(radial_probe(b, 2.0, 40, wide), std::invalid_argument);
  CHECK_THROWS_AS(radial_probe(GeometrySpec::omega1(2), 3.0), std::invalid_argument);
  CHECK_THROWS_AS(condition_a_probe(GeometrySpec::polydisc(2), 3.0), std::invalid_argument);
  CHECK_THROWS_AS(critical_exponent(b, 1e-4), std::invalid_argument);
  CHECK_THROWS(critical_exponent(GeometrySpec::omega1(2), 0.05));
}

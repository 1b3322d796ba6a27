#include "diastasis/entropy.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <functional>
#include <stdexcept>

namespace diastasis::entropy {

namespace {

// Log of the integrand as a function of u = 1 - r.
using LogIntegrand = std::function<double(double)>;

// log of the integral over u in [u_lo, 2 u_lo], computed relative to the
// value at u_lo so that steep power laws neither overflow nor underflow.
double log_shell(const LogIntegrand& log_f, double u_lo) {
  const double ref = log_f(u_lo);
  auto scaled = [&](double s) { return std::exp(log_f(u_lo * s) - ref); };
  const double integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(scaled, 1.0, 2.0, 15, 1e-14);
  return ref + std::log(u_lo) + std::log(integral);
}

// Shell k covers r in [R_{k-1}, R_k], R_k = 1 - 2^{-k}. Fills radii and
// partial values (cumulative integral)^power and returns the log shell
// integrals. I^power is finite iff I is, so the verdict uses the latter.
std::vector<double> accumulate(const LogIntegrand& log_f, int levels, int power, ProbeResult& out) {
  std::vector<double> log_inc;
  double base = 0;
  for (int k = 1; k <= levels; ++k) {
    const double u_lo = std::ldexp(1.0, -k);
    const double ls = log_shell(log_f, u_lo);
    base += std::exp(ls);
    out.radii.push_back(1.0 - u_lo);
    out.partial.push_back(std::pow(base, power));
    log_inc.push_back(ls);
  }
  return log_inc;
}

Verdict classify(const std::vector<double>& log_inc, const ProbeConfig& config) {
  const int levels = static_cast<int>(log_inc.size());
  const double log_flat = std::log1p(-config.flat_tolerance);
  bool nonincreasing = true;
  bool nondecreasing = true;
  for (int k = levels - config.window; k < levels; ++k) {
    if (log_inc[k] > log_inc[k - 1]) nonincreasing = false;
    if (log_inc[k] < log_inc[k - 1] + log_flat) nondecreasing = false;
  }
  const double log_decay = log_inc[levels - 1] - log_inc[levels - 1 - config.window];
  if (nonincreasing && log_decay <= std::log(config.decay_ratio)) return Verdict::Convergent;
  if (nondecreasing) return Verdict::Divergent;
  return Verdict::Undecided;
}

void check_probe_args(double c, int levels, const ProbeConfig& config) {
  if (!(c > 0)) throw std::invalid_argument("probe: c must be positive");
  if (levels < 8) throw std::invalid_argument("probe: levels must be >= 8");
  if (config.window < 1 || config.window >= levels) {
    throw std::invalid_argument("probe: window must lie in [1, levels)");
  }
}

ProbeResult probe(const GeometrySpec& geometry, double c, int levels, const ProbeConfig& config,
                  bool with_distance) {
  check_probe_args(c, levels, config);
  ProbeResult out;
  out.c = c;
  std::vector<double> log_inc;
  switch (geometry.kind) {
    case GeometryKind::Ball: {
      const double n = geometry.param;
      const LogIntegrand log_f = [=](double u) {
        // (1 - r^2) = u (2 - u), r = 1 - u
        double v = (c - n - 1) * std::log(u * (2 - u)) + (2 * n - 1) * std::log1p(-u);
        if (with_distance) v += std::log(0.5 * std::log((2 - u) / u));
        return v;
      };
      log_inc = accumulate(log_f, levels, 1, out);
      break;
    }
    case GeometryKind::Polydisc: {
      if (with_distance) {
        throw std::invalid_argument("condition_a_probe: only the ball is supported");
      }
      const LogIntegrand log_f = [=](double u) { return (c - 2) * std::log(u * (2 - u)) + std::log1p(-u); };
      log_inc = accumulate(log_f, levels, geometry.param, out);
      break;
    }
    case GeometryKind::Omega1:
      throw std::invalid_argument("probe: matrix-domain entropy probes are not supported");
  }
  out.verdict = classify(log_inc, config);
  return out;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Convergent:
      return "convergent";
    case Verdict::Divergent:
      return "divergent";
    case Verdict::Undecided:
      return "undecided";
  }
  return {};
}

ProbeResult radial_probe(const GeometrySpec& geometry, double c, int levels, const ProbeConfig& config) {
  return probe(geometry, c, levels, config, false);
}

ProbeResult condition_a_probe(const GeometrySpec& geometry, double c, int levels, const ProbeConfig& config) {
  if (geometry.kind != GeometryKind::Ball) {
    throw std::invalid_argument("condition_a_probe: only the ball is supported");
  }
  return probe(geometry, c, levels, config, true);
}

double critical_exponent(const GeometrySpec& geometry, double tol, const CriticalConfig& config) {
  if (!(tol >= 1e-3)) throw std::invalid_argument("critical_exponent: tol must be >= 1e-3");
  auto verdict = [&](double c) { return radial_probe(geometry, c, config.levels, config.probe).verdict; };

  double lo = 1e-3;
  double hi = 10.0 * geometry.complex_dimension();
  if (verdict(lo) != Verdict::Divergent || verdict(hi) != Verdict::Convergent) {
    throw std::runtime_error("critical_exponent: no divergent/convergent bracket in (0, 10 * dim]");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (verdict(mid) == Verdict::Divergent) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double diastatic_entropy(const GeometrySpec& geometry, double tol, const CriticalConfig& config) {
  return geometry.x_constant() * critical_exponent(geometry, tol, config);
}

}  // namespace diastasis::entropy

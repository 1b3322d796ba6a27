#pragma once

/// Diastatic entropy as a critical exponent.
///
/// With basepoint 0 the integrand exp(-c D_0) nu is radial, so the volume
/// integral reduces to one dimension (angular factors dropped):
///   ball n:     int_0^1 (1 - r^2)^{c-n-1} r^{2n-1} dr
///   polydisc r: (int_0^1 (1 - p^2)^{c-2} p dp)^r
/// Truncations at R_k = 1 - 2^{-k} are accumulated shell by shell and the tail
/// increments decide the verdict.

#include "diastasis/geometry_types.hpp"

#include <string>
#include <vector>

namespace diastasis::entropy {

enum class Verdict { Convergent, Divergent, Undecided };

std::string to_string(Verdict v);

/// Divergence heuristic knobs.
///  - convergent: increments non-increasing over the last `window` levels and
///    the last increment is at most `decay_ratio` times the one `window`
///    levels earlier;
///  - divergent: increments non-decreasing (to relative `flat_tolerance`)
///    over the window;
///  - otherwise undecided.
struct ProbeConfig {
  int window = 5;
  double decay_ratio = 0.75;
  double flat_tolerance = 1e-9;
};

inline constexpr int kDefaultLevels = 40;

struct ProbeResult {
  double c = 0;
  std::vector<double> radii;    // R_k
  std::vector<double> partial;  // I_k, nondecreasing
  Verdict verdict = Verdict::Undecided;
};

/// Requires c > 0 and levels >= 8 (and levels > window).
ProbeResult radial_probe(const GeometrySpec& geometry, double c, int levels = kDefaultLevels,
                         const ProbeConfig& config = {});

/// Ball only: the radial integrand multiplied by the distance arctanh(r)
/// to the basepoint.
ProbeResult condition_a_probe(const GeometrySpec& geometry, double c, int levels = kDefaultLevels,
                              const ProbeConfig& config = {});

/// Bisection settings used by critical_exponent: a deeper probe and a wider
/// decay window than the defaults, so that the undecided band above the
/// critical value is narrower than 0.011.
struct CriticalConfig {
  int levels = 48;
  ProbeConfig probe{40, 0.75, 1e-9};
};

/// inf{c : integral finite}, by bisection to bracket width <= tol. Undecided
/// midpoints are treated as the convergent side. Requires tol >= 1e-3;
/// throws std::runtime_error if no bracket exists in (0, 10 * dim].
double critical_exponent(const GeometrySpec& geometry, double tol, const CriticalConfig& config = {});

/// X(g) * critical_exponent.
double diastatic_entropy(const GeometrySpec& geometry, double tol, const CriticalConfig& config = {});

}  // namespace diastasis::entropy

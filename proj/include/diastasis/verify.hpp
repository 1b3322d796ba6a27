#pragma once

/// Seeded property checks over every module, grouped into named suites.
/// Each check returns one or more records; the acceptance binary and the
/// `verify` CLI subcommand both run them.

#include "diastasis/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace diastasis::verify {

using Records = std::vector<CheckRecord>;

// ---- complex hyperbolic ball ----
/// |D - 2 log cosh rho| with rho from distance() and from the Moebius route
/// atanh|phi_w(z)|; also D >= 0 with D(z,z) = 0.
Records ball_logcosh(std::uint64_t seed, int pairs_per_dim, const std::vector<int>& dims);
/// | |grad D_w|_g - 2 tanh rho |, and max |grad|_g against the bound 2.
Records ball_gradient_law(std::uint64_t seed, int pairs_per_dim, const std::vector<int>& dims);
/// Analytic covariant Hessian vs finite differences (relative), positivity
/// and the (0, 4) band of metric-normalized eigenvalues.
Records ball_hessian(std::uint64_t seed, int configs_per_dim, const std::vector<int>& dims);
/// Moebius invariance of D, rho and the Hessian spectrum; inverse contract;
/// metric = half the Hessian at the centre.
Records ball_mobius(std::uint64_t seed, int configs_per_dim, const std::vector<int>& dims);

// ---- polydisc and Omega_1 ----
Records polydisc_inequality(std::uint64_t seed, int pairs_per_rank, const std::vector<int>& ranks);
/// Moebius-reduction vs closed form, and invariance under Z -> U1 Z U2.
Records omega1_diastasis_routes(std::uint64_t seed, int pairs, int m);
/// Gradient bound 2 sqrt(m^2) and Hessian band (0, 4) with margin 1e-9.
Records omega1_bounds(std::uint64_t seed, int pairs, int m, double rmax);
/// Diagonal-slice gradient / Hessian formulas vs finite differences.
Records omega1_diagonal_fd(std::uint64_t seed, int samples, int m);
/// General-pair gradient / Hessian vs finite differences.
Records omega1_general_fd(std::uint64_t seed, int samples, int m);
Records hereditary(std::uint64_t seed, int pairs, const std::vector<int>& dims);

// ---- barycentre ----
Records barycentre_solver(std::uint64_t seed, int problems);
Records barycentre_exact_cases(std::uint64_t seed, int cases);
Records barycentre_equivariance(std::uint64_t seed, int instances);

// ---- operators ----
/// trace K, the K(H) identity, traces of H and H', Cauchy-Schwarz and the
/// determinant inequality on `instances` random maps for each n.
Records operator_identities(std::uint64_t seed, int instances, const std::vector<int>& dims, int uv_pairs);
Records jacobian_fd(std::uint64_t seed, int instances, const std::vector<int>& dims);
/// Value at the maximizer and random / hill-climbed admissible H.
Records hsuk_extremal(std::uint64_t seed, int random_samples, int climb_starts, const std::vector<int>& dims);

// ---- entropy ----
Records entropy_critical(const std::vector<int>& dims, double tol);
Records entropy_separation(const std::vector<int>& dims, double tol);
Records entropy_condition_a(const std::vector<int>& dims);

/// Suite names: hyperbolic, domains, barycentre, operators, entropy, all.
bool is_suite(const std::string& name);
const std::vector<std::string>& suite_names();

/// Runs a suite. `samples` scales the random sample counts (FD-heavy and
/// solver-heavy checks use a fraction of it). Fills config and seed; wall
/// time is set by the caller.
Report run_suite(const std::string& name, std::uint64_t seed, int samples);

}  // namespace diastasis::verify

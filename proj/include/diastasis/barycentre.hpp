#pragma once

/// Diastatic barycentres of weighted point clouds on the complex hyperbolic
/// ball, the homotopy to a fixed anchor, the barycentre map of a point cloud
/// with exponential weights, its Jacobian and the K / H / H' operators.

#include "diastasis/geometry_types.hpp"
#include "diastasis/hyperbolic_ball.hpp"
#include "diastasis/numerics.hpp"

#include <optional>
#include <span>
#include <vector>

namespace diastasis::bary {

struct Atom {
  BallPoint point;
  double weight;
};

/// Non-empty list of atoms with positive, finite weights.
class DiscreteMeasure {
 public:
  explicit DiscreteMeasure(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  Eigen::Index dim() const { return atoms_.front().point.dim(); }
  double total_weight() const;

 private:
  std::vector<Atom> atoms_;
};

/// Minimize  t * sum_i w_i D(images_i, x) + (1 - t) * D(anchor, x).
struct BarycentreProblem {
  DiscreteMeasure measure;
  std::vector<BallPoint> images;
  double t = 1.0;
  BallPoint anchor;
  double c = 0.0;

  /// Problem whose images are the atom points themselves and t = 1.
  static BarycentreProblem from_measure(DiscreteMeasure measure);

  /// Throws std::invalid_argument when images and atoms are misaligned or t
  /// is outside [0, 1].
  void validate() const;
};

struct SolverOptions {
  double tol = 1e-10;
  int max_iters = 200;
};

struct BarycentreResult {
  BallPoint point;
  double residual = 0;
  int iterations = 0;
  /// Smallest metric-normalized eigenvalue of the objective Hessian seen
  /// over all iterates (strict convexity certificate).
  double min_hessian_eigenvalue = 0;
};

class BarycentreNotConverged : public ConvergenceError {
 public:
  BarycentreNotConverged(const std::string& what, BarycentreResult best)
      : ConvergenceError(what), best_(std::move(best)) {}
  const BarycentreResult& best() const { return best_; }

 private:
  BarycentreResult best_;
};

/// Objective and residual are normalized by the total mass
/// t * sum w_i + (1 - t).
double barycentre_objective(const BarycentreProblem& problem, const BallPoint& x);

/// Metric norm of the mass-normalized gradient of the objective at x.
double barycentre_residual(const BarycentreProblem& problem, const BallPoint& x);

/// Damped Newton iteration in the ball chart using the covariant Hessian of
/// the objective.
BarycentreResult solve_barycentre(const BarycentreProblem& problem, const SolverOptions& options = {},
                                  const std::optional<BallPoint>& start = std::nullopt);

/// Solutions along a sorted grid of t values in [0, 1], warm-started.
std::vector<BallPoint> homotopy_path(const BarycentreProblem& problem, std::span<const double> grid,
                                     const SolverOptions& options = {});

/// Cloud z_i with base weights v_i, optional isometry f, exponent c.
/// Weights at y are v_i exp(-c D(y, z_i)); images are f(z_i).
struct DiscreteBarycentreMap {
  std::vector<BallPoint> cloud;
  std::vector<double> base_weights;
  std::optional<ball::MobiusIsometry> f;
  double c = 0;
  /// Permit c <= n for experiments; flagged by is_subcritical().
  bool allow_subcritical = false;

  Eigen::Index dim() const { return cloud.front().dim(); }
  bool is_subcritical() const { return c <= static_cast<double>(dim()); }
  BallPoint image(std::size_t i) const;
  void validate() const;
};

/// The barycentre problem at y. Weights are rescaled by a common factor so
/// the largest exponential is 1.
BarycentreProblem pushed_problem(const DiscreteBarycentreMap& map, const BallPoint& y);

BallPoint discrete_F(const DiscreteBarycentreMap& map, const BallPoint& y, const SolverOptions& options = {});

/// Chart Jacobian of discrete_F at y from the implicit equation
///   A dF = c B,  A = sum mu_i Hess_x D_{f(z_i)},  B = sum mu_i d_x D_{f(z_i)} (x) d_y D_{z_i}.
/// Requires x to be the converged barycentre at y.
Mat jacobian_F(const DiscreteBarycentreMap& map, const BallPoint& y, const BallPoint& x);
Mat jacobian_F(const DiscreteBarycentreMap& map, const BallPoint& y);

/// K, H at the barycentre x and H' at y, mass-normalized and written in
/// metric-orthonormal frames (frame = G^{1/2} maps chart vectors to frame
/// coordinates).
struct OperatorTriple {
  RealForm K;
  RealForm H;
  RealForm Hprime;
  double mass = 0;
  Mat target_frame;  // G(x)^{1/2}
  Mat source_frame;  // G(y)^{1/2}
};

OperatorTriple operator_triple(const DiscreteBarycentreMap& map, const BallPoint& y, const BallPoint& x);

/// Jacobian of discrete_F expressed in the orthonormal frames of a triple.
Mat orthonormal_jacobian(const OperatorTriple& ops, const Mat& chart_jacobian);

/// K(H) = 2I - H/2 - JHJ/2.
Mat k_of_h(const Mat& h, const ComplexStructure& j);

/// (det H)^{1/2} / det K(H). Requires H symmetric PSD with trace <= 4 and
/// K(H) positive definite; throws DomainError otherwise.
double hsuk_ratio(const RealForm& h, const ComplexStructure& j);

/// (1 / 2n)^n, the value at H = (2/n) I.
double hsuk_bound(int n);

struct LemdetReport {
  double lhs = 0;  // |det K| |det dF|
  double rhs = 0;  // (X^2 c^2 / 2n)^n (det H)^{1/2}, X = 2
  bool holds = false;
  double ratio = 0;  // lhs / rhs
  // (lhs - rhs) / ((X^2 c^2 / 2n)^n (tr H / 2n)^n); the scale bounds rhs over
  // H of the same trace, so this stays meaningful when det H ~ 0.
  double normalized_excess = 0;
  bool well_conditioned = false;  // rhs >= 1e-8 * scale
  bool subcritical = false;
};

/// Requires at least two distinct images.
LemdetReport lemdet_check(const DiscreteBarycentreMap& map, const BallPoint& y, const SolverOptions& options = {});

}  // namespace diastasis::bary

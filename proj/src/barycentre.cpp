#include "diastasis/barycentre.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace diastasis::bary {

namespace {

constexpr double kMaxCondition = 1e12;
constexpr double kStartRadius = 0.99;

// Normalized weights over images followed by the anchor.
struct WeightedTerms {
  std::vector<const BallPoint*> centers;
  std::vector<double> weights;
};

WeightedTerms terms_of(const BarycentreProblem& p) {
  WeightedTerms terms;
  double mass = 0;
  for (std::size_t i = 0; i < p.images.size(); ++i) {
    const double w = p.t * p.measure.atoms()[i].weight;
    if (w > 0) {
      terms.centers.push_back(&p.images[i]);
      terms.weights.push_back(w);
      mass += w;
    }
  }
  if (p.t < 1.0) {
    terms.centers.push_back(&p.anchor);
    terms.weights.push_back(1.0 - p.t);
    mass += 1.0 - p.t;
  }
  for (double& w : terms.weights) {
    w /= mass;
  }
  return terms;
}

Vec objective_differential(const WeightedTerms& terms, const BallPoint& x) {
  Vec d = Vec::Zero(2 * x.dim());
  for (std::size_t i = 0; i < terms.centers.size(); ++i) {
    d += terms.weights[i] * ball::differential(*terms.centers[i], x);
  }
  return d;
}

Mat objective_hessian(const WeightedTerms& terms, const BallPoint& x) {
  Mat h = Mat::Zero(2 * x.dim(), 2 * x.dim());
  for (std::size_t i = 0; i < terms.centers.size(); ++i) {
    h += terms.weights[i] * ball::hessian_diastasis(*terms.centers[i], x).matrix();
  }
  return h;
}

double objective(const WeightedTerms& terms, const BallPoint& x) {
  double s = 0;
  for (std::size_t i = 0; i < terms.centers.size(); ++i) {
    s += terms.weights[i] * ball::diastasis(*terms.centers[i], x);
  }
  return s;
}

double dual_norm(const BallPoint& x, const Vec& covector) {
  const Mat g = ball::metric_matrix(x).matrix();
  return std::sqrt(std::max(0.0, covector.dot(g.ldlt().solve(covector))));
}

BallPoint initial_iterate(const WeightedTerms& terms, Eigen::Index n) {
  CVec mean = CVec::Zero(n);
  for (std::size_t i = 0; i < terms.centers.size(); ++i) {
    mean += terms.weights[i] * terms.centers[i]->z();
  }
  const double r = mean.norm();
  if (r >= kStartRadius) {
    mean *= kStartRadius / r;
  }
  return BallPoint(mean);
}

double condition_number(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a, Eigen::EigenvaluesOnly);
  const Vec ev = es.eigenvalues();
  return ev.maxCoeff() / ev.minCoeff();
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) {
    throw std::invalid_argument("DiscreteMeasure: at least one atom required");
  }
  for (const Atom& a : atoms_) {
    if (!(a.weight > 0) || !std::isfinite(a.weight)) {
      throw std::invalid_argument("DiscreteMeasure: weights must be positive and finite");
    }
    if (a.point.dim() != atoms_.front().point.dim()) {
      throw std::invalid_argument("DiscreteMeasure: atoms of different dimension");
    }
  }
}

double DiscreteMeasure::total_weight() const {
  double s = 0;
  for (const Atom& a : atoms_) s += a.weight;
  return s;
}

BarycentreProblem BarycentreProblem::from_measure(DiscreteMeasure measure) {
  std::vector<BallPoint> images;
  for (const Atom& a : measure.atoms()) images.push_back(a.point);
  BallPoint anchor = images.front();
  return {std::move(measure), std::move(images), 1.0, std::move(anchor), 0.0};
}

void BarycentreProblem::validate() const {
  if (images.size() != measure.size()) {
    throw std::invalid_argument("BarycentreProblem: images must align 1:1 with atoms");
  }
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("BarycentreProblem: t must lie in [0, 1]");
  }
  for (const BallPoint& p : images) {
    if (p.dim() != anchor.dim()) {
      throw std::invalid_argument("BarycentreProblem: images and anchor differ in dimension");
    }
  }
}

double barycentre_objective(const BarycentreProblem& problem, const BallPoint& x) {
  problem.validate();
  return objective(terms_of(problem), x);
}

double barycentre_residual(const BarycentreProblem& problem, const BallPoint& x) {
  problem.validate();
  return dual_norm(x, objective_differential(terms_of(problem), x));
}

BarycentreResult solve_barycentre(const BarycentreProblem& problem, const SolverOptions& options,
                                  const std::optional<BallPoint>& start) {
  problem.validate();
  if (!(options.tol > 0)) {
    throw std::invalid_argument("solve_barycentre: tol must be positive");
  }
  const WeightedTerms terms = terms_of(problem);
  const Eigen::Index n = problem.anchor.dim();

  BallPoint x = start ? *start : initial_iterate(terms, n);
  double value = objective(terms, x);
  Vec grad = objective_differential(terms, x);
  double residual = dual_norm(x, grad);
  double min_eig = std::numeric_limits<double>::infinity();

  for (int iter = 0;; ++iter) {
    const Mat hess = objective_hessian(terms, x);
    min_eig = std::min(min_eig, generalized_eigenvalues(hess, ball::metric_matrix(x).matrix()).minCoeff());
    if (residual <= options.tol) {
      return {x, residual, iter, min_eig};
    }
    if (iter >= options.max_iters) {
      throw BarycentreNotConverged("solve_barycentre: no convergence within max_iters",
                                   {x, residual, iter, min_eig});
    }

    const Vec step = -hess.ldlt().solve(grad);
    const Vec base = x.real();
    bool accepted = false;
    for (double lambda = 1.0; lambda > 1e-12; lambda *= 0.5) {
      const Vec cand_real = base + lambda * step;
      const CVec cand_z = to_complex(cand_real);
      if (!in_ball(cand_z)) continue;
      const BallPoint cand(cand_z);
      const double cand_value = objective(terms, cand);
      const Vec cand_grad = objective_differential(terms, cand);
      const double cand_residual = dual_norm(cand, cand_grad);
      const bool decreased = cand_value < value;
      // At round-off level the objective is flat; accept on residual progress.
      const bool flat = std::abs(cand_value - value) <= 1e-13 * std::max(1.0, std::abs(value)) &&
                        cand_residual < residual;
      if (decreased || flat) {
        x = cand;
        value = cand_value;
        grad = cand_grad;
        residual = cand_residual;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (residual <= options.tol) {
        return {x, residual, iter, min_eig};
      }
      throw BarycentreNotConverged("solve_barycentre: line search stalled", {x, residual, iter, min_eig});
    }
  }
}

std::vector<BallPoint> homotopy_path(const BarycentreProblem& problem, std::span<const double> grid,
                                     const SolverOptions& options) {
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw std::invalid_argument("homotopy_path: grid must be sorted");
  }
  std::vector<BallPoint> out;
  BarycentreProblem p = problem;
  std::optional<BallPoint> warm;
  for (double t : grid) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw std::invalid_argument("homotopy_path: grid values must lie in [0, 1]");
    }
    p.t = t;
    // t = 0 is solved from its own start, which is the anchor itself.
    const BarycentreResult r = solve_barycentre(p, options, t == 0.0 ? std::nullopt : warm);
    out.push_back(r.point);
    warm = r.point;
  }
  return out;
}

BallPoint DiscreteBarycentreMap::image(std::size_t i) const { return f ? f->apply(cloud[i]) : cloud[i]; }

void DiscreteBarycentreMap::validate() const {
  if (cloud.empty() || cloud.size() != base_weights.size()) {
    throw std::invalid_argument("DiscreteBarycentreMap: cloud and base weights must be non-empty and aligned");
  }
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (cloud[i].dim() != dim()) {
      throw std::invalid_argument("DiscreteBarycentreMap: cloud points of different dimension");
    }
    if (!(base_weights[i] > 0) || !std::isfinite(base_weights[i])) {
      throw std::invalid_argument("DiscreteBarycentreMap: base weights must be positive");
    }
  }
  if (f && f->center().dim() != dim()) {
    throw std::invalid_argument("DiscreteBarycentreMap: isometry dimension mismatch");
  }
  if (!(c > 0)) {
    throw std::invalid_argument("DiscreteBarycentreMap: c must be positive");
  }
  if (is_subcritical() && !allow_subcritical) {
    throw std::invalid_argument("DiscreteBarycentreMap: c must exceed the complex dimension n");
  }
}

BarycentreProblem pushed_problem(const DiscreteBarycentreMap& map, const BallPoint& y) {
  map.validate();
  std::vector<double> dists;
  dists.reserve(map.cloud.size());
  for (const BallPoint& z : map.cloud) dists.push_back(ball::diastasis(y, z));
  const double dmin = *std::min_element(dists.begin(), dists.end());

  std::vector<Atom> atoms;
  std::vector<BallPoint> images;
  for (std::size_t i = 0; i < map.cloud.size(); ++i) {
    atoms.push_back({map.cloud[i], map.base_weights[i] * std::exp(-map.c * (dists[i] - dmin))});
    images.push_back(map.image(i));
  }
  BallPoint anchor = images.front();
  return {DiscreteMeasure(std::move(atoms)), std::move(images), 1.0, std::move(anchor), map.c};
}

BallPoint discrete_F(const DiscreteBarycentreMap& map, const BallPoint& y, const SolverOptions& options) {
  return solve_barycentre(pushed_problem(map, y), options).point;
}

Mat jacobian_F(const DiscreteBarycentreMap& map, const BallPoint& y, const BallPoint& x) {
  const BarycentreProblem p = pushed_problem(map, y);
  if (barycentre_residual(p, x) > 1e-10) {
    throw std::invalid_argument("jacobian_F: x is not a converged barycentre of the measure at y");
  }
  const Eigen::Index dim = 2 * x.dim();
  Mat a = Mat::Zero(dim, dim);
  Mat b = Mat::Zero(dim, dim);
  for (std::size_t i = 0; i < p.images.size(); ++i) {
    const double mu = p.measure.atoms()[i].weight;
    a += mu * ball::hessian_diastasis(p.images[i], x).matrix();
    b += mu * ball::differential(p.images[i], x) * ball::differential(map.cloud[i], y).transpose();
  }
  if (condition_number(a) > kMaxCondition) {
    throw ConvergenceError("jacobian_F: Hessian sum is ill-conditioned");
  }
  return map.c * a.ldlt().solve(b);
}

Mat jacobian_F(const DiscreteBarycentreMap& map, const BallPoint& y) {
  return jacobian_F(map, y, discrete_F(map, y));
}

OperatorTriple operator_triple(const DiscreteBarycentreMap& map, const BallPoint& y, const BallPoint& x) {
  const BarycentreProblem p = pushed_problem(map, y);
  const Eigen::Index dim = 2 * x.dim();
  Mat k = Mat::Zero(dim, dim);
  Mat h = Mat::Zero(dim, dim);
  Mat hp = Mat::Zero(dim, dim);
  double mass = 0;
  for (std::size_t i = 0; i < p.images.size(); ++i) {
    const double mu = p.measure.atoms()[i].weight;
    const Vec alpha = ball::differential(p.images[i], x);
    const Vec beta = ball::differential(map.cloud[i], y);
    k += mu * ball::hessian_diastasis(p.images[i], x).matrix();
    h += mu * alpha * alpha.transpose();
    hp += mu * beta * beta.transpose();
    mass += mu;
  }
  const Mat gx = ball::metric_matrix(x).matrix();
  const Mat gy = ball::metric_matrix(y).matrix();
  const Mat ix = sym_inv_sqrt(gx);
  const Mat iy = sym_inv_sqrt(gy);
  auto frame = [](const Mat& inv_sqrt, const Mat& form) {
    const Mat m = inv_sqrt * form * inv_sqrt;
    return RealForm(0.5 * (m + m.transpose()));
  };
  return {frame(ix, k / mass), frame(ix, h / mass), frame(iy, hp / mass), mass, sym_sqrt(gx), sym_sqrt(gy)};
}

Mat orthonormal_jacobian(const OperatorTriple& ops, const Mat& chart_jacobian) {
  return ops.target_frame * chart_jacobian * ops.source_frame.inverse();
}

Mat k_of_h(const Mat& h, const ComplexStructure& j) {
  const Eigen::Index dim = h.rows();
  return 2.0 * Mat::Identity(dim, dim) - 0.5 * h - 0.5 * j.matrix * h * j.matrix;
}

double hsuk_ratio(const RealForm& h, const ComplexStructure& j) {
  const Mat& hm = h.matrix();
  if (hm.rows() != j.matrix.rows()) {
    throw std::invalid_argument("hsuk_ratio: H and J differ in size");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(hm, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-12) {
    throw DomainError("hsuk_ratio: H is not positive semidefinite");
  }
  if (hm.trace() > 4.0 * (1 + 1e-12)) {
    throw DomainError("hsuk_ratio: trace(H) exceeds 4");
  }
  const Mat k = k_of_h(hm, j);
  Eigen::SelfAdjointEigenSolver<Mat> ek(0.5 * (k + k.transpose()), Eigen::EigenvaluesOnly);
  if (!(ek.eigenvalues().minCoeff() > 0)) {
    throw DomainError("hsuk_ratio: K(H) is not positive definite");
  }
  const double det_h = std::max(0.0, es.eigenvalues().prod());
  return std::sqrt(det_h) / ek.eigenvalues().prod();
}

double hsuk_bound(int n) { return std::pow(1.0 / (2.0 * n), n); }

LemdetReport lemdet_check(const DiscreteBarycentreMap& map, const BallPoint& y, const SolverOptions& options) {
  map.validate();
  bool distinct = false;
  const BallPoint first = map.image(0);
  for (std::size_t i = 1; i < map.cloud.size() && !distinct; ++i) {
    distinct = ball::diastasis(first, map.image(i)) > 1e-12;
  }
  if (!distinct) {
    throw std::invalid_argument("lemdet_check: needs at least two distinct images");
  }
  const BallPoint x = discrete_F(map, y, options);
  const Mat jac = jacobian_F(map, y, x);
  const OperatorTriple ops = operator_triple(map, y, x);
  const Mat jac_on = orthonormal_jacobian(ops, jac);

  const int n = static_cast<int>(y.dim());
  constexpr double x_const = 2.0;
  LemdetReport r;
  r.lhs = std::abs(ops.K.matrix().determinant()) * std::abs(jac_on.determinant());
  const double c_factor = std::pow(x_const * x_const * map.c * map.c / (2.0 * n), n);
  r.rhs = c_factor * std::sqrt(std::max(0.0, ops.H.matrix().determinant()));
  const double scale = c_factor * std::pow(ops.H.matrix().trace() / (2.0 * n), n);
  r.normalized_excess = (r.lhs - r.rhs) / scale;
  r.well_conditioned = r.rhs >= 1e-8 * scale;
  r.holds = r.lhs <= r.rhs * (1 + 1e-8) || r.normalized_excess <= 1e-12;
  r.ratio = r.rhs > 0 ? r.lhs / r.rhs : std::numeric_limits<double>::infinity();
  r.subcritical = map.is_subcritical();
  return r;
}

}  // namespace diastasis::bary

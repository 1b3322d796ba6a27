#include "diastasis/verify.hpp"

#include "diastasis/barycentre.hpp"
#include "diastasis/classical_domains.hpp"
#include "diastasis/entropy.hpp"
#include "diastasis/hyperbolic_ball.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace diastasis::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Independent streams per check so suites stay reproducible when composed.
Rng stream(std::uint64_t seed, std::uint64_t check) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(check)};
  return Rng(seq);
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

double relative(const Mat& got, const Mat& want) { return max_abs(got - want) / std::max(1e-300, max_abs(want)); }

std::string tag(const std::string& base, const std::vector<int>& dims) {
  std::string s = base + "[";
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
  return s + "]";
}

ball::MobiusIsometry random_mobius(Rng& rng, Eigen::Index n, double rmax) {
  return ball::MobiusIsometry(sample_ball(rng, n, rmax), sample_unitary(rng, n));
}

bary::DiscreteBarycentreMap random_map(Rng& rng, int n, int min_points, int max_points, bool with_f) {
  bary::DiscreteBarycentreMap map;
  const int count = uniform_int(rng, min_points, max_points);
  for (int i = 0; i < count; ++i) {
    map.cloud.push_back(sample_ball(rng, n, 0.8));
    map.base_weights.push_back(uniform(rng, 0.2, 1.0));
  }
  map.c = n + 0.5 + uniform(rng, 0.0, 1.5);
  if (with_f) map.f = random_mobius(rng, n, 0.5);
  return map;
}

}  // namespace

// ---- complex hyperbolic ball ----------------------------------------------------

Records ball_logcosh(std::uint64_t seed, int pairs_per_dim, const std::vector<int>& dims) {
  Rng rng = stream(seed, 1);
  double dev_distance = 0, dev_mobius = 0, min_d = kInf, self = 0;
  long count = 0;
  for (int n : dims) {
    for (int i = 0; i < pairs_per_dim; ++i, ++count) {
      const BallPoint w = sample_ball(rng, n, 0.95);
      const BallPoint z = sample_ball(rng, n, 0.95);
      const double d = ball::diastasis(w, z);
      const double rho = ball::distance(w, z);
      const double rho_mobius = std::atanh(ball::mobius(w).apply(z).z().norm());
      dev_distance = std::max(dev_distance, std::abs(d - 2 * std::log(std::cosh(rho))));
      dev_mobius = std::max(dev_mobius, std::abs(d - 2 * std::log(std::cosh(rho_mobius))));
      min_d = std::min(min_d, d);
      self = std::max(self, std::abs(ball::diastasis(z, z)));
    }
  }
  const std::string dims_tag = tag("", dims);
  return {CheckRecord::at_most("ball.diastasis_eq_2logcosh_distance" + dims_tag, count, dev_distance, 1e-10),
          CheckRecord::at_most("ball.diastasis_eq_2logcosh_atanh_mobius" + dims_tag, count, dev_mobius, 1e-10),
          CheckRecord::at_least("ball.diastasis_nonnegative" + dims_tag, count, min_d, 0.0),
          CheckRecord::at_most("ball.diastasis_self_zero" + dims_tag, count, self, 1e-12)};
}

Records ball_gradient_law(std::uint64_t seed, int pairs_per_dim, const std::vector<int>& dims) {
  Rng rng = stream(seed, 2);
  double dev = 0, min_margin = kInf, at_self = 0;
  long count = 0;
  for (int n : dims) {
    for (int i = 0; i < pairs_per_dim; ++i, ++count) {
      const BallPoint w = sample_ball(rng, n, 0.95);
      const BallPoint x = sample_ball(rng, n, 0.95);
      const double norm = ball::metric_norm(x, ball::grad_diastasis(w, x).components);
      dev = std::max(dev, std::abs(norm - 2 * std::tanh(ball::distance(w, x))));
      min_margin = std::min(min_margin, 2.0 - norm);
      at_self = std::max(at_self, ball::grad_diastasis(x, x).components.cwiseAbs().maxCoeff());
    }
  }
  const std::string t = tag("", dims);
  return {CheckRecord::at_most("ball.grad_norm_eq_2tanh_distance" + t, count, dev, 1e-8),
          CheckRecord::at_least("ball.grad_norm_margin_below_2" + t, count, min_margin, 1e-12),
          CheckRecord::at_most("ball.grad_zero_at_centre" + t, count, at_self, 1e-12)};
}

Records ball_hessian(std::uint64_t seed, int configs_per_dim, const std::vector<int>& dims) {
  Rng rng = stream(seed, 3);
  double fd_err = 0, min_eig = kInf, max_eig = 0;
  long count = 0;
  for (int n : dims) {
    for (int i = 0; i < configs_per_dim; ++i, ++count) {
      const BallPoint w = sample_ball(rng, n, 0.8);
      const BallPoint x = sample_ball(rng, n, 0.8);
      const RealForm hess = ball::hessian_diastasis(w, x);
      const RealForm oracle = fd_covariant_hessian(
          [&](const Vec& p) { return ball::diastasis(w, BallPoint::from_real(p)); },
          [](const Vec& p) { return ball::metric_matrix(BallPoint::from_real(p)).matrix(); }, x.real());
      fd_err = std::max(fd_err, relative(hess.matrix(), oracle.matrix()));

      // Band check nearer the boundary; analytic only.
      const BallPoint w2 = sample_ball(rng, n, 0.95);
      const BallPoint x2 = sample_ball(rng, n, 0.95);
      const Vec ev =
          generalized_eigenvalues(ball::hessian_diastasis(w2, x2).matrix(), ball::metric_matrix(x2).matrix());
      min_eig = std::min(min_eig, ev.minCoeff());
      max_eig = std::max(max_eig, ev.maxCoeff());
    }
  }
  const std::string t = tag("", dims);
  return {CheckRecord::at_most("ball.hessian_vs_fd_relative" + t, count, fd_err, 1e-4),
          CheckRecord::at_least("ball.hessian_min_normalized_eigenvalue" + t, count, min_eig, 1e-12),
          CheckRecord::at_least("ball.hessian_margin_below_4" + t, count, 4.0 - max_eig, 1e-12)};
}

Records ball_mobius(std::uint64_t seed, int configs_per_dim, const std::vector<int>& dims) {
  Rng rng = stream(seed, 4);
  double d_dev = 0, rho_dev = 0, spec_dev = 0, inv_dev = 0, centre_dev = 0, iso_dev = 0, metric_dev = 0;
  long count = 0;
  for (int n : dims) {
    for (int i = 0; i < configs_per_dim; ++i, ++count) {
      const ball::MobiusIsometry phi = random_mobius(rng, n, 0.8);
      const BallPoint z1 = sample_ball(rng, n, 0.8);
      const BallPoint z2 = sample_ball(rng, n, 0.8);
      const BallPoint u1 = phi.apply(z1);
      const BallPoint u2 = phi.apply(z2);
      d_dev = std::max(d_dev, std::abs(ball::diastasis(u1, u2) - ball::diastasis(z1, z2)));
      rho_dev = std::max(rho_dev, std::abs(ball::distance(u1, u2) - ball::distance(z1, z2)));
      const Vec ev_src =
          generalized_eigenvalues(ball::hessian_diastasis(z2, z1).matrix(), ball::metric_matrix(z1).matrix());
      const Vec ev_img =
          generalized_eigenvalues(ball::hessian_diastasis(u2, u1).matrix(), ball::metric_matrix(u1).matrix());
      spec_dev = std::max(spec_dev, (ev_src - ev_img).cwiseAbs().maxCoeff());
      inv_dev = std::max(inv_dev, (phi.inverse_apply(u1).z() - z1.z()).cwiseAbs().maxCoeff());
      centre_dev = std::max(centre_dev, phi.apply(phi.center()).z().cwiseAbs().maxCoeff());
      const Mat l = phi.differential(z1);
      iso_dev = std::max(iso_dev, relative(l.transpose() * ball::metric_matrix(u1).matrix() * l,
                                           ball::metric_matrix(z1).matrix()));
      metric_dev = std::max(metric_dev, relative(0.5 * ball::hessian_diastasis(z1, z1).matrix(),
                                                 ball::metric_matrix(z1).matrix()));
    }
  }
  const std::string t = tag("", dims);
  return {CheckRecord::at_most("ball.mobius_preserves_diastasis" + t, count, d_dev, 1e-10),
          CheckRecord::at_most("ball.mobius_preserves_distance" + t, count, rho_dev, 1e-8),
          CheckRecord::at_most("ball.mobius_preserves_hessian_spectrum" + t, count, spec_dev, 1e-8),
          CheckRecord::at_most("ball.mobius_inverse" + t, count, inv_dev, 1e-10),
          CheckRecord::at_most("ball.mobius_sends_centre_to_origin" + t, count, centre_dev, 1e-12),
          CheckRecord::at_most("ball.mobius_differential_is_isometric" + t, count, iso_dev, 1e-8),
          CheckRecord::at_most("ball.metric_eq_half_hessian_at_centre" + t, count, metric_dev, 1e-8)};
}

// ---- polydisc and Omega_1 --------------------------------------------------------

Records polydisc_inequality(std::uint64_t seed, int pairs_per_rank, const std::vector<int>& ranks) {
  Rng rng = stream(seed, 5);
  double min_gap = kInf, rank_one = 0;
  long count = 0;
  for (int r : ranks) {
    for (int i = 0; i < pairs_per_rank; ++i, ++count) {
      const PolydiscPoint w = sample_polydisc(rng, r, 0.95);
      const PolydiscPoint z = sample_polydisc(rng, r, 0.95);
      const double gap = domains::polydisc_diastasis(w, z) - 2 * std::log(std::cosh(domains::polydisc_distance(w, z)));
      min_gap = std::min(min_gap, gap);
      if (r == 1) rank_one = std::max(rank_one, std::abs(gap));
    }
  }
  Records out{CheckRecord::at_least("polydisc.diastasis_ge_2logcosh_distance" + tag("", ranks), count, min_gap,
                                    -1e-12)};
  if (std::find(ranks.begin(), ranks.end(), 1) != ranks.end()) {
    out.push_back(CheckRecord::at_most("polydisc.rank1_equality", pairs_per_rank, rank_one, 1e-10));
  }
  return out;
}

Records omega1_diastasis_routes(std::uint64_t seed, int pairs, int m) {
  Rng rng = stream(seed, 6);
  double closed = 0, rotation = 0, mobius = 0, inverse = 0, centre = 0;
  for (int i = 0; i < pairs; ++i) {
    const DomainMatrixPoint w = sample_omega1(rng, m, 0.9);
    const DomainMatrixPoint z = sample_omega1(rng, m, 0.9);
    const double d = domains::omega1_diastasis(z, w);
    closed = std::max(closed, std::abs(d - domains::omega1_diastasis_closed_form(z, w)));

    const domains::Omega1Mobius rot =
        domains::Omega1Mobius::rotation(sample_unitary(rng, m), sample_unitary(rng, m));
    rotation = std::max(rotation, std::abs(domains::omega1_diastasis(rot.apply(z), rot.apply(w)) - d));

    const domains::Omega1Mobius phi(sample_omega1(rng, m, 0.7), sample_unitary(rng, m), sample_unitary(rng, m));
    mobius = std::max(mobius, std::abs(domains::omega1_diastasis(phi.apply(z), phi.apply(w)) - d));
    inverse = std::max(inverse, (phi.inverse_apply(phi.apply(z)).z() - z.z()).cwiseAbs().maxCoeff());
    centre = std::max(centre, phi.apply(phi.center()).z().cwiseAbs().maxCoeff());
  }
  const std::string t = "[m=" + std::to_string(m) + "]";
  return {CheckRecord::at_most("omega1.mobius_route_eq_closed_form" + t, pairs, closed, 1e-9),
          CheckRecord::at_most("omega1.rotation_invariance" + t, pairs, rotation, 1e-10),
          CheckRecord::at_most("omega1.mobius_preserves_diastasis" + t, pairs, mobius, 1e-10),
          CheckRecord::at_most("omega1.mobius_inverse" + t, pairs, inverse, 1e-10),
          CheckRecord::at_most("omega1.mobius_sends_centre_to_origin" + t, pairs, centre, 1e-12)};
}

Records omega1_bounds(std::uint64_t seed, int pairs, int m, double rmax) {
  Rng rng = stream(seed, 7);
  const double bound_dim = 2.0 * std::sqrt(static_cast<double>(m * m));
  const double bound_rank = 2.0 * std::sqrt(static_cast<double>(m));
  double margin_dim = kInf, margin_rank = kInf, min_eig = kInf, margin_four = kInf;
  for (int i = 0; i < pairs; ++i) {
    const DomainMatrixPoint w = sample_omega1(rng, m, rmax);
    const DomainMatrixPoint z = sample_omega1(rng, m, rmax);
    const Mat g = domains::omega1_metric_matrix(z).matrix();
    const Vec grad = domains::omega1_grad_diastasis(w, z).components;
    const double norm = std::sqrt(grad.dot(g * grad));
    margin_dim = std::min(margin_dim, bound_dim - norm);
    margin_rank = std::min(margin_rank, bound_rank - norm);
    const Vec ev = generalized_eigenvalues(domains::omega1_hessian_diastasis(w, z).matrix(), g);
    min_eig = std::min(min_eig, ev.minCoeff());
    margin_four = std::min(margin_four, 4.0 - ev.maxCoeff());
  }
  const std::string t = "[m=" + std::to_string(m) + "]";
  return {CheckRecord::at_least("omega1.grad_norm_margin_below_2sqrt_dim" + t, pairs, margin_dim, 1e-9),
          CheckRecord::at_least("omega1.grad_norm_margin_below_2sqrt_rank" + t, pairs, margin_rank, 1e-9),
          CheckRecord::at_least("omega1.hessian_min_normalized_eigenvalue" + t, pairs, min_eig, 1e-9),
          CheckRecord::at_least("omega1.hessian_margin_below_4" + t, pairs, margin_four, 1e-9)};
}

Records omega1_diagonal_fd(std::uint64_t seed, int samples, int m) {
  Rng rng = stream(seed, 8);
  double grad_err = 0, hess_err = 0;
  for (int i = 0; i < samples; ++i) {
    CVec s(m);
    for (int j = 0; j < m; ++j) {
      s(j) = std::polar(uniform(rng, 0.0, 0.9), uniform(rng, -M_PI, M_PI));
    }
    const DomainMatrixPoint z(s.asDiagonal().toDenseMatrix());
    const ScalarFunction f = [m](const Vec& p) {
      return domains::omega1_diastasis_at_origin(DomainMatrixPoint::from_real(p, m));
    };
    const MetricFunction metric = [m](const Vec& p) {
      return domains::omega1_metric_matrix(DomainMatrixPoint::from_real(p, m)).matrix();
    };
    const Mat g = metric(z.real());
    const Vec fd_grad = g.ldlt().solve(fd_gradient(f, z.real()));
    const Vec grad = domains::omega1_diagonal_gradient(s);
    grad_err = std::max(grad_err, (grad - fd_grad).cwiseAbs().maxCoeff() / std::max(1.0, max_abs(grad)));
    hess_err = std::max(hess_err, relative(domains::omega1_diagonal_hessian(s).matrix(),
                                           fd_covariant_hessian(f, metric, z.real()).matrix()));
  }
  const std::string t = "[m=" + std::to_string(m) + "]";
  return {CheckRecord::at_most("omega1.diagonal_gradient_vs_fd" + t, samples, grad_err, 1e-5),
          CheckRecord::at_most("omega1.diagonal_hessian_vs_fd" + t, samples, hess_err, 1e-3)};
}

Records omega1_general_fd(std::uint64_t seed, int samples, int m) {
  Rng rng = stream(seed, 9);
  double grad_err = 0, hess_err = 0;
  for (int i = 0; i < samples; ++i) {
    const DomainMatrixPoint w = sample_omega1(rng, m, 0.8);
    const DomainMatrixPoint z = sample_omega1(rng, m, 0.8);
    const ScalarFunction f = [&](const Vec& p) {
      return domains::omega1_diastasis_closed_form(DomainMatrixPoint::from_real(p, m), w);
    };
    const MetricFunction metric = [m](const Vec& p) {
      return domains::omega1_metric_matrix(DomainMatrixPoint::from_real(p, m)).matrix();
    };
    const Mat g = metric(z.real());
    const Vec fd_grad = g.ldlt().solve(fd_gradient(f, z.real()));
    const Vec grad = domains::omega1_grad_diastasis(w, z).components;
    grad_err = std::max(grad_err, (grad - fd_grad).cwiseAbs().maxCoeff() / std::max(1.0, max_abs(grad)));
    hess_err = std::max(hess_err, relative(domains::omega1_hessian_diastasis(w, z).matrix(),
                                           fd_covariant_hessian(f, metric, z.real()).matrix()));
  }
  const std::string t = "[m=" + std::to_string(m) + "]";
  return {CheckRecord::at_most("omega1.gradient_vs_fd" + t, samples, grad_err, 1e-5),
          CheckRecord::at_most("omega1.hessian_vs_fd" + t, samples, hess_err, 1e-3)};
}

Records hereditary(std::uint64_t seed, int pairs, const std::vector<int>& dims) {
  Records out;
  std::uint64_t k = 10;
  for (const domains::EmbeddingKind kind :
       {domains::EmbeddingKind::BallFirstRow, domains::EmbeddingKind::PolydiscDiagonal}) {
    for (int dim : dims) {
      const domains::HereditaryReport r = domains::verify_hereditary(kind, dim, pairs, seed * 1000003 + k++);
      const std::string t = "[" + domains::to_string(kind) + ",dim=" + std::to_string(dim) + "]";
      out.push_back(CheckRecord::at_most("hereditary.diastasis" + t, r.samples, r.diastasis_deviation, 1e-10));
      out.push_back(CheckRecord::at_most("hereditary.gradient" + t, r.samples, r.gradient_deviation, 1e-6));
      out.push_back(CheckRecord::at_most("hereditary.hessian" + t, r.samples, r.hessian_deviation, 1e-6));
    }
  }
  return out;
}

// ---- barycentre -------------------------------------------------------------------

Records barycentre_solver(std::uint64_t seed, int problems) {
  Rng rng = stream(seed, 20);
  double max_residual = 0, min_eig = kInf;
  int max_iters = 0;
  for (int i = 0; i < problems; ++i) {
    const int n = 1 + i % 2;
    const int atoms = uniform_int(rng, 1, 50);
    std::vector<bary::Atom> list;
    std::vector<BallPoint> images;
    for (int k = 0; k < atoms; ++k) {
      list.push_back({sample_ball(rng, n, 0.9), uniform(rng, 0.1, 1.0)});
      images.push_back(sample_ball(rng, n, 0.9));
    }
    const double t = i % 4 == 0 ? 1.0 : uniform(rng, 0.0, 1.0);
    const bary::BarycentreProblem p{bary::DiscreteMeasure(std::move(list)), std::move(images), t,
                                    sample_ball(rng, n, 0.9), 0.0};
    const bary::BarycentreResult r = bary::solve_barycentre(p);
    max_residual = std::max(max_residual, bary::barycentre_residual(p, r.point));
    min_eig = std::min(min_eig, r.min_hessian_eigenvalue);
    max_iters = std::max(max_iters, r.iterations);
  }
  return {CheckRecord::at_most("barycentre.residual", problems, max_residual, 1e-10),
          CheckRecord::at_least("barycentre.convexity_certificate_min_eigenvalue", problems, min_eig, 1e-12),
          CheckRecord::at_most("barycentre.max_newton_iterations", problems, max_iters, 200)};
}

Records barycentre_exact_cases(std::uint64_t seed, int cases) {
  Rng rng = stream(seed, 21);
  double dirac = 0, symmetric = 0, anchor = 0, endpoint = 0;
  for (int i = 0; i < cases; ++i) {
    const int n = 1 + i % 2;
    // Dirac at an image p
    const BallPoint p = sample_ball(rng, n, 0.9);
    const bary::BarycentreProblem d{bary::DiscreteMeasure({{sample_ball(rng, n, 0.9), uniform(rng, 0.1, 2.0)}}),
                                    {p}, 1.0, sample_ball(rng, n, 0.9), 0.0};
    dirac = std::max(dirac, (bary::solve_barycentre(d).point.z() - p.z()).cwiseAbs().maxCoeff());

    // Cloud symmetric under z -> -z with equal weights on each pair
    std::vector<bary::Atom> atoms;
    const double a = i == 0 ? 0.4 : uniform(rng, 0.05, 0.9);
    const int pairs = i == 0 ? 1 : uniform_int(rng, 1, 6);
    for (int k = 0; k < pairs; ++k) {
      const CVec z = k == 0 && i == 0 ? CVec::Constant(1, Complex(a, 0)) : sample_ball(rng, n, 0.9).z();
      const double w = i == 0 ? 1.0 : uniform(rng, 0.1, 1.0);
      atoms.push_back({BallPoint(z), w});
      atoms.push_back({BallPoint(-z), w});
    }
    const bary::BarycentreProblem s = bary::BarycentreProblem::from_measure(bary::DiscreteMeasure(std::move(atoms)));
    symmetric = std::max(symmetric, bary::solve_barycentre(s).point.z().cwiseAbs().maxCoeff());

    // t = 0 returns the anchor; homotopy endpoints
    std::vector<bary::Atom> list;
    std::vector<BallPoint> images;
    for (int k = 0; k < 5; ++k) {
      list.push_back({sample_ball(rng, n, 0.9), uniform(rng, 0.1, 1.0)});
      images.push_back(sample_ball(rng, n, 0.9));
    }
    bary::BarycentreProblem h{bary::DiscreteMeasure(std::move(list)), std::move(images), 0.0,
                              sample_ball(rng, n, 0.9), 0.0};
    anchor = std::max(anchor, (bary::solve_barycentre(h).point.z() - h.anchor.z()).cwiseAbs().maxCoeff());
    const std::vector<double> grid{0.0, 0.25, 0.5, 0.75, 1.0};
    const std::vector<BallPoint> path = bary::homotopy_path(h, grid);
    h.t = 1.0;
    const BallPoint full = bary::solve_barycentre(h).point;
    endpoint = std::max({endpoint, (path.front().z() - h.anchor.z()).cwiseAbs().maxCoeff(),
                         ball::distance(path.back(), full)});
  }
  return {CheckRecord::at_most("barycentre.dirac_returns_image", cases, dirac, 1e-12),
          CheckRecord::at_most("barycentre.symmetric_cloud_returns_origin", cases, symmetric, 1e-12),
          CheckRecord::at_most("barycentre.t0_returns_anchor_exactly", cases, anchor, 0.0),
          CheckRecord::at_most("barycentre.homotopy_endpoints", cases, endpoint, 1e-9)};
}

Records barycentre_equivariance(std::uint64_t seed, int instances) {
  Rng rng = stream(seed, 22);
  double dev = 0;
  for (int i = 0; i < instances; ++i) {
    const int n = 1 + i % 2;
    const bary::DiscreteBarycentreMap map = random_map(rng, n, 3, 30, false);
    const ball::MobiusIsometry gamma = random_mobius(rng, n, 0.6);
    const BallPoint y = sample_ball(rng, n, 0.7);
    bary::DiscreteBarycentreMap moved = map;
    for (BallPoint& z : moved.cloud) z = gamma.apply(z);
    const BallPoint lhs = bary::discrete_F(moved, gamma.apply(y));
    const BallPoint rhs = gamma.apply(bary::discrete_F(map, y));
    dev = std::max(dev, ball::distance(lhs, rhs));
  }
  return {CheckRecord::at_most("barycentre.equivariance_distance", instances, dev, 1e-7)};
}

// ---- operators ----------------------------------------------------------------------

Records operator_identities(std::uint64_t seed, int instances, const std::vector<int>& dims, int uv_pairs) {
  Rng rng = stream(seed, 30);
  double trace_dev = 0, k_dev = 0, max_tr_h = 0, max_tr_hp = 0, min_slack = kInf, max_ratio = 0;
  double max_excess = -kInf;
  long count = 0, conditioned = 0;
  std::normal_distribution<double> normal;
  for (int n : dims) {
    const ComplexStructure j = j_operator(n);
    for (int i = 0; i < instances; ++i, ++count) {
      const bary::DiscreteBarycentreMap map = random_map(rng, n, 4, 20, true);
      const BallPoint y = sample_ball(rng, n, 0.6);
      const BallPoint x = bary::discrete_F(map, y);
      const bary::OperatorTriple ops = bary::operator_triple(map, y, x);
      trace_dev = std::max(trace_dev, std::abs(ops.K.matrix().trace() - 4.0 * n));
      k_dev = std::max(k_dev, max_abs(ops.K.matrix() - bary::k_of_h(ops.H.matrix(), j)));
      max_tr_h = std::max(max_tr_h, ops.H.matrix().trace());
      max_tr_hp = std::max(max_tr_hp, ops.Hprime.matrix().trace());

      const Mat dfo = bary::orthonormal_jacobian(ops, bary::jacobian_F(map, y, x));
      const Mat kdf = ops.K.matrix() * dfo;
      for (int k = 0; k < uv_pairs; ++k) {
        Vec u(2 * n), v(2 * n);
        for (int a = 0; a < 2 * n; ++a) {
          u(a) = normal(rng);
          v(a) = normal(rng);
        }
        u.normalize();
        v.normalize();
        const double lhs = std::abs(v.dot(kdf * u));
        const double rhs = map.c * std::sqrt(std::max(0.0, ops.H(v, v))) * std::sqrt(std::max(0.0, ops.Hprime(u, u)));
        min_slack = std::min(min_slack, rhs - lhs);
      }
      const bary::LemdetReport lem = bary::lemdet_check(map, y);
      max_excess = std::max(max_excess, lem.normalized_excess);
      if (lem.well_conditioned) {
        max_ratio = std::max(max_ratio, lem.ratio);
        ++conditioned;
      }
    }
  }
  const std::string t = tag("", dims);
  return {CheckRecord::at_most("operators.trace_K_eq_4n" + t, count, trace_dev, 1e-8),
          CheckRecord::at_most("operators.K_eq_2I_minus_half_H_minus_half_JHJ" + t, count, k_dev, 1e-8),
          CheckRecord::at_most("operators.trace_H_le_4" + t, count, max_tr_h, 4.0),
          CheckRecord::at_most("operators.trace_Hprime_le_4" + t, count, max_tr_hp, 4.0),
          CheckRecord::at_least("operators.cauchy_schwarz_slack" + t, count * uv_pairs, min_slack, -1e-10),
          CheckRecord::at_most("operators.determinant_inequality_normalized_excess" + t, count, max_excess, 1e-12),
          CheckRecord::at_most("operators.determinant_inequality_lhs_over_rhs" + t, conditioned, max_ratio, 1 + 1e-8)};
}

Records jacobian_fd(std::uint64_t seed, int instances, const std::vector<int>& dims) {
  Rng rng = stream(seed, 31);
  double err = 0;
  long count = 0;
  bary::SolverOptions tight;
  tight.tol = 1e-13;
  for (int n : dims) {
    for (int i = 0; i < instances; ++i, ++count) {
      const bary::DiscreteBarycentreMap map = random_map(rng, n, 3, 15, true);
      const BallPoint y = sample_ball(rng, n, 0.6);
      const Mat analytic = bary::jacobian_F(map, y);
      const Mat fd = fd_jacobian(
          [&](const Vec& p) { return bary::discrete_F(map, BallPoint::from_real(p), tight).real(); }, y.real(),
          1e-5);
      err = std::max(err, (analytic - fd).norm() / analytic.norm());

    }
  }
  const std::string t = tag("", dims);
  return {CheckRecord::at_most("operators.jacobian_vs_fd_relative_frobenius" + t, count, err, 1e-4)};
}

namespace {

Mat random_admissible(Rng& rng, int n) {
  std::normal_distribution<double> normal;
  const int dim = 2 * n;
  const int rank = uniform_int(rng, 1, dim);
  Mat a(dim, rank);
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < rank; ++k) a(i, k) = normal(rng);
  Mat h = a * a.transpose();
  const double target = uniform_int(rng, 0, 9) == 0 ? 4.0 : uniform(rng, 1e-3, 4.0);
  return h * (target / h.trace());
}

// Symmetrize, clip to PSD and scale into trace <= 4.
Mat project_admissible(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.transpose()));
  const Vec ev = es.eigenvalues().cwiseMax(0.0);
  Mat out = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
  const double tr = out.trace();
  if (tr > 4.0) out *= 4.0 / tr;
  return 0.5 * (out + out.transpose());
}

double ratio_or_zero(const Mat& h, const ComplexStructure& j) {
  try {
    return bary::hsuk_ratio(RealForm(h), j);
  } catch (const DomainError&) {
    return 0.0;
  }
}

}  // namespace

Records hsuk_extremal(std::uint64_t seed, int random_samples, int climb_starts, const std::vector<int>& dims) {
  Rng rng = stream(seed, 32);
  std::normal_distribution<double> normal;
  double at_max = 0, random_ratio = 0, climb_ratio = 0;
  long random_count = 0, climb_count = 0;
  for (int n : dims) {
    const ComplexStructure j = j_operator(n);
    const double bound = bary::hsuk_bound(n);
    const int dim = 2 * n;
    at_max = std::max(at_max, std::abs(bary::hsuk_ratio(RealForm((2.0 / n) * Mat::Identity(dim, dim)), j) - bound));

    for (int i = 0; i < random_samples; ++i, ++random_count) {
      Mat h;
      if (i % 5 == 0) {
        // perturbations of the maximizer
        Mat s(dim, dim);
        for (int a = 0; a < dim; ++a)
          for (int b = 0; b < dim; ++b) s(a, b) = normal(rng);
        h = project_admissible((2.0 / n) * Mat::Identity(dim, dim) + uniform(rng, 1e-4, 0.3) * (s + s.transpose()));
      } else {
        h = random_admissible(rng, n);
      }
      random_ratio = std::max(random_ratio, ratio_or_zero(h, j) / bound);
    }

    for (int s = 0; s < climb_starts; ++s, ++climb_count) {
      Mat h = random_admissible(rng, n);
      double value = ratio_or_zero(h, j);
      double sigma = 0.2;
      for (int step = 0; step < 400; ++step) {
        Mat d(dim, dim);
        for (int a = 0; a < dim; ++a)
          for (int b = 0; b < dim; ++b) d(a, b) = normal(rng);
        d = 0.5 * (d + d.transpose());
        d /= d.norm();
        const Mat cand = project_admissible(h + sigma * d);
        const double cand_value = ratio_or_zero(cand, j);
        if (cand_value > value) {
          h = cand;
          value = cand_value;
          sigma = std::min(1.0, sigma * 1.3);
        } else {
          sigma = std::max(1e-6, sigma * 0.8);
        }
      }
      climb_ratio = std::max(climb_ratio, value / bound);
    }
  }
  const std::string t = tag("", dims);
  return {CheckRecord::at_most("operators.hsuk_value_at_2_over_n_identity" + t, static_cast<long>(dims.size()),
                               at_max, 1e-12),
          CheckRecord::at_most("operators.hsuk_random_max_over_bound" + t, random_count, random_ratio, 1 + 1e-12),
          CheckRecord::at_most("operators.hsuk_hill_climb_max_over_bound" + t, climb_count, climb_ratio, 1 + 1e-12)};
}

// ---- entropy -----------------------------------------------------------------------

Records entropy_critical(const std::vector<int>& dims, double tol) {
  double crit_dev = 0, ent_dev = 0;
  for (int n : dims) {
    const GeometrySpec g = GeometrySpec::ball(n);
    crit_dev = std::max(crit_dev, std::abs(entropy::critical_exponent(g, tol) - n));
    ent_dev = std::max(ent_dev, std::abs(entropy::diastatic_entropy(g, tol) - 2.0 * n));
  }
  const GeometrySpec poly = GeometrySpec::polydisc(2);
  const double poly_crit = entropy::critical_exponent(poly, tol);
  const double poly_ent = entropy::diastatic_entropy(poly, tol);
  const std::string t = tag("", dims);
  const long count = static_cast<long>(dims.size());
  return {CheckRecord::at_most("entropy.ball_critical_exponent_eq_n" + t, count, crit_dev, tol),
          CheckRecord::at_most("entropy.ball_diastatic_entropy_eq_2n" + t, count, ent_dev, 2 * tol),
          CheckRecord::at_most("entropy.polydisc2_critical_exponent_eq_1", 1, std::abs(poly_crit - 1.0), tol),
          CheckRecord::at_most("entropy.polydisc2_entropy_eq_2sqrt2", 1, std::abs(poly_ent - 2 * std::sqrt(2.0)),
                               2 * std::sqrt(2.0) * tol)};
}

Records entropy_separation(const std::vector<int>& dims, double tol) {
  int failures = 0, probes = 0, nonmonotone = 0;
  for (int n : dims) {
    const GeometrySpec g = GeometrySpec::ball(n);
    const double crit = entropy::critical_exponent(g, tol);
    for (double delta : {0.2, 0.3, 0.5, 1.0, 2.0}) {
      for (double c : {crit + delta, crit - delta}) {
        if (c <= 0) continue;
        const entropy::ProbeResult r = entropy::radial_probe(g, c);
        ++probes;
        const entropy::Verdict want = c > crit ? entropy::Verdict::Convergent : entropy::Verdict::Divergent;
        if (r.verdict != want) ++failures;
        if (!std::is_sorted(r.partial.begin(), r.partial.end())) ++nonmonotone;
      }
    }
  }
  const std::string t = tag("", dims);
  return {CheckRecord::at_most("entropy.separated_verdicts_wrong" + t, probes, failures, 0),
          CheckRecord::at_most("entropy.partial_sums_nonmonotone" + t, probes, nonmonotone, 0)};
}

Records entropy_condition_a(const std::vector<int>& dims) {
  int wrong = 0, implication = 0, probes = 0;
  for (int n : dims) {
    const GeometrySpec g = GeometrySpec::ball(n);
    wrong += entropy::condition_a_probe(g, n + 0.5).verdict != entropy::Verdict::Convergent;
    wrong += entropy::condition_a_probe(g, n).verdict != entropy::Verdict::Divergent;
    probes += 2;
    for (double c = n + 0.1; c <= n + 2.0; c += 0.1) {
      if (entropy::radial_probe(g, c - 0.1).verdict == entropy::Verdict::Convergent &&
          entropy::condition_a_probe(g, c).verdict != entropy::Verdict::Convergent) {
        ++implication;
      }
      ++probes;
    }
  }
  const std::string t = tag("", dims);
  return {CheckRecord::at_most("entropy.condition_a_verdicts_wrong" + t, probes, wrong, 0),
          CheckRecord::at_most("entropy.condition_a_follows_radial_at_c_minus_0.1" + t, probes, implication, 0)};
}

// ---- suites --------------------------------------------------------------------------

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"hyperbolic", "domains", "barycentre", "operators", "entropy", "all"};
  return names;
}

bool is_suite(const std::string& name) {
  const auto& names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

Report run_suite(const std::string& name, std::uint64_t seed, int samples) {
  if (!is_suite(name)) {
    throw std::invalid_argument("unknown suite '" + name + "'");
  }
  if (samples < 1) {
    throw std::invalid_argument("samples must be >= 1");
  }
  Report report;
  report.suite = name;
  report.seed = seed;
  report.config = {{"samples", samples}};
  auto add = [&](Records r) { report.records.insert(report.records.end(), r.begin(), r.end()); };
  auto frac = [&](int d) { return std::max(1, samples / d); };
  const bool all = name == "all";

  if (all || name == "hyperbolic") {
    add(ball_logcosh(seed, samples, {1, 2, 3}));
    add(ball_gradient_law(seed, samples, {1, 2, 3}));
    add(ball_hessian(seed, frac(2), {1, 2, 3}));
    add(ball_mobius(seed, samples, {1, 2, 3}));
  }
  if (all || name == "domains") {
    add(polydisc_inequality(seed, samples, {1, 2, 3}));
    add(omega1_diastasis_routes(seed, samples, 2));
    add(omega1_bounds(seed, samples, 2, 0.95));
    add(omega1_diagonal_fd(seed, frac(10), 2));
    add(omega1_general_fd(seed, frac(10), 2));
    add(hereditary(seed, frac(2), {2, 3}));
  }
  if (all || name == "barycentre") {
    add(barycentre_solver(seed, frac(5)));
    add(barycentre_exact_cases(seed, frac(10)));
    add(barycentre_equivariance(seed, frac(10)));
  }
  if (all || name == "operators") {
    add(operator_identities(seed, frac(20), {1, 2}, 100));
    add(jacobian_fd(seed, frac(20), {1, 2}));
    add(hsuk_extremal(seed, 10 * samples, frac(10), {2, 3}));
  }
  if (all || name == "entropy") {
    add(entropy_critical({1, 2, 3}, 0.05));
    add(entropy_separation({1, 2, 3}, 0.05));
    add(entropy_condition_a({1, 2, 3}));
  }
  return report;
}

}  // namespace diastasis::verify

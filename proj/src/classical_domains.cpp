#include "diastasis/classical_domains.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>

namespace diastasis::domains {

namespace {

BallPoint factor(const CVec& z, Eigen::Index j) { return BallPoint(CVec::Constant(1, z(j))); }

void require_same_rank(const PolydiscPoint& w, const PolydiscPoint& z) {
  if (w.rank() != z.rank()) {
    throw std::invalid_argument("polydisc: points of different rank");
  }
}

void require_same_size(const DomainMatrixPoint& w, const DomainMatrixPoint& z) {
  if (w.size() != z.size()) {
    throw std::invalid_argument("omega1: matrices of different size");
  }
}

// Hermitian positive definite A -> A^{p}, p = +-1/2.
CMat hermitian_power(const CMat& a, double p) {
  Eigen::SelfAdjointEigenSolver<CMat> es(a);
  const Eigen::VectorXd ev = es.eigenvalues().array().pow(p);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

double log_det_gap(const CMat& z) {
  const Eigen::Index m = z.rows();
  const CMat gap = CMat::Identity(m, m) - z * z.adjoint();
  Eigen::LLT<CMat> llt(gap);
  if (llt.info() != Eigen::Success) {
    throw DomainError("omega1: I - ZZ* is not positive definite");
  }
  double s = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    s += std::log(llt.matrixL()(i, i).real());
  }
  return 2 * s;
}

constexpr double kMaxCondition = 1e12;

}  // namespace

// ---- polydisc ---------------------------------------------------------------

double polydisc_diastasis(const PolydiscPoint& w, const PolydiscPoint& z) {
  require_same_rank(w, z);
  double d = 0;
  for (Eigen::Index j = 0; j < z.rank(); ++j) {
    d += ball::diastasis(factor(w.z(), j), factor(z.z(), j));
  }
  return d;
}

double polydisc_distance(const PolydiscPoint& w, const PolydiscPoint& z) {
  require_same_rank(w, z);
  double s = 0;
  for (Eigen::Index j = 0; j < z.rank(); ++j) {
    const double rho = ball::distance(factor(w.z(), j), factor(z.z(), j));
    s += rho * rho;
  }
  return std::sqrt(s);
}

RealForm polydisc_metric_matrix(const PolydiscPoint& z) {
  const Eigen::Index r = z.rank();
  Mat g = Mat::Zero(2 * r, 2 * r);
  for (Eigen::Index j = 0; j < r; ++j) {
    g.block(2 * j, 2 * j, 2, 2) = ball::metric_matrix(factor(z.z(), j)).matrix();
  }
  return RealForm(g);
}

Vec polydisc_differential(const PolydiscPoint& w, const PolydiscPoint& x) {
  require_same_rank(w, x);
  Vec a(2 * x.rank());
  for (Eigen::Index j = 0; j < x.rank(); ++j) {
    a.segment(2 * j, 2) = ball::differential(factor(w.z(), j), factor(x.z(), j));
  }
  return a;
}

TangentVector polydisc_grad_diastasis(const PolydiscPoint& w, const PolydiscPoint& x) {
  require_same_rank(w, x);
  Vec g(2 * x.rank());
  for (Eigen::Index j = 0; j < x.rank(); ++j) {
    g.segment(2 * j, 2) = ball::grad_diastasis(factor(w.z(), j), factor(x.z(), j)).components;
  }
  return {g, x.real()};
}

RealForm polydisc_hessian_diastasis(const PolydiscPoint& w, const PolydiscPoint& x) {
  require_same_rank(w, x);
  const Eigen::Index r = x.rank();
  Mat h = Mat::Zero(2 * r, 2 * r);
  for (Eigen::Index j = 0; j < r; ++j) {
    h.block(2 * j, 2 * j, 2, 2) = ball::hessian_diastasis(factor(w.z(), j), factor(x.z(), j)).matrix();
  }
  return RealForm(h);
}

// ---- Omega_1 ------------------------------------------------------------------

Omega1Mobius::Omega1Mobius(const DomainMatrixPoint& center)
    : Omega1Mobius(center, CMat::Identity(center.size(), center.size()),
                   CMat::Identity(center.size(), center.size())) {}

Omega1Mobius::Omega1Mobius(const DomainMatrixPoint& center, CMat left, CMat right)
    : center_(center), left_(std::move(left)), right_(std::move(right)) {
  const Eigen::Index m = center_.size();
  const CMat id = CMat::Identity(m, m);
  for (const CMat* u : {&left_, &right_}) {
    if (u->rows() != m || u->cols() != m || ((*u) * u->adjoint() - id).cwiseAbs().maxCoeff() > 1e-12) {
      throw std::invalid_argument("Omega1Mobius: rotation factors must be m x m unitaries");
    }
  }
  const CMat& w = center_.z();
  pre_ = hermitian_power(id - w * w.adjoint(), -0.5);
  post_ = hermitian_power(id - w.adjoint() * w, 0.5);
}

Omega1Mobius Omega1Mobius::rotation(CMat left, CMat right) {
  const Eigen::Index m = left.rows();
  return Omega1Mobius(DomainMatrixPoint::origin(m), std::move(left), std::move(right));
}

CMat Omega1Mobius::transform(const CMat& center, const CMat& z) const {
  const Eigen::Index m = z.rows();
  const CMat gap = CMat::Identity(m, m) - center.adjoint() * z;
  Eigen::JacobiSVD<CMat> svd(gap);
  const Eigen::VectorXd sv = svd.singularValues();
  if (!(sv(m - 1) > 0) || sv(0) / sv(m - 1) > kMaxCondition) {
    throw DomainError("omega1: I - W*Z is numerically singular");
  }
  return pre_ * (z - center) * gap.inverse() * post_;
}

DomainMatrixPoint Omega1Mobius::apply(const DomainMatrixPoint& z) const {
  require_same_size(center_, z);
  return DomainMatrixPoint(left_ * transform(center_.z(), z.z()) * right_);
}

DomainMatrixPoint Omega1Mobius::inverse_apply(const DomainMatrixPoint& y) const {
  require_same_size(center_, y);
  const CMat unrotated = left_.adjoint() * y.z() * right_.adjoint();
  return DomainMatrixPoint(transform(-center_.z(), unrotated));
}

Mat Omega1Mobius::differential(const DomainMatrixPoint& z) const {
  require_same_size(center_, z);
  const Eigen::Index m = z.size();
  const CMat& w = center_.z();
  const CMat inv = (CMat::Identity(m, m) - w.adjoint() * z.z()).inverse();
  const CMat shifted = z.z() - w;
  return complex_linear_to_real(
      [&](const CMat& dz) -> CMat {
        const CMat inner = dz * inv + shifted * inv * w.adjoint() * dz * inv;
        return left_ * pre_ * inner * post_ * right_;
      },
      m);
}

Omega1Mobius omega1_mobius(const DomainMatrixPoint& w) { return Omega1Mobius(w); }

double omega1_diastasis_at_origin(const DomainMatrixPoint& z) { return -log_det_gap(z.z()); }

double omega1_diastasis(const DomainMatrixPoint& z, const DomainMatrixPoint& w) {
  require_same_size(w, z);
  const Omega1Mobius phi(w);
  return omega1_diastasis_at_origin(phi.apply(z));
}

double omega1_diastasis_closed_form(const DomainMatrixPoint& z, const DomainMatrixPoint& w) {
  require_same_size(w, z);
  const Eigen::Index m = z.size();
  const Complex cross = (CMat::Identity(m, m) - w.z() * z.z().adjoint()).determinant();
  return -log_det_gap(z.z()) - log_det_gap(w.z()) + std::log(std::norm(cross));
}

RealForm omega1_metric_matrix(const DomainMatrixPoint& z) {
  const Eigen::Index m = z.size();
  const CMat id = CMat::Identity(m, m);
  const CMat p = (id - z.z() * z.z().adjoint()).inverse();
  const CMat q = (id - z.z().adjoint() * z.z()).inverse();
  const Eigen::Index dim = 2 * m * m;
  Mat g(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    Vec e = Vec::Zero(dim);
    e(a) = 1.0;
    // Re tr[X B*] over the real basis B is exactly the real chart of X.
    g.row(a) = matrix_to_real(p * real_to_matrix(e, m) * q).transpose();
  }
  return RealForm(0.5 * (g + g.transpose()));
}

Vec omega1_diagonal_gradient(const CVec& s) {
  const Eigen::Index m = s.size();
  Vec g = Vec::Zero(2 * m * m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const Eigen::Index idx = 2 * (j * m + j);
    const double f = 2.0 * (1.0 - std::norm(s(j)));
    g(idx) = f * s(j).real();
    g(idx + 1) = f * s(j).imag();
  }
  return g;
}

RealForm omega1_diagonal_hessian(const CVec& s) {
  const Eigen::Index m = s.size();
  Mat h = Mat::Zero(2 * m * m, 2 * m * m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index k = 0; k < m; ++k) {
      const Eigen::Index jk = 2 * (j * m + k);
      const Eigen::Index kj = 2 * (k * m + j);
      const double denom = (1.0 - std::norm(s(j))) * (1.0 - std::norm(s(k)));
      h.block(jk, jk, 2, 2) += (2.0 / denom) * Mat::Identity(2, 2);
      // -(q dz_jk (x) dz_kj + conj) / denom with q = conj(s_j s_k); couples
      // z_jk with z_kj, and reduces to the diagonal term when j == k.
      const Complex q = std::conj(s(j) * s(k));
      Mat t(2, 2);
      t << q.real(), -q.imag(), -q.imag(), -q.real();
      h.block(jk, kj, 2, 2) -= (2.0 / denom) * t;
    }
  }
  return RealForm(h);
}

Omega1Reduction omega1_reduce(const DomainMatrixPoint& w, const DomainMatrixPoint& z) {
  require_same_size(w, z);
  const Omega1Mobius to_origin(w);
  const CMat v = to_origin.apply(z).z();
  Eigen::JacobiSVD<CMat> svd(v, Eigen::ComputeFullU | Eigen::ComputeFullV);
  // U* V Vr = diag(sigma), sigma descending and nonnegative.
  const Omega1Mobius chain(w, svd.matrixU().adjoint(), svd.matrixV());
  Omega1Reduction out;
  out.singular_values = svd.singularValues();
  out.transport = chain.differential(z);
  return out;
}

TangentVector omega1_grad_diastasis(const DomainMatrixPoint& w, const DomainMatrixPoint& z) {
  const Omega1Reduction red = omega1_reduce(w, z);
  const Vec diag_grad = omega1_diagonal_gradient(red.singular_values.cast<Complex>());
  return {red.transport.partialPivLu().solve(diag_grad), z.real()};
}

RealForm omega1_hessian_diastasis(const DomainMatrixPoint& w, const DomainMatrixPoint& z) {
  const Omega1Reduction red = omega1_reduce(w, z);
  const Mat diag_hess = omega1_diagonal_hessian(red.singular_values.cast<Complex>()).matrix();
  const Mat h = red.transport.transpose() * diag_hess * red.transport;
  return RealForm(0.5 * (h + h.transpose()));
}

// ---- embeddings ---------------------------------------------------------------

DomainMatrixPoint Embedding::embed(const BallPoint& z) const {
  if (kind != EmbeddingKind::BallFirstRow || z.dim() != source_dim) {
    throw std::invalid_argument("embed: ball point does not match the embedding");
  }
  CMat out = CMat::Zero(source_dim, source_dim);
  out.row(0) = z.z().transpose();
  return DomainMatrixPoint(out);
}

DomainMatrixPoint Embedding::embed(const PolydiscPoint& z) const {
  if (kind != EmbeddingKind::PolydiscDiagonal || z.rank() != source_dim) {
    throw std::invalid_argument("embed: polydisc point does not match the embedding");
  }
  return DomainMatrixPoint(z.z().asDiagonal().toDenseMatrix());
}

Mat Embedding::pushforward() const {
  const Eigen::Index m = source_dim;
  Mat e = Mat::Zero(2 * m * m, 2 * m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const Eigen::Index entry = kind == EmbeddingKind::BallFirstRow ? j : j * m + j;
    e(2 * entry, 2 * j) = 1.0;
    e(2 * entry + 1, 2 * j + 1) = 1.0;
  }
  return e;
}

std::string to_string(EmbeddingKind kind) {
  return kind == EmbeddingKind::BallFirstRow ? "ball->omega1" : "polydisc->omega1";
}

HereditaryReport hereditary_pair(const Embedding& embedding, const Vec& p_real, const Vec& q_real) {
  double d_src = 0;
  Vec grad_src;
  Mat hess_src;
  DomainMatrixPoint p_img = DomainMatrixPoint::origin(embedding.source_dim);
  DomainMatrixPoint q_img = p_img;
  if (embedding.kind == EmbeddingKind::BallFirstRow) {
    const BallPoint p = BallPoint::from_real(p_real);
    const BallPoint q = BallPoint::from_real(q_real);
    d_src = ball::diastasis(q, p);
    grad_src = ball::grad_diastasis(q, p).components;
    hess_src = ball::hessian_diastasis(q, p).matrix();
    p_img = embedding.embed(p);
    q_img = embedding.embed(q);
  } else {
    const PolydiscPoint p = PolydiscPoint::from_real(p_real);
    const PolydiscPoint q = PolydiscPoint::from_real(q_real);
    d_src = polydisc_diastasis(q, p);
    grad_src = polydisc_grad_diastasis(q, p).components;
    hess_src = polydisc_hessian_diastasis(q, p).matrix();
    p_img = embedding.embed(p);
    q_img = embedding.embed(q);
  }

  const Mat e = embedding.pushforward();
  const Mat g = omega1_metric_matrix(p_img).matrix();
  const Vec grad_tgt = omega1_grad_diastasis(q_img, p_img).components;
  const Mat hess_tgt = omega1_hessian_diastasis(q_img, p_img).matrix();

  // orthogonal projection onto the image of psi_*, w.r.t. the target metric
  const Mat gram = e.transpose() * g * e;
  const Vec projected = e * gram.ldlt().solve(e.transpose() * g * grad_tgt);

  HereditaryReport r;
  r.kind = embedding.kind;
  r.source_dim = embedding.source_dim;
  r.samples = 1;
  r.diastasis_deviation = std::abs(d_src - omega1_diastasis(p_img, q_img));
  r.gradient_deviation =
      (e * grad_src - projected).cwiseAbs().maxCoeff() / std::max(1.0, grad_src.cwiseAbs().maxCoeff());
  r.hessian_deviation = (e.transpose() * hess_tgt * e - hess_src).cwiseAbs().maxCoeff() /
                        std::max(1.0, hess_src.cwiseAbs().maxCoeff());
  return r;
}

HereditaryReport verify_hereditary(EmbeddingKind kind, int source_dim, int samples, std::uint64_t seed,
                                   double rmax) {
  const Embedding embedding{kind, source_dim};
  Rng rng(seed);
  HereditaryReport total;
  total.kind = kind;
  total.source_dim = source_dim;
  for (int i = 0; i < samples; ++i) {
    Vec p;
    Vec q;
    if (kind == EmbeddingKind::BallFirstRow) {
      p = sample_ball(rng, source_dim, rmax).real();
      q = sample_ball(rng, source_dim, rmax).real();
    } else {
      p = sample_polydisc(rng, source_dim, rmax).real();
      q = sample_polydisc(rng, source_dim, rmax).real();
    }
    const HereditaryReport one = hereditary_pair(embedding, p, q);
    total.diastasis_deviation = std::max(total.diastasis_deviation, one.diastasis_deviation);
    total.gradient_deviation = std::max(total.gradient_deviation, one.gradient_deviation);
    total.hessian_deviation = std::max(total.hessian_deviation, one.hessian_deviation);
    ++total.samples;
  }
  return total;
}

}  // namespace diastasis::domains

#pragma once

/// The rank-r polydisc and the first classical domain Omega_1[m,m] of square
/// matrices with I - ZZ* > 0, together with the totally geodesic embeddings
/// of the ball and of the polydisc into Omega_1.

#include "diastasis/geometry_types.hpp"
#include "diastasis/hyperbolic_ball.hpp"
#include "diastasis/numerics.hpp"

#include <cstdint>

namespace diastasis::domains {

// ---- polydisc ---------------------------------------------------------------

/// Sum of the one-dimensional ball diastases of the factors.
double polydisc_diastasis(const PolydiscPoint& w, const PolydiscPoint& z);

/// sqrt(sum of squared factor distances).
double polydisc_distance(const PolydiscPoint& w, const PolydiscPoint& z);

RealForm polydisc_metric_matrix(const PolydiscPoint& z);
Vec polydisc_differential(const PolydiscPoint& w, const PolydiscPoint& x);
TangentVector polydisc_grad_diastasis(const PolydiscPoint& w, const PolydiscPoint& x);
RealForm polydisc_hessian_diastasis(const PolydiscPoint& w, const PolydiscPoint& x);

// ---- Omega_1 ------------------------------------------------------------------

/// Holomorphic isometry of Omega_1 sending W to 0, followed by Z -> U1 Z U2:
///   Phi_W(Z) = (I-WW*)^{-1/2} (Z-W) (I-W*Z)^{-1} (I-W*W)^{1/2}.
/// The inverse of Phi_W is Phi_{-W}.
class Omega1Mobius {
 public:
  explicit Omega1Mobius(const DomainMatrixPoint& center);
  Omega1Mobius(const DomainMatrixPoint& center, CMat left, CMat right);

  /// Pure two-sided rotation Z -> U1 Z U2, fixing the origin.
  static Omega1Mobius rotation(CMat left, CMat right);

  const DomainMatrixPoint& center() const { return center_; }

  DomainMatrixPoint apply(const DomainMatrixPoint& z) const;
  DomainMatrixPoint inverse_apply(const DomainMatrixPoint& y) const;

  /// Real Jacobian of apply at Z.
  Mat differential(const DomainMatrixPoint& z) const;

 private:
  CMat transform(const CMat& center, const CMat& z) const;

  DomainMatrixPoint center_;
  CMat left_;
  CMat right_;
  CMat pre_;   // (I - WW*)^{-1/2}
  CMat post_;  // (I - W*W)^{1/2}
};

Omega1Mobius omega1_mobius(const DomainMatrixPoint& w);

/// -log det(I - ZZ*), the diastasis centred at the origin.
double omega1_diastasis_at_origin(const DomainMatrixPoint& z);

/// General pair via reduction to the origin with omega1_mobius(W).
/// Throws DomainError when I - W*Z is too ill-conditioned.
double omega1_diastasis(const DomainMatrixPoint& z, const DomainMatrixPoint& w);

/// -log[det(I-ZZ*) det(I-WW*) / |det(I-WZ*)|^2], kept as a cross-check.
double omega1_diastasis_closed_form(const DomainMatrixPoint& z, const DomainMatrixPoint& w);

/// g(A,B) = Re tr[(I-ZZ*)^{-1} A (I-Z*Z)^{-1} B*] in the real chart.
RealForm omega1_metric_matrix(const DomainMatrixPoint& z);

/// Gradient and Hessian of D_0 on the diagonal slice, for arbitrary complex
/// diagonal entries `s` (an m x m chart with only diagonal entries non-zero).
Vec omega1_diagonal_gradient(const CVec& s);
RealForm omega1_diagonal_hessian(const CVec& s);

/// Chain that reduces (W, Z) to the origin and a nonnegative diagonal point.
struct Omega1Reduction {
  Vec singular_values;  // descending, nonnegative
  Mat transport;        // real Jacobian Z -> diagonal point
};
Omega1Reduction omega1_reduce(const DomainMatrixPoint& w, const DomainMatrixPoint& z);

TangentVector omega1_grad_diastasis(const DomainMatrixPoint& w, const DomainMatrixPoint& z);
RealForm omega1_hessian_diastasis(const DomainMatrixPoint& w, const DomainMatrixPoint& z);

// ---- embeddings ---------------------------------------------------------------

enum class EmbeddingKind { BallFirstRow, PolydiscDiagonal };

/// Linear holomorphic totally geodesic embedding into Omega_1[m,m], where m is
/// the ball dimension or the polydisc rank.
struct Embedding {
  EmbeddingKind kind;
  int source_dim;

  int target_size() const { return source_dim; }
  DomainMatrixPoint embed(const BallPoint& z) const;
  DomainMatrixPoint embed(const PolydiscPoint& z) const;
  /// Real pushforward matrix (constant since the embedding is linear).
  Mat pushforward() const;
};

/// Largest deviations in the hereditary identities over sampled pairs.
struct HereditaryReport {
  EmbeddingKind kind;
  int source_dim = 0;
  int samples = 0;
  double diastasis_deviation = 0;
  double gradient_deviation = 0;
  double hessian_deviation = 0;
};

/// Checks D_src = D_tgt o psi, psi_* grad_src = pi(grad_tgt) and
/// Hess_tgt(psi_* ., psi_* .) = Hess_src on `samples` seeded random pairs.
HereditaryReport verify_hereditary(EmbeddingKind kind, int source_dim, int samples, std::uint64_t seed,
                                   double rmax = 0.9);

/// Same checks on one explicit pair.
HereditaryReport hereditary_pair(const Embedding& embedding, const Vec& p_real, const Vec& q_real);

std::string to_string(EmbeddingKind kind);

}  // namespace diastasis::domains

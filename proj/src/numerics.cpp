#include "diastasis/numerics.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <vector>

namespace diastasis {

RealForm::RealForm(const Mat& entries) {
  if (entries.rows() != entries.cols()) {
    throw std::invalid_argument("RealForm: matrix is not square");
  }
  if (entries.rows() % 2 != 0) {
    throw std::invalid_argument("RealForm: size must be even");
  }
  const double scale = std::max(1.0, entries.cwiseAbs().maxCoeff());
  if ((entries - entries.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("RealForm: matrix is not symmetric");
  }
  entries_ = 0.5 * (entries + entries.transpose());
}

ComplexStructure j_operator(int n) {
  if (n < 1) {
    throw std::invalid_argument("j_operator: complex dimension must be >= 1");
  }
  Mat j = Mat::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    j(2 * k + 1, 2 * k) = 1.0;
    j(2 * k, 2 * k + 1) = -1.0;
  }
  return {n, j};
}

Vec to_real(const CVec& z) {
  Vec x(2 * z.size());
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    x(2 * k) = z(k).real();
    x(2 * k + 1) = z(k).imag();
  }
  return x;
}

CVec to_complex(const Vec& x) {
  if (x.size() % 2 != 0) {
    throw std::invalid_argument("to_complex: odd number of real coordinates");
  }
  CVec z(x.size() / 2);
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    z(k) = Complex(x(2 * k), x(2 * k + 1));
  }
  return z;
}

Vec matrix_to_real(const CMat& z) {
  Vec x(2 * z.size());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    for (Eigen::Index j = 0; j < z.cols(); ++j, ++k) {
      x(2 * k) = z(i, j).real();
      x(2 * k + 1) = z(i, j).imag();
    }
  }
  return x;
}

CMat real_to_matrix(const Vec& x, Eigen::Index m) {
  if (x.size() != 2 * m * m) {
    throw std::invalid_argument("real_to_matrix: expected 2*m*m real coordinates");
  }
  CMat z(m, m);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j, ++k) {
      z(i, j) = Complex(x(2 * k), x(2 * k + 1));
    }
  }
  return z;
}

Mat hermitian_to_real(const CMat& h) {
  const Eigen::Index n = h.rows();
  Mat g(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const Complex v = h(j, k);
      g(2 * j, 2 * k) = v.real();
      g(2 * j, 2 * k + 1) = v.imag();
      g(2 * j + 1, 2 * k) = -v.imag();
      g(2 * j + 1, 2 * k + 1) = v.real();
    }
  }
  return g;
}

Mat complex_linear_to_real(const CMat& a) {
  Mat r(2 * a.rows(), 2 * a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const Complex v = a(i, j);
      r(2 * i, 2 * j) = v.real();
      r(2 * i, 2 * j + 1) = -v.imag();
      r(2 * i + 1, 2 * j) = v.imag();
      r(2 * i + 1, 2 * j + 1) = v.real();
    }
  }
  return r;
}

Mat complex_linear_to_real(const std::function<CMat(const CMat&)>& map, Eigen::Index m) {
  const Eigen::Index dim = 2 * m * m;
  Mat r(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    Vec e = Vec::Zero(dim);
    e(col) = 1.0;
    r.col(col) = matrix_to_real(map(real_to_matrix(e, m)));
  }
  return r;
}

Vec fd_gradient(const ScalarFunction& f, const Vec& x, double h) {
  if (!(h > 0)) {
    throw std::invalid_argument("fd_gradient: step must be positive");
  }
  Vec g(x.size());
  Vec p = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    p(i) = x(i) + h;
    const double fp = f(p);
    p(i) = x(i) - h;
    const double fm = f(p);
    p(i) = x(i);
    g(i) = (fp - fm) / (2 * h);
  }
  return g;
}

RealForm fd_hessian(const ScalarFunction& f, const Vec& x, double h) {
  if (!(h > 0)) {
    throw std::invalid_argument("fd_hessian: step must be positive");
  }
  const Eigen::Index n = x.size();
  if (n % 2 != 0) {
    throw std::invalid_argument("fd_hessian: chart dimension must be even");
  }
  Mat hess(n, n);
  const double f0 = f(x);
  Vec p = x;
  for (Eigen::Index i = 0; i < n; ++i) {
    p(i) = x(i) + h;
    const double fp = f(p);
    p(i) = x(i) - h;
    const double fm = f(p);
    p(i) = x(i);
    hess(i, i) = (fp - 2 * f0 + fm) / (h * h);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      auto eval = [&](double si, double sj) {
        p(i) = x(i) + si * h;
        p(j) = x(j) + sj * h;
        const double v = f(p);
        p(i) = x(i);
        p(j) = x(j);
        return v;
      };
      const double v = (eval(1, 1) - eval(1, -1) - eval(-1, 1) + eval(-1, -1)) / (4 * h * h);
      hess(i, j) = v;
      hess(j, i) = v;
    }
  }
  return RealForm(hess);
}

Mat fd_jacobian(const VectorFunction& f, const Vec& x, double h) {
  Vec p = x;
  Mat jac;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    p(i) = x(i) + h;
    const Vec fp = f(p);
    p(i) = x(i) - h;
    const Vec fm = f(p);
    p(i) = x(i);
    if (i == 0) {
      jac.resize(fp.size(), x.size());
    }
    jac.col(i) = (fp - fm) / (2 * h);
  }
  return jac;
}

RealForm fd_covariant_hessian(const ScalarFunction& f, const MetricFunction& metric, const Vec& x,
                              double h_hessian, double h_gradient) {
  const Eigen::Index n = x.size();
  const Mat coord = fd_hessian(f, x, h_hessian).matrix();
  const Vec df = fd_gradient(f, x, h_gradient);
  const Mat g = metric(x);
  const Vec q = g.ldlt().solve(df);

  // dg[a] = partial_a G
  std::vector<Mat> dg(static_cast<std::size_t>(n));
  Vec p = x;
  for (Eigen::Index a = 0; a < n; ++a) {
    p(a) = x(a) + h_gradient;
    const Mat gp = metric(p);
    p(a) = x(a) - h_gradient;
    const Mat gm = metric(p);
    p(a) = x(a);
    dg[static_cast<std::size_t>(a)] = (gp - gm) / (2 * h_gradient);
  }

  Mat corr = Mat::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      double s = 0;
      for (Eigen::Index d = 0; d < n; ++d) {
        s += q(d) * (dg[static_cast<std::size_t>(a)](d, b) + dg[static_cast<std::size_t>(b)](d, a) -
                     dg[static_cast<std::size_t>(d)](a, b));
      }
      corr(a, b) = 0.5 * s;
    }
  }
  const Mat cov = coord - corr;
  return RealForm(0.5 * (cov + cov.transpose()));
}

Mat sym_sqrt(const Mat& spd) {
  Eigen::SelfAdjointEigenSolver<Mat> es(spd);
  return es.operatorSqrt();
}

Mat sym_inv_sqrt(const Mat& spd) {
  Eigen::SelfAdjointEigenSolver<Mat> es(spd);
  return es.operatorInverseSqrt();
}

Vec generalized_eigenvalues(const Mat& form, const Mat& metric) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(form, metric, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace diastasis

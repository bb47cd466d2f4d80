#include "kantolab/psd_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kantolab {

double order_tolerance(std::initializer_list<double> scales) {
  double s = 1.0;
  for (double v : scales) s = std::max(s, std::abs(v));
  return 1e-9 * s;
}

SpectralWindow::SpectralWindow(double m_, double M_) : m(m_), M(M_) {
  if (!(m > 0.0) || !(M >= m) || !std::isfinite(M)) {
    throw std::invalid_argument("spectral window requires 0 < m <= M");
  }
}

double kantorovich_constant(const SpectralWindow& w) {
  const double s = w.M + w.m;
  return s * s / (4.0 * w.M * w.m);
}

double wielandt_constant(const SpectralWindow& w) {
  const double r = (w.M - w.m) / (w.M + w.m);
  return r * r;
}

HermitianMatrix::HermitianMatrix(const Matrix& raw) {
  if (raw.rows() != raw.cols()) {
    throw DimensionError("hermitize: input must be square");
  }
  if (raw.rows() < 1) {
    throw DimensionError("hermitize: dimension must be >= 1");
  }
  m_ = 0.5 * (raw + raw.adjoint());
}

HermitianMatrix HermitianMatrix::identity(Index n) {
  return HermitianMatrix(Matrix::Identity(n, n));
}

HermitianMatrix HermitianMatrix::zero(Index n) {
  return HermitianMatrix(Matrix::Zero(n, n));
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(a.mat() + b.mat());
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(a.mat() - b.mat());
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
  return HermitianMatrix(s * a.mat());
}

HermitianMatrix hermitize(const Matrix& t) { return HermitianMatrix(t); }

Eigensystem eig_h(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.mat());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_h: eigensolver failed to converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

RealVector eigenvalues_only(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.mat(),
                                               Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_h: eigensolver failed to converge");
  }
  return solver.eigenvalues();
}

Matrix rebuild(const Eigensystem& es, const RealVector& values) {
  return es.vectors * values.asDiagonal() * es.vectors.adjoint();
}

}  // namespace

double lambda_min(const HermitianMatrix& h) {
  return eigenvalues_only(h)(0);
}

double lambda_max(const HermitianMatrix& h) {
  const RealVector v = eigenvalues_only(h);
  return v(v.size() - 1);
}

double operator_norm(const Matrix& t) {
  if (t.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(t);
  return svd.singularValues()(0);
}

double operator_norm(const HermitianMatrix& h) {
  const RealVector v = eigenvalues_only(h);
  return std::max(std::abs(v(0)), std::abs(v(v.size() - 1)));
}

HermitianMatrix sqrt_psd(const HermitianMatrix& a) {
  Eigensystem es = eig_h(a);
  const double top = std::max(std::abs(es.values(0)),
                              std::abs(es.values(es.values.size() - 1)));
  const double tol = order_tolerance({top});
  RealVector roots(es.values.size());
  for (Index i = 0; i < es.values.size(); ++i) {
    double v = es.values(i);
    if (v < -tol) {
      throw NotPsdError("sqrt_psd: matrix is not positive semidefinite");
    }
    roots(i) = v > 0.0 ? std::sqrt(v) : 0.0;
  }
  return HermitianMatrix(rebuild(es, roots));
}

HermitianMatrix inv_pd(const HermitianMatrix& a) {
  Eigensystem es = eig_h(a);
  const double top = std::max(std::abs(es.values(0)),
                              std::abs(es.values(es.values.size() - 1)));
  const double tol = order_tolerance({top});
  if (!(es.values(0) > tol)) {
    throw NotPdError("inv_pd: matrix is not positive definite");
  }
  RealVector inv = es.values.cwiseInverse();
  return HermitianMatrix(rebuild(es, inv));
}

Matrix pinv(const Matrix& t, double cutoff) {
  Eigen::JacobiSVD<Matrix> svd(t, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sigma = svd.singularValues();
  if (sigma.size() == 0) return Matrix::Zero(t.cols(), t.rows());
  const double cut = cutoff * sigma(0);
  RealVector inv = RealVector::Zero(sigma.size());
  for (Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cut && sigma(i) > 0.0) inv(i) = 1.0 / sigma(i);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

PsdInverse psd_inverse(const HermitianMatrix& a, double zero_cut,
                       double keep_cut) {
  PsdInverse out{HermitianMatrix::zero(a.dim()), 0, false, false, eig_h(a)};
  const RealVector& vals = out.es.values;
  const double top = vals(vals.size() - 1);
  const double psd_tol = order_tolerance({std::abs(top), std::abs(vals(0))});
  if (vals(0) < -psd_tol) {
    throw NotPsdError("psd_inverse: matrix is not positive semidefinite");
  }
  if (!(top > 0.0)) {
    return out;  // zero matrix: pseudo-inverse is zero, rank 0
  }
  RealVector inv = RealVector::Zero(vals.size());
  for (Index i = 0; i < vals.size(); ++i) {
    const double v = vals(i);
    if (v >= keep_cut * top) {
      inv(i) = 1.0 / v;
      ++out.rank;
    } else if (v > zero_cut * top) {
      out.gray = true;  // ambiguous band: neither clean zero nor invertible
    }
  }
  out.truncated = out.rank < vals.size();
  out.inverse = HermitianMatrix(rebuild(out.es, inv));
  return out;
}

HermitianMatrix abs_op(const Matrix& t) {
  if (t.rows() != t.cols()) {
    throw DimensionError("abs_op: input must be square");
  }
  // |T| = (T*T)^{1/2} = V diag(sigma) V*. The SVD route keeps small singular
  // values accurate where forming T*T first would square the condition
  // number and report sqrt(eps)-scale noise instead of clean zeros.
  Eigen::JacobiSVD<Matrix> svd(t, Eigen::ComputeThinV);
  return HermitianMatrix(svd.matrixV() * svd.singularValues().asDiagonal() *
                         svd.matrixV().adjoint());
}

namespace {

/// p^{1/2} (p^{-1/2} q p^{-1/2})^{1/2} p^{1/2} with p positive definite and
/// q merely PSD. This is the only route needed for both mean variants.
HermitianMatrix mean_with_pd_left(const HermitianMatrix& p,
                                  const HermitianMatrix& q) {
  Eigensystem es = eig_h(p);
  const double top = std::max(std::abs(es.values(0)),
                              std::abs(es.values(es.values.size() - 1)));
  const double tol = order_tolerance({top});
  if (!(es.values(0) > tol)) {
    throw NotPdError("geometric_mean: operand is not positive definite");
  }
  RealVector root = es.values.cwiseSqrt();
  RealVector inv_root = root.cwiseInverse();
  const Matrix p_half = rebuild(es, root);
  const Matrix p_inv_half = rebuild(es, inv_root);
  const HermitianMatrix mid = hermitize(p_inv_half * q.mat() * p_inv_half);
  const HermitianMatrix mid_root = sqrt_psd(mid);
  return hermitize(p_half * mid_root.mat() * p_half);
}

}  // namespace

HermitianMatrix geometric_mean(const HermitianMatrix& a,
                               const HermitianMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("geometric_mean: dimension mismatch");
  }
  const double b_min = lambda_min(b);
  if (!(b_min > order_tolerance({operator_norm(b)}))) {
    throw NotPdError("geometric_mean: operand is not positive definite");
  }
  return mean_with_pd_left(a, b);
}

HermitianMatrix geometric_mean_psd(const HermitianMatrix& q_psd,
                                   const HermitianMatrix& p_pd) {
  if (q_psd.dim() != p_pd.dim()) {
    throw DimensionError("geometric_mean_psd: dimension mismatch");
  }
  return mean_with_pd_left(p_pd, q_psd);
}

LoewnerVerdict loewner_compare(const HermitianMatrix& lhs,
                               const HermitianMatrix& rhs) {
  const double tol =
      order_tolerance({operator_norm(lhs), operator_norm(rhs)});
  return loewner_compare(lhs, rhs, tol);
}

LoewnerVerdict loewner_compare(const HermitianMatrix& lhs,
                               const HermitianMatrix& rhs, double tol) {
  if (lhs.dim() != rhs.dim()) {
    throw DimensionError("loewner_compare: dimension mismatch");
  }
  const double margin = lambda_min(rhs - lhs);
  return {margin >= -tol, margin, tol};
}

LoewnerVerdict eigenvalue_dominance(const HermitianMatrix& x,
                                    const HermitianMatrix& y) {
  const double tol = order_tolerance({operator_norm(x), operator_norm(y)});
  return eigenvalue_dominance(x, y, tol);
}

LoewnerVerdict eigenvalue_dominance(const HermitianMatrix& x,
                                    const HermitianMatrix& y, double tol) {
  if (x.dim() != y.dim()) {
    throw DimensionError("eigenvalue_dominance: dimension mismatch");
  }
  const RealVector lx = eigenvalues_only(x);
  const RealVector ly = eigenvalues_only(y);
  double margin = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < lx.size(); ++i) {
    margin = std::min(margin, ly(i) - lx(i));  // both ascending: i-th from top
  }
  return {margin >= -tol, margin, tol};
}

HermitianMatrix block2(const HermitianMatrix& a, const Matrix& x,
                       const HermitianMatrix& b) {
  const Index n = a.dim();
  if (b.dim() != n || x.rows() != n || x.cols() != n) {
    throw DimensionError("block2: blocks must all be n x n");
  }
  Matrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = a.mat();
  out.topRightCorner(n, n) = x;
  out.bottomLeftCorner(n, n) = x.adjoint();
  out.bottomRightCorner(n, n) = b.mat();
  return HermitianMatrix(out);
}

}  // namespace kantolab

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <initializer_list>
#include <stdexcept>

namespace kantolab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotPsdError : std::domain_error {
  using std::domain_error::domain_error;
};
struct NotPdError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Relative tolerance for order verdicts: 1e-9 * max(1, operand norms).
double order_tolerance(std::initializer_list<double> scales);

/// Absolute cutoff used for unitarity checks and pseudo-inverse truncation.
inline constexpr double kPinvCutoff = 1e-12;
inline constexpr double kUnitarityTol = 1e-12;

/// Spectrum bounds 0 < m <= M confining a positive operator.
struct SpectralWindow {
  double m;
  double M;
  SpectralWindow(double m_, double M_);
  bool degenerate() const { return m == M; }
};

double kantorovich_constant(const SpectralWindow& w);  // (M+m)^2 / (4Mm)
double wielandt_constant(const SpectralWindow& w);     // ((M-m)/(M+m))^2

/// Dense complex square matrix that is exactly Hermitian by construction:
/// every constructor symmetrizes via (T + T*)/2, which is an exact fixed
/// point on already-Hermitian input in IEEE arithmetic.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const Matrix& raw);

  static HermitianMatrix identity(Index n);
  static HermitianMatrix zero(Index n);

  Index dim() const { return m_.rows(); }
  const Matrix& mat() const { return m_; }

 private:
  Matrix m_;
};

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator*(double s, const HermitianMatrix& a);

/// (T + T*)/2. Idempotent on Hermitian input. Throws DimensionError if T is
/// not square.
HermitianMatrix hermitize(const Matrix& t);

struct Eigensystem {
  RealVector values;  // ascending
  Matrix vectors;     // unitary; columns are eigenvectors
};

/// Eigendecomposition H = U diag(values) U*.
Eigensystem eig_h(const HermitianMatrix& h);

double lambda_min(const HermitianMatrix& h);
double lambda_max(const HermitianMatrix& h);

/// Largest singular value.
double operator_norm(const Matrix& t);
/// For Hermitian operands the operator norm is max |eigenvalue|; cheaper and
/// consistent with the eigensolver used everywhere else.
double operator_norm(const HermitianMatrix& h);

/// PSD square root. Eigenvalues in [-tol, 0) are clamped to zero; anything
/// more negative is genuine indefiniteness and throws NotPsdError.
HermitianMatrix sqrt_psd(const HermitianMatrix& a);

/// Inverse of a positive definite matrix; throws NotPdError when the smallest
/// eigenvalue is within tolerance of zero.
HermitianMatrix inv_pd(const HermitianMatrix& a);

/// Moore-Penrose pseudo-inverse via SVD; singular values <= cutoff * sigma_max
/// are treated as zero.
Matrix pinv(const Matrix& t, double cutoff = kPinvCutoff);

/// Eigenvalue-based pseudo-inverse of a PSD matrix, with support diagnostics.
/// Eigenvalues <= zero_cut * lambda_max are treated as exact zeros and
/// eigenvalues >= keep_cut * lambda_max are inverted; anything in between is
/// numerically ambiguous and flagged `gray` so callers can reject the
/// instance instead of dividing by a noise-scale eigenvalue.
struct PsdInverse {
  HermitianMatrix inverse =
      HermitianMatrix::zero(1);  // pseudo-inverse on the retained support
  Index rank = 0;                // retained eigenvalue count
  bool truncated = false;  // rank < dim (a generalized inverse was taken)
  bool gray = false;       // ambiguous spectrum; result unreliable
  Eigensystem es;          // decomposition of the input, for support reuse
};
PsdInverse psd_inverse(const HermitianMatrix& a, double zero_cut = kPinvCutoff,
                       double keep_cut = 1e-6);

/// |T| = (T*T)^{1/2}, evaluated through the singular value decomposition.
HermitianMatrix abs_op(const Matrix& t);

/// Geometric mean A # B = A^{1/2} (A^{-1/2} B A^{-1/2})^{1/2} A^{1/2} for
/// positive definite A, B; the unique positive solution X of X A^{-1} X = B.
HermitianMatrix geometric_mean(const HermitianMatrix& a,
                               const HermitianMatrix& b);

/// Geometric mean q # p where only p must be positive definite; q may be a
/// singular PSD matrix. Evaluated from the PD side, whose inverse is the only
/// one the formula needs.
HermitianMatrix geometric_mean_psd(const HermitianMatrix& q_psd,
                                   const HermitianMatrix& p_pd);

/// Outcome of a Loewner-order (or norm-bound) comparison.
struct LoewnerVerdict {
  bool holds = false;
  double margin = 0.0;  // lambda_min(RHS - LHS) for order claims
  double tolerance = 0.0;
};

/// Does lhs <= rhs in the Loewner order? margin = lambda_min(rhs - lhs);
/// holds iff margin >= -tol. The default tolerance is
/// 1e-9 * max(1, ||lhs||, ||rhs||).
LoewnerVerdict loewner_compare(const HermitianMatrix& lhs,
                               const HermitianMatrix& rhs);
LoewnerVerdict loewner_compare(const HermitianMatrix& lhs,
                               const HermitianMatrix& rhs, double tol);

/// Unitary-orbit dominance of PSD matrices: there is a unitary U with
/// U x U* <= y iff the decreasing eigenvalue sequences dominate entrywise.
/// margin = min_i (lambda_i_desc(y) - lambda_i_desc(x)).
LoewnerVerdict eigenvalue_dominance(const HermitianMatrix& x,
                                    const HermitianMatrix& y);
LoewnerVerdict eigenvalue_dominance(const HermitianMatrix& x,
                                    const HermitianMatrix& y, double tol);

/// [[A, X], [X*, B]] as a 2n x 2n Hermitian matrix.
HermitianMatrix block2(const HermitianMatrix& a, const Matrix& x,
                       const HermitianMatrix& b);

}  // namespace kantolab

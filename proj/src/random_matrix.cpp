#include "kantolab/random_matrix.hpp"

#include <cmath>

namespace kantolab {

Matrix ginibre(Index rows, Index cols, Rng& rng) {
  Matrix g(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      g(i, j) = rng.cnormal();
    }
  }
  return g;
}

Matrix haar_unitary(Index n, Rng& rng) {
  const Matrix g = ginibre(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (Index i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    const double mag = std::abs(d);
    q.col(i) *= mag > 0.0 ? d / mag : Complex(1.0, 0.0);
  }
  return q;
}

Vector random_unit_vector(Index n, Rng& rng) {
  Vector v(n);
  double norm2 = 0.0;
  do {
    for (Index i = 0; i < n; ++i) v(i) = rng.cnormal();
    norm2 = v.squaredNorm();
  } while (!(norm2 > 1e-30));
  return v / std::sqrt(norm2);
}

HermitianMatrix random_with_spectrum(const SpectralWindow& w, Index n,
                                     std::uint64_t seed,
                                     double endpoint_prob) {
  if (n < 1) throw DimensionError("random_with_spectrum: n must be >= 1");
  if (w.degenerate()) {
    return HermitianMatrix(w.m * Matrix::Identity(n, n));
  }
  Rng rng(seed);
  RealVector values(n);
  for (Index i = 0; i < n; ++i) values(i) = rng.uniform(w.m, w.M);
  if (n >= 2 && rng.bernoulli(endpoint_prob)) {
    const Index lo = rng.uniform_int(0, n - 1);
    Index hi = rng.uniform_int(0, n - 2);
    if (hi >= lo) ++hi;
    values(lo) = w.m;
    values(hi) = w.M;
  }
  const Matrix u = haar_unitary(n, rng);
  return HermitianMatrix(u * values.asDiagonal() * u.adjoint());
}

HermitianMatrix random_psd(Index n, Index rank, Rng& rng) {
  if (rank < 1) return HermitianMatrix::zero(n);
  const Matrix g = ginibre(n, rank, rng);
  return HermitianMatrix(g * g.adjoint());
}

HermitianMatrix random_hermitian(Index n, Rng& rng) {
  return hermitize(ginibre(n, n, rng));
}

}  // namespace kantolab

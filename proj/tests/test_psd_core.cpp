#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kantolab/psd_core.hpp"
#include "kantolab/random_matrix.hpp"
#include "kantolab/rng.hpp"

using namespace kantolab;

namespace {

const Complex kI(0.0, 1.0);

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// Independent 2x2 eigenvalue oracle: lambda = (tr -+ sqrt(tr^2 - 4 det)) / 2.
double eig2_min(double a, double b_re, double b_im, double d) {
  const double tr = a + d;
  const double det = a * d - (b_re * b_re + b_im * b_im);
  return 0.5 * (tr - std::sqrt(tr * tr - 4.0 * det));
}

HermitianMatrix random_pd(Index n, Rng& rng) {
  // Wishart plus a ridge keeps the conditioning moderate.
  const Matrix g = ginibre(n, n, rng);
  return HermitianMatrix(g * g.adjoint() + 0.1 * Matrix::Identity(n, n));
}

}  // namespace

TEST_CASE("hermitize fixes a Hermitian matrix exactly") {
  const Matrix t = mat2(1.0, kI, -kI, 2.0);
  const HermitianMatrix h = hermitize(t);
  CHECK((h.mat() - t).norm() == 0.0);
}

TEST_CASE("hermitize symmetrizes a nilpotent matrix") {
  const HermitianMatrix h = hermitize(mat2(0.0, 2.0, 0.0, 0.0));
  const Matrix want = mat2(0.0, 1.0, 1.0, 0.0);
  CHECK((h.mat() - want).norm() == 0.0);
}

TEST_CASE("hermitize output equals its own adjoint entrywise") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = rng.uniform_int(1, 8);
    const HermitianMatrix h = hermitize(ginibre(n, n, rng));
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        CHECK(h.mat()(i, j) == std::conj(h.mat()(j, i)));
      }
    }
  }
}

TEST_CASE("hermitize rejects non-square input") {
  CHECK_THROWS_AS(hermitize(Matrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("eig_h on diag(3,1) sorts ascending with a permutation basis") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  const Eigensystem es = eig_h(hermitize(d));
  CHECK(es.values(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(es.values(1) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(std::abs(es.vectors(1, 0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(es.vectors(0, 1)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eig_h on the identity") {
  const Eigensystem es = eig_h(HermitianMatrix::identity(5));
  for (Index i = 0; i < 5; ++i) {
    CHECK(es.values(i) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("eig_h residual and unitarity oracles on random input") {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = rng.uniform_int(1, 32);
    const HermitianMatrix h = random_hermitian(n, rng);
    const Eigensystem es = eig_h(h);
    const double hnorm = operator_norm(h);
    const Matrix rebuilt =
        es.vectors * es.values.asDiagonal() * es.vectors.adjoint();
    CHECK((rebuilt - h.mat()).norm() <= 1e-10 * (1.0 + hnorm));
    CHECK((es.vectors * es.vectors.adjoint() - Matrix::Identity(n, n)).norm() <=
          kUnitarityTol);
    for (Index i = 0; i + 1 < n; ++i) CHECK(es.values(i) <= es.values(i + 1));
  }
}

TEST_CASE("sqrt_psd on diagonal examples") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = 9.0;
  const HermitianMatrix r = sqrt_psd(hermitize(d));
  CHECK(r.mat()(0, 0).real() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r.mat()(1, 1).real() == doctest::Approx(3.0).epsilon(1e-14));
  const HermitianMatrix i3 = sqrt_psd(HermitianMatrix::identity(3));
  CHECK((i3.mat() - Matrix::Identity(3, 3)).norm() <= 1e-14);
}

TEST_CASE("sqrt_psd squaring oracle on random PSD matrices") {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = rng.uniform_int(1, 12);
    const HermitianMatrix a = random_psd(n, rng.uniform_int(1, n), rng);
    const HermitianMatrix r = sqrt_psd(a);
    CHECK(lambda_min(r) >= -1e-12 * (1.0 + operator_norm(r)));
    CHECK((r.mat() * r.mat() - a.mat()).norm() <=
          1e-10 * (1.0 + operator_norm(a)));
  }
}

TEST_CASE("sqrt_psd rejects indefinite input") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -0.5;
  CHECK_THROWS_AS(sqrt_psd(hermitize(d)), NotPsdError);
}

TEST_CASE("sqrt_psd clamps roundoff-scale negatives") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1e-13;
  const HermitianMatrix r = sqrt_psd(hermitize(d));
  CHECK(r.mat()(1, 1).real() == 0.0);
}

TEST_CASE("inv_pd on diag(2,4)") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 4.0;
  const HermitianMatrix inv = inv_pd(hermitize(d));
  CHECK(inv.mat()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(inv.mat()(1, 1).real() == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("inv_pd rejects singular input") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3.0;
  CHECK_THROWS_AS(inv_pd(hermitize(d)), NotPdError);
}

TEST_CASE("pinv of diag(3,0)") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3.0;
  const Matrix p = pinv(d);
  CHECK(std::abs(p(0, 0) - Complex(1.0 / 3.0)) <= 1e-15);
  CHECK(std::abs(p(1, 1)) <= 1e-15);
}

TEST_CASE("pinv identity oracle on random full-rank matrices") {
  Rng rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = rng.uniform_int(1, 10);
    const Matrix a =
        ginibre(n, n, rng) + 0.5 * Matrix::Identity(n, n);  // keep well-posed
    CHECK((a * pinv(a) - Matrix::Identity(n, n)).norm() <= 1e-9);
  }
}

TEST_CASE("pinv satisfies the four Penrose identities on low-rank input") {
  Rng rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = rng.uniform_int(2, 8);
    const Index r = rng.uniform_int(1, n - 1);
    const Matrix a = ginibre(n, r, rng) * ginibre(r, n, rng);
    const Matrix p = pinv(a);
    const double scale = 1.0 + operator_norm(a) + operator_norm(p);
    CHECK((a * p * a - a).norm() <= 1e-9 * scale);
    CHECK((p * a * p - p).norm() <= 1e-9 * scale);
    CHECK(((a * p) - (a * p).adjoint()).norm() <= 1e-9 * scale);
    CHECK(((p * a) - (p * a).adjoint()).norm() <= 1e-9 * scale);
  }
}

TEST_CASE("psd_inverse reports support rank and gray spectra") {
  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = 2.0;
  d(1, 1) = 1.0;
  const PsdInverse clean = psd_inverse(hermitize(d));
  CHECK(clean.rank == 2);
  CHECK(clean.truncated);
  CHECK_FALSE(clean.gray);
  CHECK(std::abs(clean.inverse.mat()(0, 0) - Complex(0.5)) <= 1e-14);
  CHECK(std::abs(clean.inverse.mat()(2, 2)) == 0.0);

  d(2, 2) = 1e-10;  // inside the ambiguous band (1e-12, 1e-6) * lambda_max
  const PsdInverse gray = psd_inverse(hermitize(d));
  CHECK(gray.gray);
}

TEST_CASE("geometric_mean fixed points and commuting case") {
  Rng rng(51);
  const HermitianMatrix c = random_pd(4, rng);
  CHECK((geometric_mean(c, c).mat() - c.mat()).norm() <=
        1e-10 * operator_norm(c));

  Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 4.0;
  b(0, 0) = 4.0;
  b(1, 1) = 1.0;
  const HermitianMatrix g = geometric_mean(hermitize(a), hermitize(b));
  CHECK((g.mat() - 2.0 * Matrix::Identity(2, 2)).norm() <= 1e-12);
}

TEST_CASE("geometric_mean Ricatti residual oracle") {
  Rng rng(53);
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = rng.uniform_int(1, 8);
    const HermitianMatrix a = random_pd(n, rng);
    const HermitianMatrix b = random_pd(n, rng);
    const HermitianMatrix x = geometric_mean(a, b);
    const Matrix residual = x.mat() * inv_pd(a).mat() * x.mat() - b.mat();
    CHECK(residual.norm() <= 1e-9 * operator_norm(b));
  }
}

TEST_CASE("geometric_mean symmetry and inverse identities") {
  Rng rng(55);
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = rng.uniform_int(1, 8);
    const HermitianMatrix a = random_pd(n, rng);
    const HermitianMatrix b = random_pd(n, rng);
    const double scale = operator_norm(a) + operator_norm(b);
    CHECK((geometric_mean(a, b).mat() - geometric_mean(b, a).mat()).norm() <=
          1e-9 * scale);
    CHECK((geometric_mean(a, inv_pd(a)).mat() - Matrix::Identity(n, n))
              .norm() <= 1e-9);
  }
}

TEST_CASE("geometric_mean rejects singular operands") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  CHECK_THROWS_AS(geometric_mean(hermitize(d), HermitianMatrix::identity(2)),
                  NotPdError);
  CHECK_THROWS_AS(geometric_mean(HermitianMatrix::identity(2), hermitize(d)),
                  NotPdError);
}

TEST_CASE("AM-GM and monotonicity of the geometric mean") {
  Rng rng(57);
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = rng.uniform_int(1, 6);
    const HermitianMatrix c = random_pd(n, rng);
    const HermitianMatrix d = random_pd(n, rng);
    const HermitianMatrix a = c + random_psd(n, rng.uniform_int(1, n), rng);
    const HermitianMatrix b = d + random_psd(n, rng.uniform_int(1, n), rng);

    const HermitianMatrix gab = geometric_mean(a, b);
    CHECK(loewner_compare(gab, 0.5 * (a + b)).holds);
    CHECK(loewner_compare(geometric_mean(c, d), gab).holds);
  }
}

TEST_CASE("maximal characterization of the geometric mean") {
  Rng rng(59);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = rng.uniform_int(1, 6);
    const HermitianMatrix a = random_pd(n, rng);
    const HermitianMatrix b = random_pd(n, rng);
    const HermitianMatrix g = geometric_mean(a, b);
    const HermitianMatrix blk = block2(a, g.mat(), b);
    CHECK(lambda_min(blk) >=
          -order_tolerance({operator_norm(a), operator_norm(b)}));

    // Any Hermitian X below the mean keeps X <= a#b; the block certificate
    // must agree whenever it is PSD.
    const HermitianMatrix x =
        g - HermitianMatrix(0.05 * random_psd(n, n, rng).mat());
    const HermitianMatrix blk_x = block2(a, x.mat(), b);
    if (lambda_min(blk_x) >= 0.0) {
      CHECK(loewner_compare(x, g).holds);
    }
  }
}

TEST_CASE("geometric_mean_psd accepts a singular left operand") {
  Rng rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 4;
    const HermitianMatrix q = random_psd(n, 2, rng);  // rank 2
    const HermitianMatrix p = random_pd(n, rng);
    const HermitianMatrix g = geometric_mean_psd(q, p);
    // Exact Ricatti-style oracle: X p^{-1} X = q holds even for singular q.
    const Matrix residual = g.mat() * inv_pd(p).mat() * g.mat() - q.mat();
    CAPTURE(trial);
    CHECK(residual.norm() <= 1e-9 * (1.0 + operator_norm(q)));
    // And it is the limit of the strictly-PD mean.
    const HermitianMatrix q_eps =
        q + HermitianMatrix(1e-7 * Matrix::Identity(n, n));
    const HermitianMatrix g_eps = geometric_mean(q_eps, p);
    CHECK((g.mat() - g_eps.mat()).norm() <=
          1e-2 * (1.0 + operator_norm(p) + operator_norm(q)));
  }
}

TEST_CASE("abs_op examples and SVD oracle") {
  const HermitianMatrix n1 = abs_op(mat2(0.0, 1.0, 0.0, 0.0));
  CHECK(std::abs(n1.mat()(0, 0)) <= 1e-15);
  CHECK(std::abs(n1.mat()(1, 1) - Complex(1.0)) <= 1e-15);

  Rng rng(63);
  const HermitianMatrix a = random_psd(3, 3, rng);
  CHECK((abs_op(a.mat()).mat() - a.mat()).norm() <=
        1e-10 * (1.0 + operator_norm(a)));

  for (int trial = 0; trial < 40; ++trial) {
    const Index n = rng.uniform_int(1, 8);
    const Matrix t = ginibre(n, n, rng);
    const RealVector sv =
        Eigen::JacobiSVD<Matrix>(t).singularValues();  // independent path
    const RealVector ev = eig_h(abs_op(t)).values;
    for (Index i = 0; i < n; ++i) {
      CHECK(std::abs(sv(i) - ev(n - 1 - i)) <= 1e-10 * (1.0 + sv(0)));
    }
  }
}

TEST_CASE("operator_norm examples") {
  CHECK(operator_norm(mat2(0.0, 2.0, 0.0, 0.0)) ==
        doctest::Approx(2.0).epsilon(1e-14));
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = -3.0;
  d(1, 1) = 1.0;
  CHECK(operator_norm(hermitize(d)) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("operator_norm vector-sampling oracle for small dimensions") {
  // sup ||Tx|| over unit vectors equals the norm; 10^4 samples, half of them
  // local perturbations of the running best so the sup actually closes in.
  Rng rng(65);
  for (Index n = 1; n <= 4; ++n) {
    const Matrix t = ginibre(n, n, rng);
    const double norm = operator_norm(t);
    Vector best_x = random_unit_vector(n, rng);
    double best = (t * best_x).norm();
    for (int i = 0; i < 10000; ++i) {
      Vector x;
      if (i % 2 == 0) {
        x = random_unit_vector(n, rng);
      } else {
        const double scale = 0.3 * std::pow(0.9995, i);
        x = best_x + scale * random_unit_vector(n, rng);
        x.normalize();
      }
      const double v = (t * x).norm();
      if (v > best) {
        best = v;
        best_x = x;
      }
      CHECK(v <= norm * (1.0 + 1e-12));
    }
    CHECK(norm - best <= 1e-3 * (1.0 + norm));
  }
}

TEST_CASE("loewner_compare on scalar multiples of the identity") {
  const HermitianMatrix one = HermitianMatrix::identity(3);
  const HermitianMatrix two = 2.0 * one;
  const LoewnerVerdict up = loewner_compare(one, two);
  CHECK(up.holds);
  CHECK(up.margin == doctest::Approx(1.0).epsilon(1e-14));
  const LoewnerVerdict down = loewner_compare(two, one);
  CHECK_FALSE(down.holds);
  CHECK(down.margin == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("loewner_compare frozen 2x2 margin") {
  const HermitianMatrix lhs = HermitianMatrix::identity(2);
  const HermitianMatrix rhs = hermitize(mat2(2.0, 1.0, 1.0, 1.0));
  const LoewnerVerdict v = loewner_compare(lhs, rhs);
  const double expected = eig2_min(1.0, 1.0, 0.0, 0.0);  // (1 - sqrt 5)/2
  CHECK_FALSE(v.holds);
  CHECK(v.margin == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(0.5 * (1.0 - std::sqrt(5.0))));
}

TEST_CASE("loewner_compare rejects mismatched dimensions") {
  CHECK_THROWS_AS(loewner_compare(HermitianMatrix::identity(2),
                                  HermitianMatrix::identity(3)),
                  DimensionError);
}

TEST_CASE("block2 assembles and validates") {
  const HermitianMatrix one = HermitianMatrix::identity(2);
  const HermitianMatrix blk = block2(one, Matrix::Zero(2, 2), one);
  CHECK((blk.mat() - Matrix::Identity(4, 4)).norm() == 0.0);
  CHECK_THROWS_AS(block2(one, Matrix::Zero(3, 3), one), DimensionError);
}

TEST_CASE("block2 norm certificate in both directions at the boundary") {
  Rng rng(67);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = rng.uniform_int(1, 6);
    const Matrix x = ginibre(n, n, rng);
    const double t = operator_norm(x);
    const HermitianMatrix above =
        block2((t + 0.01) * HermitianMatrix::identity(n), x,
               (t + 0.01) * HermitianMatrix::identity(n));
    CHECK(lambda_min(above) >= -order_tolerance({t}));
    const HermitianMatrix below =
        block2((t - 0.01) * HermitianMatrix::identity(n), x,
               (t - 0.01) * HermitianMatrix::identity(n));
    CHECK(lambda_min(below) < 0.0);
  }
}

TEST_CASE("kantorovich and wielandt constants") {
  const SpectralWindow w14(1.0, 4.0);
  CHECK(kantorovich_constant(w14) == doctest::Approx(25.0 / 16.0));
  CHECK(wielandt_constant(w14) == doctest::Approx(9.0 / 25.0));
  const SpectralWindow w19(1.0, 9.0);
  CHECK(kantorovich_constant(w19) == doctest::Approx(100.0 / 36.0));
  CHECK(wielandt_constant(w19) == doctest::Approx(64.0 / 100.0));
  const SpectralWindow degenerate(2.5, 2.5);
  CHECK(kantorovich_constant(degenerate) == doctest::Approx(1.0));
  CHECK(wielandt_constant(degenerate) == doctest::Approx(0.0));
}

TEST_CASE("spectral window validates its bounds") {
  CHECK_THROWS_AS(SpectralWindow(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SpectralWindow(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SpectralWindow(2.0, 1.0), std::invalid_argument);
}

TEST_CASE("random_with_spectrum degenerate and scalar cases") {
  const HermitianMatrix i4 =
      random_with_spectrum(SpectralWindow(1.0, 1.0), 4, 9);
  CHECK((i4.mat() - Matrix::Identity(4, 4)).norm() <= 1e-12);

  const HermitianMatrix s =
      random_with_spectrum(SpectralWindow(2.0, 5.0), 1, 10);
  CHECK(s.mat()(0, 0).real() >= 2.0 - 1e-12);
  CHECK(s.mat()(0, 0).real() <= 5.0 + 1e-12);
}

TEST_CASE("random_with_spectrum window oracle and determinism") {
  Rng seeds(71);
  for (int trial = 0; trial < 30; ++trial) {
    const SpectralWindow w(1.0, seeds.uniform(1.0, 100.0));
    const Index n = seeds.uniform_int(1, 12);
    const std::uint64_t seed = seeds.next_u64();
    const HermitianMatrix a = random_with_spectrum(w, n, seed);
    CHECK(loewner_compare(w.m * HermitianMatrix::identity(n), a).holds);
    CHECK(loewner_compare(a, w.M * HermitianMatrix::identity(n)).holds);
    const HermitianMatrix again = random_with_spectrum(w, n, seed);
    CHECK((a.mat() - again.mat()).norm() == 0.0);
  }
}

TEST_CASE("random_with_spectrum endpoint forcing") {
  const SpectralWindow w(1.0, 10.0);
  int forced = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const HermitianMatrix a = random_with_spectrum(w, 4, 1000 + trial, 1.0);
    const RealVector ev = eig_h(a).values;
    const bool has_m = std::abs(ev(0) - w.m) <= 1e-9 * w.M;
    const bool has_M = std::abs(ev(3) - w.M) <= 1e-9 * w.M;
    if (has_m && has_M) ++forced;
  }
  CHECK(forced == 50);
}

TEST_CASE("eigenvalue_dominance basic cases") {
  const HermitianMatrix one = HermitianMatrix::identity(3);
  const LoewnerVerdict eq = eigenvalue_dominance(one, one);
  CHECK(eq.holds);
  CHECK(eq.margin == doctest::Approx(0.0));
  const LoewnerVerdict up = eigenvalue_dominance(one, 2.0 * one);
  CHECK(up.holds);
  CHECK(up.margin == doctest::Approx(1.0));
}

TEST_CASE("eigenvalue dominance of |AB| under the squared mean") {
  Rng rng(73);
  for (int trial = 0; trial < 500; ++trial) {
    const Index n = rng.uniform_int(1, 6);
    const HermitianMatrix a = random_psd(n, rng.uniform_int(1, n), rng);
    const HermitianMatrix b = random_psd(n, rng.uniform_int(1, n), rng);
    const HermitianMatrix lhs = abs_op(a.mat() * b.mat());
    const HermitianMatrix sum = a + b;
    const HermitianMatrix rhs = hermitize(0.25 * sum.mat() * sum.mat());
    CAPTURE(trial);
    CHECK(eigenvalue_dominance(lhs, rhs).holds);
  }
}

TEST_CASE("haar_unitary is unitary and deterministic per seed") {
  Rng a(81), b(81);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = a.uniform_int(1, 10);
    (void)b.uniform_int(1, 10);
    const Matrix u = haar_unitary(n, a);
    const Matrix v = haar_unitary(n, b);
    CHECK((u * u.adjoint() - Matrix::Identity(n, n)).norm() <= kUnitarityTol);
    CHECK((u - v).norm() == 0.0);
  }
}

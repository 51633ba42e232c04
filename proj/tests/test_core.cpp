#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "matmean/matrix.hpp"
#include "matmean/rng.hpp"
#include "oracle.hpp"

#include <cmath>

using namespace matmean;

namespace {

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("eig_hermitian on diagonal and Pauli-X inputs") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = 4;
  auto s = eig_hermitian(HermitianMatrix(d));
  CHECK(s.eigenvalues(0) == doctest::Approx(4));
  CHECK(s.eigenvalues(1) == doctest::Approx(1));
  // eigenvectors are permuted identity columns
  CHECK(std::abs(s.eigenvectors(1, 0)) == doctest::Approx(1));
  CHECK(std::abs(s.eigenvectors(0, 1)) == doctest::Approx(1));

  auto sx = eig_hermitian(HermitianMatrix(mat2(0, 1, 1, 0)));
  CHECK(sx.eigenvalues(0) == doctest::Approx(1));
  CHECK(sx.eigenvalues(1) == doctest::Approx(-1));
  CHECK(std::abs(sx.eigenvectors(0, 0)) == doctest::Approx(1 / std::sqrt(2.0)));
}

TEST_CASE("spectral round trip on random Hermitian matrices") {
  Rng rng(7);
  for (int t = 0; t < 30; ++t) {
    const int n = rng.uniform_int(2, 8);
    HermitianMatrix h = sample_hermitian(n, rng);
    auto s = eig_hermitian(h);
    Matrix rec = s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.adjoint();
    CHECK(opnorm(rec - h.mat()) <= 1e-11 * (1 + opnorm(h.mat())));
    CHECK(opnorm(s.eigenvectors.adjoint() * s.eigenvectors -
                 Matrix::Identity(n, n)) < 1e-12);
  }
}

TEST_CASE("construction rejects non-Hermitian and non-PSD input") {
  CHECK_THROWS_AS(HermitianMatrix(mat2(0, 1, 0, 0)), std::invalid_argument);
  CHECK_THROWS_AS(PsdMatrix::from_matrix(mat2(1, 0, 0, -1)), std::invalid_argument);
  // tiny negative eigenvalues clamp to zero
  PsdMatrix p = PsdMatrix::from_matrix(mat2(1, 0, 0, -1e-14));
  CHECK(p.eigenvalues()(1) == 0.0);
  CHECK_THROWS_AS(check_dim(17), std::invalid_argument);
}

TEST_CASE("support projection") {
  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = 3;
  d(2, 2) = 1e-18;
  auto info = support_projection(PsdMatrix::from_matrix(d), 1e-12);
  CHECK(info.rank == 1);
  CHECK(info.projection.mat()(0, 0).real() == doctest::Approx(1));
  CHECK(opnorm(info.projection.mat() * info.projection.mat() -
               info.projection.mat()) < 1e-12);

  auto full = support_projection(PsdMatrix::identity(3));
  CHECK(full.rank == 3);

  Rng rng(3);
  Matrix v(3, 1);
  v << Complex(0.5, 0.1), Complex(0.3, -0.2), Complex(0.7, 0);
  v /= std::sqrt(v.squaredNorm());
  PsdMatrix proj = PsdMatrix::from_matrix(v * v.adjoint());
  auto sp = support_projection(proj);
  CHECK(sp.rank == 1);
  CHECK(opnorm(sp.projection.mat() - proj.mat()) < 1e-12);
}

TEST_CASE("mat_pow: generalized inverse and composition") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 4;
  PsdMatrix a = PsdMatrix::from_matrix(d);
  PsdMatrix r = mat_pow(a, -0.5);
  CHECK(r.mat()(0, 0).real() == doctest::Approx(0.5));
  CHECK(std::abs(r.mat()(1, 1)) == 0.0);

  PsdMatrix sq = mat_pow(PsdMatrix::from_matrix(mat2(2, 1, 1, 2)), 2.0);
  CHECK(sq.mat()(0, 0).real() == doctest::Approx(5));
  CHECK(sq.mat()(0, 1).real() == doctest::Approx(4));

  Rng rng(11);
  for (double r2 : {-0.5, -2.0, 0.5, 2.0, 3.0}) {
    PsdMatrix x = sample_psd(4, 50.0, rng);
    PsdMatrix back = mat_pow(mat_pow(x, r2), 1.0 / r2);
    CHECK(opnorm(back.mat() - x.mat()) < 1e-9 * opnorm(x.mat()));
  }
  // A * A^{-1} = s(A)
  auto [af, bs] = sample_psd_pair_dominated(4, 2, 10.0, rng);
  PsdMatrix inv = mat_pow(bs, -1.0);
  Matrix prod = bs.mat() * inv.mat();
  CHECK(opnorm(prod - support_projection(bs).projection.mat()) < 1e-10);
}

TEST_CASE("mat_log_support and mat_exp") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = std::exp(1.0);
  d(1, 1) = 1.0;
  HermitianMatrix l = mat_log_support(PsdMatrix::from_matrix(d));
  CHECK(l.mat()(0, 0).real() == doctest::Approx(1));
  CHECK(std::abs(l.mat()(1, 1)) < 1e-15);

  CHECK(opnorm(mat_exp(herm_zero(3)).mat() - Matrix::Identity(3, 3)) < 1e-14);
  CHECK_THROWS_AS(mat_log_support(PsdMatrix::zero(2)), std::domain_error);

  Rng rng(5);
  PsdMatrix x = sample_psd(4, 100.0, rng);
  PsdMatrix rt = mat_exp(mat_log_support(x));
  CHECK(opnorm(rt.mat() - x.mat()) < 1e-10 * opnorm(x.mat()));
}

TEST_CASE("loewner order") {
  PsdMatrix i2 = PsdMatrix::identity(2);
  PsdMatrix two = PsdMatrix::from_matrix(2.0 * Matrix::Identity(2, 2));
  CHECK(loewner_le(i2, two));
  CHECK_FALSE(loewner_le(two, i2));
  CHECK(loewner_le(i2, i2));
  PsdMatrix a = PsdMatrix::from_matrix(mat2(2, 0, 0, 0));
  PsdMatrix b = PsdMatrix::from_matrix(mat2(1, 0, 0, 1));
  CHECK_FALSE(loewner_le(a, b));
  CHECK_FALSE(loewner_le(b, a));
  CHECK_THROWS_AS(loewner_le(i2, PsdMatrix::identity(3)), std::invalid_argument);
}

TEST_CASE("samplers: determinism, dominance, conditioning") {
  Rng r1(42), r2(42);
  PsdMatrix a1 = sample_psd(3, 100.0, r1);
  PsdMatrix a2 = sample_psd(3, 100.0, r2);
  CHECK(opnorm(a1.mat() - a2.mat()) == 0.0);

  Rng rng(9);
  auto [a, b] = sample_psd_pair_dominated(4, 2, 10.0, rng);
  CHECK(support_dominates(a, b));
  CHECK(b.rank() == 2);
  CHECK(loewner_le(support_projection(b).projection, support_projection(a).projection,
                   1e-9));

  PsdMatrix c = sample_psd(5, 1e6, rng);
  const double kappa = c.eigenvalues()(0) / c.eigenvalues()(4);
  CHECK(kappa >= 1e5);
  CHECK(kappa <= 1e7);
  CHECK_THROWS_AS(sample_psd_pair_dominated(3, 4, 10.0, rng), std::invalid_argument);
}

TEST_CASE("long-double oracle agrees with Eigen path") {
  Rng rng(13);
  for (int t = 0; t < 10; ++t) {
    PsdMatrix a = sample_psd(4, 1000.0, rng);
    auto w = oracle::eigenvalues_desc(oracle::from_eigen(a.mat()));
    for (int i = 0; i < 4; ++i)
      CHECK(std::abs(static_cast<double>(w[i]) - a.eigenvalues()(i)) <=
            1e-13 * a.eigenvalues()(0));
  }
}

TEST_CASE("matrix exchange JSON round trip and validation") {
  Rng rng(21);
  PsdMatrix a = sample_psd(3, 10.0, rng);
  std::string text = matrix_to_exchange_json(a.mat());
  Matrix back = matrix_from_exchange_json(text);
  CHECK(opnorm(back - a.mat()) < 1e-15);
  HermitianMatrix h = hermitian_from_exchange_json(text);
  CHECK(h.dim() == 3);
  CHECK_THROWS(matrix_from_exchange_json("{\"dim\": 2, \"re\": [[1,0]]}"));
  CHECK_THROWS(hermitian_from_exchange_json(
      "{\"dim\": 2, \"re\": [[0,1],[0,0]], \"im\": [[0,0],[0,0]]}"));
}

TEST_CASE("kron and partial trace") {
  Rng rng(17);
  PsdMatrix a = sample_psd(2, 5.0, rng);
  PsdMatrix b = sample_psd(3, 5.0, rng);
  PsdMatrix k = kron(a, b);
  CHECK(k.trace() == doctest::Approx(a.trace() * b.trace()));
  Matrix pt = partial_trace_front(k.mat(), 2, 3);
  CHECK(opnorm(pt - a.trace() * b.mat()) < 1e-12);
}

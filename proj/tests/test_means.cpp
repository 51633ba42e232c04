#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "matmean/means.hpp"
#include "matmean/rng.hpp"
#include "oracle.hpp"

#include <cmath>

using namespace matmean;

namespace {

PsdMatrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return PsdMatrix::from_matrix(m);
}

double rel_opnorm_diff(const PsdMatrix& x, const PsdMatrix& y) {
  return opnorm(x.mat() - y.mat()) / std::max(opnorm(y.mat()), 1e-300);
}

}  // namespace

TEST_CASE("commuting cases hit the scalar formulas") {
  // G_{1/2,1}(diag(1,4), diag(9,1)) = diag(3,2)
  PsdMatrix g = compute_mean({MeanKind::Geometric, 0.5, 1.0}, diag2(1, 4), diag2(9, 1)).value;
  CHECK(g.mat()(0, 0).real() == doctest::Approx(3));
  CHECK(g.mat()(1, 1).real() == doctest::Approx(2));

  // LE_{1/3}(diag(8,1), diag(1,27)) = diag(4,3)
  PsdMatrix le = compute_mean({MeanKind::LogEuclidean, 1.0 / 3.0, 1.0}, diag2(8, 1),
                              diag2(1, 27)).value;
  CHECK(le.mat()(0, 0).real() == doctest::Approx(4));
  CHECK(le.mat()(1, 1).real() == doctest::Approx(3));

  // weighted_geometric(I, B, 1/2) = B^{1/2}; commuting diagonal case
  Rng rng(3);
  PsdMatrix b = sample_psd(3, 20.0, rng);
  PsdMatrix wg = weighted_geometric(PsdMatrix::identity(3), b, 0.5);
  CHECK(rel_opnorm_diff(wg, mat_pow(b, 0.5)) < 1e-12);
  PsdMatrix cg = weighted_geometric(diag2(4, 9), diag2(1, 1), 0.5);
  CHECK(cg.mat()(0, 0).real() == doctest::Approx(2));
  CHECK(cg.mat()(1, 1).real() == doctest::Approx(3));
}

TEST_CASE("M(A, A) = A for every kind") {
  Rng rng(5);
  PsdMatrix a = sample_psd(3, 30.0, rng);
  for (MeanKind k : {MeanKind::Renyi, MeanKind::Geometric, MeanKind::SpectralGeometric,
                     MeanKind::SpectralGeometricTilde, MeanKind::LogEuclidean,
                     MeanKind::Arithmetic, MeanKind::Harmonic}) {
    MeanResult m = compute_mean({k, 0.35, 1.4}, a, a);
    CHECK(rel_opnorm_diff(m.value, a) < 1e-10);
  }
}

TEST_CASE("SG against the independent long-double oracle") {
  PsdMatrix a = PsdMatrix::from_matrix([] {
    Matrix m(2, 2);
    m << 2, 1, 1, 2;
    return m;
  }());
  PsdMatrix b = diag2(1, 3);
  PsdMatrix sg = compute_mean({MeanKind::SpectralGeometric, 0.5, 1.0}, a, b).value;
  Matrix want = oracle::to_eigen(
      oracle::mean_sg(oracle::from_eigen(a.mat()), oracle::from_eigen(b.mat()), 0.5L, 1.0L));
  CHECK(opnorm(sg.mat() - want) < 1e-9 * opnorm(want));
}

TEST_CASE("all kinds against the oracle on random positive definite pairs") {
  Rng rng(11);
  for (int t = 0; t < 12; ++t) {
    const int n = rng.uniform_int(2, 4);
    PsdMatrix a = sample_psd(n, 40.0, rng);
    PsdMatrix b = sample_psd(n, 40.0, rng);
    const double alpha = t % 2 ? rng.uniform(0.1, 0.9) : rng.uniform(1.1, 2.5);
    const double p = rng.log_uniform(0.4, 2.0);
    oracle::Mat oa = oracle::from_eigen(a.mat());
    oracle::Mat ob = oracle::from_eigen(b.mat());
    auto check_kind = [&](MeanKind k, const oracle::Mat& want) {
      PsdMatrix got = compute_mean({k, alpha, p}, a, b).value;
      Matrix w = oracle::to_eigen(want);
      CHECK(opnorm(got.mat() - w) < 1e-9 * std::max(1.0, opnorm(w)));
    };
    check_kind(MeanKind::Renyi, oracle::mean_renyi(oa, ob, alpha, p));
    check_kind(MeanKind::Geometric, oracle::mean_geometric(oa, ob, alpha, p));
    check_kind(MeanKind::SpectralGeometric, oracle::mean_sg(oa, ob, alpha, p));
    check_kind(MeanKind::SpectralGeometricTilde, oracle::mean_sgt(oa, ob, alpha, p));
    check_kind(MeanKind::LogEuclidean, oracle::mean_le(oa, ob, alpha));
  }
}

TEST_CASE("domain rules") {
  Rng rng(7);
  auto [a, b] = sample_psd_pair_dominated(3, 2, 10.0, rng);
  // dominated direction fine, reversed direction rejected for SG kinds
  CHECK_NOTHROW(compute_mean({MeanKind::SpectralGeometric, 0.4, 1.0}, a, b));
  CHECK_THROWS_AS(compute_mean({MeanKind::SpectralGeometric, 0.4, 1.0}, b, a),
                  std::domain_error);
  CHECK_THROWS_AS(compute_mean({MeanKind::Renyi, 1.5, 1.0}, b, a), std::domain_error);
  CHECK_NOTHROW(compute_mean({MeanKind::Renyi, 0.5, 1.0}, b, a));
  CHECK_THROWS_AS(compute_mean({MeanKind::Renyi, 1.0, 1.0}, a, b),
                  std::invalid_argument);
  CHECK_THROWS_AS(compute_mean({MeanKind::Arithmetic, 1.5, 1.0}, a, b),
                  std::invalid_argument);
  CHECK_THROWS_AS(compute_mean({MeanKind::Renyi, 0.5, -1.0}, a, b),
                  std::invalid_argument);
}

TEST_CASE("weighted geometric at alpha=2 matches the eigenvalue oracle") {
  // lambda(A #_2 B) = lambda(B A^{-1} B)
  Rng rng(19);
  PsdMatrix a = sample_psd(3, 20.0, rng);
  PsdMatrix b = sample_psd(3, 20.0, rng);
  PsdMatrix s2 = weighted_geometric(a, b, 2.0);
  Matrix bab = b.mat() * mat_pow(a, -1.0).mat() * b.mat();
  PsdMatrix ref = PsdMatrix::from_matrix(0.5 * (bab + bab.adjoint().eval()));
  for (int i = 0; i < 3; ++i)
    CHECK(s2.eigenvalues()(i) ==
          doctest::Approx(ref.eigenvalues()(i)).epsilon(1e-10));
}

TEST_CASE("epsilon limit") {
  Rng rng(23);
  PsdMatrix a = sample_psd(3, 10.0, rng);
  PsdMatrix b = sample_psd(3, 10.0, rng);
  MeanSpec spec{MeanKind::Renyi, 0.5, 1.0};
  MeanResult direct = compute_mean(spec, a, b);
  MeanResult lim = epsilon_limit(spec, a, b);
  CHECK(lim.epsilon_diag->converged);
  CHECK(rel_opnorm_diff(lim.value, direct.value) < 1e-6);

  // commuting singular case: R_{1/2,1}(I, diag(1,0)) -> diag(1,0)
  MeanResult sing = epsilon_limit(spec, PsdMatrix::identity(2), diag2(1, 0));
  CHECK(sing.value.mat()(0, 0).real() == doctest::Approx(1).epsilon(1e-4));
  CHECK(std::abs(sing.value.mat()(1, 1).real()) < 1e-4);

  // dominated singular pair: SGt eps-limit matches the generalized-inverse path
  auto [ad, bd] = sample_psd_pair_dominated(3, 2, 10.0, rng);
  MeanSpec sgt{MeanKind::SpectralGeometricTilde, 1.5, 1.0};
  MeanResult d2 = compute_mean(sgt, ad, bd);
  MeanResult l2 = epsilon_limit(sgt, ad, bd);
  CHECK(opnorm(l2.value.mat() - d2.value.mat()) < 1e-6 * (1 + opnorm(d2.value.mat())));
}

TEST_CASE("determinant identity and inverse identity") {
  Rng rng(29);
  PsdMatrix a = sample_psd(4, 50.0, rng);
  PsdMatrix b = sample_psd(4, 50.0, rng);
  for (MeanKind k : {MeanKind::Renyi, MeanKind::Geometric, MeanKind::SpectralGeometric,
                     MeanKind::SpectralGeometricTilde, MeanKind::LogEuclidean}) {
    for (double alpha : {0.3, 1.5}) {
      MeanSpec spec{k, alpha, 0.8};
      MeanResult m = compute_mean(spec, a, b);
      const double want =
          (1 - alpha) * log_det_support(a) + alpha * log_det_support(b);
      CHECK(std::abs(m.log_det - want) < 1e-9);
      PsdMatrix minv = compute_mean(spec, mat_pow(a, -1.0), mat_pow(b, -1.0)).value;
      CHECK(opnorm(minv.mat() - mat_pow(m.value, -1.0).mat()) <
            1e-8 * opnorm(mat_pow(m.value, -1.0).mat()));
    }
  }
}

TEST_CASE("symmetry relations") {
  Rng rng(31);
  PsdMatrix a = sample_psd(3, 30.0, rng);
  PsdMatrix b = sample_psd(3, 30.0, rng);
  const double alpha = 0.35, p = 1.2;
  // Tr R_{a,p}(A,B) = Tr R_{1-a,p}(B,A)
  const double t1 = compute_mean({MeanKind::Renyi, alpha, p}, a, b).value.trace();
  const double t2 = compute_mean({MeanKind::Renyi, 1 - alpha, p}, b, a).value.trace();
  CHECK(t1 == doctest::Approx(t2).epsilon(1e-11));
  // SG_{a,p}(A,B) = SG_{1-a,p}(B,A)
  PsdMatrix s1 = compute_mean({MeanKind::SpectralGeometric, alpha, p}, a, b).value;
  PsdMatrix s2 = compute_mean({MeanKind::SpectralGeometric, 1 - alpha, p}, b, a).value;
  CHECK(rel_opnorm_diff(s1, s2) < 1e-10);
}

TEST_CASE("lie trotter probe converges to LE") {
  Rng rng(37);
  PsdMatrix a = sample_psd(2, 4.0, rng);
  PsdMatrix b = sample_psd(2, 4.0, rng);
  auto rep = lie_trotter_probe(MeanKind::Geometric, 0.5, a, b);
  CHECK(rep.final_distance <= 1e-3);
  CHECK(rep.decreasing_tail);

  // commuting pair: distance ~0 at every p
  PsdMatrix ca = diag2(2, 0.5), cb = diag2(0.3, 1.5);
  auto crep = lie_trotter_probe(MeanKind::Renyi, 0.4, ca, cb);
  for (double d : crep.distances) CHECK(d < 1e-12);

  // dominated singular pair converges to the LE value with P0 = s(B)
  auto [ad, bd] = sample_psd_pair_dominated(3, 2, 5.0, rng);
  auto srep = lie_trotter_probe(MeanKind::SpectralGeometricTilde, 2.0, ad, bd);
  CHECK(srep.final_distance <= 1e-2);
}

TEST_CASE("harmonic and arithmetic basics") {
  Rng rng(41);
  PsdMatrix a = sample_psd(3, 10.0, rng);
  PsdMatrix b = sample_psd(3, 10.0, rng);
  // harmonic <= arithmetic in trace (AM-HM at matching parameters)
  const double th = compute_mean({MeanKind::Harmonic, 0.5, 1.0}, a, b).value.trace();
  const double ta = compute_mean({MeanKind::Arithmetic, 0.5, 1.0}, a, b).value.trace();
  CHECK(th <= ta + 1e-12);
  // singular harmonic goes through the eps path and reports it
  MeanResult hs = compute_mean({MeanKind::Harmonic, 0.5, 1.0}, diag2(1, 0),
                               PsdMatrix::identity(2));
  CHECK(hs.regularization_used.has_value());
  CHECK(hs.value.mat()(0, 0).real() == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(std::abs(hs.value.mat()(1, 1).real()) < 1e-4);
}

TEST_CASE("support meet isometry") {
  // orthogonal rank-1 supports meet in 0
  Matrix v1(2, 1), v2(2, 1);
  v1 << 1, 0;
  v2 << 0, 1;
  PsdMatrix p1 = PsdMatrix::from_matrix(v1 * v1.adjoint());
  PsdMatrix p2 = PsdMatrix::from_matrix(v2 * v2.adjoint());
  CHECK(support_meet_isometry(p1, p2).cols() == 0);
  // angled rank-1 supports also meet in 0
  Matrix v3(2, 1);
  v3 << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  PsdMatrix p3 = PsdMatrix::from_matrix(v3 * v3.adjoint());
  CHECK(support_meet_isometry(p1, p3).cols() == 0);
  // dominated pair meets in s(B)
  Rng rng(43);
  auto [a, b] = sample_psd_pair_dominated(4, 2, 10.0, rng);
  CHECK(support_meet_isometry(a, b).cols() == 2);
  // LE on a singular pair stays supported on the meet
  PsdMatrix le = compute_mean({MeanKind::LogEuclidean, 0.5, 1.0}, p1, p3).value;
  CHECK(le.trace() < 1e-12);
}

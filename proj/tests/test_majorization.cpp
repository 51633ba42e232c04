#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "matmean/majorization.hpp"
#include "matmean/means.hpp"
#include "matmean/rng.hpp"

#include <cmath>

using namespace matmean;

namespace {

PsdMatrix diagm(std::initializer_list<double> vals) {
  const int n = static_cast<int>(vals.size());
  Matrix m = Matrix::Zero(n, n);
  int i = 0;
  for (double v : vals) m(i, i) = v, ++i;
  return PsdMatrix::from_matrix(m);
}

}  // namespace

TEST_CASE("weak log-majorization basics") {
  CHECK(weak_log_majorize(diagm({3, 1}), diagm({4, 1})).holds);
  auto refl = weak_log_majorize(diagm({3, 1}), diagm({3, 1}));
  CHECK(refl.holds);
  CHECK(refl.margin == doctest::Approx(0));
  CHECK(refl.outcome == Ternary::Boundary);
  CHECK_FALSE(weak_log_majorize(diagm({4, 1}), diagm({3, 1})).holds);
  CHECK_THROWS_AS(weak_log_majorize(diagm({1, 2}), diagm({1, 2, 3})),
                  std::invalid_argument);
}

TEST_CASE("zero eigenvalues: zero products tie or dominate") {
  // zero product on the left passes any k
  CHECK(weak_log_majorize(diagm({2, 0}), diagm({3, 1})).holds);
  // positive vs zero product fails
  CHECK_FALSE(weak_log_majorize(diagm({2, 1}), diagm({3, 0})).holds);
  // two zero products tie
  CHECK(weak_log_majorize(diagm({3, 0}), diagm({3, 0})).holds);
}

TEST_CASE("log-majorization needs det equality") {
  CHECK(log_majorize(diagm({2, 2}), diagm({4, 1})).holds);
  CHECK_FALSE(log_majorize(diagm({3, 1}), diagm({4, 1})).holds);
  // singular on one side only fails; both singular passes the det clause
  CHECK_FALSE(log_majorize(diagm({2, 1}), diagm({5, 0})).holds);
  CHECK(log_majorize(diagm({2, 0}), diagm({3, 0})).holds);
}

TEST_CASE("Araki instance (F-1.1) with p=1, q=2") {
  Rng rng(101);
  for (int t = 0; t < 25; ++t) {
    PsdMatrix a = sample_psd(3, 50.0, rng);
    PsdMatrix b = sample_psd(3, 50.0, rng);
    PsdMatrix x = PsdMatrix::from_matrix(mat_pow(a, 0.5).mat() * b.mat() *
                                         mat_pow(a, 0.5).mat());
    PsdMatrix inner = PsdMatrix::from_matrix(a.mat() * mat_pow(b, 2.0).mat() * a.mat());
    PsdMatrix y = mat_pow(inner, 0.5);
    auto v = weak_log_majorize(x, y);
    CHECK(v.holds);
  }
}

TEST_CASE("Ando-Hiai instance: G_{1/2,2} prec_log G_{1/2,1}") {
  Rng rng(103);
  for (int t = 0; t < 15; ++t) {
    PsdMatrix a = sample_psd(4, 30.0, rng);
    PsdMatrix b = sample_psd(4, 30.0, rng);
    PsdMatrix lhs = compute_mean({MeanKind::Geometric, 0.5, 2.0}, a, b).value;
    PsdMatrix rhs = compute_mean({MeanKind::Geometric, 0.5, 1.0}, a, b).value;
    CHECK(log_majorize(lhs, rhs).holds);
  }
}

TEST_CASE("eigen order") {
  CHECK(eigen_order_le(diagm({1, 2}), diagm({2, 3})).holds);
  CHECK_FALSE(eigen_order_le(diagm({1, 3}), diagm({2, 2})).holds);
  // Loewner implies eigen order (Weyl monotonicity)
  Rng rng(107);
  for (int t = 0; t < 20; ++t) {
    PsdMatrix a = sample_psd(4, 20.0, rng);
    PsdMatrix d = sample_psd(4, 20.0, rng);
    PsdMatrix b = PsdMatrix::from_matrix(a.mat() + d.mat());
    CHECK(loewner_le(a, b));
    CHECK(eigen_order_le(a, b).holds);
    CHECK(weak_log_majorize(a, b).holds);
  }
}

TEST_CASE("schatten norms") {
  PsdMatrix x = diagm({3, 4});
  CHECK(schatten_norm(x, 1) == doctest::Approx(7));
  CHECK(schatten_norm(x, 2) == doctest::Approx(5));
  CHECK(operator_norm(x) == doctest::Approx(4));
  CHECK(trace_norm(x) == doctest::Approx(7));
  CHECK_THROWS_AS(schatten_norm(x, 0.5), std::invalid_argument);
}

TEST_CASE("prec_log implies Schatten ordering") {
  Rng rng(109);
  for (int t = 0; t < 20; ++t) {
    PsdMatrix a = sample_psd(4, 30.0, rng);
    PsdMatrix b = sample_psd(4, 30.0, rng);
    PsdMatrix x = compute_mean({MeanKind::Renyi, 0.4, 0.7}, a, b).value;
    PsdMatrix y = compute_mean({MeanKind::Renyi, 0.4, 1.9}, a, b).value;
    REQUIRE(log_majorize(x, y).holds);
    for (double s : {1.0, 2.0, 3.0, std::numeric_limits<double>::infinity()})
      CHECK(schatten_norm(x, s) <= schatten_norm(y, s) * (1 + 1e-9));
  }
}

#include "matmean/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace matmean {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

std::uint64_t Rng::next_u64() { return splitmix64(state_); }

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

double Rng::gaussian() {
  // Box-Muller; u1 bounded away from 0.
  double u1 = uniform();
  if (u1 < 1e-300) u1 = 1e-300;
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

int Rng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(next_u64() % span);
}

Rng Rng::derive(const std::string& tag) const {
  std::uint64_t s = state_ ^ (fnv1a(tag) * 0x9e3779b97f4a7c15ull + 0x632be59bd9b4e019ull);
  return Rng(s);
}

Rng Rng::derive(std::uint64_t tag) const {
  std::uint64_t mix = tag;
  std::uint64_t s = state_ ^ splitmix64(mix);
  return Rng(s == 0 ? 1 : s);
}

Matrix random_unitary(int n, Rng& rng) {
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(rng.gaussian(), rng.gaussian());
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so Q is a deterministic function of G.
  for (int i = 0; i < n; ++i) {
    Complex d = r(i, i);
    double a = std::abs(d);
    q.col(i) *= (a > 0 ? d / a : Complex(1, 0));
  }
  return q;
}

HermitianMatrix sample_hermitian(int n, Rng& rng, double scale) {
  check_dim(n);
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(rng.gaussian(), rng.gaussian());
  Matrix h = 0.5 * (g + g.adjoint().eval());
  const double nrm = opnorm(h);
  if (nrm > 0) h *= scale / nrm;
  return HermitianMatrix(std::move(h));
}

PsdMatrix sample_psd(int n, double condition_target, Rng& rng) {
  check_dim(n);
  if (condition_target < 1.0)
    throw std::invalid_argument("condition_target must be >= 1");
  Matrix u = random_unitary(n, rng);
  SpectralDecomposition s;
  s.eigenvalues = RealVector(n);
  s.eigenvectors = std::move(u);
  s.eigenvalues(0) = 1.0;
  if (n > 1) s.eigenvalues(n - 1) = 1.0 / condition_target;
  for (int i = 1; i + 1 < n; ++i)
    s.eigenvalues(i) = rng.log_uniform(1.0 / condition_target, 1.0);
  std::sort(s.eigenvalues.data(), s.eigenvalues.data() + n, std::greater<double>());
  return PsdMatrix::from_spectral(std::move(s));
}

std::pair<PsdMatrix, PsdMatrix> sample_psd_pair_dominated(int n, int rank_b,
                                                          double condition_target,
                                                          Rng& rng) {
  check_dim(n);
  if (rank_b < 0 || rank_b > n)
    throw std::invalid_argument("rank_b must lie in [0, n]");
  PsdMatrix a = sample_psd(n, condition_target, rng);
  if (rank_b == 0) return {a, PsdMatrix::zero(n)};
  Matrix u = random_unitary(n, rng);
  SpectralDecomposition s;
  s.eigenvalues = RealVector::Zero(n);
  s.eigenvectors = std::move(u);
  s.eigenvalues(0) = 1.0;
  if (rank_b > 1) s.eigenvalues(rank_b - 1) = 1.0 / condition_target;
  for (int i = 1; i + 1 < rank_b; ++i)
    s.eigenvalues(i) = rng.log_uniform(1.0 / condition_target, 1.0);
  std::sort(s.eigenvalues.data(), s.eigenvalues.data() + n, std::greater<double>());
  return {a, PsdMatrix::from_spectral(std::move(s))};
}

}  // namespace matmean

#pragma once

// Deterministic splittable RNG and the PSD samplers. All randomness in the
// library flows through Rng so that a report is a pure function of its seed;
// gaussians are generated from raw bits rather than std::normal_distribution,
// which is implementation-defined.

#include "matmean/matrix.hpp"

#include <cstdint>
#include <string>

namespace matmean {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed == 0 ? 0x9e3779b97f4a7c15ull : seed) {}

  std::uint64_t next_u64();
  double uniform();                          // [0,1)
  double uniform(double lo, double hi);
  double log_uniform(double lo, double hi);  // log-uniform on [lo,hi], lo>0
  double gaussian();                         // standard normal, Box-Muller
  int uniform_int(int lo, int hi);           // inclusive bounds

  // Independent stream for a named sub-task; stable across call order.
  Rng derive(const std::string& tag) const;
  Rng derive(std::uint64_t tag) const;

 private:
  std::uint64_t state_;
};

// Haar-distributed unitary via QR of a complex Ginibre matrix.
Matrix random_unitary(int n, Rng& rng);

HermitianMatrix sample_hermitian(int n, Rng& rng, double scale = 1.0);

// Unit-spectral-norm PSD matrix with condition number near condition_target
// (eigenvalues log-uniform in [1/condition_target, 1], extremes pinned).
PsdMatrix sample_psd(int n, double condition_target, Rng& rng);

// Positive definite A together with rank_B-ranked B whose range lies inside
// range(A) = C^n, so s(A) >= s(B).
std::pair<PsdMatrix, PsdMatrix> sample_psd_pair_dominated(int n, int rank_b,
                                                          double condition_target,
                                                          Rng& rng);

}  // namespace matmean

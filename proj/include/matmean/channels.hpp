#pragma once

// Quantum channel machinery (Kraus families, Stinespring-sampled CPTP maps,
// pinching, semi-classical channels, the Weyl-Heisenberg twirl) and the joint
// concavity/convexity probes for the trace functions Tr M_{alpha,p}.

#include "matmean/divergences.hpp"
#include "matmean/means.hpp"
#include "matmean/rng.hpp"

#include <optional>
#include <string>
#include <vector>

namespace matmean {

enum class ChannelKind {
  General,
  Pinching,
  QuantumClassical,
  ClassicalQuantum,
  UnitaryConjugation,
  PartialTrace,
};

class QuantumChannel {
 public:
  QuantumChannel(std::vector<Matrix> kraus, ChannelKind kind, double tp_tol = 1e-10);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  ChannelKind kind() const { return kind_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  Matrix apply(const Matrix& x) const;
  PsdMatrix apply(const PsdMatrix& x) const;

 private:
  std::vector<Matrix> kraus_;
  ChannelKind kind_;
  int in_dim_;
  int out_dim_;
};

// Stinespring sample: unitary V on C^n (x) C^l (x) C^m, eta a rank-one state
// of the (l,m) factor, Phi(X) = Tr_{nl} V (X (x) eta) V^*.
QuantumChannel random_cptp(int n, int m, int env_dim, Rng& rng);

// Pinching onto the eigen-blocks of A (eigenvalues grouped at relative gap).
QuantumChannel pinching_channel(const PsdMatrix& a, double rel_gap = 1e-10);

// X -> sum_i (Tr M_i X) E_ii: measurement by the POVM, classical output.
QuantumChannel qc_channel(const Povm& povm);

// diag(a) -> sum_i a_i rho_i: classical input, state preparation.
QuantumChannel cq_channel(const std::vector<PsdMatrix>& states, double tol = 1e-9);

QuantumChannel unitary_channel(const Matrix& u);

// Weyl-Heisenberg pair in M_d: S cyclic shift, W = diag(omega^j).
std::pair<Matrix, Matrix> weyl_heisenberg(int d);

// Max deviation between tau_0 (x) Tr_{nl}(Z) and the Weyl twirl average over
// random Z in M_{n l m}.
double twirl_identity_check(int n, int l, int m, Rng& rng, int trials = 20);

enum class ConvexityMode { Concavity, Convexity };

struct ConvexityVerdict {
  MeanSpec spec;
  ConvexityMode mode;
  int trials = 0;
  // Signed midpoint defect normalized by the midpoint trace; negative values
  // are violations of the requested mode.
  double worst_violation = 0.0;
  struct WitnessPair {
    PsdMatrix a1, b1, a2, b2;
    double lambda;
    double defect;
  };
  std::optional<WitnessPair> witness;
};

inline constexpr double kCvxTol = 1e-9;

// Samples pairs from four families (uniform Wishart, near-commuting,
// pinching-style structured, proportional pairs) and tests the lambda-mixture
// inequality of Tr M_{alpha,p}.
ConvexityVerdict midpoint_convexity_test(const MeanSpec& spec, ConvexityMode mode,
                                         int trials, Rng rng, double cvx_tol = kCvxTol);

enum class ChannelFamily { Cptp, QuantumClassical, ClassicalQuantum, Pinching,
                           TransposeCptp };

struct MonotonicityReport {
  MeanSpec spec;
  ChannelFamily family;
  int trials = 0;
  int domain_violations = 0;  // pairs skipped / regularized
  int regularized = 0;
  // Signed defect Q(Phi(A),Phi(B)) - Q(A,B), normalized by Q(A,B).
  double min_defect = 0.0;
  double max_defect = 0.0;
};

MonotonicityReport monotonicity_check(const MeanSpec& spec, ChannelFamily family,
                                      int trials, Rng rng);

struct RegionProbeCell {
  double alpha;
  double p;
  bool violation_found;
  std::optional<bool> theory_ok;  // nullopt: open region
  bool agreement;
};

// Empirical concavity/convexity map over (alpha, p) against the characterized
// regions of Section 5; cells the paper leaves open come back with
// theory_ok = nullopt.
std::vector<RegionProbeCell> convexity_region_probe(MeanKind kind, ConvexityMode mode,
                                                    const std::vector<double>& alpha_grid,
                                                    const std::vector<double>& p_grid,
                                                    int trials, Rng rng);

std::string region_probe_csv(const std::vector<RegionProbeCell>& cells);

// Theory: is Tr M_{alpha,p} jointly concave (mode=Concavity) / convex
// (mode=Convexity)? nullopt where the paper leaves it open.
std::optional<bool> convexity_theory(MeanKind kind, ConvexityMode mode, double alpha,
                                     double p);

struct SemiClassicalReport {
  int trials = 0;
  double min_defect = 0.0;  // expected sign depends on direction
  double max_defect = 0.0;
};

// Thm C.1 directions: qc-channel monotonicity (increase for alpha<1, decrease
// for alpha>1) tested on random pairs, including the pinching special case.
SemiClassicalReport semiclassical_monotonicity_check(const MeanSpec& spec,
                                                     bool expect_increase, int trials,
                                                     Rng rng);

// Cor C.3: the lambda-mixture inequality on samples whose mixtures commute.
SemiClassicalReport conditional_convexity_check(const MeanSpec& spec,
                                                ConvexityMode mode, int trials, Rng rng);

}  // namespace matmean

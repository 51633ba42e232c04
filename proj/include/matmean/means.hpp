#pragma once

// The quasi-mean families M_{alpha,p}(A,B): Renyi, weighted geometric,
// the two spectral-geometric variants, Log-Euclidean, arithmetic and harmonic,
// with the support conventions for singular inputs, the epsilon-regularization
// limit and the p->0 Log-Euclidean limit probe.

#include "matmean/matrix.hpp"

#include <optional>
#include <vector>

namespace matmean {

enum class MeanKind {
  Renyi,
  Geometric,
  SpectralGeometric,
  SpectralGeometricTilde,
  LogEuclidean,
  Arithmetic,
  Harmonic,
};

const char* mean_kind_name(MeanKind k);
MeanKind mean_kind_from_name(const std::string& name);

struct MeanSpec {
  MeanKind kind;
  double alpha;
  double p = 1.0;  // ignored for LogEuclidean
};

struct EpsilonDiagnostic {
  std::vector<double> eps_sequence;
  std::vector<double> cauchy_gaps;  // ||M_k - M_{k-1}||_inf
  bool converged = true;
};

struct MeanResult {
  PsdMatrix value;
  bool domain_ok = true;
  std::optional<std::vector<double>> regularization_used;
  std::optional<EpsilonDiagnostic> epsilon_diag;
  double log_det = 0.0;  // log det of value on its support
};

// Domain rule: SG-kinds always need s(A) >= s(B); R/G/LE need it for alpha>1;
// Arithmetic/Harmonic are defined for 0<alpha<1 on all PSD pairs.
bool requires_support_dominance(MeanKind kind, double alpha);
void validate_spec(const MeanSpec& spec);
bool in_domain(const MeanSpec& spec, const PsdMatrix& a, const PsdMatrix& b);

// A #_alpha B. Kubo-Ando for 0<alpha<1 (epsilon-limit when s(A) does not
// dominate s(B)); generalized-inverse formula when it does, and for alpha>1.
PsdMatrix weighted_geometric(const PsdMatrix& a, const PsdMatrix& b, double alpha);

// Meet of the two supports, s(A) ^ s(B): eigenvalue-1 eigenspace of
// s(A) s(B) s(A). Returned as columns of an isometry (n x r).
Matrix support_meet_isometry(const PsdMatrix& a, const PsdMatrix& b,
                             double tol = 1e-10);

MeanResult compute_mean(const MeanSpec& spec, const PsdMatrix& a, const PsdMatrix& b);

std::vector<double> default_eps_sequence();

// M(A + eps I, B + eps I) along a decreasing eps sequence, with a Cauchy-rate
// diagnostic; the returned value is the smallest-eps evaluation.
MeanResult epsilon_limit(const MeanSpec& spec, const PsdMatrix& a, const PsdMatrix& b,
                         std::vector<double> eps_sequence = default_eps_sequence());

struct LieTrotterReport {
  std::vector<double> p_values;   // decreasing
  std::vector<double> distances;  // ||M_{alpha,p} - LE_alpha||_inf
  double final_distance = 0.0;
  bool decreasing_tail = true;  // monotone over the last five halvings
};

std::vector<double> default_lie_trotter_p_sequence();

LieTrotterReport lie_trotter_probe(MeanKind kind, double alpha, const PsdMatrix& a,
                                   const PsdMatrix& b,
                                   std::vector<double> p_sequence =
                                       default_lie_trotter_p_sequence());

}  // namespace matmean

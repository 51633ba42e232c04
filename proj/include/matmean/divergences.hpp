#pragma once

// Classical and quantum Renyi-type divergences: the classical formula, the
// mean-generated family D^{M_{alpha,p}} (alpha-z / Petz / sandwiched /
// maximal as special cases), measured lower bounds, the regularized pinching
// estimate, Umegaki relative entropy and the Log-Euclidean variational check.

#include "matmean/means.hpp"
#include "matmean/rng.hpp"

#include <optional>
#include <vector>

namespace matmean {

enum class DivergenceDomain { InDomain, SupportViolation };

struct DivergenceValue {
  double value = 0.0;  // meaningful only when finite
  bool finite = true;
  DivergenceDomain reason = DivergenceDomain::InDomain;
};

DivergenceValue divergence_finite(double v);
DivergenceValue divergence_infinite();

// (1/(alpha-1)) log( sum b_i^alpha a_i^{1-alpha} / sum b_i ); +inf for
// alpha > 1 when supp a does not contain supp b. alpha = 1 is the KL limit
// sum b_i log(b_i/a_i) / sum b_i.
DivergenceValue classical_renyi(const std::vector<double>& b,
                                const std::vector<double>& a, double alpha);

// D^{M_{alpha,p}}(B||A) of the mean-generated family. Note the argument order
// flip: the mean takes (A,B), the divergence reads (B||A).
DivergenceValue divergence_from_mean(const MeanSpec& spec, const PsdMatrix& a,
                                     const PsdMatrix& b);

struct MaximalDivergence {
  DivergenceValue value;
  bool exact = true;  // false for alpha > 2: upper bound only
};

// D^max = D^{G_{alpha,1}} for alpha in (0,2]; beyond 2 the same value is
// returned flagged as an upper bound.
MaximalDivergence maximal_divergence(const PsdMatrix& a, const PsdMatrix& b,
                                     double alpha);

enum class MeasurementStrategy { PinchingBasis, ProjectiveGrid, RandomPovm };

struct Povm {
  std::vector<PsdMatrix> elements;  // sum to the identity
};

Povm validate_povm(std::vector<PsdMatrix> elements, double tol = 1e-10);

// Best classical divergence over the tried measurements: a lower bound to the
// measured divergence sup, never the sup itself.
DivergenceValue measured_divergence_lb(const PsdMatrix& a, const PsdMatrix& b,
                                       double alpha, MeasurementStrategy strategy,
                                       Rng rng, int grid_or_trials = 400,
                                       int povm_outcomes = 3);

// (1/m) Dcl( E_{A^(x)m}(B^(x)m) || A^(x)m ), pinching blocks grouped at
// relative gap 1e-10. alpha = 1 gives the KL version.
double regularized_measured_estimate(const PsdMatrix& a, const PsdMatrix& b,
                                     double alpha, int m);

// Tr X (log X - log A) on supports; +inf when supp X is not inside supp A.
DivergenceValue umegaki_relative_entropy(const PsdMatrix& x, const PsdMatrix& a);

struct VariationalCheckReport {
  double objective_at_le = 0.0;
  double trace_le = 0.0;
  double worst_perturbed_excess = 0.0;  // max over perturbations of f(X) - f(X*)
  bool maximum_certified = false;
};

// Checks Tr LE_alpha(A,B) = max_X { Tr X - (1-a) D(X||A) - a D(X||B) } at
// X* = LE_alpha(A,B) against random PSD perturbations X* + eps Delta.
VariationalCheckReport le_variational_check(const PsdMatrix& a, const PsdMatrix& b,
                                            double alpha, int perturbation_count,
                                            Rng rng, double eps = 1e-2);

struct SandwichReport {
  double tr_g1 = 0.0;       // Tr G_{alpha,1}
  double tr_mean = 0.0;     // Tr M_{alpha,p}
  double tr_r_inv = 0.0;    // Tr R_{alpha,1/alpha}
  bool lower_holds = false; // the inequality with Tr G_{alpha,1}
  bool upper_holds = false; // the inequality with Tr R_{alpha,1/alpha}
};

// Thm 5.8 necessary-condition filter: for alpha<1 concavity needs
// Tr G_{a,1} <= Tr M <= Tr R_{a,1/a}; for alpha>1 convexity needs the reverse.
SandwichReport sandwich_check(const MeanSpec& spec, const PsdMatrix& a,
                              const PsdMatrix& b, double tol = 1e-10);

}  // namespace matmean

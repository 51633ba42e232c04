#pragma once

// The Section-3 claim catalog: every log-majorization statement encoded as a
// machine-checkable record, a randomized verifier for "holds" claims, a
// structured counterexample search over the A0/B_theta family for "fails"
// claims, and (alpha, p/q) region scans.

#include "matmean/majorization.hpp"
#include "matmean/means.hpp"
#include "matmean/rng.hpp"
#include "matmean/second_order.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace matmean {

enum class Assertion { HoldsForAllPairs, CounterexampleExists, OpenProblem };

enum class SampleDomain { AllPsd, DominatedPsd, PositiveDefinite2x2 };

// "lhs mean with parameter p  prec_log  rhs mean with parameter q", asserted
// (or refuted) on the region predicate(alpha, p, q).
struct ClaimRecord {
  std::string id;
  MeanKind lhs;
  MeanKind rhs;
  std::function<bool(double alpha, double p, double q)> predicate;
  Assertion assertion;
  SampleDomain domain;
  std::string note;  // the paper statement in the paper's own parameter names
};

struct Witness {
  double alpha, p, q;
  PsdMatrix a;
  PsdMatrix b;
  double violation;  // relative lambda_1 gap (or worst per-k log gap)
  std::string source;
};

enum class Verdict { Confirmed, Refuted, Inconclusive };

struct ClaimReport {
  std::string id;
  Verdict verdict = Verdict::Inconclusive;
  int trials = 0;
  double worst_margin = 0.0;  // smallest rhs-lhs log gap seen (holds claims)
  std::optional<Witness> witness;
  std::string detail;
};

struct Tolerances {
  double maj_tol = kMajTol;
  double det_tol = kDetTol;
  double boundary_band = kBoundaryBand;
  double viol_band = 1e-8;
};

std::vector<ClaimRecord> builtin_catalog();
const ClaimRecord& find_claim(const std::vector<ClaimRecord>& catalog,
                              const std::string& id);

ClaimReport verify_claim(const ClaimRecord& claim, int trials, int n_max, Rng rng,
                         const Tolerances& tol = Tolerances{});

enum class SearchStrategy { Structured, Random, Both };

// Looks for a pair with lambda_1(lhs) > lambda_1(rhs) (structured 2x2 grid;
// the det identity is asserted before the lambda_1 shortcut is trusted) or a
// full prec_log violation on random pairs. Empty result = no witness found.
std::optional<Witness> counterexample_search(const MeanSpec& lhs, const MeanSpec& rhs,
                                             SearchStrategy strategy, Rng rng,
                                             const Tolerances& tol = Tolerances{});

struct RegionCell {
  double alpha;
  double ratio;  // p/q
  bool empirical_holds;
  std::optional<bool> theory_holds;  // nullopt = open / unknown
  bool agreement;
};

// Scans lhs_{alpha,p} prec_log rhs_{alpha,q} with p = ratio, q = 1 over the
// grids; theory verdicts come from the catalog predicates.
std::vector<RegionCell> region_scan(MeanKind lhs, MeanKind rhs,
                                    const std::vector<double>& alpha_grid,
                                    const std::vector<double>& ratio_grid,
                                    int trials_per_cell, Rng rng,
                                    const Tolerances& tol = Tolerances{});

std::string region_scan_csv(const std::vector<RegionCell>& cells);

// Theory verdict for lhs_p prec_log rhs_q from the encoded Section-3 results;
// nullopt where the paper leaves the cell open.
std::optional<bool> theory_verdict(MeanKind lhs, MeanKind rhs, double alpha,
                                   double p, double q);

}  // namespace matmean

#pragma once

// One-call verification suite: runs the mean invariants, the majorization
// implication chains, the full Section-3 claim catalog, the Lemma 2.5 and
// Appendix A coefficient grids, the divergence orderings, channel
// monotonicity and the convexity region probes, and assembles a deterministic
// JSON report.

#include "matmean/relations.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace matmean {

struct SuiteConfig {
  std::uint64_t seed = 20240901;
  int trials = 120;   // per holds-claim
  int n_max = 5;      // <= 8
  std::map<std::string, double> tolerance_overrides;
  std::vector<std::string> claim_filter;  // empty = all
  std::string output_path;                // empty = stdout only
  std::string format = "json";
};

struct SuiteReport {
  std::string json;          // canonical report (deterministic bytes)
  bool pass = false;
  std::vector<std::string> failures;
  double elapsed_seconds = 0.0;  // not part of the JSON
};

SuiteReport run_suite(const SuiteConfig& config);

// The Section 3.4 table with the paper's entries and empirical verdicts side
// by side; claims must come from the catalog run.
std::string render_table34(const std::map<std::string, std::string>& claim_verdicts,
                           bool csv = false);

}  // namespace matmean

#include "matmean/relations.hpp"

#include <algorithm>
#include <cmath>

namespace matmean {

namespace {

using K = MeanKind;

bool lt1(double a) { return a < 1.0; }
bool gt1(double a) { return a > 1.0; }

double min2(double a, double b) { return std::min(a, b); }
double max2(double a, double b) { return std::max(a, b); }

ClaimRecord holds(std::string id, K lhs, K rhs,
                  std::function<bool(double, double, double)> pred, SampleDomain dom,
                  std::string note) {
  return ClaimRecord{std::move(id), lhs,  rhs, std::move(pred), Assertion::HoldsForAllPairs,
                     dom,           std::move(note)};
}

ClaimRecord fails(std::string id, K lhs, K rhs,
                  std::function<bool(double, double, double)> pred, std::string note) {
  return ClaimRecord{std::move(id),
                     lhs,
                     rhs,
                     std::move(pred),
                     Assertion::CounterexampleExists,
                     SampleDomain::PositiveDefinite2x2,
                     std::move(note)};
}

ClaimRecord open_problem(std::string id, K lhs, K rhs,
                         std::function<bool(double, double, double)> pred,
                         std::string note) {
  return ClaimRecord{std::move(id),
                     lhs,
                     rhs,
                     std::move(pred),
                     Assertion::OpenProblem,
                     SampleDomain::PositiveDefinite2x2,
                     std::move(note)};
}

}  // namespace

std::vector<ClaimRecord> builtin_catalog() {
  std::vector<ClaimRecord> c;
  const auto all = SampleDomain::AllPsd;
  const auto dom = SampleDomain::DominatedPsd;

  // --- known log-majorizations (survey theorem) ---
  c.push_back(holds("Thm3.1a", K::Renyi, K::Renyi,
                    [](double, double p, double q) { return p <= q; }, all,
                    "R_p prec R_q if p <= q, any alpha"));
  c.push_back(holds("Thm3.1b", K::Geometric, K::Geometric,
                    [](double a, double p, double q) { return lt1(a) && q <= p; }, all,
                    "G_q prec G_p if 0<alpha<1 and p <= q (Ando-Hiai)"));
  c.push_back(holds("Thm3.1c", K::Geometric, K::Geometric,
                    [](double a, double p, double q) { return a > 1 && a <= 2 && p <= q; },
                    dom, "G_p prec G_q if 1<alpha<=2 and p <= q (Kian-Seo)"));
  c.push_back(holds("Thm3.1d", K::Geometric, K::Geometric,
                    [](double a, double p, double q) {
                      return a >= 2 && p / q <= a / (2.0 * (a - 1.0));
                    },
                    dom, "G_p prec G_q if alpha>=2 and p/q <= alpha/(2(alpha-1))"));
  c.push_back(holds("Thm3.1e", K::Geometric, K::Renyi,
                    [](double a, double p, double q) {
                      return lt1(a) || (p / q <= min2(a / 2.0, a - 1.0));
                    },
                    all, "G_p prec R_q if 0<alpha<1, or alpha>1 and p/q <= min{a/2,a-1}"));
  c.push_back(holds("Thm3.1f", K::Renyi, K::Geometric,
                    [](double a, double p, double q) {
                      return gt1(a) && q / p >= max2(a / 2.0, a - 1.0);
                    },
                    dom, "R_q prec G_p if alpha>1 and p_G/q_R >= max{a/2,a-1}"));
  c.push_back(holds("Thm3.1g", K::Renyi, K::SpectralGeometric,
                    [](double a, double p, double q) {
                      return lt1(a) && q / p >= max2(a, 1.0 - a);
                    },
                    dom, "R_q prec SG_p if 0<alpha<1 and p_SG/q_R >= max{a,1-a} (Gan-Tam)"));

  // --- G vs R, iff (necessity halves; sufficiency lives in Thm3.1e/f) ---
  c.push_back(fails("Thm3.2.1", K::Geometric, K::Renyi,
                    [](double a, double p, double q) {
                      return gt1(a) && p / q > min2(a / 2.0, a - 1.0);
                    },
                    "G_p prec R_q only if p/q <= min{a/2,a-1} when alpha>1"));
  c.push_back(fails("Thm3.2.2", K::Renyi, K::Geometric,
                    [](double a, double p, double q) {
                      return lt1(a) || q / p < max2(a / 2.0, a - 1.0);
                    },
                    "R_q prec G_p iff alpha>1 and p_G/q_R >= max{a/2,a-1}"));

  // --- SG vs R, 0<alpha<1 (iff) ---
  c.push_back(holds("Thm3.3.1", K::SpectralGeometric, K::Renyi,
                    [](double a, double p, double q) {
                      return lt1(a) && p / q <= min2(a, 1.0 - a);
                    },
                    dom, "SG_p prec R_q iff p/q <= min{a,1-a} (0<alpha<1)"));
  c.push_back(holds("Thm3.3.2", K::Renyi, K::SpectralGeometric,
                    [](double a, double p, double q) {
                      return lt1(a) && q / p >= max2(a, 1.0 - a);
                    },
                    dom, "R_q prec SG_p iff p_SG/q_R >= max{a,1-a} (0<alpha<1)"));

  // --- SG vs R, alpha>1 ---
  c.push_back(holds("Thm3.4.1", K::SpectralGeometric, K::Renyi,
                    [](double a, double p, double q) { return gt1(a) && p / q <= a; }, dom,
                    "SG_p prec R_q if alpha>1 and p/q <= alpha"));
  c.push_back(fails("Thm3.4.2", K::Renyi, K::SpectralGeometric,
                    [](double a, double, double) { return gt1(a); },
                    "R_q never prec SG_p for alpha>1"));

  // --- SGt vs R ---
  c.push_back(holds("Thm3.6.1", K::SpectralGeometricTilde, K::Renyi,
                    [](double a, double p, double q) { return lt1(a) && p / q <= a; }, dom,
                    "SGt_p prec R_q iff p/q <= alpha (0<alpha<1)"));
  c.push_back(holds("Thm3.6.2", K::Renyi, K::SpectralGeometricTilde,
                    [](double a, double p, double q) { return a <= 0.5 && p <= q; }, dom,
                    "R_q prec SGt_p if alpha<=1/2 and q <= p (via BLP)"));
  c.push_back(fails("Thm3.6.3", K::Renyi, K::SpectralGeometricTilde,
                    [](double a, double p, double q) {
                      return lt1(a) && (a > 0.5 || q / p < 0.5);
                    },
                    "R_q prec SGt_p needs alpha<=1/2 and p_SGt/q_R >= 1/2"));
  c.push_back(fails("Thm3.7.1", K::SpectralGeometricTilde, K::Renyi,
                    [](double a, double, double) { return gt1(a); },
                    "SGt_p never prec R_q for alpha>1"));
  c.push_back(holds("Thm3.7.2", K::Renyi, K::SpectralGeometricTilde,
                    [](double a, double p, double q) { return gt1(a) && q / p >= a; }, dom,
                    "R_q prec SGt_p if alpha>1 and p_SGt/q_R >= alpha"));
  c.push_back(fails("Thm3.7.3", K::Renyi, K::SpectralGeometricTilde,
                    [](double a, double p, double q) { return gt1(a) && q / p < 0.5; },
                    "R_q prec SGt_p (alpha>1) needs p_SGt/q_R >= 1/2"));

  // --- self-majorization in p ---
  c.push_back(holds("Prop3.10.1", K::SpectralGeometric, K::SpectralGeometric,
                    [](double a, double p, double q) {
                      return lt1(a) && p / q <= min2(a / (1.0 - a), (1.0 - a) / a);
                    },
                    dom, "SG_p prec SG_q if p/q <= min{a/(1-a),(1-a)/a} (0<alpha<1)"));
  c.push_back(holds("Prop3.10.2", K::SpectralGeometricTilde, K::SpectralGeometricTilde,
                    [](double a, double p, double q) { return a <= 0.5 && p / q <= a; },
                    dom, "SGt_p prec SGt_q if alpha<=1/2 and p/q <= alpha"));
  c.push_back(fails("Prop3.11.1", K::Geometric, K::Geometric,
                    [](double a, double p, double q) {
                      return (lt1(a) && p < q) || (gt1(a) && p > q);
                    },
                    "G_p prec G_q needs p>=q (alpha<1) / p<=q (alpha>1)"));
  c.push_back(fails("Prop3.11.2", K::SpectralGeometric, K::SpectralGeometric,
                    [](double a, double p, double q) {
                      return (lt1(a) && p > q) || (gt1(a) && p < q);
                    },
                    "SG_p prec SG_q needs p<=q (alpha<1) / p>=q (alpha>1)"));
  c.push_back(fails("Prop3.11.3", K::SpectralGeometricTilde, K::SpectralGeometricTilde,
                    [](double a, double p, double q) {
                      return (lt1(a) && p > q) || (gt1(a) && p < q);
                    },
                    "SGt_p prec SGt_q needs p<=q (alpha<1) / p>=q (alpha>1)"));

  // --- G vs SG / SGt ---
  c.push_back(holds("Prop3.13.1", K::Geometric, K::SpectralGeometric,
                    [](double a, double, double) { return lt1(a); }, dom,
                    "G_q prec SG_p for all p,q (0<alpha<1)"));
  c.push_back(fails("Prop3.13.2", K::Geometric, K::SpectralGeometric,
                    [](double a, double, double) { return gt1(a); },
                    "G_q never prec SG_p for alpha>1"));
  // The proposition states max{2, a/(a-1)} while its proof derives the min;
  // grid searches in the (min, max] band find no violation, so the stated
  // max is what is encoded here.
  c.push_back(holds("Prop3.13.3", K::SpectralGeometric, K::Geometric,
                    [](double a, double p, double q) {
                      return gt1(a) && p / q <= max2(2.0, a / (a - 1.0));
                    },
                    dom, "SG_p prec G_q if alpha>1 and p/q <= max{2,a/(a-1)}"));
  c.push_back(fails("Prop3.14.1", K::SpectralGeometricTilde, K::Geometric,
                    [](double, double, double) { return true; },
                    "SGt_p never prec G_q (any alpha != 1)"));
  c.push_back(holds("Prop3.14.2", K::Geometric, K::SpectralGeometricTilde,
                    [](double a, double, double) { return a <= 0.5; }, dom,
                    "G_q prec SGt_p for all p,q (0<alpha<=1/2)"));
  c.push_back(holds("Prop3.14.3", K::Geometric, K::SpectralGeometricTilde,
                    [](double a, double p, double q) {
                      return gt1(a) && p / q <= min2(0.5, (a - 1.0) / a);
                    },
                    dom, "G_q prec SGt_p if alpha>1 and q_G/p_SGt <= min{1/2,(a-1)/a}"));

  // --- SG vs SGt ---
  c.push_back(fails("Prop3.15.1", K::SpectralGeometric, K::SpectralGeometricTilde,
                    [](double a, double p, double q) {
                      return lt1(a) && (a > 0.5 || p / q > 2.0 * (1.0 - a));
                    },
                    "SG_p prec SGt_q needs alpha<=1/2 and p/q <= 2(1-a)"));
  c.push_back(holds("Prop3.15.2", K::SpectralGeometricTilde, K::SpectralGeometric,
                    [](double a, double p, double q) {
                      return lt1(a) && q / p >= max2(1.0, (1.0 - a) / a);
                    },
                    dom, "SGt_q prec SG_p if p_SG/q_SGt >= max{1,(1-a)/a} (0<alpha<1)"));
  c.push_back(fails("Prop3.15.2n", K::SpectralGeometricTilde, K::SpectralGeometric,
                    [](double a, double p, double q) {
                      return lt1(a) && q / p < 2.0 * (1.0 - a);
                    },
                    "SGt_q prec SG_p needs p_SG/q_SGt >= 2(1-a)"));
  c.push_back(holds("Prop3.15.3", K::SpectralGeometric, K::SpectralGeometricTilde,
                    [](double a, double p, double q) { return gt1(a) && p <= q; }, dom,
                    "SG_p prec SGt_q if alpha>1 and p <= q"));
  c.push_back(fails("Prop3.15.4", K::SpectralGeometricTilde, K::SpectralGeometric,
                    [](double a, double, double) { return gt1(a); },
                    "SGt_q never prec SG_p for alpha>1"));

  // --- LE rows (Prop 3.17, Cor 3.18, Thm 3.19) ---
  c.push_back(holds("Prop3.17a", K::LogEuclidean, K::Renyi,
                    [](double, double, double) { return true; }, all,
                    "LE prec R_p for all alpha, p"));
  c.push_back(holds("Prop3.17b", K::Geometric, K::LogEuclidean,
                    [](double a, double, double) { return lt1(a); }, all,
                    "G_p prec LE for 0<alpha<1"));
  c.push_back(holds("Prop3.17c", K::LogEuclidean, K::Geometric,
                    [](double a, double, double) { return a > 1 && a <= 2; }, dom,
                    "LE prec G_p for 1<alpha<=2"));
  c.push_back(holds("Prop3.17d", K::LogEuclidean, K::SpectralGeometric,
                    [](double a, double, double) { return lt1(a); }, dom,
                    "LE prec SG_p for 0<alpha<1"));
  c.push_back(holds("Cor3.18.1", K::LogEuclidean, K::Geometric,
                    [](double a, double, double) { return gt1(a); }, dom,
                    "LE prec G_p for all alpha>1"));
  c.push_back(fails("Cor3.18.2", K::LogEuclidean, K::SpectralGeometric,
                    [](double a, double, double) { return gt1(a); },
                    "LE never prec SG_p for alpha>1"));
  c.push_back(fails("Cor3.18.3", K::SpectralGeometricTilde, K::LogEuclidean,
                    [](double a, double, double) { return lt1(a); },
                    "SGt_p never prec LE for 0<alpha<1"));
  c.push_back(holds("Cor3.18.4", K::LogEuclidean, K::SpectralGeometricTilde,
                    [](double a, double, double) { return a <= 0.5; }, dom,
                    "LE prec SGt_p for 0<alpha<=1/2"));
  c.push_back(holds("Cor3.18.5", K::LogEuclidean, K::SpectralGeometricTilde,
                    [](double a, double, double) { return gt1(a); }, dom,
                    "LE prec SGt_p for alpha>1"));
  c.push_back(fails("Thm3.19", K::LogEuclidean, K::SpectralGeometricTilde,
                    [](double a, double, double) { return a > 0.5 && a < 1.0; },
                    "LE never prec SGt_p for 1/2<alpha<1"));

  // --- the Section 3.4 summary table, one claim per cell ---
  c.push_back(fails("Table3.4:R<LE:a<1", K::Renyi, K::LogEuclidean,
                    [](double a, double, double) { return lt1(a); }, "none"));
  c.push_back(fails("Table3.4:R<LE:a>1", K::Renyi, K::LogEuclidean,
                    [](double a, double, double) { return gt1(a); }, "none"));
  c.push_back(holds("Table3.4:LE<R:a<1", K::LogEuclidean, K::Renyi,
                    [](double a, double, double) { return lt1(a); }, all, "all p"));
  c.push_back(holds("Table3.4:LE<R:a>1", K::LogEuclidean, K::Renyi,
                    [](double a, double, double) { return gt1(a); }, dom, "all p"));
  c.push_back(holds("Table3.4:G<LE:a<1", K::Geometric, K::LogEuclidean,
                    [](double a, double, double) { return lt1(a); }, all, "all p"));
  c.push_back(fails("Table3.4:G<LE:a>1", K::Geometric, K::LogEuclidean,
                    [](double a, double, double) { return gt1(a); }, "none"));
  c.push_back(fails("Table3.4:LE<G:a<1", K::LogEuclidean, K::Geometric,
                    [](double a, double, double) { return lt1(a); }, "none"));
  c.push_back(holds("Table3.4:LE<G:a>1", K::LogEuclidean, K::Geometric,
                    [](double a, double, double) { return gt1(a); }, dom, "all p"));
  c.push_back(fails("Table3.4:SG<LE:a<1", K::SpectralGeometric, K::LogEuclidean,
                    [](double a, double, double) { return lt1(a); }, "none"));
  c.push_back(open_problem("Table3.4:SG<LE:a>1", K::SpectralGeometric, K::LogEuclidean,
                           [](double a, double, double) { return gt1(a); },
                           "? (Problem 3.20)"));
  c.push_back(holds("Table3.4:LE<SG:a<1", K::LogEuclidean, K::SpectralGeometric,
                    [](double a, double, double) { return lt1(a); }, dom, "all p"));
  c.push_back(fails("Table3.4:LE<SG:a>1", K::LogEuclidean, K::SpectralGeometric,
                    [](double a, double, double) { return gt1(a); }, "none"));
  c.push_back(fails("Table3.4:SGt<LE:a<1", K::SpectralGeometricTilde, K::LogEuclidean,
                    [](double a, double, double) { return lt1(a); }, "none"));
  c.push_back(fails("Table3.4:SGt<LE:a>1", K::SpectralGeometricTilde, K::LogEuclidean,
                    [](double a, double, double) { return gt1(a); }, "none"));
  c.push_back(holds("Table3.4:LE<SGt:a<=1/2", K::LogEuclidean, K::SpectralGeometricTilde,
                    [](double a, double, double) { return a <= 0.5; }, dom,
                    "all p for 0<alpha<=1/2"));
  c.push_back(fails("Table3.4:LE<SGt:1/2<a<1", K::LogEuclidean, K::SpectralGeometricTilde,
                    [](double a, double, double) { return a > 0.5 && a < 1.0; },
                    "none for 1/2<alpha<1"));
  c.push_back(holds("Table3.4:LE<SGt:a>1", K::LogEuclidean, K::SpectralGeometricTilde,
                    [](double a, double, double) { return gt1(a); }, dom, "all p"));

  // --- open problems: scan targets, never asserted ---
  c.push_back(open_problem("Problem3.5", K::SpectralGeometric, K::Renyi,
                           [](double a, double p, double q) { return gt1(a) && p / q > a; },
                           "SG_p prec R_q beyond p/q <= alpha is open for alpha>1"));
  c.push_back(open_problem("Problem3.20", K::SpectralGeometric, K::LogEuclidean,
                           [](double a, double, double) { return gt1(a); },
                           "SG prec LE for alpha>1 is open"));
  return c;
}

const ClaimRecord& find_claim(const std::vector<ClaimRecord>& catalog,
                              const std::string& id) {
  for (const auto& c : catalog)
    if (c.id == id) return c;
  throw std::invalid_argument("unknown claim id: " + id);
}

namespace {

// Parameter samplers respect the design box: alpha in (0.05,0.95) u (1.05,3),
// p,q in (0.1,4).
struct ParamSample {
  double alpha, p, q;
};

std::optional<ParamSample> sample_params(
    const std::function<bool(double, double, double)>& pred, Rng& rng,
    int max_attempts = 20000) {
  for (int i = 0; i < max_attempts; ++i) {
    double alpha = rng.uniform() < 0.5 ? rng.uniform(0.05, 0.95) : rng.uniform(1.05, 3.0);
    double p = rng.log_uniform(0.1, 4.0);
    double q = rng.log_uniform(0.1, 4.0);
    if (pred(alpha, p, q)) return ParamSample{alpha, p, q};
  }
  return std::nullopt;
}

// Condition target adapted to the exponent budget so the spread of every
// intermediate matrix stays within ~1e5 and per-k log-products keep ~1e-11
// accuracy.
double adapted_condition(double alpha, double p, double q, Rng& rng) {
  const double budget = 2.0 * std::max(p, q) * (1.0 + std::max(alpha, 1.0));
  const double max_log10 = std::min(2.5, 5.0 / budget);
  return std::pow(10.0, rng.uniform(0.15, std::max(0.2, max_log10)));
}

std::pair<PsdMatrix, PsdMatrix> sample_pair(SampleDomain domain, MeanKind lhs,
                                            MeanKind rhs, double alpha, int n, double cond,
                                            Rng& rng) {
  const bool need_dom = requires_support_dominance(lhs, alpha) ||
                        requires_support_dominance(rhs, alpha) ||
                        domain == SampleDomain::DominatedPsd;
  if (domain == SampleDomain::PositiveDefinite2x2) {
    PsdMatrix a = sample_psd(2, cond, rng);
    PsdMatrix b = sample_psd(2, cond, rng);
    return {a, b};
  }
  // Mostly full rank, with a share of dominated singular pairs.
  if (rng.uniform() < 0.3 && n >= 2) {
    int rank_b = rng.uniform_int(1, n - 1);
    if (need_dom) return sample_psd_pair_dominated(n, rank_b, cond, rng);
    // General-PSD claims still use dominated singulars: epsilon-limit values
    // carry O(eps) error, too coarse for the 1e-9 margin band.
    return sample_psd_pair_dominated(n, rank_b, cond, rng);
  }
  PsdMatrix a = sample_psd(n, cond, rng);
  PsdMatrix b = sample_psd(n, cond, rng);
  return {a, b};
}

double lambda1_violation(const MeanSpec& lhs, const MeanSpec& rhs, const PsdMatrix& a,
                         const PsdMatrix& b, const Tolerances& tol) {
  MeanResult ml = compute_mean(lhs, a, b);
  MeanResult mr = compute_mean(rhs, a, b);
  // 2x2 equal-det shortcut is only valid when the determinants agree.
  if (std::abs(ml.log_det - mr.log_det) > tol.det_tol) return -1.0;
  const double l1 = ml.value.eigenvalues()(0);
  const double r1 = mr.value.eigenvalues()(0);
  return l1 / r1 - 1.0;
}

}  // namespace

std::optional<Witness> counterexample_search(const MeanSpec& lhs, const MeanSpec& rhs,
                                             SearchStrategy strategy, Rng rng,
                                             const Tolerances& tol) {
  if (std::abs(lhs.alpha - rhs.alpha) > 1e-12)
    throw std::invalid_argument("counterexample_search needs lhs.alpha == rhs.alpha");
  std::optional<Witness> best;
  auto consider = [&](double viol, const PsdMatrix& a, const PsdMatrix& b,
                      const std::string& src) {
    if (viol > tol.viol_band && (!best || viol > best->violation))
      best = Witness{lhs.alpha, lhs.p, rhs.p, a, b, viol, src};
  };

  if (strategy != SearchStrategy::Random) {
    std::vector<double> xs;
    for (int i = 0; i < 22; ++i)
      xs.push_back(std::pow(10.0, -4.0 + 4.0 * i / 21.0) * 0.99);
    std::vector<double> extra_y = {3.0, 10.0, 100.0};
    const std::vector<double> thetas = {0.5, 0.3, 0.1, 0.03, 0.01, 1e-3};
    for (double x : xs) {
      std::vector<double> ys = {x};
      for (size_t j = 0; j < xs.size(); j += 2) ys.push_back(xs[j]);
      ys.insert(ys.end(), extra_y.begin(), extra_y.end());
      for (double y : ys) {
        for (double th : thetas) {
          ABThetaPoint pt{x, y, th};
          PsdMatrix a = a0_matrix(pt);
          PsdMatrix b = b_theta_matrix(pt);
          double viol = lambda1_violation(lhs, rhs, a, b, tol);
          consider(viol, a, b, "a0btheta");
        }
      }
    }
  }
  if (strategy != SearchStrategy::Structured) {
    for (int t = 0; t < 400; ++t) {
      const int n = rng.uniform_int(2, 4);
      double cond = adapted_condition(lhs.alpha, lhs.p, rhs.p, rng);
      auto [a, b] = sample_pair(SampleDomain::PositiveDefinite2x2, lhs.kind, rhs.kind,
                                lhs.alpha, n, cond, rng);
      (void)n;
      MeanResult ml = compute_mean(lhs, a, b);
      MeanResult mr = compute_mean(rhs, a, b);
      auto v = log_majorize(ml.value, mr.value, tol.maj_tol, tol.det_tol);
      if (!v.holds && v.margin < -tol.viol_band) consider(-v.margin, a, b, "random");
    }
  }
  return best;
}

ClaimReport verify_claim(const ClaimRecord& claim, int trials, int n_max, Rng rng,
                         const Tolerances& tol) {
  ClaimReport rep;
  rep.id = claim.id;
  if (claim.assertion == Assertion::OpenProblem) {
    rep.verdict = Verdict::Inconclusive;
    rep.detail = "open problem: scanned, never asserted";
    return rep;
  }

  if (claim.assertion == Assertion::HoldsForAllPairs) {
    double worst = std::numeric_limits<double>::infinity();
    int done = 0;
    for (int t = 0; t < trials; ++t) {
      Rng trial_rng = rng.derive(claim.id).derive(static_cast<std::uint64_t>(t));
      auto params = sample_params(claim.predicate, trial_rng);
      if (!params) {
        rep.verdict = Verdict::Inconclusive;
        rep.detail = "predicate unsatisfiable over the sampling box";
        return rep;
      }
      const int n = trial_rng.uniform_int(2, std::max(2, n_max));
      const double cond = adapted_condition(params->alpha, params->p, params->q, trial_rng);
      auto [a, b] =
          sample_pair(claim.domain, claim.lhs, claim.rhs, params->alpha, n, cond, trial_rng);
      MeanSpec ls{claim.lhs, params->alpha, params->p};
      MeanSpec rs{claim.rhs, params->alpha, params->q};
      MeanResult ml = compute_mean(ls, a, b);
      MeanResult mr = compute_mean(rs, a, b);
      auto v = log_majorize(ml.value, mr.value, tol.maj_tol, tol.det_tol);
      if (std::isfinite(v.margin)) worst = std::min(worst, v.margin);
      ++done;
      if (!v.holds && v.margin < -tol.boundary_band) {
        rep.verdict = Verdict::Refuted;
        rep.trials = done;
        rep.worst_margin = v.margin;
        rep.witness = Witness{params->alpha, params->p, params->q, a, b, -v.margin,
                              "verify_claim sample"};
        rep.detail = "violation during holds-claim verification";
        return rep;
      }
    }
    rep.verdict = Verdict::Confirmed;
    rep.trials = done;
    rep.worst_margin = std::isfinite(worst) ? worst : 0.0;
    return rep;
  }

  // CounterexampleExists: search for a witness at parameter points sampled
  // inside the violating region (kept away from its boundary where possible).
  int param_points = 6;
  for (int k = 0; k < param_points; ++k) {
    Rng prng = rng.derive(claim.id + "#params").derive(static_cast<std::uint64_t>(k));
    auto params = sample_params(claim.predicate, prng);
    if (!params) continue;
    MeanSpec ls{claim.lhs, params->alpha, params->p};
    MeanSpec rs{claim.rhs, params->alpha, params->q};
    auto wit = counterexample_search(ls, rs, SearchStrategy::Both,
                                     rng.derive(claim.id + "#search"), tol);
    rep.trials += 1;
    if (wit && (!rep.witness || wit->violation > rep.witness->violation)) {
      rep.witness = wit;
    }
  }
  if (rep.witness) {
    rep.verdict = Verdict::Confirmed;
    rep.worst_margin = rep.witness->violation;
    rep.detail = "witness found (" + rep.witness->source + ")";
  } else {
    rep.verdict = rep.trials == 0 ? Verdict::Inconclusive : Verdict::Refuted;
    rep.detail = rep.trials == 0 ? "predicate unsatisfiable over the sampling box"
                                 : "no witness found";
  }
  return rep;
}

std::optional<bool> theory_verdict(MeanKind lhs, MeanKind rhs, double alpha, double p,
                                   double q) {
  static const std::vector<ClaimRecord> catalog = builtin_catalog();
  bool any_open = false;
  for (const auto& c : catalog) {
    if (c.lhs != lhs || c.rhs != rhs) continue;
    if (!c.predicate(alpha, p, q)) continue;
    if (c.assertion == Assertion::HoldsForAllPairs) return true;
    if (c.assertion == Assertion::CounterexampleExists) return false;
    any_open = true;
  }
  (void)any_open;
  return std::nullopt;
}

std::vector<RegionCell> region_scan(MeanKind lhs, MeanKind rhs,
                                    const std::vector<double>& alpha_grid,
                                    const std::vector<double>& ratio_grid,
                                    int trials_per_cell, Rng rng, const Tolerances& tol) {
  std::vector<RegionCell> cells;
  for (double alpha : alpha_grid) {
    for (double ratio : ratio_grid) {
      const double q = 1.0, p = ratio;
      MeanSpec ls{lhs, alpha, p};
      MeanSpec rs{rhs, alpha, q};
      Rng cell_rng = rng.derive(mean_kind_name(lhs)).derive(mean_kind_name(rhs));
      cell_rng = cell_rng.derive(static_cast<std::uint64_t>(alpha * 1e6));
      cell_rng = cell_rng.derive(static_cast<std::uint64_t>(ratio * 1e6));
      auto wit = counterexample_search(ls, rs, SearchStrategy::Structured, cell_rng, tol);
      bool holds_emp = !wit.has_value();
      if (holds_emp && trials_per_cell > 0) {
        for (int t = 0; t < trials_per_cell && holds_emp; ++t) {
          const double cond = adapted_condition(alpha, p, q, cell_rng);
          auto [a, b] = sample_pair(SampleDomain::DominatedPsd, lhs, rhs, alpha,
                                    cell_rng.uniform_int(2, 4), cond, cell_rng);
          auto v = log_majorize(compute_mean(ls, a, b).value,
                                compute_mean(rs, a, b).value, tol.maj_tol, tol.det_tol);
          if (!v.holds && v.margin < -tol.viol_band) holds_emp = false;
        }
      }
      auto theory = theory_verdict(lhs, rhs, alpha, p, q);
      cells.push_back(RegionCell{alpha, ratio, holds_emp, theory,
                                 !theory.has_value() || *theory == holds_emp});
    }
  }
  return cells;
}

std::string region_scan_csv(const std::vector<RegionCell>& cells) {
  std::string out = "alpha,ratio,empirical,theory,agreement\n";
  for (const auto& c : cells) {
    out += std::to_string(c.alpha) + "," + std::to_string(c.ratio) + ",";
    out += c.empirical_holds ? "holds" : "violated";
    out += ",";
    out += c.theory_holds ? (*c.theory_holds ? "holds" : "violated") : "open";
    out += ",";
    out += c.agreement ? "yes" : "no";
    out += "\n";
  }
  return out;
}

}  // namespace matmean

#include "matmean/channels.hpp"

#include "matmean/second_order.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace matmean {

QuantumChannel::QuantumChannel(std::vector<Matrix> kraus, ChannelKind kind,
                               double tp_tol)
    : kraus_(std::move(kraus)), kind_(kind) {
  if (kraus_.empty()) throw std::invalid_argument("channel needs Kraus operators");
  in_dim_ = static_cast<int>(kraus_[0].cols());
  out_dim_ = static_cast<int>(kraus_[0].rows());
  Matrix sum = Matrix::Zero(in_dim_, in_dim_);
  for (const auto& k : kraus_) {
    if (k.cols() != in_dim_ || k.rows() != out_dim_)
      throw std::invalid_argument("inconsistent Kraus shapes");
    sum += k.adjoint() * k;
  }
  if (opnorm(sum - Matrix::Identity(in_dim_, in_dim_)) > tp_tol)
    throw std::invalid_argument("channel is not trace-preserving");
}

Matrix QuantumChannel::apply(const Matrix& x) const {
  Matrix out = Matrix::Zero(out_dim_, out_dim_);
  for (const auto& k : kraus_) out += k * x * k.adjoint();
  return out;
}

PsdMatrix QuantumChannel::apply(const PsdMatrix& x) const {
  return PsdMatrix::from_matrix(apply(x.mat()));
}

QuantumChannel random_cptp(int n, int m, int env_dim, Rng& rng) {
  if (env_dim < 1) throw std::invalid_argument("env_dim must be >= 1");
  const int l = env_dim;
  const long total = static_cast<long>(n) * l * m;
  if (total > kMaxDim)
    throw std::invalid_argument("Stinespring dimension n*l*m exceeds cap");
  Matrix v = random_unitary(static_cast<int>(total), rng);
  // eta = |e0><e0| on the (l,m) factor; K_mu = (<mu|_{nl} (x) I_m) V (|.>_n (x) |e0>)
  const int d_nl = n * l;
  std::vector<Matrix> kraus;
  for (int mu = 0; mu < d_nl; ++mu) {
    Matrix k(m, n);
    for (int col = 0; col < n; ++col) {
      // input basis vector |col> (x) |e0>_{lm}: index col*(l*m) + 0
      const int in_index = col * (l * m);
      for (int row = 0; row < m; ++row) k(row, col) = v(mu * m + row, in_index);
    }
    kraus.push_back(std::move(k));
  }
  return QuantumChannel(std::move(kraus), ChannelKind::General);
}

QuantumChannel pinching_channel(const PsdMatrix& a, double rel_gap) {
  const auto& s = a.spectral();
  const int n = a.dim();
  std::vector<Matrix> kraus;
  int i = 0;
  while (i < n) {
    int j = i + 1;
    while (j < n && std::abs(s.eigenvalues(j) - s.eigenvalues(i)) <=
                        rel_gap * std::max(std::abs(s.eigenvalues(i)), 1e-300))
      ++j;
    Matrix p = Matrix::Zero(n, n);
    for (int k = i; k < j; ++k)
      p += s.eigenvectors.col(k) * s.eigenvectors.col(k).adjoint();
    kraus.push_back(std::move(p));
    i = j;
  }
  return QuantumChannel(std::move(kraus), ChannelKind::Pinching);
}

QuantumChannel qc_channel(const Povm& povm) {
  const int n = povm.elements[0].dim();
  const int k = static_cast<int>(povm.elements.size());
  std::vector<Matrix> kraus;
  for (int i = 0; i < k; ++i) {
    // M_i = sum_j |phi_ij><phi_ij| gives Kraus |i><phi_ij|.
    const auto& s = povm.elements[i].spectral();
    for (int j = 0; j < n; ++j) {
      if (s.eigenvalues(j) <= 0) continue;
      Matrix kr = Matrix::Zero(k, n);
      kr.row(i) = std::sqrt(s.eigenvalues(j)) * s.eigenvectors.col(j).adjoint();
      kraus.push_back(std::move(kr));
    }
  }
  return QuantumChannel(std::move(kraus), ChannelKind::QuantumClassical);
}

QuantumChannel cq_channel(const std::vector<PsdMatrix>& states, double tol) {
  if (states.empty()) throw std::invalid_argument("cq_channel needs states");
  const int n = static_cast<int>(states.size());
  const int m = states[0].dim();
  std::vector<Matrix> kraus;
  for (int i = 0; i < n; ++i) {
    if (std::abs(states[i].trace() - 1.0) > tol)
      throw std::invalid_argument("cq_channel states must have unit trace");
    const auto& s = states[i].spectral();
    for (int j = 0; j < m; ++j) {
      if (s.eigenvalues(j) <= 0) continue;
      Matrix kr = Matrix::Zero(m, n);
      kr.col(i) = std::sqrt(s.eigenvalues(j)) * s.eigenvectors.col(j);
      kraus.push_back(std::move(kr));
    }
  }
  return QuantumChannel(std::move(kraus), ChannelKind::ClassicalQuantum);
}

QuantumChannel unitary_channel(const Matrix& u) {
  return QuantumChannel({u}, ChannelKind::UnitaryConjugation);
}

std::pair<Matrix, Matrix> weyl_heisenberg(int d) {
  if (d < 2) throw std::invalid_argument("Weyl-Heisenberg needs d >= 2");
  Matrix s = Matrix::Zero(d, d);
  Matrix w = Matrix::Zero(d, d);
  const Complex omega = std::exp(Complex(0, 2.0 * M_PI / d));
  for (int j = 0; j < d; ++j) {
    s(j, (j + 1) % d) = 1.0;  // S_{j,k} = delta_{j+1,k} (mod d)
    w(j, j) = std::pow(omega, j);
  }
  return {s, w};
}

double twirl_identity_check(int n, int l, int m, Rng& rng, int trials) {
  const long total = static_cast<long>(n) * l * m;
  if (total > kMaxDim) throw std::invalid_argument("n*l*m exceeds cap");
  const int d = n * l;
  auto [s, w] = weyl_heisenberg(d);
  const Matrix im = Matrix::Identity(m, m);

  std::vector<Matrix> us;  // U_{mu,nu} = (S^mu W^nu) (x) I_m
  Matrix sp = Matrix::Identity(d, d);
  for (int mu = 0; mu < d; ++mu) {
    Matrix wp = Matrix::Identity(d, d);
    for (int nu = 0; nu < d; ++nu) {
      us.push_back(kron(sp * wp, im));
      wp = wp * w;
    }
    sp = sp * s;
  }

  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Matrix z(total, total);
    for (long i = 0; i < total; ++i)
      for (long j = 0; j < total; ++j) z(i, j) = Complex(rng.gaussian(), rng.gaussian());
    Matrix lhs = kron(Matrix::Identity(d, d) / double(d), partial_trace_front(z, d, m));
    Matrix rhs = Matrix::Zero(total, total);
    for (const auto& u : us) rhs += u * z * u.adjoint();
    rhs /= double(d) * double(d);
    worst = std::max(worst, opnorm(lhs - rhs));
  }
  return worst;
}

namespace {

double trace_mean(const MeanSpec& spec, const PsdMatrix& a, const PsdMatrix& b) {
  return compute_mean(spec, a, b).value.trace();
}

struct PairSample {
  PsdMatrix a1, b1, a2, b2;
  double lambda;
};

// The four structured samplers behind the convexity search. Violations of the
// Section 5 regions live on thin sets; random Wishart pairs alone miss most
// of them.
PairSample sample_convexity_pairs(int family, int n, Rng& rng) {
  switch (family % 4) {
    case 0: {  // uniform Wishart
      double cond = std::pow(10.0, rng.uniform(0.3, 3.0));
      return PairSample{sample_psd(n, cond, rng), sample_psd(n, cond, rng),
                        sample_psd(n, cond, rng), sample_psd(n, cond, rng),
                        rng.uniform() < 0.5 ? 0.5 : rng.uniform(0.05, 0.95)};
    }
    case 1: {  // near-commuting: common basis, jittered
      double cond = std::pow(10.0, rng.uniform(0.3, 2.0));
      Matrix u = random_unitary(n, rng);
      auto diagm = [&](Rng& r) {
        RealVector d(n);
        for (int i = 0; i < n; ++i) d(i) = r.log_uniform(1.0 / cond, 1.0);
        return PsdMatrix::from_matrix(u * d.asDiagonal() * u.adjoint());
      };
      PsdMatrix a1 = diagm(rng), b1 = diagm(rng);
      PsdMatrix jit = sample_psd(n, 2.0, rng);
      double eps = rng.log_uniform(1e-3, 0.3);
      PsdMatrix a2 = PsdMatrix::from_matrix(diagm(rng).mat() + eps * jit.mat());
      PsdMatrix b2 = diagm(rng);
      return PairSample{a1, b1, a2, b2, 0.5};
    }
    case 2: {  // pinching family: (A,B) vs (A, UBU*), U = diag(1,-1,...)
      double x = rng.log_uniform(1e-3, 1.0);
      double y = rng.log_uniform(1e-3, 1.0);
      double th = rng.uniform(0.1, 1.47);
      ABThetaPoint pt{x, y, th};
      PsdMatrix a = a0_matrix(pt);
      PsdMatrix b = b_theta_matrix(pt);
      Matrix u = Matrix::Identity(2, 2);
      u(1, 1) = -1.0;
      PsdMatrix b2 = PsdMatrix::from_matrix(u * b.mat() * u.adjoint());
      if (n > 2) {
        PsdMatrix pad = sample_psd(n - 2, 4.0, rng);
        Matrix a1 = Matrix::Zero(n, n), bb1 = Matrix::Zero(n, n), bb2 = Matrix::Zero(n, n);
        a1.topLeftCorner(2, 2) = a.mat();
        a1.bottomRightCorner(n - 2, n - 2) = pad.mat();
        bb1.topLeftCorner(2, 2) = b.mat();
        bb1.bottomRightCorner(n - 2, n - 2) = pad.mat();
        bb2.topLeftCorner(2, 2) = b2.mat();
        bb2.bottomRightCorner(n - 2, n - 2) = pad.mat();
        return PairSample{PsdMatrix::from_matrix(a1), PsdMatrix::from_matrix(bb1),
                          PsdMatrix::from_matrix(a1), PsdMatrix::from_matrix(bb2), 0.5};
      }
      return PairSample{a, b, a, b2, 0.5};
    }
    default: {  // proportional pairs B_i = c_i A_i (the classical-quantum route)
      double cond = std::pow(10.0, rng.uniform(0.3, 3.0));
      PsdMatrix a1 = sample_psd(n, cond, rng);
      PsdMatrix a2 = sample_psd(n, cond, rng);
      double c1 = rng.log_uniform(1e-3, 1e3);
      double c2 = rng.log_uniform(1e-3, 1e3);
      return PairSample{a1, PsdMatrix::from_matrix(c1 * a1.mat()), a2,
                        PsdMatrix::from_matrix(c2 * a2.mat()), 0.5};
    }
  }
}

}  // namespace

ConvexityVerdict midpoint_convexity_test(const MeanSpec& spec, ConvexityMode mode,
                                         int trials, Rng rng, double cvx_tol) {
  validate_spec(spec);
  ConvexityVerdict v;
  v.spec = spec;
  v.mode = mode;
  const double sign = mode == ConvexityMode::Concavity ? 1.0 : -1.0;
  double worst = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    Rng trng = rng.derive(static_cast<std::uint64_t>(t));
    const int n = trng.uniform_int(2, 3);
    PairSample ps = sample_convexity_pairs(t, n, trng);
    PsdMatrix am = PsdMatrix::from_matrix(ps.lambda * ps.a1.mat() +
                                          (1.0 - ps.lambda) * ps.a2.mat());
    PsdMatrix bm = PsdMatrix::from_matrix(ps.lambda * ps.b1.mat() +
                                          (1.0 - ps.lambda) * ps.b2.mat());
    double fm, f1, f2;
    try {
      fm = trace_mean(spec, am, bm);
      f1 = trace_mean(spec, ps.a1, ps.b1);
      f2 = trace_mean(spec, ps.a2, ps.b2);
    } catch (const std::domain_error&) {
      continue;
    }
    const double mix = ps.lambda * f1 + (1.0 - ps.lambda) * f2;
    const double scale = std::max(fm, 1e-300);
    // sign*(f(mid) - mix) >= 0 is the requested mode
    const double defect = sign * (fm - mix) / scale;
    v.trials++;
    if (defect < worst) {
      worst = defect;
      if (defect < -cvx_tol)
        v.witness = ConvexityVerdict::WitnessPair{ps.a1, ps.b1, ps.a2, ps.b2,
                                                  ps.lambda, defect};
    }
  }
  v.worst_violation = std::isfinite(worst) ? worst : 0.0;
  return v;
}

MonotonicityReport monotonicity_check(const MeanSpec& spec, ChannelFamily family,
                                      int trials, Rng rng) {
  validate_spec(spec);
  MonotonicityReport rep;
  rep.spec = spec;
  rep.family = family;
  rep.min_defect = std::numeric_limits<double>::infinity();
  rep.max_defect = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    Rng trng = rng.derive(static_cast<std::uint64_t>(t));
    const int n = trng.uniform_int(2, 3);
    const double cond = std::pow(10.0, trng.uniform(0.3, 2.0));
    PsdMatrix a = sample_psd(n, cond, trng);
    PsdMatrix b = sample_psd(n, cond, trng);
    if (family == ChannelFamily::ClassicalQuantum) {
      // classical inputs for a cq channel
      Matrix da = Matrix::Zero(n, n), db = Matrix::Zero(n, n);
      for (int i = 0; i < n; ++i) {
        da(i, i) = trng.log_uniform(1.0 / cond, 1.0);
        db(i, i) = trng.log_uniform(1.0 / cond, 1.0);
      }
      a = PsdMatrix::from_matrix(da);
      b = PsdMatrix::from_matrix(db);
    }

    PsdMatrix fa = PsdMatrix::zero(n), fb = PsdMatrix::zero(n);
    bool transpose_after = false;
    try {
      switch (family) {
        case ChannelFamily::Cptp: {
          const int m = trng.uniform_int(2, 3);
          const int env = (n * m * 2 <= kMaxDim) ? 2 : 1;
          QuantumChannel phi = random_cptp(n, m, env, trng);
          fa = phi.apply(a);
          fb = phi.apply(b);
          break;
        }
        case ChannelFamily::QuantumClassical: {
          // measurement in a Haar-random basis
          Matrix u = random_unitary(n, trng);
          std::vector<PsdMatrix> elems;
          for (int i = 0; i < n; ++i)
            elems.push_back(PsdMatrix::from_matrix(u.col(i) * u.col(i).adjoint()));
          QuantumChannel phi = qc_channel(validate_povm(std::move(elems)));
          fa = phi.apply(a);
          fb = phi.apply(b);
          break;
        }
        case ChannelFamily::ClassicalQuantum: {
          const int m = trng.uniform_int(2, 3);
          std::vector<PsdMatrix> states;
          for (int i = 0; i < n; ++i) {
            PsdMatrix rho = sample_psd(m, 10.0, trng);
            states.push_back(PsdMatrix::from_matrix(rho.mat() / rho.trace()));
          }
          QuantumChannel phi = cq_channel(states);
          fa = phi.apply(a);
          fb = phi.apply(b);
          break;
        }
        case ChannelFamily::Pinching: {
          QuantumChannel phi = pinching_channel(a);
          fa = phi.apply(a);
          fb = phi.apply(b);
          break;
        }
        case ChannelFamily::TransposeCptp: {
          const int m = n;
          QuantumChannel phi = random_cptp(n, m, (n * m * 2 <= kMaxDim) ? 2 : 1, trng);
          fa = PsdMatrix::from_matrix(phi.apply(a.mat()).transpose().eval());
          fb = PsdMatrix::from_matrix(phi.apply(b.mat()).transpose().eval());
          transpose_after = true;
          break;
        }
      }
    } catch (const std::exception&) {
      rep.domain_violations++;
      continue;
    }
    (void)transpose_after;
    // alpha>1 kinds need s(Phi(A)) >= s(Phi(B)); nudge rank-deficient outputs.
    if (requires_support_dominance(spec.kind, spec.alpha) &&
        !support_dominates(fa, fb)) {
      fa = PsdMatrix::from_matrix(fa.mat() +
                                  1e-10 * Matrix::Identity(fa.dim(), fa.dim()));
      rep.regularized++;
      if (!support_dominates(fa, fb)) {
        rep.domain_violations++;
        continue;
      }
    }
    double q0, q1;
    try {
      q0 = trace_mean(spec, a, b);
      q1 = trace_mean(spec, fa, fb);
    } catch (const std::domain_error&) {
      rep.domain_violations++;
      continue;
    }
    const double defect = (q1 - q0) / std::max(q0, 1e-300);
    rep.trials++;
    rep.min_defect = std::min(rep.min_defect, defect);
    rep.max_defect = std::max(rep.max_defect, defect);
  }
  if (rep.trials == 0) {
    rep.min_defect = 0.0;
    rep.max_defect = 0.0;
  }
  return rep;
}

std::optional<bool> convexity_theory(MeanKind kind, ConvexityMode mode, double alpha,
                                     double p) {
  const bool concav = mode == ConvexityMode::Concavity;
  switch (kind) {
    case MeanKind::Renyi:
      if (concav) return alpha < 1.0 && 1.0 / p >= std::max(alpha, 1.0 - alpha);
      return alpha > 1.0 && std::max(alpha / 2.0, alpha - 1.0) <= 1.0 / p &&
             1.0 / p <= alpha;
    case MeanKind::LogEuclidean:
      if (concav) return alpha < 1.0;
      return false;  // Thm 5.12(2)
    case MeanKind::Geometric:
      if (concav) return alpha < 1.0 && p <= 1.0;
      // alpha>1: necessary max{1/2,(a-1)/a} <= p <= 1; sufficient only for
      // alpha = 2 (1/2<=p<=1) and p = 1 (1<a<=2): elsewhere open.
      if (alpha <= 1.0) return false;
      if (p > 1.0 || p < std::max(0.5, (alpha - 1.0) / alpha)) return false;
      if (std::abs(alpha - 2.0) < 1e-12) return true;
      if (std::abs(p - 1.0) < 1e-12) return alpha <= 2.0;
      return std::nullopt;  // Problem 5.18
    case MeanKind::SpectralGeometric:
      if (!concav) return alpha > 1.0 ? std::optional<bool>(false) : std::nullopt;
      if (alpha >= 1.0) return false;
      if (std::abs(alpha - 0.5) < 1e-12) return p <= 1.0;  // = Tr R_{1/2,2p}
      if (p > std::min((1.0 - alpha) / alpha, alpha / (1.0 - alpha))) return false;
      return std::nullopt;  // Problem 5.20
    case MeanKind::SpectralGeometricTilde:
      if (!concav) return alpha > 1.0 ? std::optional<bool>(false) : std::nullopt;
      if (alpha >= 1.0) return false;
      if (std::abs(alpha - 0.5) < 1e-12) return p <= 1.0;
      if (p > 1.0) return false;
      return std::nullopt;  // Problem 5.20
    case MeanKind::Arithmetic:
      if (alpha >= 1.0) return std::nullopt;
      if (concav) return p <= 1.0;
      return 1.0 <= p && p <= 2.0;
    case MeanKind::Harmonic:
      if (alpha >= 1.0) return std::nullopt;
      if (concav) return p <= 1.0;
      return false;  // never jointly convex
  }
  return std::nullopt;
}

std::vector<RegionProbeCell> convexity_region_probe(MeanKind kind, ConvexityMode mode,
                                                    const std::vector<double>& alpha_grid,
                                                    const std::vector<double>& p_grid,
                                                    int trials, Rng rng) {
  std::vector<RegionProbeCell> cells;
  for (double alpha : alpha_grid) {
    for (double p : p_grid) {
      MeanSpec spec{kind, alpha, p};
      Rng crng = rng.derive(mean_kind_name(kind))
                     .derive(static_cast<std::uint64_t>(alpha * 1e6))
                     .derive(static_cast<std::uint64_t>(p * 1e6));
      ConvexityVerdict v = midpoint_convexity_test(spec, mode, trials, crng);
      const bool violated = v.witness.has_value();
      auto theory = convexity_theory(kind, mode, alpha, p);
      // theory true = no violation should exist
      cells.push_back(RegionProbeCell{alpha, p, violated, theory,
                                      !theory.has_value() || *theory == !violated});
    }
  }
  return cells;
}

std::string region_probe_csv(const std::vector<RegionProbeCell>& cells) {
  std::string out = "alpha,p,empirical,theory,agreement\n";
  for (const auto& c : cells) {
    out += std::to_string(c.alpha) + "," + std::to_string(c.p) + ",";
    out += c.violation_found ? "violation" : "no-violation";
    out += ",";
    out += c.theory_ok ? (*c.theory_ok ? "holds" : "fails") : "open";
    out += ",";
    out += c.agreement ? "yes" : "no";
    out += "\n";
  }
  return out;
}

SemiClassicalReport semiclassical_monotonicity_check(const MeanSpec& spec,
                                                     bool expect_increase, int trials,
                                                     Rng rng) {
  (void)expect_increase;
  SemiClassicalReport rep;
  rep.min_defect = std::numeric_limits<double>::infinity();
  rep.max_defect = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    Rng trng = rng.derive(static_cast<std::uint64_t>(t));
    const int n = trng.uniform_int(2, 3);
    const double cond = std::pow(10.0, trng.uniform(0.3, 2.0));
    PsdMatrix a = sample_psd(n, cond, trng);
    PsdMatrix b = sample_psd(n, cond, trng);
    const bool use_pinching = t % 2 == 0;
    PsdMatrix fa = a, fb = b;
    if (use_pinching) {
      QuantumChannel phi = pinching_channel(a);
      fa = phi.apply(a);
      fb = phi.apply(b);
    } else {
      Matrix u = random_unitary(n, trng);
      std::vector<PsdMatrix> elems;
      for (int i = 0; i < n; ++i)
        elems.push_back(PsdMatrix::from_matrix(u.col(i) * u.col(i).adjoint()));
      QuantumChannel phi = qc_channel(validate_povm(std::move(elems)));
      fa = phi.apply(a);
      fb = phi.apply(b);
    }
    double q0, q1;
    try {
      q0 = trace_mean(spec, a, b);
      q1 = trace_mean(spec, fa, fb);
    } catch (const std::domain_error&) {
      continue;
    }
    const double defect = (q1 - q0) / std::max(q0, 1e-300);
    rep.trials++;
    rep.min_defect = std::min(rep.min_defect, defect);
    rep.max_defect = std::max(rep.max_defect, defect);
  }
  if (rep.trials == 0) rep.min_defect = rep.max_defect = 0.0;
  return rep;
}

SemiClassicalReport conditional_convexity_check(const MeanSpec& spec,
                                                ConvexityMode mode, int trials, Rng rng) {
  SemiClassicalReport rep;
  rep.min_defect = std::numeric_limits<double>::infinity();
  rep.max_defect = -std::numeric_limits<double>::infinity();
  const double sign = mode == ConvexityMode::Concavity ? 1.0 : -1.0;
  for (int t = 0; t < trials; ++t) {
    Rng trng = rng.derive(static_cast<std::uint64_t>(t));
    const int n = trng.uniform_int(2, 3);
    const double lambda = 0.5;
    // Construct pairs whose lambda-mixtures commute: fix the mixtures in a
    // common eigenbasis and split them by a Hermitian perturbation.
    Matrix u = random_unitary(n, trng);
    RealVector da(n), db(n);
    for (int i = 0; i < n; ++i) {
      da(i) = trng.log_uniform(0.1, 1.0);
      db(i) = trng.log_uniform(0.1, 1.0);
    }
    Matrix abar = u * da.asDiagonal() * u.adjoint();
    Matrix bbar = u * db.asDiagonal() * u.adjoint();
    HermitianMatrix ha = sample_hermitian(n, trng, 0.4 * da.minCoeff());
    HermitianMatrix hb = sample_hermitian(n, trng, 0.4 * db.minCoeff());
    PsdMatrix a1 = PsdMatrix::from_matrix(abar + ha.mat());
    PsdMatrix a2 = PsdMatrix::from_matrix(abar - ha.mat());
    PsdMatrix b1 = PsdMatrix::from_matrix(bbar + hb.mat());
    PsdMatrix b2 = PsdMatrix::from_matrix(bbar - hb.mat());
    double fm, f1, f2;
    try {
      fm = trace_mean(spec, PsdMatrix::from_matrix(abar), PsdMatrix::from_matrix(bbar));
      f1 = trace_mean(spec, a1, b1);
      f2 = trace_mean(spec, a2, b2);
    } catch (const std::domain_error&) {
      continue;
    }
    const double defect =
        sign * (fm - lambda * f1 - (1.0 - lambda) * f2) / std::max(fm, 1e-300);
    rep.trials++;
    rep.min_defect = std::min(rep.min_defect, defect);
    rep.max_defect = std::max(rep.max_defect, defect);
  }
  if (rep.trials == 0) rep.min_defect = rep.max_defect = 0.0;
  return rep;
}

}  // namespace matmean

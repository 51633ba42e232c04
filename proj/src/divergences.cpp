#include "matmean/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace matmean {

DivergenceValue divergence_finite(double v) {
  return DivergenceValue{v, true, DivergenceDomain::InDomain};
}

DivergenceValue divergence_infinite() {
  return DivergenceValue{0.0, false, DivergenceDomain::SupportViolation};
}

DivergenceValue classical_renyi(const std::vector<double>& b,
                                const std::vector<double>& a, double alpha) {
  if (b.size() != a.size()) throw std::invalid_argument("length mismatch");
  double sum_b = 0.0;
  for (double v : b) {
    if (v < 0) throw std::invalid_argument("b must be nonnegative");
    sum_b += v;
  }
  if (sum_b <= 0) throw std::domain_error("b must be nonzero");
  for (double v : a)
    if (v < 0) throw std::invalid_argument("a must be nonnegative");

  if (alpha > 1.0 || alpha == 1.0) {
    for (size_t i = 0; i < b.size(); ++i)
      if (b[i] > 0 && a[i] <= 0) return divergence_infinite();
  }
  if (alpha == 1.0) {
    double acc = 0.0;
    for (size_t i = 0; i < b.size(); ++i)
      if (b[i] > 0) acc += b[i] * std::log(b[i] / a[i]);
    return divergence_finite(acc / sum_b);
  }
  double acc = 0.0;
  for (size_t i = 0; i < b.size(); ++i) {
    if (b[i] == 0.0) continue;        // 0^alpha = 0 for alpha > 0
    if (a[i] == 0.0) continue;        // alpha<1: 0^{1-alpha} a-factor kills the term
    acc += std::pow(b[i], alpha) * std::pow(a[i], 1.0 - alpha);
  }
  if (acc <= 0) {
    // disjoint supports with alpha < 1: the formula value is -infinity of the
    // log; report as a support-violation infinity with the sign folded in.
    return DivergenceValue{std::numeric_limits<double>::infinity(), false,
                           DivergenceDomain::SupportViolation};
  }
  return divergence_finite(std::log(acc / sum_b) / (alpha - 1.0));
}

DivergenceValue divergence_from_mean(const MeanSpec& spec, const PsdMatrix& a,
                                     const PsdMatrix& b) {
  validate_spec(spec);
  if (b.is_zero()) throw std::domain_error("divergence needs B != 0");
  if (!in_domain(spec, a, b)) return divergence_infinite();
  MeanResult m = compute_mean(spec, a, b);
  const double tr = m.value.trace();
  if (tr <= 0) return divergence_infinite();
  return divergence_finite(std::log(tr / b.trace()) / (spec.alpha - 1.0));
}

MaximalDivergence maximal_divergence(const PsdMatrix& a, const PsdMatrix& b,
                                     double alpha) {
  MeanSpec g1{MeanKind::Geometric, alpha, 1.0};
  MaximalDivergence out;
  out.value = divergence_from_mean(g1, a, b);
  out.exact = alpha <= 2.0;
  return out;
}

Povm validate_povm(std::vector<PsdMatrix> elements, double tol) {
  if (elements.empty()) throw std::invalid_argument("POVM needs elements");
  const int n = elements[0].dim();
  Matrix sum = Matrix::Zero(n, n);
  for (const auto& e : elements) {
    if (e.dim() != n) throw std::invalid_argument("POVM dimension mismatch");
    sum += e.mat();
  }
  if (opnorm(sum - Matrix::Identity(n, n)) > tol)
    throw std::invalid_argument("POVM elements do not sum to the identity");
  return Povm{std::move(elements)};
}

namespace {

DivergenceValue classical_of_povm(const Povm& povm, const PsdMatrix& a,
                                  const PsdMatrix& b, double alpha) {
  std::vector<double> pa, pb;
  for (const auto& m : povm.elements) {
    pa.push_back(std::max(0.0, (m.mat() * a.mat()).trace().real()));
    pb.push_back(std::max(0.0, (m.mat() * b.mat()).trace().real()));
  }
  return classical_renyi(pb, pa, alpha);
}

Povm basis_povm(const Matrix& u) {
  std::vector<PsdMatrix> elems;
  for (int i = 0; i < u.cols(); ++i) {
    Matrix p = u.col(i) * u.col(i).adjoint();
    elems.push_back(PsdMatrix::from_matrix(std::move(p)));
  }
  return Povm{std::move(elems)};
}

}  // namespace

DivergenceValue measured_divergence_lb(const PsdMatrix& a, const PsdMatrix& b,
                                       double alpha, MeasurementStrategy strategy,
                                       Rng rng, int grid_or_trials, int povm_outcomes) {
  if (b.is_zero()) throw std::domain_error("divergence needs B != 0");
  const int n = a.dim();
  auto better = [](const DivergenceValue& x, const DivergenceValue& y) {
    if (!x.finite) return x;  // +inf lower bound dominates
    if (!y.finite) return y;
    return x.value >= y.value ? x : y;
  };
  switch (strategy) {
    case MeasurementStrategy::PinchingBasis: {
      return classical_of_povm(basis_povm(a.spectral().eigenvectors), a, b, alpha);
    }
    case MeasurementStrategy::ProjectiveGrid: {
      if (n != 2)
        throw std::invalid_argument("ProjectiveGrid is implemented for qubits only");
      DivergenceValue best =
          classical_of_povm(basis_povm(a.spectral().eigenvectors), a, b, alpha);
      const int g = std::max(4, static_cast<int>(std::sqrt(double(grid_or_trials))));
      for (int i = 0; i < g; ++i) {
        const double th = M_PI * (i + 0.5) / g;
        for (int j = 0; j < g; ++j) {
          const double ph = 2.0 * M_PI * j / g;
          Matrix u(2, 2);
          u(0, 0) = std::cos(th / 2);
          u(1, 0) = std::sin(th / 2) * std::exp(Complex(0, ph));
          u(0, 1) = -std::sin(th / 2) * std::exp(Complex(0, -ph));
          u(1, 1) = std::cos(th / 2);
          best = better(best, classical_of_povm(basis_povm(u), a, b, alpha));
        }
      }
      return best;
    }
    case MeasurementStrategy::RandomPovm: {
      DivergenceValue best =
          classical_of_povm(basis_povm(a.spectral().eigenvectors), a, b, alpha);
      for (int t = 0; t < grid_or_trials; ++t) {
        // random POVM from a Haar basis on a dilated space, compressed back
        std::vector<PsdMatrix> elems;
        Matrix total = Matrix::Zero(n, n);
        std::vector<Matrix> raw;
        for (int k = 0; k < povm_outcomes; ++k) {
          Matrix g(n, n);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = Complex(rng.gaussian(), rng.gaussian());
          Matrix e = g * g.adjoint();
          raw.push_back(e);
          total += e;
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(total);
        Matrix tot_inv_sqrt = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i)
          tot_inv_sqrt += (1.0 / std::sqrt(std::max(es.eigenvalues()(i), 1e-300))) *
                          es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
        for (auto& e : raw)
          elems.push_back(PsdMatrix::from_matrix(tot_inv_sqrt * e * tot_inv_sqrt));
        best = better(best, classical_of_povm(Povm{std::move(elems)}, a, b, alpha));
      }
      return best;
    }
  }
  throw std::logic_error("unreachable strategy");
}

namespace {

PsdMatrix tensor_power(const PsdMatrix& a, int m) {
  PsdMatrix out = a;
  for (int i = 1; i < m; ++i) out = kron(out, a);
  return out;
}

}  // namespace

double regularized_measured_estimate(const PsdMatrix& a, const PsdMatrix& b,
                                     double alpha, int m) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  const long dim = static_cast<long>(std::pow(double(a.dim()), m));
  if (dim > kMaxDim)
    throw std::invalid_argument("tensor power dimension exceeds cap: n^m = " +
                                std::to_string(dim));
  PsdMatrix am = tensor_power(a, m);
  PsdMatrix bm = tensor_power(b, m);
  // Pinch B^(x)m in the eigenbasis of A^(x)m, grouping degenerate eigenvalues
  // (tensor powers create exact degeneracies that must merge).
  const auto& s = am.spectral();
  const int n = am.dim();
  Matrix bt = s.eigenvectors.adjoint() * bm.mat() * s.eigenvectors;
  std::vector<double> avals, bvals;
  int i = 0;
  while (i < n) {
    int j = i + 1;
    while (j < n && std::abs(s.eigenvalues(j) - s.eigenvalues(i)) <=
                        1e-10 * std::max(std::abs(s.eigenvalues(i)), 1e-300))
      ++j;
    const int block = j - i;
    Matrix sub = bt.block(i, i, block, block);
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (sub + sub.adjoint().eval()));
    for (int k = 0; k < block; ++k) {
      bvals.push_back(std::max(0.0, es.eigenvalues()(k)));
      avals.push_back(std::max(0.0, s.eigenvalues(i)));
    }
    i = j;
  }
  DivergenceValue d = classical_renyi(bvals, avals, alpha);
  if (!d.finite) return std::numeric_limits<double>::infinity();
  return d.value / m;
}

DivergenceValue umegaki_relative_entropy(const PsdMatrix& x, const PsdMatrix& a) {
  if (x.dim() != a.dim()) throw std::invalid_argument("dimension mismatch");
  if (x.is_zero()) return divergence_finite(0.0);
  if (!support_dominates(a, x)) return divergence_infinite();
  Matrix lx = mat_log_support(x).mat();
  Matrix la = mat_log_support(a).mat();
  const double val = (x.mat() * (lx - la)).trace().real();
  return divergence_finite(val);
}

VariationalCheckReport le_variational_check(const PsdMatrix& a, const PsdMatrix& b,
                                            double alpha, int perturbation_count,
                                            Rng rng, double eps) {
  MeanSpec le{MeanKind::LogEuclidean, alpha, 1.0};
  PsdMatrix star = compute_mean(le, a, b).value;
  auto objective = [&](const PsdMatrix& x) {
    DivergenceValue da = umegaki_relative_entropy(x, a);
    DivergenceValue db = umegaki_relative_entropy(x, b);
    if (!da.finite || !db.finite) return -std::numeric_limits<double>::infinity();
    return x.trace() - (1.0 - alpha) * da.value - alpha * db.value;
  };
  VariationalCheckReport rep;
  rep.trace_le = star.trace();
  rep.objective_at_le = objective(star);
  rep.worst_perturbed_excess = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < perturbation_count; ++t) {
    PsdMatrix delta = sample_psd(a.dim(), 10.0, rng);
    PsdMatrix x = PsdMatrix::from_matrix(star.mat() + eps * delta.mat());
    rep.worst_perturbed_excess =
        std::max(rep.worst_perturbed_excess, objective(x) - rep.objective_at_le);
  }
  rep.maximum_certified = rep.worst_perturbed_excess <= 1e-10;
  return rep;
}

SandwichReport sandwich_check(const MeanSpec& spec, const PsdMatrix& a,
                              const PsdMatrix& b, double tol) {
  validate_spec(spec);
  if (!in_domain(spec, a, b)) throw std::domain_error("(A,B) outside dom M");
  SandwichReport rep;
  rep.tr_g1 = compute_mean(MeanSpec{MeanKind::Geometric, spec.alpha, 1.0}, a, b)
                  .value.trace();
  rep.tr_mean = compute_mean(spec, a, b).value.trace();
  rep.tr_r_inv =
      compute_mean(MeanSpec{MeanKind::Renyi, spec.alpha, 1.0 / spec.alpha}, a, b)
          .value.trace();
  const double scale = std::max(1.0, rep.tr_mean);
  if (spec.alpha < 1.0) {
    rep.lower_holds = rep.tr_g1 <= rep.tr_mean + tol * scale;
    rep.upper_holds = rep.tr_mean <= rep.tr_r_inv + tol * scale;
  } else {
    rep.lower_holds = rep.tr_r_inv <= rep.tr_mean + tol * scale;
    rep.upper_holds = rep.tr_mean <= rep.tr_g1 + tol * scale;
  }
  return rep;
}

}  // namespace matmean

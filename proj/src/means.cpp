#include "matmean/means.hpp"

#include <cmath>
#include <stdexcept>

namespace matmean {

const char* mean_kind_name(MeanKind k) {
  switch (k) {
    case MeanKind::Renyi: return "R";
    case MeanKind::Geometric: return "G";
    case MeanKind::SpectralGeometric: return "SG";
    case MeanKind::SpectralGeometricTilde: return "SGt";
    case MeanKind::LogEuclidean: return "LE";
    case MeanKind::Arithmetic: return "A";
    case MeanKind::Harmonic: return "H";
  }
  return "?";
}

MeanKind mean_kind_from_name(const std::string& name) {
  if (name == "R" || name == "renyi") return MeanKind::Renyi;
  if (name == "G" || name == "geometric") return MeanKind::Geometric;
  if (name == "SG" || name == "spectral-geometric") return MeanKind::SpectralGeometric;
  if (name == "SGt" || name == "SG~" || name == "spectral-geometric-tilde")
    return MeanKind::SpectralGeometricTilde;
  if (name == "LE" || name == "log-euclidean") return MeanKind::LogEuclidean;
  if (name == "A" || name == "arithmetic") return MeanKind::Arithmetic;
  if (name == "H" || name == "harmonic") return MeanKind::Harmonic;
  throw std::invalid_argument("unknown mean kind: " + name);
}

bool requires_support_dominance(MeanKind kind, double alpha) {
  switch (kind) {
    case MeanKind::SpectralGeometric:
    case MeanKind::SpectralGeometricTilde:
      return true;
    case MeanKind::Renyi:
    case MeanKind::Geometric:
    case MeanKind::LogEuclidean:
      return alpha > 1.0;
    case MeanKind::Arithmetic:
    case MeanKind::Harmonic:
      return false;
  }
  return false;
}

void validate_spec(const MeanSpec& spec) {
  if (std::abs(spec.alpha - 1.0) < 1e-12)
    throw std::invalid_argument("alpha = 1 is excluded");
  if (spec.alpha <= 0) throw std::invalid_argument("alpha must be positive");
  if (spec.kind != MeanKind::LogEuclidean && spec.p <= 0)
    throw std::invalid_argument("p must be positive");
  if ((spec.kind == MeanKind::Arithmetic || spec.kind == MeanKind::Harmonic) &&
      spec.alpha > 1.0)
    throw std::invalid_argument(
        "arithmetic/harmonic means are defined for 0 < alpha < 1");
}

bool in_domain(const MeanSpec& spec, const PsdMatrix& a, const PsdMatrix& b) {
  if (a.dim() != b.dim()) return false;
  if (requires_support_dominance(spec.kind, spec.alpha))
    return support_dominates(a, b);
  return true;
}

namespace {

PsdMatrix sandwich(const PsdMatrix& outer, const PsdMatrix& inner) {
  // outer * inner * outer, re-certified
  return PsdMatrix::from_matrix(outer.mat() * inner.mat() * outer.mat());
}

PsdMatrix geometric_direct(const PsdMatrix& a, const PsdMatrix& b, double alpha) {
  // A^{1/2} (A^{-1/2} B A^{-1/2})^alpha A^{1/2}, generalized inverses on s(A)
  PsdMatrix am = mat_pow(a, -0.5);
  PsdMatrix ap = mat_pow(a, 0.5);
  PsdMatrix inner = PsdMatrix::from_matrix(am.mat() * b.mat() * am.mat());
  return sandwich(ap, mat_pow(inner, alpha));
}

PsdMatrix add_eps(const PsdMatrix& a, double eps) {
  return PsdMatrix::from_matrix(a.mat() + eps * Matrix::Identity(a.dim(), a.dim()));
}

PsdMatrix mean_value(const MeanSpec& spec, const PsdMatrix& a, const PsdMatrix& b,
                     bool* used_regularization);

PsdMatrix harmonic_direct_full_rank(const PsdMatrix& a, const PsdMatrix& b,
                                    double alpha, double p) {
  PsdMatrix am = mat_pow(a, -p);
  PsdMatrix bm = mat_pow(b, -p);
  PsdMatrix mix = PsdMatrix::from_matrix((1.0 - alpha) * am.mat() + alpha * bm.mat());
  return mat_pow(mat_pow(mix, -1.0), 1.0 / p);
}

PsdMatrix log_euclidean(const PsdMatrix& a, const PsdMatrix& b, double alpha) {
  const int n = a.dim();
  if (a.rank() == n && b.rank() == n) {
    Matrix z = (1.0 - alpha) * mat_log_support(a).mat() + alpha * mat_log_support(b).mat();
    return mat_exp(HermitianMatrix(std::move(z)));
  }
  if (a.is_zero() || b.is_zero()) return PsdMatrix::zero(n);
  Matrix v = support_meet_isometry(a, b);
  if (v.cols() == 0) return PsdMatrix::zero(n);
  Matrix la = mat_log_support(a).mat();
  Matrix lb = mat_log_support(b).mat();
  Matrix zr = v.adjoint() * ((1.0 - alpha) * la + alpha * lb) * v;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (zr + zr.adjoint().eval()));
  Matrix out = Matrix::Zero(n, n);
  Matrix w = v * es.eigenvectors();
  for (int i = 0; i < w.cols(); ++i)
    out += std::exp(es.eigenvalues()(i)) * w.col(i) * w.col(i).adjoint();
  return PsdMatrix::from_matrix(std::move(out));
}

PsdMatrix mean_value(const MeanSpec& spec, const PsdMatrix& a, const PsdMatrix& b,
                     bool* used_regularization) {
  const double alpha = spec.alpha;
  const double p = spec.p;
  switch (spec.kind) {
    case MeanKind::Renyi: {
      PsdMatrix x = mat_pow(a, (1.0 - alpha) * p / 2.0);
      PsdMatrix inner = PsdMatrix::from_matrix(x.mat() * mat_pow(b, alpha * p).mat() * x.mat());
      return mat_pow(inner, 1.0 / p);
    }
    case MeanKind::Geometric: {
      PsdMatrix sharp = weighted_geometric(mat_pow(a, p), mat_pow(b, p), alpha);
      if (used_regularization && alpha < 1.0 && !support_dominates(a, b))
        *used_regularization = true;
      return mat_pow(sharp, 1.0 / p);
    }
    case MeanKind::SpectralGeometric: {
      PsdMatrix ap = mat_pow(a, p);
      PsdMatrix bp = mat_pow(b, p);
      PsdMatrix t = weighted_geometric(mat_pow(ap, -1.0), bp, 0.5);
      PsdMatrix ta = mat_pow(t, alpha);
      return mat_pow(sandwich(ta, ap), 1.0 / p);
    }
    case MeanKind::SpectralGeometricTilde: {
      PsdMatrix ap = mat_pow(a, p);
      PsdMatrix bp = mat_pow(b, p);
      PsdMatrix w = weighted_geometric(mat_pow(ap, -1.0), bp, alpha);
      PsdMatrix wh = mat_pow(w, 0.5);
      PsdMatrix core = sandwich(wh, mat_pow(ap, 2.0 * (1.0 - alpha)));
      return mat_pow(core, 1.0 / p);
    }
    case MeanKind::LogEuclidean:
      return log_euclidean(a, b, alpha);
    case MeanKind::Arithmetic: {
      PsdMatrix mix = PsdMatrix::from_matrix((1.0 - alpha) * mat_pow(a, p).mat() +
                                             alpha * mat_pow(b, p).mat());
      return mat_pow(mix, 1.0 / p);
    }
    case MeanKind::Harmonic: {
      const int n = a.dim();
      if (a.rank() == n && b.rank() == n)
        return harmonic_direct_full_rank(a, b, alpha, p);
      if (used_regularization) *used_regularization = true;
      PsdMatrix out = PsdMatrix::zero(n);
      for (double eps : default_eps_sequence())
        out = harmonic_direct_full_rank(add_eps(a, eps), add_eps(b, eps), alpha, p);
      return out;
    }
  }
  throw std::logic_error("unreachable mean kind");
}

}  // namespace

Matrix support_meet_isometry(const PsdMatrix& a, const PsdMatrix& b, double tol) {
  SupportInfo pa = support_projection(a);
  SupportInfo pb = support_projection(b);
  // x is in ran(P_A) n ran(P_B) iff P_A P_B P_A x = x.
  Matrix prod = pa.projection.mat() * pb.projection.mat() * pa.projection.mat();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (prod + prod.adjoint().eval()));
  const int n = a.dim();
  int r = 0;
  for (int i = 0; i < n; ++i)
    if (es.eigenvalues()(i) > 1.0 - tol) ++r;
  Matrix v(n, r);
  int k = 0;
  for (int i = 0; i < n; ++i)
    if (es.eigenvalues()(i) > 1.0 - tol) v.col(k++) = es.eigenvectors().col(i);
  return v;
}

PsdMatrix weighted_geometric(const PsdMatrix& a, const PsdMatrix& b, double alpha) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  if (std::abs(alpha - 1.0) < 1e-12) throw std::invalid_argument("alpha = 1 is excluded");
  const bool dominated = support_dominates(a, b);
  if (alpha > 1.0 && !dominated)
    throw std::domain_error("A #_alpha B with alpha > 1 requires s(A) >= s(B)");
  if (dominated) return geometric_direct(a, b, alpha);
  // Kubo-Ando extension for 0 < alpha < 1 on general PSD pairs.
  PsdMatrix out = PsdMatrix::zero(a.dim());
  for (double eps : default_eps_sequence())
    out = geometric_direct(add_eps(a, eps), add_eps(b, eps), alpha);
  return out;
}

MeanResult compute_mean(const MeanSpec& spec, const PsdMatrix& a, const PsdMatrix& b) {
  validate_spec(spec);
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  if (!in_domain(spec, a, b))
    throw std::domain_error(std::string(mean_kind_name(spec.kind)) +
                            " with alpha=" + std::to_string(spec.alpha) +
                            " requires s(A) >= s(B)");
  bool regularized = false;
  PsdMatrix value = mean_value(spec, a, b, &regularized);
  MeanResult res{std::move(value), true, std::nullopt, std::nullopt, 0.0};
  if (regularized) res.regularization_used = default_eps_sequence();
  res.log_det = log_det_support(res.value);
  return res;
}

std::vector<double> default_eps_sequence() {
  return {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
}

MeanResult epsilon_limit(const MeanSpec& spec, const PsdMatrix& a, const PsdMatrix& b,
                         std::vector<double> eps_sequence) {
  validate_spec(spec);
  if (!in_domain(spec, a, b))
    throw std::domain_error("(A,B) outside the domain of the requested mean");
  EpsilonDiagnostic diag;
  diag.eps_sequence = eps_sequence;
  bool ignored = false;
  PsdMatrix prev = PsdMatrix::zero(a.dim());
  bool have_prev = false;
  PsdMatrix last = PsdMatrix::zero(a.dim());
  for (double eps : eps_sequence) {
    PsdMatrix cur = mean_value(spec, add_eps(a, eps), add_eps(b, eps), &ignored);
    if (have_prev) diag.cauchy_gaps.push_back(opnorm(cur.mat() - prev.mat()));
    prev = cur;
    have_prev = true;
    last = std::move(cur);
  }
  // Flag non-convergence when the successive differences stop decreasing.
  for (size_t i = 1; i < diag.cauchy_gaps.size(); ++i)
    if (diag.cauchy_gaps[i] > diag.cauchy_gaps[i - 1] * 2.0 + 1e-13)
      diag.converged = false;
  MeanResult res{std::move(last), true, eps_sequence, std::move(diag), 0.0};
  res.log_det = log_det_support(res.value);
  return res;
}

std::vector<double> default_lie_trotter_p_sequence() {
  std::vector<double> ps;
  for (int k = 0; k <= 10; ++k) ps.push_back(std::pow(2.0, -k));
  return ps;
}

LieTrotterReport lie_trotter_probe(MeanKind kind, double alpha, const PsdMatrix& a,
                                   const PsdMatrix& b, std::vector<double> p_sequence) {
  if (kind == MeanKind::LogEuclidean)
    throw std::invalid_argument("lie_trotter_probe compares quasi-means against LE");
  MeanSpec le{MeanKind::LogEuclidean, alpha, 1.0};
  if (!in_domain(le, a, b) || !in_domain(MeanSpec{kind, alpha, 1.0}, a, b))
    throw std::domain_error("(A,B) outside the domain of the requested family");
  PsdMatrix target = compute_mean(le, a, b).value;
  LieTrotterReport rep;
  rep.p_values = p_sequence;
  for (double p : p_sequence) {
    MeanSpec spec{kind, alpha, p};
    rep.distances.push_back(opnorm(compute_mean(spec, a, b).value.mat() - target.mat()));
  }
  rep.final_distance = rep.distances.empty() ? 0.0 : rep.distances.back();
  const size_t m = rep.distances.size();
  for (size_t i = (m > 5 ? m - 5 : 1); i < m; ++i)
    if (rep.distances[i] > rep.distances[i - 1] + 1e-12) rep.decreasing_tail = false;
  return rep;
}

}  // namespace matmean

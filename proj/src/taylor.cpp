#include "matmean/taylor.hpp"

#include "matmean/relations.hpp"

#include <cmath>
#include <stdexcept>

namespace matmean {

namespace {

double re_trace(const Matrix& m) { return m.trace().real(); }

}  // namespace

TaylorCoefficients taylor_coefficients(const HermitianMatrix& hh,
                                       const HermitianMatrix& kk, double alpha) {
  if (hh.dim() != kk.dim()) throw std::invalid_argument("dimension mismatch");
  const Matrix& h = hh.mat();
  const Matrix& k = kk.mat();
  const double a = alpha;

  Matrix x1 = h - k;
  Matrix x2 = 0.5 * (x1 * x1);
  Matrix x3 = h * h * h / 6.0 - (h * h * k + k * h * h) / 4.0 +
              (h * k * k + 2.0 * (k * h * k) + k * k * h) / 8.0 - k * k * k / 6.0;
  Matrix x4 = (h * h * h * h) / 24.0 - (h * h * h * k + k * h * h * h) / 12.0 +
              (h * h * k * k + 2.0 * (k * h * h * k) + k * k * h * h) / 16.0 -
              (h * k * k * k + 3.0 * (k * h * k * k) + 3.0 * (k * k * h * k) +
               k * k * k * h) / 48.0 +
              (k * k * k * k) / 24.0;

  Matrix y1 = a * x1;
  Matrix y2 = a * x2 + a * (a - 1.0) / 2.0 * (x1 * x1);
  Matrix y3 = a * x3 + a * (a - 1.0) / 2.0 * (x1 * x2 + x2 * x1) +
              a * (a - 1.0) * (a - 2.0) / 6.0 * (x1 * x1 * x1);
  Matrix y4 = a * x4 + a * (a - 1.0) / 2.0 * (x1 * x3 + x2 * x2 + x3 * x1) +
              a * (a - 1.0) * (a - 2.0) / 6.0 *
                  (x1 * x1 * x2 + x1 * x2 * x1 + x2 * x1 * x1) +
              a * (a - 1.0) * (a - 2.0) * (a - 3.0) / 24.0 * (x1 * x1 * x1 * x1);

  TaylorCoefficients tc{HermitianMatrix(x1), HermitianMatrix(x2), HermitianMatrix(x3),
                        HermitianMatrix(x4), HermitianMatrix(y1), HermitianMatrix(y2),
                        HermitianMatrix(y3), HermitianMatrix(y4)};
  tc.z1 = re_trace(y1 + k);
  tc.z2 = re_trace(y2 + y1 * k + 0.5 * (k * k));
  tc.z3 = re_trace(y3 + y2 * k + 0.5 * (y1 * k * k) + (k * k * k) / 6.0);
  tc.z4 = re_trace(y4 + y3 * k + 0.5 * (y2 * k * k) + (y1 * k * k * k) / 6.0 +
                   (k * k * k * k) / 24.0);
  return tc;
}

double z4_closed_form(const HermitianMatrix& hh, const HermitianMatrix& kk,
                      double alpha) {
  const Matrix& h = hh.mat();
  const Matrix& k = kk.mat();
  const double a = alpha;
  const double c1 = std::pow(a, 4);
  const double c2 = 4.0 * std::pow(a, 3) * (1.0 - a);
  const double c3 = 4.0 * a * (a - 1.0) * (a * a - a + 1.0);
  const double c4 = 2.0 * a * (a - 1.0) * (a * a - a - 2.0);
  const double c5 = 4.0 * a * std::pow(1.0 - a, 3);
  const double c6 = std::pow(1.0 - a, 4);
  return (c1 * re_trace(h * h * h * h) + c2 * re_trace(h * h * h * k) +
          c3 * re_trace(h * h * k * k) + c4 * re_trace(h * k * h * k) +
          c5 * re_trace(h * k * k * k) + c6 * re_trace(k * k * k * k)) /
         24.0;
}

namespace {

// long double spectral helpers for the finite-difference path
using LMatrix = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;

LMatrix to_long(const Matrix& m) {
  LMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out(i, j) = std::complex<long double>(m(i, j).real(), m(i, j).imag());
  return out;
}

LMatrix lexp(const LMatrix& h) {
  Eigen::SelfAdjointEigenSolver<LMatrix> es(h);
  LMatrix d = LMatrix::Zero(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    d(i, i) = std::exp(es.eigenvalues()(i));
  return es.eigenvectors() * d * es.eigenvectors().adjoint();
}

LMatrix lpow(const LMatrix& m, long double r) {
  Eigen::SelfAdjointEigenSolver<LMatrix> es(m);
  LMatrix d = LMatrix::Zero(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    long double v = es.eigenvalues()(i);
    d(i, i) = v > 0 ? std::pow(v, r) : 0.0L;
  }
  return es.eigenvectors() * d * es.eigenvectors().adjoint();
}

long double trace_geo_exp_ld(const LMatrix& h, const LMatrix& k, long double alpha,
                             long double t) {
  LMatrix e = lexp(-t / 2.0L * k) * lexp(t * h) * lexp(-t / 2.0L * k);
  e = 0.5L * (e + e.adjoint().eval());
  return (lpow(e, alpha) * lexp(t * k)).trace().real();
}

}  // namespace

double trace_geometric_exp(const HermitianMatrix& h, const HermitianMatrix& k,
                           double alpha, double t) {
  return static_cast<double>(
      trace_geo_exp_ld(to_long(h.mat()), to_long(k.mat()), alpha, t));
}

std::vector<double> fd_taylor_coefficients(const HermitianMatrix& h,
                                           const HermitianMatrix& k, double alpha,
                                           double step) {
  const LMatrix lh = to_long(h.mat());
  const LMatrix lk = to_long(k.mat());
  auto f = [&](long double t) { return trace_geo_exp_ld(lh, lk, alpha, t); };

  // O(h^4) central 7-point stencils for derivatives 1..4.
  auto derivs = [&](long double hh) {
    std::vector<long double> v(7);
    for (int i = -3; i <= 3; ++i) v[i + 3] = f(i * hh);
    long double d1 = (-v[6] + 9 * v[5] - 45 * v[4] + 45 * v[2] - 9 * v[1] + v[0]) /
                     (60 * hh);
    long double d2 = (2 * v[6] - 27 * v[5] + 270 * v[4] - 490 * v[3] + 270 * v[2] -
                      27 * v[1] + 2 * v[0]) /
                     (180 * hh * hh);
    long double d3 = (v[6] - 8 * v[5] + 13 * v[4] - 13 * v[2] + 8 * v[1] - v[0]) /
                     (8 * hh * hh * hh);
    long double d4 = (-v[6] + 12 * v[5] - 39 * v[4] + 56 * v[3] - 39 * v[2] +
                      12 * v[1] - v[0]) /
                     (6 * hh * hh * hh * hh);
    return std::vector<long double>{d1, d2, d3, d4};
  };
  auto big = derivs(static_cast<long double>(step));
  auto small = derivs(static_cast<long double>(step) / 2.0L);
  std::vector<double> out(4);
  const long double fact[4] = {1.0L, 2.0L, 6.0L, 24.0L};
  for (int i = 0; i < 4; ++i) {
    long double rich = (16.0L * small[i] - big[i]) / 15.0L;  // kills the h^4 term
    out[i] = static_cast<double>(rich / fact[i]);
  }
  return out;
}

double commutation_defect(const HermitianMatrix& h, const HermitianMatrix& k) {
  if (h.dim() != k.dim()) throw std::invalid_argument("dimension mismatch");
  Matrix c = h.mat() * k.mat() - k.mat() * h.mat();
  return c.norm();  // Frobenius
}

double z4_gap(const HermitianMatrix& h, const HermitianMatrix& k, double alpha) {
  TaylorCoefficients tc = taylor_coefficients(h, k, alpha);
  Matrix l = alpha * h.mat() + (1.0 - alpha) * k.mat();
  return tc.z4 - re_trace(l * l * l * l) / 24.0;
}

std::vector<EqualityPairRegion> equality_pair_regions() {
  using K = MeanKind;
  std::vector<EqualityPairRegion> r;
  r.push_back({"4.1", K::Renyi, K::Renyi,
               [](double, double p, double q) { return p != q; }, "(R_p, R_q), p != q"});
  r.push_back({"4.2", K::Geometric, K::Renyi,
               [](double a, double p, double q) {
                 if (a < 1.0) return true;
                 const double lo = std::min(a / 2.0, a - 1.0);
                 const double hi = std::max(a / 2.0, a - 1.0);
                 return p / q < lo || p / q > hi;
               },
               "(G_p, R_q)"});
  r.push_back({"4.3", K::SpectralGeometric, K::Renyi,
               [](double a, double p, double q) {
                 if (a < 1.0)
                   return p / q > std::max(a, 1.0 - a) || p / q < std::min(a, 1.0 - a);
                 return p / q < a;
               },
               "(SG_p, R_q)"});
  r.push_back({"4.4", K::SpectralGeometricTilde, K::Renyi,
               [](double a, double p, double q) {
                 if (a < 1.0) return p / q < a || (a <= 0.5 && q < p);
                 return p / q > a;
               },
               "(SGt_p, R_q)"});
  r.push_back({"4.5", K::LogEuclidean, K::Renyi,
               [](double, double, double) { return true; }, "(LE, R_p)"});
  r.push_back({"4.6", K::Geometric, K::Geometric,
               [](double a, double p, double q) { return a <= 2.0 && p != q; },
               "(G_p, G_q), alpha in (0,2], p != q"});
  r.push_back({"4.7", K::SpectralGeometric, K::Geometric,
               [](double a, double p, double q) {
                 if (a < 1.0) return true;
                 return a <= 2.0 && p / q < std::max(2.0, a / (a - 1.0));
               },
               "(SG_p, G_q)"});
  r.push_back({"4.8", K::SpectralGeometricTilde, K::Geometric,
               [](double a, double p, double q) {
                 if (a <= 0.5) return true;
                 return a > 1.0 && a <= 2.0 && q / p < std::min(0.5, (a - 1.0) / a);
               },
               "(SGt_p, G_q)"});
  r.push_back({"4.9", K::LogEuclidean, K::Geometric,
               [](double a, double, double) { return a <= 2.0; },
               "(LE, G_p), alpha in (0,2]"});
  return r;
}

NormEqualityProbe norm_equality_probe(const MeanSpec& lhs, const MeanSpec& rhs,
                                      const PsdMatrix& a, const PsdMatrix& b, double s) {
  if (s < 1.0 || std::isinf(s))
    throw std::invalid_argument("equality probe needs a strictly increasing norm: s in [1, inf)");
  if (std::abs(lhs.alpha - rhs.alpha) > 1e-12)
    throw std::invalid_argument("pair must share alpha");
  bool matched = false;
  std::string nearest;
  for (const auto& reg : equality_pair_regions()) {
    if (reg.lhs == lhs.kind && reg.rhs == rhs.kind) {
      nearest = reg.id;
      if (reg.predicate(lhs.alpha, lhs.p, rhs.p)) {
        matched = true;
        break;
      }
    }
  }
  if (!matched)
    throw std::domain_error("parameters outside all Thm 4.1 regions; nearest region " +
                            (nearest.empty() ? std::string("none (pair not listed)")
                                             : nearest));
  MeanResult ml = compute_mean(lhs, a, b);
  MeanResult mr = compute_mean(rhs, a, b);
  NormEqualityProbe probe;
  // Orient the gap along the region's log-majorization direction (some
  // regions, e.g. 4.2 with p/q above the band, run rhs prec lhs).
  const double nl = schatten_norm(ml.value, s);
  const double nr = schatten_norm(mr.value, s);
  auto fwd = theory_verdict(lhs.kind, rhs.kind, lhs.alpha, lhs.p, rhs.p);
  auto rev = theory_verdict(rhs.kind, lhs.kind, lhs.alpha, rhs.p, lhs.p);
  if (fwd.value_or(false))
    probe.gap = nr - nl;
  else if (rev.value_or(false))
    probe.gap = nl - nr;
  else
    probe.gap = nr - nl;
  Matrix c = a.mat() * b.mat() - b.mat() * a.mat();
  probe.commutator_norm = c.norm();
  return probe;
}

}  // namespace matmean

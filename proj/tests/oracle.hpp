#pragma once

// Test-only high-precision oracle: a hand-rolled cyclic Jacobi eigensolver
// for complex Hermitian matrices in long double, plus spectral calculus and
// the five geometric-type means built on it. Deliberately independent of the
// Eigen-based implementation it cross-checks.

#include "matmean/matrix.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using LD = long double;
using CLD = std::complex<LD>;

struct Mat {
  int n = 0;
  std::vector<CLD> d;  // row-major
  Mat() = default;
  explicit Mat(int n_) : n(n_), d(static_cast<size_t>(n_) * n_, CLD(0, 0)) {}
  CLD& at(int i, int j) { return d[static_cast<size_t>(i) * n + j]; }
  const CLD& at(int i, int j) const { return d[static_cast<size_t>(i) * n + j]; }
  static Mat eye(int n_) {
    Mat m(n_);
    for (int i = 0; i < n_; ++i) m.at(i, i) = 1;
    return m;
  }
};

inline Mat from_eigen(const matmean::Matrix& x) {
  Mat m(static_cast<int>(x.rows()));
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) m.at(i, j) = CLD(x(i, j).real(), x(i, j).imag());
  return m;
}

inline matmean::Matrix to_eigen(const Mat& m) {
  matmean::Matrix x(m.n, m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      x(i, j) = std::complex<double>(static_cast<double>(m.at(i, j).real()),
                                     static_cast<double>(m.at(i, j).imag()));
  return x;
}

inline Mat mul(const Mat& a, const Mat& b) {
  Mat c(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int k = 0; k < a.n; ++k) {
      const CLD aik = a.at(i, k);
      if (aik == CLD(0, 0)) continue;
      for (int j = 0; j < a.n; ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

inline Mat adj(const Mat& a) {
  Mat c(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) c.at(i, j) = std::conj(a.at(j, i));
  return c;
}

inline Mat add(const Mat& a, const Mat& b, CLD ca = 1, CLD cb = 1) {
  Mat c(a.n);
  for (size_t i = 0; i < a.d.size(); ++i) c.d[i] = ca * a.d[i] + cb * b.d[i];
  return c;
}

// Cyclic Jacobi for Hermitian matrices: unitary 2x2 rotations annihilating
// off-diagonal entries until convergence.
inline void eig_hermitian(const Mat& input, std::vector<LD>& evals, Mat& evecs) {
  const int n = input.n;
  Mat a = input;
  evecs = Mat::eye(n);
  for (int sweep = 0; sweep < 80; ++sweep) {
    LD off = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += std::norm(a.at(p, q));
    LD diagsc = 0;
    for (int p = 0; p < n; ++p) diagsc += std::norm(a.at(p, p));
    if (off <= 1e-60L * (diagsc + off + 1e-300L)) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const CLD apq = a.at(p, q);
        if (std::abs(apq) == 0.0L) continue;
        const LD app = a.at(p, p).real();
        const LD aqq = a.at(q, q).real();
        // phase so the pivot becomes real, then a real Jacobi rotation
        const LD absq = std::abs(apq);
        const CLD phase = apq / absq;
        const LD tau = (aqq - app) / (2 * absq);
        const LD t = (tau >= 0 ? 1.0L : -1.0L) /
                     (std::abs(tau) + std::sqrt(1 + tau * tau));
        const LD c = 1 / std::sqrt(1 + t * t);
        const LD s = t * c;
        const CLD sp = s * phase;
        // columns: [p q] <- [p q] * [[c, sp*], [-sp, c]] style update
        for (int i = 0; i < n; ++i) {
          const CLD aip = a.at(i, p), aiq = a.at(i, q);
          a.at(i, p) = c * aip - std::conj(sp) * aiq;
          a.at(i, q) = sp * aip + c * aiq;
        }
        for (int j = 0; j < n; ++j) {
          const CLD apj = a.at(p, j), aqj = a.at(q, j);
          a.at(p, j) = c * apj - sp * aqj;
          a.at(q, j) = std::conj(sp) * apj + c * aqj;
        }
        for (int i = 0; i < n; ++i) {
          const CLD vip = evecs.at(i, p), viq = evecs.at(i, q);
          evecs.at(i, p) = c * vip - std::conj(sp) * viq;
          evecs.at(i, q) = sp * vip + c * viq;
        }
      }
    }
  }
  evals.resize(n);
  for (int i = 0; i < n; ++i) evals[i] = a.at(i, i).real();
  // sort descending, permuting eigenvector columns alongside
  for (int i = 0; i < n; ++i) {
    int best = i;
    for (int j = i + 1; j < n; ++j)
      if (evals[j] > evals[best]) best = j;
    if (best != i) {
      std::swap(evals[i], evals[best]);
      for (int r = 0; r < n; ++r) std::swap(evecs.at(r, i), evecs.at(r, best));
    }
  }
}

inline Mat spectral_fn(const Mat& a, LD (*f)(LD), LD rel_cut = 1e-15L) {
  std::vector<LD> w;
  Mat u;
  eig_hermitian(a, w, u);
  const LD lmax = w.empty() ? 0 : std::max(w[0], (LD)0);
  Mat d(a.n);
  for (int i = 0; i < a.n; ++i)
    d.at(i, i) = (lmax > 0 && w[i] > rel_cut * lmax) ? f(w[i]) : 0;
  return mul(mul(u, d), adj(u));
}

inline Mat mpow(const Mat& a, LD r, LD rel_cut = 1e-15L) {
  std::vector<LD> w;
  Mat u;
  eig_hermitian(a, w, u);
  const LD lmax = w.empty() ? 0 : std::max(w[0], (LD)0);
  Mat d(a.n);
  for (int i = 0; i < a.n; ++i)
    d.at(i, i) = (lmax > 0 && w[i] > rel_cut * lmax) ? std::pow(w[i], r) : 0;
  return mul(mul(u, d), adj(u));
}

inline Mat mlog(const Mat& a) {
  return spectral_fn(a, +[](LD x) { return std::log(x); });
}

inline Mat mexp(const Mat& a) {
  std::vector<LD> w;
  Mat u;
  eig_hermitian(a, w, u);
  Mat d(a.n);
  for (int i = 0; i < a.n; ++i) d.at(i, i) = std::exp(w[i]);
  return mul(mul(u, d), adj(u));
}

inline Mat sharp(const Mat& a, const Mat& b, LD alpha) {
  Mat am = mpow(a, -0.5L), ap = mpow(a, 0.5L);
  return mul(mul(ap, mpow(mul(mul(am, b), am), alpha)), ap);
}

inline Mat mean_renyi(const Mat& a, const Mat& b, LD alpha, LD p) {
  Mat x = mpow(a, (1 - alpha) * p / 2);
  return mpow(mul(mul(x, mpow(b, alpha * p)), x), 1 / p);
}

inline Mat mean_geometric(const Mat& a, const Mat& b, LD alpha, LD p) {
  return mpow(sharp(mpow(a, p), mpow(b, p), alpha), 1 / p);
}

inline Mat mean_sg(const Mat& a, const Mat& b, LD alpha, LD p) {
  Mat ap = mpow(a, p), bp = mpow(b, p);
  Mat t = mpow(sharp(mpow(ap, -1), bp, 0.5L), alpha);
  return mpow(mul(mul(t, ap), t), 1 / p);
}

inline Mat mean_sgt(const Mat& a, const Mat& b, LD alpha, LD p) {
  Mat ap = mpow(a, p), bp = mpow(b, p);
  Mat w = mpow(sharp(mpow(ap, -1), bp, alpha), 0.5L);
  return mpow(mul(mul(w, mpow(ap, 2 * (1 - alpha))), w), 1 / p);
}

inline Mat mean_le(const Mat& a, const Mat& b, LD alpha) {
  return mexp(add(mlog(a), mlog(b), 1 - alpha, alpha));
}

inline std::vector<LD> eigenvalues_desc(const Mat& a) {
  std::vector<LD> w;
  Mat u;
  eig_hermitian(a, w, u);
  return w;
}

}  // namespace oracle

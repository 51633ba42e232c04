#pragma once

// Eigenvalue-order predicates (weak log-majorization, log-majorization,
// entrywise eigenvalue order) with per-k diagnostics, and Schatten norms.

#include "matmean/matrix.hpp"

#include <limits>
#include <vector>

namespace matmean {

enum class OrderRelation { WeakLog, Log, EigenOrder };

inline constexpr double kMajTol = 1e-9;   // absolute, on log-products
inline constexpr double kDetTol = 1e-8;   // absolute, on log-dets
inline constexpr double kBoundaryBand = 1e-9;

enum class Ternary { Holds, Boundary, Fails };

struct MajorizationVerdict {
  OrderRelation relation;
  // Partial log-products (sum of log of the top-k eigenvalues); -inf marks a
  // zero product. For EigenOrder these hold per-index log eigenvalues.
  std::vector<double> lhs_per_k;
  std::vector<double> rhs_per_k;
  double lhs_log_det = 0.0;  // on support
  double rhs_log_det = 0.0;
  int lhs_rank = 0;
  int rhs_rank = 0;
  bool holds = false;
  Ternary outcome = Ternary::Fails;
  // Smallest signed log-gap over k (rhs - lhs); +inf when every k is a
  // zero-product tie.
  double margin = 0.0;
};

MajorizationVerdict weak_log_majorize(const PsdMatrix& x, const PsdMatrix& y,
                                      double maj_tol = kMajTol);

MajorizationVerdict log_majorize(const PsdMatrix& x, const PsdMatrix& y,
                                 double maj_tol = kMajTol, double det_tol = kDetTol);

MajorizationVerdict eigen_order_le(const PsdMatrix& x, const PsdMatrix& y,
                                   double tol = kMajTol);

// (sum lambda_i^s)^{1/s} for PSD input; s = infinity gives lambda_1.
double schatten_norm(const PsdMatrix& x, double s);
double trace_norm(const PsdMatrix& x);
double operator_norm(const PsdMatrix& x);

}  // namespace matmean

#include "matmean/majorization.hpp"

#include <cmath>

namespace matmean {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Cumulative log-products of the descending eigenvalues; -inf once past the
// rank (a zero factor makes every later product zero).
std::vector<double> log_partial_products(const PsdMatrix& x) {
  const auto& ev = x.eigenvalues();
  const int n = static_cast<int>(ev.size());
  const int r = x.rank();
  std::vector<double> out(n, kNegInf);
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    if (k < r) {
      acc += std::log(ev(k));
      out[k] = acc;
    }
  }
  return out;
}

MajorizationVerdict compare_partial(const PsdMatrix& x, const PsdMatrix& y,
                                    OrderRelation rel, double tol) {
  if (x.dim() != y.dim()) throw std::invalid_argument("dimension mismatch");
  MajorizationVerdict v;
  v.relation = rel;
  v.lhs_per_k = log_partial_products(x);
  v.rhs_per_k = log_partial_products(y);
  v.lhs_rank = x.rank();
  v.rhs_rank = y.rank();
  v.lhs_log_det = log_det_support(x);
  v.rhs_log_det = log_det_support(y);
  double margin = std::numeric_limits<double>::infinity();
  bool ok = true;
  for (size_t k = 0; k < v.lhs_per_k.size(); ++k) {
    const double lx = v.lhs_per_k[k];
    const double ly = v.rhs_per_k[k];
    if (lx == kNegInf) continue;  // zero product on the left passes any k
    if (ly == kNegInf) {          // positive vs zero: fails outright
      ok = false;
      margin = kNegInf;
      continue;
    }
    const double gap = ly - lx;
    margin = std::min(margin, gap);
    if (gap < -tol) ok = false;
  }
  v.margin = margin;
  v.holds = ok;
  return v;
}

Ternary classify(bool holds, double margin, double band) {
  if (!holds) return Ternary::Fails;
  return std::abs(margin) <= band ? Ternary::Boundary : Ternary::Holds;
}

}  // namespace

MajorizationVerdict weak_log_majorize(const PsdMatrix& x, const PsdMatrix& y,
                                      double maj_tol) {
  MajorizationVerdict v = compare_partial(x, y, OrderRelation::WeakLog, maj_tol);
  v.outcome = classify(v.holds, v.margin, kBoundaryBand);
  return v;
}

MajorizationVerdict log_majorize(const PsdMatrix& x, const PsdMatrix& y,
                                 double maj_tol, double det_tol) {
  MajorizationVerdict v = compare_partial(x, y, OrderRelation::Log, maj_tol);
  const int n = x.dim();
  const bool x_singular = v.lhs_rank < n;
  const bool y_singular = v.rhs_rank < n;
  if (x_singular || y_singular) {
    // det X = det Y = 0 counts as equality; one-sided zero fails.
    if (x_singular != y_singular) v.holds = false;
  } else if (std::abs(v.lhs_log_det - v.rhs_log_det) > det_tol) {
    v.holds = false;
  }
  v.outcome = classify(v.holds, v.margin, kBoundaryBand);
  return v;
}

MajorizationVerdict eigen_order_le(const PsdMatrix& x, const PsdMatrix& y, double tol) {
  if (x.dim() != y.dim()) throw std::invalid_argument("dimension mismatch");
  MajorizationVerdict v;
  v.relation = OrderRelation::EigenOrder;
  v.lhs_rank = x.rank();
  v.rhs_rank = y.rank();
  v.lhs_log_det = log_det_support(x);
  v.rhs_log_det = log_det_support(y);
  const auto& ex = x.eigenvalues();
  const auto& ey = y.eigenvalues();
  bool ok = true;
  double margin = std::numeric_limits<double>::infinity();
  const double scale = std::max({ex.size() ? ex(0) : 0.0, ey.size() ? ey(0) : 0.0, 1e-300});
  for (int i = 0; i < ex.size(); ++i) {
    v.lhs_per_k.push_back(ex(i) > 0 ? std::log(ex(i)) : kNegInf);
    v.rhs_per_k.push_back(ey(i) > 0 ? std::log(ey(i)) : kNegInf);
    const double gap = (ey(i) - ex(i)) / scale;
    margin = std::min(margin, gap);
    if (ex(i) > ey(i) + tol * scale) ok = false;
  }
  v.margin = margin;
  v.holds = ok;
  v.outcome = classify(ok, margin, kBoundaryBand);
  return v;
}

double schatten_norm(const PsdMatrix& x, double s) {
  if (std::isinf(s)) return x.eigenvalues().size() ? x.eigenvalues()(0) : 0.0;
  if (s < 1.0) throw std::invalid_argument("Schatten norm needs s >= 1");
  double acc = 0.0;
  for (int i = 0; i < x.eigenvalues().size(); ++i)
    acc += std::pow(x.eigenvalues()(i), s);
  return std::pow(acc, 1.0 / s);
}

double trace_norm(const PsdMatrix& x) { return schatten_norm(x, 1.0); }

double operator_norm(const PsdMatrix& x) {
  return schatten_norm(x, std::numeric_limits<double>::infinity());
}

}  // namespace matmean

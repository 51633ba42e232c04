#include "matmean/second_order.hpp"

#include <cmath>
#include <stdexcept>

namespace matmean {

PsdMatrix a0_matrix(const ABThetaPoint& pt) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = pt.x;
  return PsdMatrix::from_matrix(std::move(m));
}

PsdMatrix b_theta_matrix(const ABThetaPoint& pt) {
  const double c = std::cos(pt.theta), s = std::sin(pt.theta);
  Matrix rot(2, 2);
  rot << c, -s, s, c;
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = pt.y;
  Matrix m = rot * d * rot.adjoint();
  return PsdMatrix::from_matrix(std::move(m));
}

double second_order_coefficient(MeanKind kind, double alpha, double p, double x) {
  if (x <= 0.0 || x >= 1.0) throw std::invalid_argument("x must lie in (0,1)");
  if (std::abs(alpha - 1.0) < 1e-12) throw std::invalid_argument("alpha = 1 excluded");
  const double xp = std::pow(x, p);
  switch (kind) {
    case MeanKind::Renyi:
      return (-1.0 - xp + std::pow(x, alpha * p) + std::pow(x, (1.0 - alpha) * p)) /
             (p * (1.0 - xp));
    case MeanKind::Geometric:
      return alpha * (1.0 - alpha) / (2.0 * p) * (xp - std::pow(x, -p));
    case MeanKind::SpectralGeometric:
      return -2.0 * alpha * (1.0 - alpha) / p * (1.0 - xp) / (1.0 + xp);
    case MeanKind::SpectralGeometricTilde: {
      const double x2p = std::pow(x, 2.0 * p);
      const double num = xp + x2p - std::pow(x, (2.0 * alpha + 1.0) * p) -
                         std::pow(x, 2.0 * (1.0 - alpha) * p);
      return -(1.0 / p) * (alpha * (1.0 - xp) / (1.0 + xp) +
                           num / ((1.0 - xp) * (1.0 + xp) * (1.0 + xp)));
    }
    case MeanKind::LogEuclidean:
      return alpha * (1.0 - alpha) * std::log(x);
    default:
      throw std::invalid_argument("no second-order coefficient for this kind");
  }
}

namespace {

double lambda1_shift_over_theta2(MeanKind kind, double alpha, double p, double x,
                                 double theta) {
  ABThetaPoint pt{x, x, theta};
  MeanSpec spec{kind, alpha, p};
  PsdMatrix m = compute_mean(spec, a0_matrix(pt), b_theta_matrix(pt)).value;
  const double lam1 = m.eigenvalues()(0);
  return (lam1 - 1.0) / (theta * theta);
}

}  // namespace

double numeric_second_order(MeanKind kind, double alpha, double p, double x,
                            double theta) {
  if (theta == 0.0) throw std::invalid_argument("theta must be nonzero");
  if (x <= 0.0 || x >= 1.0) throw std::invalid_argument("x must lie in (0,1)");
  const double c1 = lambda1_shift_over_theta2(kind, alpha, p, x, theta);
  const double c2 = lambda1_shift_over_theta2(kind, alpha, p, x, theta / 2.0);
  // lambda_1 is even in theta, so the error is c + d theta^2 + O(theta^4).
  return (4.0 * c2 - c1) / 3.0;
}

}  // namespace matmean

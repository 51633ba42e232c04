#pragma once

// The structured 2x2 family A0 = diag(1,x), B_theta = R(theta) diag(1,y)
// R(-theta), and the closed-form second-order coefficients of lambda_1 of each
// quasi-geometric mean along it (y = x), with a Richardson-extrapolated
// numerical counterpart.

#include "matmean/means.hpp"

namespace matmean {

struct ABThetaPoint {
  double x = 0.5;
  double y = 0.5;
  double theta = 1e-3;
};

PsdMatrix a0_matrix(const ABThetaPoint& pt);
PsdMatrix b_theta_matrix(const ABThetaPoint& pt);

// Closed-form c(kind, alpha, p, x) with lambda_1(M(A0, B_theta)) =
// 1 + c theta^2 + o(theta^2) along y = x in (0,1). LE ignores p.
double second_order_coefficient(MeanKind kind, double alpha, double p, double x);

// Richardson estimate from (lambda_1(theta) - 1)/theta^2 at theta and theta/2.
double numeric_second_order(MeanKind kind, double alpha, double p, double x,
                            double theta = 1e-3);

}  // namespace matmean

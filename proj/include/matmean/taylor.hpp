#pragma once

// Fourth-order Taylor machinery for t -> Tr G_alpha(e^{tH}, e^{tK}) (the
// appendix quantity Tr (e^{-tK/2} e^{tH} e^{-tK/2})^alpha e^{tK}, weight alpha
// on H), the commutation gap it certifies, and the norm-equality probes that
// pair each log-majorization with a commutativity test.

#include "matmean/majorization.hpp"
#include "matmean/means.hpp"

#include <functional>
#include <string>
#include <vector>

namespace matmean {

struct TaylorCoefficients {
  HermitianMatrix x1, x2, x3, x4;  // expansion of e^{-tK/2} e^{tH} e^{-tK/2}
  HermitianMatrix y1, y2, y3, y4;  // expansion of its alpha-th power
  double z1 = 0, z2 = 0, z3 = 0, z4 = 0;
};

TaylorCoefficients taylor_coefficients(const HermitianMatrix& h,
                                       const HermitianMatrix& k, double alpha);

// The closed form of z4 (quartic trace polynomial in H, K).
double z4_closed_form(const HermitianMatrix& h, const HermitianMatrix& k, double alpha);

// Tr (e^{-tK/2} e^{tH} e^{-tK/2})^alpha e^{tK}; equals Tr e^{t(aH+(1-a)K)}
// exactly when H and K commute.
double trace_geometric_exp(const HermitianMatrix& h, const HermitianMatrix& k,
                           double alpha, double t);

// High-order finite-difference estimates of the first four Taylor
// coefficients of trace_geometric_exp at t = 0 (long double evaluation,
// 7-point stencils with one Richardson step).
std::vector<double> fd_taylor_coefficients(const HermitianMatrix& h,
                                           const HermitianMatrix& k, double alpha,
                                           double step = 0.08);

double commutation_defect(const HermitianMatrix& h, const HermitianMatrix& k);

// z4 - (1/24) Tr(aH + (1-a)K)^4; equals (a(a-1)/12) ||[H,K]||_F^2.
double z4_gap(const HermitianMatrix& h, const HermitianMatrix& k, double alpha);

// One Theorem 4.1 pair region (4.1)-(4.9): lhs/rhs families and the parameter
// predicate under which ||M|| = ||N|| forces AB = BA.
struct EqualityPairRegion {
  std::string id;
  MeanKind lhs;
  MeanKind rhs;
  std::function<bool(double alpha, double p, double q)> predicate;
  std::string note;
};

std::vector<EqualityPairRegion> equality_pair_regions();

struct NormEqualityProbe {
  double gap = 0.0;              // ||N|| - ||M||, nonnegative inside the region
  double commutator_norm = 0.0;  // ||AB - BA||_F
};

// Evaluates the probe for a Thm 4.1 pair at Schatten index s in [1, inf);
// throws (naming the nearest region) when (lhs,rhs,alpha,p,q) matches none.
NormEqualityProbe norm_equality_probe(const MeanSpec& lhs, const MeanSpec& rhs,
                                      const PsdMatrix& a, const PsdMatrix& b, double s);

}  // namespace matmean

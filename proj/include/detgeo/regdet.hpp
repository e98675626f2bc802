#pragma once

#include "detgeo/stiefel.hpp"

namespace detgeo {

/// Value of a degree-n regularized determinant.
struct RegDet {
  Cplx value;
  int order;
};

/// Regularizing remainder R_n(A) = (1 + A) exp(sum_{j=1}^{n-1} (-1)^j A^j / j) - 1.
/// For n = 1 the sum is empty and R_1(A) = A exactly.
CMat det_remainder(const CMat& a, int n);

/// det_n(1 + A) = det(1 + R_n(A)). For n = 1 this is det(1 + A) on the nose;
/// for n = 2 it matches det(1 + A) exp(-tr A) at finite dimension.
RegDet det_reg(const CMat& a, int n);

/// Convenience: det_2(1 + A).
Cplx det2(const CMat& a);

/// det_2 via its power series, exp(tr sum_{i>=2} (-1)^(i-1) A^i / i).
/// Converges for operator norm below 1; used as an independent cross-check.
Cplx det2_series(const CMat& a);

/// |det_2((1+A)(1+B)) - det_2(1+A) det_2(1+B) exp(-tr(AB))|, the defect of
/// plain multiplicativity that the exponential factor repairs.
double anomaly_residual(const CMat& a, const CMat& b);

/// Twist of the determinant bundle action:
/// omega(w_+, g) = det_2(g) exp(-tr((w_+ - 1)(g - 1))).
/// Throws SingularityError when g is singular (det_2(g) = 0).
Cplx det2_twist(const CMat& w_plus, const GaugeElement& g);

/// Transition value between two frames of the same plane,
/// f(w1, w2) = omega((w1)_+, g)^{-1} with w2 = w1 g. Satisfies the cocycle
/// rule f(w2, w3) f(w1, w3)^{-1} f(w1, w2) = 1 on same-fiber triples.
Cplx fiber_cocycle(const Frame& w1, const Frame& w2);

/// Equivariance twist of the lifted left action. g is an ambient operator
/// with blocks (a, b; c, d), q an invertible n_plus x n_plus parallelizer:
/// alpha = exp(-tr((1 - q^{-1} a)(w_+ - 1) + q^{-1} b ((1/2) F_21 - w_-))).
Cplx alpha_twist(const CMat& g, const CMat& q, const Frame& w);

}  // namespace detgeo

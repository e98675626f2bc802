#include "detgeo/regdet.hpp"

#include "detgeo/grassmann.hpp"

#include <cmath>
#include <sstream>

namespace detgeo {

namespace {

void require_square(const CMat& a, const char* who) {
  if (a.rows() != a.cols()) {
    std::ostringstream os;
    os << who << ": square matrix required, got " << a.rows() << "x" << a.cols();
    throw ShapeError(os.str());
  }
}

}  // namespace

CMat det_remainder(const CMat& a, int n) {
  require_square(a, "det_remainder");
  if (n < 1) {
    throw InvalidInputError("det_remainder: order must be >= 1");
  }
  if (n == 1) return a;
  const Index m = a.rows();
  const CMat eye = CMat::Identity(m, m);
  CMat sum = CMat::Zero(m, m);
  CMat power = eye;
  double sign = -1.0;
  for (int j = 1; j <= n - 1; ++j) {
    power = power * a;
    sum += (sign / j) * power;
    sign = -sign;
  }
  return (eye + a) * matrix_exp(sum) - eye;
}

RegDet det_reg(const CMat& a, int n) {
  CMat r = det_remainder(a, n);
  const CMat eye = CMat::Identity(a.rows(), a.cols());
  return RegDet{determinant(CMat(eye + r)), n};
}

Cplx det2(const CMat& a) {
  return det_reg(a, 2).value;
}

Cplx det2_series(const CMat& a) {
  require_square(a, "det2_series");
  double nrm = operator_norm(a);
  if (nrm >= 0.9) {
    std::ostringstream os;
    os << "det2_series: series needs operator norm well below 1, got " << nrm;
    throw InvalidInputError(os.str());
  }
  Cplx log_sum = 0.0;
  CMat power = a * a;
  double sign = -1.0;  // (-1)^(i-1) at i = 2
  for (int i = 2; i <= 512; ++i) {
    Cplx term = sign * power.trace() / static_cast<double>(i);
    log_sum += term;
    if (power.norm() / (i + 1.0) < 1e-18) break;
    power = power * a;
    sign = -sign;
  }
  return std::exp(log_sum);
}

double anomaly_residual(const CMat& a, const CMat& b) {
  require_square(a, "anomaly_residual");
  require_square(b, "anomaly_residual");
  if (a.rows() != b.rows()) {
    throw ShapeError("anomaly_residual: operands must have equal size");
  }
  CMat prod = a + b + a * b;  // (1+A)(1+B) - 1
  Cplx lhs = det2(prod);
  Cplx rhs = det2(a) * det2(b) * std::exp(-(a * b).trace());
  return std::abs(lhs - rhs);
}

Cplx det2_twist(const CMat& w_plus, const GaugeElement& g) {
  require_square(w_plus, "det2_twist");
  require_square(g, "det2_twist");
  if (w_plus.rows() != g.rows()) {
    throw ShapeError("det2_twist: w_plus and g must have equal size");
  }
  const CMat eye = CMat::Identity(g.rows(), g.cols());
  Cplx d2 = det2(CMat(g - eye));
  if (d2 == Cplx(0.0, 0.0)) {
    throw SingularityError("det2_twist: singular gauge element, det_2(g) = 0", 0.0);
  }
  return d2 * std::exp(-((w_plus - eye) * (g - eye)).trace());
}

Cplx fiber_cocycle(const Frame& w1, const Frame& w2) {
  GaugeElement g = gauge_between(w1, w2);
  Cplx omega = det2_twist(top_block(w1.w, w1.pol), g);
  return 1.0 / omega;
}

Cplx alpha_twist(const CMat& g, const CMat& q, const Frame& w) {
  require_frame_shape(w);
  if (g.rows() != w.pol.dim() || g.cols() != w.pol.dim()) {
    throw ShapeError("alpha_twist: g must be an ambient operator");
  }
  if (q.rows() != w.pol.n_plus || q.cols() != w.pol.n_plus) {
    throw ShapeError("alpha_twist: q must act on the positive mode space");
  }
  Blocks gb = split_blocks(g, w.pol);
  CMat qinv = pseudo_inverse(q);
  const CMat eye_p = CMat::Identity(w.pol.n_plus, w.pol.n_plus);
  CMat wp = top_block(w.w, w.pol);
  CMat wm = bottom_block(w.w, w.pol);
  CMat f21 = bottom_block(involution_from_frame(w).F, w.pol).leftCols(w.pol.n_plus);
  Cplx t = ((eye_p - qinv * gb.a) * (wp - eye_p)).trace() +
           (qinv * gb.b * (0.5 * f21 - wm)).trace();
  return std::exp(-t);
}

}  // namespace detgeo

#include <doctest.h>

#include <cmath>

#include "detgeo/regdet.hpp"
#include "detgeo/stiefel.hpp"

using namespace detgeo;

namespace {

CMat diag2(Cplx a, Cplx b) {
  CMat m = CMat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

Frame halfturn_frame() {
  // spans the +1 eigenspace of [[0,1],[1,0]]
  CMat w(2, 1);
  w << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return Frame{w, Polarization{1, 1}};
}

}  // namespace

TEST_CASE("first-order remainder is the operator itself") {
  Rng rng(3);
  CMat a = random_matrix(4, 4, rng);
  CHECK((det_remainder(a, 1) - a).norm() == 0.0);
  CHECK_THROWS_AS(det_remainder(a, 0), InvalidInputError);
}

TEST_CASE("det_reg order 1 is the ordinary determinant of 1 + A") {
  Rng rng(5);
  CMat a = random_matrix(4, 4, rng, 0.4);
  RegDet d = det_reg(a, 1);
  CHECK(d.order == 1);
  CHECK(std::abs(d.value - determinant(CMat(CMat::Identity(4, 4) + a))) < 1e-12);
}

TEST_CASE("det2 closed forms") {
  // diagonal: det2 = prod (1 + a_i) e^{-a_i}
  CMat d = diag2(0.1, -0.2);
  Cplx expected = 1.1 * 0.8 * std::exp(0.1);
  CHECK(std::abs(det2(d) - expected) < 1e-14);

  // traceless nilpotent: det(1 + N) = 1 and tr N = 0
  CMat n = CMat::Zero(2, 2);
  n(0, 1) = 3.7;
  CHECK(std::abs(det2(n) - 1.0) < 1e-13);

  // skew rotation generator: det(1 + A) = 1 + b^2, trace zero
  CMat r = CMat::Zero(2, 2);
  r(0, 1) = 0.4;
  r(1, 0) = -0.4;
  CHECK(std::abs(det2(r) - 1.16) < 1e-13);
}

TEST_CASE("det3 on a diagonal matrix") {
  CMat d = diag2(0.3, -0.1);
  Cplx expected = (1.3 * std::exp(-0.3 + 0.045)) * (0.9 * std::exp(0.1 + 0.005));
  CHECK(std::abs(det_reg(d, 3).value - expected) < 1e-13);
}

TEST_CASE("det2 agrees with its trace series inside the radius") {
  Rng rng(7);
  for (int rep = 0; rep < 10; ++rep) {
    CMat a = random_matrix(5, 5, rng);
    a *= 0.45 / operator_norm(a);
    CHECK(std::abs(det2(a) - det2_series(a)) < 1e-12);
  }
}

TEST_CASE("det2_series refuses norms at the radius") {
  CMat a = diag2(0.95, 0.0);
  CHECK_THROWS_AS(det2_series(a), InvalidInputError);
}

TEST_CASE("multiplicative anomaly carries exp(-tr(AB))") {
  Rng rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    CMat a = random_matrix(4, 4, rng);
    CMat b = random_matrix(4, 4, rng);
    a *= 0.4 / operator_norm(a);
    b *= 0.4 / operator_norm(b);
    CHECK(anomaly_residual(a, b) < 1e-12);
  }
}

TEST_CASE("twist reduces to det2 at the standard frame") {
  Rng rng(13);
  GaugeElement g = random_gauge(3, rng, 0.4);
  const CMat eye = CMat::Identity(3, 3);
  Cplx expected = det2(CMat(g - eye));
  CHECK(std::abs(det2_twist(eye, g) - expected) < 1e-13);
}

TEST_CASE("scalar twist hand value") {
  double a = 0.3, b = 0.25;
  CMat wp = CMat::Constant(1, 1, 1.0 + a);
  CMat g = CMat::Constant(1, 1, 1.0 + b);
  Cplx expected = (1.0 + b) * std::exp(-b) * std::exp(-a * b);
  CHECK(std::abs(det2_twist(wp, g) - expected) < 1e-15);
}

TEST_CASE("twist rejects a gauge with vanishing regularized determinant") {
  CMat wp = CMat::Identity(1, 1);
  CMat g = CMat::Zero(1, 1);  // det2(g) = 0 exactly
  CHECK_THROWS_AS(det2_twist(wp, g), SingularityError);
}

TEST_CASE("twist composes along successive gauges") {
  Rng rng(17);
  Frame w = random_frame(Polarization{3, 3}, rng);
  GaugeElement g = random_gauge(3, rng, 0.3);
  GaugeElement h = random_gauge(3, rng, 0.3);
  CMat wp = top_block(w.w, w.pol);
  CMat wgp = top_block(CMat(w.w * g), w.pol);
  Cplx combined = det2_twist(wp, g * h);
  Cplx split = det2_twist(wp, g) * det2_twist(wgp, h);
  CHECK(std::abs(combined - split) < 1e-12 * std::abs(combined));
}

TEST_CASE("fiber cocycle normalization and triple product") {
  Rng rng(19);
  Frame w = random_frame(Polarization{3, 3}, rng);
  CHECK(std::abs(fiber_cocycle(w, w) - 1.0) < 1e-13);

  Frame w2{w.w * random_gauge(3, rng, 0.3), w.pol};
  Frame w3{w.w * random_gauge(3, rng, 0.3), w.pol};
  Cplx f12 = fiber_cocycle(w, w2);
  Cplx f23 = fiber_cocycle(w2, w3);
  Cplx f13 = fiber_cocycle(w, w3);
  CHECK(std::abs(f12 * f23 - f13) < 1e-12 * std::abs(f13));
  CHECK(std::abs(fiber_cocycle(w2, w) * f12 - 1.0) < 1e-12);
}

TEST_CASE("fiber cocycle requires a shared plane") {
  Rng rng(23);
  Frame w1 = random_frame(Polarization{2, 2}, rng);
  Frame w2 = random_frame(Polarization{2, 2}, rng);
  CHECK_THROWS_AS(fiber_cocycle(w1, w2), NotSameFiberError);
}

TEST_CASE("alpha twist is trivial for the identity group element") {
  Rng rng(29);
  Frame w = random_frame(Polarization{2, 2}, rng);
  CMat g = CMat::Identity(4, 4);
  CMat q = CMat::Identity(2, 2);
  CHECK(std::abs(alpha_twist(g, q, w) - 1.0) < 1e-14);
}

TEST_CASE("alpha twist hand value on the half-turn frame") {
  Frame w = halfturn_frame();
  // F = [[0,1],[1,0]], so F21 = 1, w+ = w- = 1/sqrt(2)
  CMat g(2, 2);
  g << 2.0, 1.0, 0.5, 1.5;
  CMat q = CMat::Constant(1, 1, 3.0);
  double s = 1.0 / std::sqrt(2.0);
  Cplx exponent = (1.0 - 2.0 / 3.0) * (s - 1.0) + (1.0 / 3.0) * (0.5 - s);
  CHECK(std::abs(alpha_twist(g, q, w) - std::exp(-exponent)) < 1e-14);
}

TEST_CASE("alpha twist is insensitive to anything at the standard frame") {
  // w+ = 1 and F21 = 0, w- = 0 kill both trace terms
  CMat wmat = CMat::Zero(4, 2);
  wmat.topRows(2) = CMat::Identity(2, 2);
  Frame w{wmat, Polarization{2, 2}};
  Rng rng(31);
  CMat g = random_matrix(4, 4, rng);
  CMat q = random_gauge(2, rng, 0.4);
  CHECK(std::abs(alpha_twist(g, q, w) - 1.0) < 1e-12);
}

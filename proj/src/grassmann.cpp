#include "detgeo/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace detgeo {

namespace {

void require_ambient(const CMat& m, const Polarization& pol, const char* who) {
  if (m.rows() != pol.dim() || m.cols() != pol.dim()) {
    std::ostringstream os;
    os << who << ": expected " << pol.dim() << "x" << pol.dim() << ", got "
       << m.rows() << "x" << m.cols();
    throw ShapeError(os.str());
  }
}

}  // namespace

PointTangent make_tangent(const GrassmannPoint& p, const CMat& dF) {
  require_ambient(dF, p.pol, "make_tangent");
  bool real = (dF - dF.adjoint()).norm() <= 1e-10 * std::max(1.0, dF.norm());
  return PointTangent{dF, real};
}

double anticommutator_residual(const GrassmannPoint& p, const CMat& dF) {
  require_ambient(dF, p.pol, "anticommutator_residual");
  return (p.F * dF + dF * p.F).norm();
}

PointValidation validate_point(const GrassmannPoint& p) {
  require_pol(p.pol);
  require_ambient(p.F, p.pol, "validate_point");
  PointValidation v;
  v.hermiticity_residual = (p.F - p.F.adjoint()).norm();
  v.involution_residual = (p.F * p.F - CMat::Identity(p.pol.dim(), p.pol.dim())).norm();
  v.virtual_dim_value = 0.5 * (p.F - epsilon(p.pol)).trace().real();
  v.virtual_dim = std::lround(v.virtual_dim_value);
  v.virtual_dim_integral =
      std::abs(v.virtual_dim_value - static_cast<double>(v.virtual_dim)) <= 1e-6;
  return v;
}

void require_point(const GrassmannPoint& p, double tol) {
  PointValidation v = validate_point(p);
  if (v.hermiticity_residual > tol || v.involution_residual > tol) {
    std::ostringstream os;
    os << "not a self-adjoint involution (hermiticity residual "
       << v.hermiticity_residual << ", involution residual " << v.involution_residual
       << ", tolerance " << tol << ")";
    throw InvariantViolation(os.str());
  }
  if (!v.virtual_dim_integral) {
    std::ostringstream os;
    os << "virtual dimension tr(F - eps)/2 = " << v.virtual_dim_value
       << " is not within 1e-6 of an integer";
    throw InvariantViolation(os.str());
  }
}

long virtual_dimension(const GrassmannPoint& p) {
  PointValidation v = validate_point(p);
  if (!v.virtual_dim_integral) {
    std::ostringstream os;
    os << "virtual dimension tr(F - eps)/2 = " << v.virtual_dim_value
       << " is not within 1e-6 of an integer";
    throw InvariantViolation(os.str());
  }
  return v.virtual_dim;
}

GrassmannPoint involution_from_projection(const CMat& p, const Polarization& pol) {
  require_pol(pol);
  require_ambient(p, pol, "involution_from_projection");
  double herm = (p - p.adjoint()).norm();
  double idem = (p * p - p).norm();
  if (herm > 1e-10 || idem > 1e-10) {
    std::ostringstream os;
    os << "involution_from_projection: input is not an orthogonal projection "
       << "(hermiticity residual " << herm << ", idempotency residual " << idem << ")";
    throw InvariantViolation(os.str());
  }
  return GrassmannPoint{2.0 * p - CMat::Identity(pol.dim(), pol.dim()), pol};
}

CMat projection_from_involution(const GrassmannPoint& p) {
  require_ambient(p.F, p.pol, "projection_from_involution");
  return 0.5 * (p.F + CMat::Identity(p.pol.dim(), p.pol.dim()));
}

GrassmannPoint involution_from_frame(const Frame& w) {
  CMat proj = range_projection(w);
  // Kill the tiny anti-hermitian part the pseudo-inverse leaves behind.
  proj = 0.5 * (proj + proj.adjoint());
  return GrassmannPoint{2.0 * proj - CMat::Identity(w.pol.dim(), w.pol.dim()), w.pol};
}

PointTangent fundamental_field(const GrassmannPoint& p, const CMat& x) {
  require_ambient(x, p.pol, "fundamental_field");
  return make_tangent(p, p.F * x - x * p.F);
}

GrassmannPoint random_point(const Polarization& pol, double spread, Rng& rng) {
  require_pol(pol);
  if (!(spread >= 0.0) || !std::isfinite(spread)) {
    throw InvalidInputError("random_point: spread must be finite and nonnegative");
  }
  CMat h = sample_random(RandomKind::hermitian, pol.dim(), rng);
  CMat u = matrix_exp(Cplx(0.0, spread) * h);
  CMat f = u * epsilon(pol) * u.adjoint();
  f = 0.5 * (f + f.adjoint());
  return GrassmannPoint{f, pol};
}

PointDiagnostics point_diagnostics(const GrassmannPoint& p) {
  require_ambient(p.F, p.pol, "point_diagnostics");
  Blocks blk = split_blocks(p.F, p.pol);
  return PointDiagnostics{
      schatten_norm(blk.a - CMat::Identity(p.pol.n_plus, p.pol.n_plus), 2.0),
      schatten_norm(blk.d + CMat::Identity(p.pol.n_minus, p.pol.n_minus), 2.0),
      schatten_norm(blk.b, 4.0),
      schatten_norm(blk.c, 4.0)};
}

double InvolutionIdentityResiduals::max() const {
  return std::max({square_form, eps_conjugation, upper_block, lower_block});
}

InvolutionIdentityResiduals involution_identity_residuals(const GrassmannPoint& p) {
  require_ambient(p.F, p.pol, "involution_identity_residuals");
  const Index n = p.pol.dim();
  const CMat eye = CMat::Identity(n, n);
  const CMat eps = epsilon(p.pol);
  const CMat d = p.F - eps;
  const CMat d2 = d * d;

  InvolutionIdentityResiduals r;
  r.square_form = (d2 - (2.0 * eye - eps * p.F - p.F * eps)).norm();
  r.eps_conjugation = (eps * p.F * eps - (2.0 * eps - p.F - d2 * eps)).norm();

  CMat upper_lhs = pr_plus(CMat((p.F - eye) * (0.5 * (eye + eps))), p.pol);
  CMat lower_lhs = pr_minus(CMat((p.F + eye) * (0.5 * (eye - eps))), p.pol);
  r.upper_block = (upper_lhs - (-0.25 * d2 * (eye + eps))).norm();
  r.lower_block = (lower_lhs - (0.25 * d2 * (eye - eps))).norm();
  return r;
}

}  // namespace detgeo

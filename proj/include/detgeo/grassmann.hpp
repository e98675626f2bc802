#pragma once

#include "detgeo/stiefel.hpp"

namespace detgeo {

/// Point of the restricted Grassmannian in its canonical presentation: a
/// self-adjoint involution F with F - eps small off the diagonal blocks.
/// The plane the point represents is the +1 eigenspace, P = (1 + F)/2.
struct GrassmannPoint {
  CMat F;
  Polarization pol;
};

/// Tangent vector at a point, a matrix dF anticommuting with F when exact.
/// Tangents are not required to be self-adjoint; is_real records whether
/// this one is (directions along the unitary orbit are).
struct PointTangent {
  CMat dF;
  bool is_real = false;
};

PointTangent make_tangent(const GrassmannPoint& p, const CMat& dF);

/// ||F dF + dF F||_2, zero for exact tangents.
double anticommutator_residual(const GrassmannPoint& p, const CMat& dF);

struct PointValidation {
  double hermiticity_residual;
  double involution_residual;
  double virtual_dim_value;   // tr(F - eps)/2, real part
  long virtual_dim;           // nearest integer
  bool virtual_dim_integral;  // within 1e-6 of that integer
};

PointValidation validate_point(const GrassmannPoint& p);

/// Throws InvariantViolation unless F is self-adjoint and an involution to
/// `tol` and tr(F - eps)/2 is within 1e-6 of an integer. A nonzero integer
/// virtual dimension is legal here and only reported by validate_point.
void require_point(const GrassmannPoint& p, double tol = 1e-10);

/// tr(F - eps)/2 rounded; throws when it is not close to an integer.
long virtual_dimension(const GrassmannPoint& p);

GrassmannPoint involution_from_projection(const CMat& p, const Polarization& pol);
CMat projection_from_involution(const GrassmannPoint& p);

/// Involution of the plane a frame spans, F = 2 w w^+ - 1.
GrassmannPoint involution_from_frame(const Frame& w);

/// Value of the fundamental vector field of the Lie algebra action at F,
/// namely [F, x].
PointTangent fundamental_field(const GrassmannPoint& p, const CMat& x);

/// Random point F = u eps u* with u = exp(i * spread * H), H hermitian.
GrassmannPoint random_point(const Polarization& pol, double spread, Rng& rng);

/// Block-size diagnostics: distance of the diagonal blocks from +-1 in
/// Hilbert-Schmidt norm and the fourth Schatten norms of the corners.
struct PointDiagnostics {
  double upper_diag_dist;
  double lower_diag_dist;
  double upper_corner_size;
  double lower_corner_size;
};

PointDiagnostics point_diagnostics(const GrassmannPoint& p);

/// Residuals of the involution block identities used throughout the
/// coboundary computation:
///   (F - eps)^2 = 2 - eps F - F eps
///   eps F eps   = 2 eps - F - (F - eps)^2 eps
///   pr_+ (F - 1) pr_+ = -(1/4) (F - eps)^2 (1 + eps)
///   pr_- (F + 1) pr_- =  (1/4) (F - eps)^2 (1 - eps)
struct InvolutionIdentityResiduals {
  double square_form;
  double eps_conjugation;
  double upper_block;
  double lower_block;

  double max() const;
};

InvolutionIdentityResiduals involution_identity_residuals(const GrassmannPoint& p);

}  // namespace detgeo

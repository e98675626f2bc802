#pragma once

#include <functional>

#include "detgeo/detbundle.hpp"

namespace detgeo {

/// Element of the truncated Lie algebra acting on the one-particle space.
using LieElement = CMat;

CMat bracket(const CMat& x, const CMat& y);

/// The cocycle in its block-algebraic form:
///   (1/16) tr((F - eps)^2 eps [[eps, X], [eps, Y]]).
Cplx cocycle_algebraic(const GrassmannPoint& p, const LieElement& x, const LieElement& y);

/// Same value through the conditional trace:
///   (1/8) tr_C([[eps, X], [eps, Y]] (eps - F)).
Cplx cocycle_algebraic_conditional(const GrassmannPoint& p, const LieElement& x,
                                   const LieElement& y);

/// The cocycle produced by the bundle curvature on fundamental fields:
///   -(1/16) tr((F - eps)^2 F [[F, X], [F, Y]]).
/// Equal to -curvature_form(F, [F,X], [F,Y]).
Cplx cocycle_geometric(const GrassmannPoint& p, const LieElement& x, const LieElement& y);

/// Potential linking the two cocycles:
///   b(X) = (1/2) tr((F - eps) X)
///        + (1/8) tr((1 - F^2 - F + eps + eps F eps - F eps F) X).
/// On involutions this equals the connection evaluated on the lifted
/// fundamental field of X; the extra words fix a degree-2 extension off
/// the involution locus for exact differentiation.
Cplx coboundary_b(const GrassmannPoint& p, const LieElement& x);

/// A function of the base point, polynomial in the matrix entries of F, with
/// a declared total degree in F. The evaluator must accept arbitrary square
/// matrices, not only involutions: differentiation feeds it off-manifold.
struct TracePolynomial {
  std::function<Cplx(const CMat&)> eval;
  int degree;
};

/// Derivative of phi along the fundamental flow of x,
///   (x . phi)(F) = d/dt phi(F + t [F, x]) at t = 0,
/// computed exactly by polynomial interpolation: degree+1 samples at
/// symmetric multiples of 0.5, a Vandermonde solve for the linear
/// coefficient, and one held-out node that catches an understated degree.
Cplx module_action(const TracePolynomial& phi, const GrassmannPoint& p, const LieElement& x);

/// A two-argument cocycle as a polynomial family in the base point, with the
/// degree used for module_action when a slot is frozen.
struct CocycleForm {
  std::function<Cplx(const CMat& f, const CMat& x, const CMat& y)> eval;
  int degree;
};

CocycleForm algebraic_cocycle_form(const Polarization& pol);
CocycleForm geometric_cocycle_form(const Polarization& pol);

/// Absolute defect of the Lie-algebra two-cocycle condition
///   om([X,Y],Z) - om([X,Z],Y) + om([Y,Z],X)
///     = X.om(Y,Z) - Y.om(X,Z) + Z.om(X,Y)
/// with the module terms computed by module_action.
double cocycle_residual(const CocycleForm& form, const GrassmannPoint& p,
                        const LieElement& x, const LieElement& y, const LieElement& z);

/// Absolute defect of
///   cocycle_algebraic = cocycle_geometric - X.b(Y) + Y.b(X) + b([X,Y]).
double coboundary_relation_residual(const GrassmannPoint& p, const LieElement& x,
                                    const LieElement& y);

/// Lift of the fundamental field of x through the canonical section over a
/// frame: frame part X w - w X_11, fiber part -tr(X_12 ((1/2) F_21 - w_-)).
BundleTangent lifted_fundamental_field(const Frame& w, const LieElement& x);

/// |bundle_connection((w,1), lifted field) - b(X)|; the connection evaluated
/// on the lifted fundamental field reproduces the coboundary.
double coboundary_via_connection_residual(const Frame& w, const LieElement& x);

/// Left n_plus columns of w^+ (the plane coordinate x with x w_+ + y w_- = 1).
CMat frame_x(const Frame& w);

/// Right n_minus columns of w^+.
CMat frame_y(const Frame& w);

/// Residuals of the frame coordinate identities
///   x w_+ + y w_- = 1,  F_11 = 2 w_+ x - 1,  F_21 = 2 w_- x.
struct FrameIdentityResiduals {
  double partition;
  double upper_block;
  double lower_corner;

  double max() const;
};

FrameIdentityResiduals frame_identity_residuals(const Frame& w);

/// Square extension of a frame by an orthonormal basis of the orthogonal
/// complement of its plane.
CMat h_extension(const Frame& w);

/// ||F - h eps h^{-1}|| for the extension above; a cross-check that the
/// involution diagonalizes in the extended frame.
double h_conjugation_residual(const Frame& w);

}  // namespace detgeo

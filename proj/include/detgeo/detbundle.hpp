#pragma once

#include <functional>
#include <utility>

#include "detgeo/grassmann.hpp"
#include "detgeo/regdet.hpp"

namespace detgeo {

/// Point of the total space of the determinant bundle over the frame space:
/// a frame together with a nonzero fiber coordinate.
struct BundlePoint {
  Frame w;
  Cplx z;
};

/// Tangent at a bundle point: a frame tangent and a fiber component.
struct BundleTangent {
  FrameTangent dw;
  Cplx dz;
};

/// Right action (w, z) . g = (w g, z omega(w_+, g)^{-1}).
BundlePoint bundle_action(const BundlePoint& p, const GaugeElement& g);

/// Frame part of the bundle connection:
///   A(dw) = -tr(pr_+ dw - w^+ dw - w^+ pr_+ (1 - P_W) dw),
/// all three terms read as operators on the positive mode space. Equals
/// -tr((w_+ - 1) theta_modified(dw) + pr_+ horizontal_projection(dw)).
Cplx connection_form(const Frame& w, const FrameTangent& dw);

/// Full connection, connection_form plus the fiber term dz / z.
Cplx bundle_connection(const BundlePoint& p, const BundleTangent& v);

/// Curvature two-form of the bundle connection, evaluated on the base:
///   (1/16) tr((F - eps)^2 F (dF1 dF2 - dF2 dF1)).
Cplx curvature_form(const GrassmannPoint& p, const CMat& dF1, const CMat& dF2);

// Parametrized families for finite-difference work. Evaluations happen at
// parameter values within 2h of the origin only.
using FrameCurve = std::function<Frame(double)>;
using FrameSurface = std::function<Frame(double, double)>;
using FrameVolume = std::function<Frame(double, double, double)>;
using FramePairCurve = std::function<std::pair<Frame, Frame>(double)>;
using FrameOneForm = std::function<Cplx(const Frame&, const FrameTangent&)>;

inline constexpr double kFdStep = 1e-3;

/// Central difference with one Richardson step. The two stencils must agree
/// to 1e-3 relative or a NumericalInstabilityError is thrown, which traps
/// non-smooth families before they corrupt a comparison.
CMat fd_matrix_derivative(const std::function<CMat(double)>& f, double h = kFdStep);
Cplx fd_scalar_derivative(const std::function<Cplx(double)>& f, double h = kFdStep);

/// d(one_form) evaluated on the coordinate fields of a two-parameter family:
/// ds A(dt) - dt A(ds) at the origin.
Cplx fd_exterior_derivative(const FrameOneForm& one_form, const FrameSurface& surface,
                            double h = kFdStep);

/// Pullback of curvature_form along the plane family of a frame surface,
/// evaluated at the origin with finite-difference coordinate tangents.
Cplx fd_curvature_pullback(const FrameSurface& surface, double h = kFdStep);

/// Residual of d(curvature) = 0 on a three-parameter family: the alternating
/// sum ds Omega(dt,du) - dt Omega(ds,du) + du Omega(ds,dt), normalized by
/// max(1, |Omega terms|).
double closedness_residual(const FrameVolume& volume, double h = kFdStep);

/// Residual of the derivative formula for the fiber cocycle f(w1(t), w2(t)):
///   f^{-1} df = tr(((w2)_+ - 1) theta_2(dw2)) - tr(((w1)_+ - 1) theta_1(dw1))
///             + tr(pr_+ hor_2(dw2)) - tr(pr_+ hor_1(dw1))
/// with theta the modified connection and hor the horizontal projection,
/// each taken at its own frame. Normalized by max(1, |f^{-1} df|).
double dlogf_residual(const FramePairCurve& curve, double h = kFdStep);

/// Connection values agree on a tangent and its pushforward along the action
/// of a gauge curve g(t) = g + t gdot; the pushforward is computed from a
/// realizing curve by finite differences, not from a closed form. Returns
/// |A(p1, v1) - A(p2, v2)| / max(1, |A(p1, v1)|).
double descent_residual(const BundlePoint& p, const BundleTangent& v,
                        const GaugeElement& g, const CMat& gdot, double h = kFdStep);

}  // namespace detgeo

#pragma once

#include "detgeo/polarized.hpp"

namespace detgeo {

/// Admissible frame: an injective map from the positive mode space into the
/// full space, stored as a (n_plus + n_minus) x n_plus matrix. Columns span
/// the plane the frame presents; no orthonormality is assumed.
struct Frame {
  CMat w;
  Polarization pol;
};

/// Tangent to the frame space at some frame, same shape as the frame.
using FrameTangent = CMat;

/// Change of frame within a fiber: an invertible n_plus x n_plus matrix.
using GaugeElement = CMat;

void require_frame_shape(const Frame& w);

/// Left pseudo-inverse w^+ = (w* w)^{-1} w*. Throws SingularityError when the
/// frame is not of full column rank.
CMat frame_pinv(const Frame& w);

/// Orthogonal projection onto the plane spanned by the frame, P = w w^+.
CMat range_projection(const Frame& w);

/// Distance-like metric on frames: ||pr_+ (w1 - w2)||_2 + ||pr_- (w1 - w2)||_4.
/// The plus part is measured in Hilbert-Schmidt norm, the minus part in the
/// fourth Schatten norm, matching the admissibility classes of the two parts.
double frame_metric(const Frame& w1, const Frame& w2);

/// The gauge g with w2 = w1 g. Throws NotSameFiberError (carrying the
/// residual) when the two frames do not span the same plane.
GaugeElement gauge_between(const Frame& w1, const Frame& w2);

/// Plain connection form theta(dw) = w^+ dw.
CMat theta_plain(const Frame& w, const FrameTangent& dw);

/// Modified connection form theta(dw) = w^+ dw + w^+ pr_+ (1 - P_W) dw.
/// The extra term keeps the trace pairings in the bundle connection finite in
/// the regularized setting; at finite truncation both terms are evaluated
/// separately.
CMat theta_modified(const Frame& w, const FrameTangent& dw);

/// Horizontal part of dw for the modified connection:
/// (1 - P_W) dw - P_W pr_+ (1 - P_W) dw.
FrameTangent horizontal_projection(const Frame& w, const FrameTangent& dw);

/// Directional derivative of the range projection along dw:
/// dP = (1 - P_W) dw w^+ + adjoint.
CMat dproj(const Frame& w, const FrameTangent& dw);

/// Curvature two-form of the plain connection evaluated on a pair of
/// tangents: w^+ (dP[dw1] dP[dw2] - dP[dw2] dP[dw1]) w. Agrees with
/// d theta + theta ^ theta, which the tests check by finite differences.
CMat connection_curvature(const Frame& w, const FrameTangent& dw1, const FrameTangent& dw2);

/// Frame of the standard plane distorted by a random unitary and gauge.
Frame random_frame(const Polarization& pol, Rng& rng);

/// Identity plus a perturbation of operator norm `spread` (spread < 1 keeps
/// the result invertible).
GaugeElement random_gauge(Index n, Rng& rng, double spread = 0.3);

/// Size diagnostics for admissibility bookkeeping: ||w_+ - 1||_2, ||w_-||_4.
struct FrameDiagnostics {
  double plus_part_dist;
  double minus_part_size;
};

FrameDiagnostics frame_diagnostics(const Frame& w);

/// ||g - 1||_2, the Hilbert-Schmidt distance of a gauge from the identity.
double gauge_diagnostic(const GaugeElement& g);

}  // namespace detgeo

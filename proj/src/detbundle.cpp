#include "detgeo/detbundle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace detgeo {

namespace {

void require_nonzero_fiber(const BundlePoint& p, const char* who) {
  if (p.z == Cplx(0.0, 0.0)) {
    std::ostringstream os;
    os << who << ": fiber coordinate must be nonzero";
    throw InvariantViolation(os.str());
  }
}

}  // namespace

BundlePoint bundle_action(const BundlePoint& p, const GaugeElement& g) {
  require_frame_shape(p.w);
  require_nonzero_fiber(p, "bundle_action");
  if (g.rows() != p.w.pol.n_plus || g.cols() != p.w.pol.n_plus) {
    throw ShapeError("bundle_action: gauge must act on the positive mode space");
  }
  Cplx omega = det2_twist(top_block(p.w.w, p.w.pol), g);
  return BundlePoint{Frame{p.w.w * g, p.w.pol}, p.z / omega};
}

Cplx connection_form(const Frame& w, const FrameTangent& dw) {
  require_frame_shape(w);
  if (dw.rows() != w.w.rows() || dw.cols() != w.w.cols()) {
    throw ShapeError("connection_form: tangent shape does not match the frame");
  }
  CMat wp = frame_pinv(w);
  CMat theta = wp * dw;
  CMat off_plane = dw - w.w * theta;
  CMat correction = wp * pr_plus(off_plane, w.pol);
  return -(top_block(dw, w.pol) - theta - correction).trace();
}

Cplx bundle_connection(const BundlePoint& p, const BundleTangent& v) {
  require_nonzero_fiber(p, "bundle_connection");
  return connection_form(p.w, v.dw) + v.dz / p.z;
}

Cplx curvature_form(const GrassmannPoint& p, const CMat& dF1, const CMat& dF2) {
  const Index n = p.pol.dim();
  if (p.F.rows() != n || p.F.cols() != n || dF1.rows() != n || dF1.cols() != n ||
      dF2.rows() != n || dF2.cols() != n) {
    throw ShapeError("curvature_form: ambient square operators required");
  }
  CMat d = p.F - epsilon(p.pol);
  return (1.0 / 16.0) * (d * d * p.F * (dF1 * dF2 - dF2 * dF1)).trace();
}

namespace {

// Shared Richardson logic: D(h) and D(h/2) central stencils, extrapolation
// (4 D(h/2) - D(h)) / 3, and the smoothness trap.
template <typename Value, typename Eval, typename Norm>
Value richardson(const Eval& diff, const Norm& norm, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw InvalidInputError("finite differences: step must be positive and finite");
  }
  Value coarse = diff(h);
  Value fine = diff(0.5 * h);
  Value extrapolated = (4.0 * fine - coarse) / 3.0;
  double disagreement = norm(coarse - fine) / std::max(1.0, norm(extrapolated));
  if (disagreement > 1e-3) {
    std::ostringstream os;
    os << "finite differences: stencils at h and h/2 disagree by " << disagreement
       << " (relative), family looks non-smooth at this step";
    throw NumericalInstabilityError(os.str());
  }
  return extrapolated;
}

}  // namespace

CMat fd_matrix_derivative(const std::function<CMat(double)>& f, double h) {
  auto diff = [&](double s) { return CMat((f(s) - f(-s)) / (2.0 * s)); };
  auto norm = [](const CMat& m) { return m.norm(); };
  return richardson<CMat>(diff, norm, h);
}

Cplx fd_scalar_derivative(const std::function<Cplx(double)>& f, double h) {
  auto diff = [&](double s) { return (f(s) - f(-s)) / (2.0 * s); };
  auto norm = [](const Cplx& z) { return std::abs(z); };
  return richardson<Cplx>(diff, norm, h);
}

Cplx fd_exterior_derivative(const FrameOneForm& one_form, const FrameSurface& surface,
                            double h) {
  auto along_t = [&](double s) {
    Frame base = surface(s, 0.0);
    CMat dt = fd_matrix_derivative([&](double t) { return surface(s, t).w; }, h);
    return one_form(base, dt);
  };
  auto along_s = [&](double t) {
    Frame base = surface(0.0, t);
    CMat ds = fd_matrix_derivative([&](double s) { return surface(s, t).w; }, h);
    return one_form(base, ds);
  };
  return fd_scalar_derivative(along_t, h) - fd_scalar_derivative(along_s, h);
}

Cplx fd_curvature_pullback(const FrameSurface& surface, double h) {
  GrassmannPoint base = involution_from_frame(surface(0.0, 0.0));
  CMat dFs = fd_matrix_derivative(
      [&](double s) { return involution_from_frame(surface(s, 0.0)).F; }, h);
  CMat dFt = fd_matrix_derivative(
      [&](double t) { return involution_from_frame(surface(0.0, t)).F; }, h);
  return curvature_form(base, dFs, dFt);
}

double closedness_residual(const FrameVolume& volume, double h) {
  auto omega_pair = [&](const FrameSurface& surf) {
    return fd_curvature_pullback(surf, h);
  };
  // Omega(dt, du) as a function of s, and so on cyclically.
  auto term_s = fd_scalar_derivative(
      [&](double s) {
        return omega_pair([&](double t, double u) { return volume(s, t, u); });
      },
      h);
  auto term_t = fd_scalar_derivative(
      [&](double t) {
        return omega_pair([&](double s, double u) { return volume(s, t, u); });
      },
      h);
  auto term_u = fd_scalar_derivative(
      [&](double u) {
        return omega_pair([&](double s, double t) { return volume(s, t, u); });
      },
      h);
  double scale = std::max(
      {1.0,
       std::abs(omega_pair([&](double t, double u) { return volume(0.0, t, u); })),
       std::abs(omega_pair([&](double s, double u) { return volume(s, 0.0, u); })),
       std::abs(omega_pair([&](double s, double t) { return volume(s, t, 0.0); }))});
  return std::abs(term_s - term_t + term_u) / scale;
}

double dlogf_residual(const FramePairCurve& curve, double h) {
  auto pair0 = curve(0.0);
  const Frame& w1 = pair0.first;
  const Frame& w2 = pair0.second;
  const Polarization pol = w1.pol;
  const CMat eye = CMat::Identity(pol.n_plus, pol.n_plus);

  Cplx f0 = fiber_cocycle(w1, w2);
  Cplx df = fd_scalar_derivative(
      [&](double t) {
        auto pr = curve(t);
        return fiber_cocycle(pr.first, pr.second);
      },
      h);
  Cplx lhs = df / f0;

  CMat dw1 = fd_matrix_derivative([&](double t) { return curve(t).first.w; }, h);
  CMat dw2 = fd_matrix_derivative([&](double t) { return curve(t).second.w; }, h);

  CMat w1p = top_block(w1.w, pol);
  CMat w2p = top_block(w2.w, pol);
  Cplx rhs = ((w2p - eye) * theta_modified(w2, dw2)).trace() -
             ((w1p - eye) * theta_modified(w1, dw1)).trace() +
             top_block(horizontal_projection(w2, dw2), pol).trace() -
             top_block(horizontal_projection(w1, dw1), pol).trace();

  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

double descent_residual(const BundlePoint& p, const BundleTangent& v,
                        const GaugeElement& g, const CMat& gdot, double h) {
  require_frame_shape(p.w);
  require_nonzero_fiber(p, "descent_residual");
  if (gdot.rows() != g.rows() || gdot.cols() != g.cols()) {
    throw ShapeError("descent_residual: gauge velocity shape mismatch");
  }
  auto moved = [&](double t) {
    BundlePoint c{Frame{p.w.w + t * v.dw, p.w.pol}, p.z + t * v.dz};
    return bundle_action(c, g + t * gdot);
  };
  BundlePoint p2 = bundle_action(p, g);
  BundleTangent v2;
  v2.dw = fd_matrix_derivative([&](double t) { return moved(t).w.w; }, h);
  v2.dz = fd_scalar_derivative([&](double t) { return moved(t).z; }, h);

  Cplx upstairs = bundle_connection(p, v);
  Cplx downstairs = bundle_connection(p2, v2);
  return std::abs(upstairs - downstairs) / std::max(1.0, std::abs(upstairs));
}

}  // namespace detgeo

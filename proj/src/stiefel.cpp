#include "detgeo/stiefel.hpp"

#include <algorithm>
#include <sstream>

namespace detgeo {

void require_frame_shape(const Frame& w) {
  require_pol(w.pol);
  if (w.w.rows() != w.pol.dim() || w.w.cols() != w.pol.n_plus) {
    std::ostringstream os;
    os << "frame must be " << w.pol.dim() << "x" << w.pol.n_plus << ", got "
       << w.w.rows() << "x" << w.w.cols();
    throw ShapeError(os.str());
  }
}

namespace {

void require_tangent_shape(const Frame& w, const CMat& dw, const char* who) {
  if (dw.rows() != w.w.rows() || dw.cols() != w.w.cols()) {
    std::ostringstream os;
    os << who << ": tangent shape " << dw.rows() << "x" << dw.cols()
       << " does not match frame " << w.w.rows() << "x" << w.w.cols();
    throw ShapeError(os.str());
  }
}

}  // namespace

CMat frame_pinv(const Frame& w) {
  require_frame_shape(w);
  return pseudo_inverse(w.w);
}

CMat range_projection(const Frame& w) {
  return w.w * frame_pinv(w);
}

double frame_metric(const Frame& w1, const Frame& w2) {
  require_frame_shape(w1);
  require_frame_shape(w2);
  if (w1.pol != w2.pol) {
    throw ShapeError("frame_metric: frames carry different polarizations");
  }
  CMat delta = w1.w - w2.w;
  return schatten_norm(top_block(delta, w1.pol), 2.0) +
         schatten_norm(bottom_block(delta, w1.pol), 4.0);
}

GaugeElement gauge_between(const Frame& w1, const Frame& w2) {
  require_frame_shape(w1);
  require_frame_shape(w2);
  if (w1.pol != w2.pol) {
    throw ShapeError("gauge_between: frames carry different polarizations");
  }
  GaugeElement g = frame_pinv(w1) * w2.w;
  double residual = (w2.w - w1.w * g).norm();
  double gate = 1e-9 * std::max(1.0, w2.w.norm());
  if (residual > gate) {
    std::ostringstream os;
    os << "gauge_between: frames span different planes (residual " << residual << ")";
    throw NotSameFiberError(os.str(), residual);
  }
  return g;
}

CMat theta_plain(const Frame& w, const FrameTangent& dw) {
  require_tangent_shape(w, dw, "theta_plain");
  return frame_pinv(w) * dw;
}

CMat theta_modified(const Frame& w, const FrameTangent& dw) {
  require_tangent_shape(w, dw, "theta_modified");
  CMat wp = frame_pinv(w);
  CMat off_plane = dw - w.w * (wp * dw);
  return wp * dw + wp * pr_plus(off_plane, w.pol);
}

FrameTangent horizontal_projection(const Frame& w, const FrameTangent& dw) {
  require_tangent_shape(w, dw, "horizontal_projection");
  CMat wp = frame_pinv(w);
  CMat off_plane = dw - w.w * (wp * dw);
  return off_plane - w.w * (wp * pr_plus(off_plane, w.pol));
}

CMat dproj(const Frame& w, const FrameTangent& dw) {
  require_tangent_shape(w, dw, "dproj");
  CMat wp = frame_pinv(w);
  CMat t = (dw - w.w * (wp * dw)) * wp;
  return t + t.adjoint();
}

CMat connection_curvature(const Frame& w, const FrameTangent& dw1, const FrameTangent& dw2) {
  CMat p1 = dproj(w, dw1);
  CMat p2 = dproj(w, dw2);
  return frame_pinv(w) * (p1 * p2 - p2 * p1) * w.w;
}

Frame random_frame(const Polarization& pol, Rng& rng) {
  require_pol(pol);
  CMat u = sample_random(RandomKind::unitary, pol.dim(), rng);
  GaugeElement g = random_gauge(pol.n_plus, rng);
  return Frame{u.leftCols(pol.n_plus) * g, pol};
}

GaugeElement random_gauge(Index n, Rng& rng, double spread) {
  CMat g = random_matrix(n, n, rng);
  double nrm = operator_norm(g);
  if (nrm > 0.0) g *= spread / nrm;
  return CMat::Identity(n, n) + g;
}

FrameDiagnostics frame_diagnostics(const Frame& w) {
  require_frame_shape(w);
  CMat wp = top_block(w.w, w.pol);
  return FrameDiagnostics{
      schatten_norm(wp - CMat::Identity(w.pol.n_plus, w.pol.n_plus), 2.0),
      schatten_norm(bottom_block(w.w, w.pol), 4.0)};
}

double gauge_diagnostic(const GaugeElement& g) {
  if (g.rows() != g.cols()) {
    throw ShapeError("gauge_diagnostic: gauge elements are square");
  }
  return schatten_norm(g - CMat::Identity(g.rows(), g.cols()), 2.0);
}

}  // namespace detgeo

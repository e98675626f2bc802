#include "detgeo/cocycles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace detgeo {

namespace {

void require_square_of(const CMat& m, Index n, const char* who) {
  if (m.rows() != n || m.cols() != n) {
    std::ostringstream os;
    os << who << ": expected " << n << "x" << n << ", got " << m.rows() << "x" << m.cols();
    throw ShapeError(os.str());
  }
}

Cplx algebraic_raw(const CMat& f, const CMat& x, const CMat& y, const Polarization& pol) {
  const CMat eps = epsilon(pol);
  CMat d = f - eps;
  CMat inner = bracket(bracket(eps, x), bracket(eps, y));
  return (1.0 / 16.0) * (d * d * eps * inner).trace();
}

Cplx geometric_raw(const CMat& f, const CMat& x, const CMat& y, const Polarization& pol) {
  CMat d = f - epsilon(pol);
  CMat inner = bracket(bracket(f, x), bracket(f, y));
  return -(1.0 / 16.0) * (d * d * f * inner).trace();
}

Cplx coboundary_raw(const CMat& f, const CMat& x, const Polarization& pol) {
  const CMat eps = epsilon(pol);
  const CMat eye = CMat::Identity(f.rows(), f.cols());
  CMat lead = 0.5 * (f - eps);
  CMat tail = 0.125 * (eye - f * f - f + eps + eps * f * eps - f * eps * f);
  return ((lead + tail) * x).trace();
}

// Degrees in F of the trace words above, counting every occurrence of the
// base point including those inside (F - eps) powers and brackets. The
// geometric form has five: two in (F - eps)^2, the center F, one per
// commutator. The coboundary words top out at F*eps*F.
constexpr int kAlgebraicDegree = 2;
constexpr int kGeometricDegree = 5;
constexpr int kCoboundaryDegree = 2;

std::vector<double> interpolation_nodes(int degree) {
  std::vector<double> nodes;
  int count = degree + 1;
  if (count % 2 == 1) {
    nodes.push_back(0.0);
    for (int k = 1; k <= count / 2; ++k) {
      nodes.push_back(0.5 * k);
      nodes.push_back(-0.5 * k);
    }
  } else {
    for (int k = 1; k <= count / 2; ++k) {
      nodes.push_back(0.5 * k);
      nodes.push_back(-0.5 * k);
    }
  }
  return nodes;
}

}  // namespace

CMat bracket(const CMat& x, const CMat& y) {
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows()) {
    throw ShapeError("bracket: operands must be square and of equal size");
  }
  return x * y - y * x;
}

Cplx cocycle_algebraic(const GrassmannPoint& p, const LieElement& x, const LieElement& y) {
  require_square_of(x, p.pol.dim(), "cocycle_algebraic");
  require_square_of(y, p.pol.dim(), "cocycle_algebraic");
  return algebraic_raw(p.F, x, y, p.pol);
}

Cplx cocycle_algebraic_conditional(const GrassmannPoint& p, const LieElement& x,
                                   const LieElement& y) {
  require_square_of(x, p.pol.dim(), "cocycle_algebraic_conditional");
  require_square_of(y, p.pol.dim(), "cocycle_algebraic_conditional");
  const CMat eps = epsilon(p.pol);
  CMat inner = bracket(bracket(eps, x), bracket(eps, y));
  return 0.125 * conditional_trace(CMat(inner * (eps - p.F)), p.pol);
}

Cplx cocycle_geometric(const GrassmannPoint& p, const LieElement& x, const LieElement& y) {
  require_square_of(x, p.pol.dim(), "cocycle_geometric");
  require_square_of(y, p.pol.dim(), "cocycle_geometric");
  return geometric_raw(p.F, x, y, p.pol);
}

Cplx coboundary_b(const GrassmannPoint& p, const LieElement& x) {
  require_square_of(x, p.pol.dim(), "coboundary_b");
  return coboundary_raw(p.F, x, p.pol);
}

Cplx module_action(const TracePolynomial& phi, const GrassmannPoint& p, const LieElement& x) {
  if (phi.degree < 0) {
    throw InvalidInputError("module_action: declared degree must be nonnegative");
  }
  if (!phi.eval) {
    throw InvalidInputError("module_action: evaluator is empty");
  }
  require_square_of(x, p.pol.dim(), "module_action");
  CMat direction = bracket(p.F, x);

  std::vector<double> nodes = interpolation_nodes(phi.degree);
  const int count = static_cast<int>(nodes.size());
  CMat vand(count, count);
  Eigen::VectorXcd values(count);
  for (int j = 0; j < count; ++j) {
    double s = nodes[j];
    double pw = 1.0;
    for (int k = 0; k < count; ++k) {
      vand(j, k) = pw;
      pw *= s;
    }
    values[j] = phi.eval(p.F + s * direction);
  }
  Eigen::VectorXcd coeff = vand.partialPivLu().solve(values);

  double held_out = 0.5 * (count / 2 + 1);
  Cplx actual = phi.eval(p.F + held_out * direction);
  Cplx predicted = 0.0;
  double pw = 1.0;
  for (int k = 0; k < count; ++k) {
    predicted += coeff[k] * pw;
    pw *= held_out;
  }
  if (std::abs(predicted - actual) > 1e-8 * std::max(1.0, std::abs(actual))) {
    std::ostringstream os;
    os << "module_action: declared degree " << phi.degree
       << " does not reproduce the evaluator at a held-out node (defect "
       << std::abs(predicted - actual) << ")";
    throw InvalidInputError(os.str());
  }
  return count >= 2 ? coeff[1] : Cplx(0.0, 0.0);
}

CocycleForm algebraic_cocycle_form(const Polarization& pol) {
  return CocycleForm{
      [pol](const CMat& f, const CMat& x, const CMat& y) {
        return algebraic_raw(f, x, y, pol);
      },
      kAlgebraicDegree};
}

CocycleForm geometric_cocycle_form(const Polarization& pol) {
  return CocycleForm{
      [pol](const CMat& f, const CMat& x, const CMat& y) {
        return geometric_raw(f, x, y, pol);
      },
      kGeometricDegree};
}

double cocycle_residual(const CocycleForm& form, const GrassmannPoint& p,
                        const LieElement& x, const LieElement& y, const LieElement& z) {
  auto frozen = [&](const CMat& a, const CMat& b) {
    return TracePolynomial{[&form, a, b](const CMat& f) { return form.eval(f, a, b); },
                           form.degree};
  };
  Cplx direct = form.eval(p.F, bracket(x, y), z) - form.eval(p.F, bracket(x, z), y) +
                form.eval(p.F, bracket(y, z), x);
  Cplx module = module_action(frozen(y, z), p, x) - module_action(frozen(x, z), p, y) +
                module_action(frozen(x, y), p, z);
  return std::abs(direct - module);
}

double coboundary_relation_residual(const GrassmannPoint& p, const LieElement& x,
                                    const LieElement& y) {
  auto b_of = [&](const CMat& arg) {
    return TracePolynomial{
        [&p, arg](const CMat& f) { return coboundary_raw(f, arg, p.pol); },
        kCoboundaryDegree};
  };
  Cplx lhs = cocycle_algebraic(p, x, y);
  Cplx rhs = cocycle_geometric(p, x, y) - module_action(b_of(y), p, x) +
             module_action(b_of(x), p, y) + coboundary_b(p, bracket(x, y));
  return std::abs(lhs - rhs);
}

BundleTangent lifted_fundamental_field(const Frame& w, const LieElement& x) {
  require_frame_shape(w);
  require_square_of(x, w.pol.dim(), "lifted_fundamental_field");
  const Index np = w.pol.n_plus;
  const Index nm = w.pol.n_minus;
  CMat x11 = x.topLeftCorner(np, np);
  CMat x12 = x.topRightCorner(np, nm);
  CMat f21 = bottom_block(involution_from_frame(w).F, w.pol).leftCols(np);
  CMat wm = bottom_block(w.w, w.pol);
  BundleTangent v;
  v.dw = x * w.w - w.w * x11;
  v.dz = -(x12 * (0.5 * f21 - wm)).trace();
  return v;
}

double coboundary_via_connection_residual(const Frame& w, const LieElement& x) {
  BundleTangent v = lifted_fundamental_field(w, x);
  Cplx via_connection = bundle_connection(BundlePoint{w, Cplx(1.0, 0.0)}, v);
  Cplx direct = coboundary_b(involution_from_frame(w), x);
  return std::abs(via_connection - direct);
}

CMat frame_x(const Frame& w) {
  return frame_pinv(w).leftCols(w.pol.n_plus);
}

CMat frame_y(const Frame& w) {
  return frame_pinv(w).rightCols(w.pol.n_minus);
}

double FrameIdentityResiduals::max() const {
  return std::max({partition, upper_block, lower_corner});
}

FrameIdentityResiduals frame_identity_residuals(const Frame& w) {
  require_frame_shape(w);
  const Index np = w.pol.n_plus;
  const CMat eye = CMat::Identity(np, np);
  CMat wp = top_block(w.w, w.pol);
  CMat wm = bottom_block(w.w, w.pol);
  CMat pinv = frame_pinv(w);
  CMat x = pinv.leftCols(np);
  CMat y = pinv.rightCols(w.pol.n_minus);
  CMat f = involution_from_frame(w).F;
  CMat f11 = f.topLeftCorner(np, np);
  CMat f21 = f.bottomLeftCorner(w.pol.n_minus, np);

  FrameIdentityResiduals r;
  r.partition = (x * wp + y * wm - eye).norm();
  r.upper_block = (f11 - (2.0 * wp * x - eye)).norm();
  r.lower_corner = (f21 - 2.0 * wm * x).norm();
  return r;
}

CMat h_extension(const Frame& w) {
  require_frame_shape(w);
  Eigen::JacobiSVD<CMat> svd(w.w, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[sv.size() - 1] <= kRankTolerance * sv[0]) {
    throw SingularityError("h_extension: frame is rank-deficient",
                           sv.size() ? sv[sv.size() - 1] : 0.0);
  }
  CMat h(w.pol.dim(), w.pol.dim());
  h.leftCols(w.pol.n_plus) = w.w;
  h.rightCols(w.pol.n_minus) = svd.matrixU().rightCols(w.pol.n_minus);
  return h;
}

double h_conjugation_residual(const Frame& w) {
  CMat h = h_extension(w);
  CMat conj = h * epsilon(w.pol) * pseudo_inverse(h);
  return (involution_from_frame(w).F - conj).norm();
}

}  // namespace detgeo

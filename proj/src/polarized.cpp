#include "detgeo/polarized.hpp"

#include <sstream>

namespace detgeo {

namespace {

void require_square_ambient(const CMat& a, const Polarization& pol, const char* who) {
  if (a.rows() != pol.dim() || a.cols() != pol.dim()) {
    std::ostringstream os;
    os << who << ": expected " << pol.dim() << "x" << pol.dim() << " operator, got "
       << a.rows() << "x" << a.cols();
    throw ShapeError(os.str());
  }
}

}  // namespace

void require_pol(const Polarization& pol) {
  if (pol.n_plus < 1 || pol.n_minus < 1) {
    std::ostringstream os;
    os << "polarization blocks must be nonempty, got n_plus=" << pol.n_plus
       << " n_minus=" << pol.n_minus;
    throw InvalidInputError(os.str());
  }
}

CMat epsilon(const Polarization& pol) {
  require_pol(pol);
  CMat e = CMat::Zero(pol.dim(), pol.dim());
  for (Index i = 0; i < pol.n_plus; ++i) e(i, i) = 1.0;
  for (Index i = pol.n_plus; i < pol.dim(); ++i) e(i, i) = -1.0;
  return e;
}

Blocks split_blocks(const CMat& a, const Polarization& pol) {
  require_pol(pol);
  require_square_ambient(a, pol, "split_blocks");
  Blocks out;
  out.a = a.topLeftCorner(pol.n_plus, pol.n_plus);
  out.b = a.topRightCorner(pol.n_plus, pol.n_minus);
  out.c = a.bottomLeftCorner(pol.n_minus, pol.n_plus);
  out.d = a.bottomRightCorner(pol.n_minus, pol.n_minus);
  return out;
}

CMat assemble_blocks(const Blocks& blocks) {
  const Index np = blocks.a.rows();
  const Index nm = blocks.d.rows();
  if (blocks.a.cols() != np || blocks.d.cols() != nm || blocks.b.rows() != np ||
      blocks.b.cols() != nm || blocks.c.rows() != nm || blocks.c.cols() != np) {
    throw ShapeError("assemble_blocks: inconsistent block shapes");
  }
  CMat out(np + nm, np + nm);
  out.topLeftCorner(np, np) = blocks.a;
  out.topRightCorner(np, nm) = blocks.b;
  out.bottomLeftCorner(nm, np) = blocks.c;
  out.bottomRightCorner(nm, nm) = blocks.d;
  return out;
}

CMat conj_eps(const CMat& a, const Polarization& pol) {
  require_pol(pol);
  require_square_ambient(a, pol, "conj_eps");
  CMat out = a;
  out.topRightCorner(pol.n_plus, pol.n_minus) *= -1.0;
  out.bottomLeftCorner(pol.n_minus, pol.n_plus) *= -1.0;
  return out;
}

CMat pr_plus(const CMat& a, const Polarization& pol) {
  require_pol(pol);
  if (a.rows() != pol.dim()) {
    throw ShapeError("pr_plus: row count does not match the polarization");
  }
  CMat out = a;
  out.bottomRows(pol.n_minus).setZero();
  return out;
}

CMat pr_minus(const CMat& a, const Polarization& pol) {
  require_pol(pol);
  if (a.rows() != pol.dim()) {
    throw ShapeError("pr_minus: row count does not match the polarization");
  }
  CMat out = a;
  out.topRows(pol.n_plus).setZero();
  return out;
}

CMat top_block(const CMat& a, const Polarization& pol) {
  require_pol(pol);
  if (a.rows() != pol.dim()) {
    throw ShapeError("top_block: row count does not match the polarization");
  }
  return a.topRows(pol.n_plus);
}

CMat bottom_block(const CMat& a, const Polarization& pol) {
  require_pol(pol);
  if (a.rows() != pol.dim()) {
    throw ShapeError("bottom_block: row count does not match the polarization");
  }
  return a.bottomRows(pol.n_minus);
}

Cplx conditional_trace(const CMat& a, const Polarization& pol) {
  require_pol(pol);
  require_square_ambient(a, pol, "conditional_trace");
  return 0.5 * (a.trace() + conj_eps(a, pol).trace());
}

}  // namespace detgeo

#include "detgeo/numkernel.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <sstream>

namespace detgeo {

bool is_finite(const CMat& a) {
  return a.allFinite();
}

double schatten_norm(const CMat& a, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    std::ostringstream os;
    os << "schatten_norm: p must be a finite real >= 1, got " << p;
    throw InvalidInputError(os.str());
  }
  if (!is_finite(a)) {
    throw InvalidInputError("schatten_norm: matrix has non-finite entries");
  }
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(a);
  const auto& sv = svd.singularValues();
  double sum = 0.0;
  for (Index i = 0; i < sv.size(); ++i) {
    sum += std::pow(sv[i], p);
  }
  return std::pow(sum, 1.0 / p);
}

double operator_norm(const CMat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(a);
  return svd.singularValues()[0];
}

CMat matrix_exp(const CMat& a) {
  if (a.rows() != a.cols()) {
    std::ostringstream os;
    os << "matrix_exp: square matrix required, got " << a.rows() << "x" << a.cols();
    throw ShapeError(os.str());
  }
  return a.exp();
}

Cplx determinant(const CMat& a) {
  if (a.rows() != a.cols()) {
    std::ostringstream os;
    os << "determinant: square matrix required, got " << a.rows() << "x" << a.cols();
    throw ShapeError(os.str());
  }
  if (a.rows() == 0) return Cplx(1.0, 0.0);
  return a.determinant();
}

CMat pseudo_inverse(const CMat& a, double rank_tol) {
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const Index r = sv.size();
  const double smax = r > 0 ? sv[0] : 0.0;
  const double smin = r > 0 ? sv[r - 1] : 0.0;
  if (r == 0 || smin <= rank_tol * smax || smax == 0.0) {
    std::ostringstream os;
    os << "pseudo_inverse: rank-deficient input (smallest singular value " << smin << ")";
    throw SingularityError(os.str(), smin);
  }
  Eigen::VectorXd inv = sv.cwiseInverse();
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

CMat random_matrix(Index rows, Index cols, Rng& rng, double scale) {
  CMat g(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      g(i, j) = scale * rng.cnormal();
    }
  }
  return g;
}

CMat sample_random(RandomKind kind, Index n, Rng& rng, double scale) {
  switch (kind) {
    case RandomKind::general:
      return random_matrix(n, n, rng, scale);
    case RandomKind::hermitian: {
      CMat g = random_matrix(n, n, rng, scale);
      return 0.5 * (g + g.adjoint());
    }
    case RandomKind::unitary: {
      CMat g = random_matrix(n, n, rng);
      Eigen::HouseholderQR<CMat> qr(g);
      CMat q = qr.householderQ() * CMat::Identity(n, n);
      CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
      // Fix the phase gauge so the distribution is Haar, not QR-dependent.
      for (Index j = 0; j < n; ++j) {
        Cplx d = r(j, j);
        Cplx phase = std::abs(d) > 0.0 ? d / std::abs(d) : Cplx(1.0, 0.0);
        q.col(j) *= phase;
      }
      return q;
    }
  }
  throw InvalidInputError("sample_random: unknown kind");
}

}  // namespace detgeo

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "detgeo/errors.hpp"
#include "detgeo/rng.hpp"

namespace detgeo {

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using Index = Eigen::Index;

/// Relative threshold below which singular values count as zero.
inline constexpr double kRankTolerance = 1e-10;

bool is_finite(const CMat& a);

/// Schatten p-norm (sum of p-th powers of singular values, p-th root).
/// Requires p >= 1 and finite entries.
double schatten_norm(const CMat& a, double p);

/// Largest singular value.
double operator_norm(const CMat& a);

/// Matrix exponential of a square matrix.
CMat matrix_exp(const CMat& a);

/// Determinant of a square matrix (partial-pivot LU).
Cplx determinant(const CMat& a);

/// Moore-Penrose pseudo-inverse via SVD. Throws SingularityError when any
/// singular value falls below rank_tol * sigma_max, i.e. the input is not of
/// full rank; the error carries the offending smallest singular value.
CMat pseudo_inverse(const CMat& a, double rank_tol = kRankTolerance);

enum class RandomKind {
  unitary,    // QR of a Ginibre sample, phases normalized (Haar)
  hermitian,  // (G + G*)/2
  general,    // complex Ginibre
};

/// Square random matrix of the given kind. `scale` multiplies entries for
/// hermitian and general kinds and is ignored for unitary.
CMat sample_random(RandomKind kind, Index n, Rng& rng, double scale = 1.0);

/// Rectangular complex Ginibre sample scaled by `scale`.
CMat random_matrix(Index rows, Index cols, Rng& rng, double scale = 1.0);

}  // namespace detgeo

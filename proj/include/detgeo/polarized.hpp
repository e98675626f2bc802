#pragma once

#include "detgeo/numkernel.hpp"

namespace detgeo {

/// Splitting of the truncated one-particle space into n_plus positive and
/// n_minus negative modes. The sign operator eps is +1 on the first block
/// and -1 on the second; by convention row/column index < n_plus is positive.
struct Polarization {
  Index n_plus = 0;
  Index n_minus = 0;

  Index dim() const { return n_plus + n_minus; }

  bool operator==(const Polarization&) const = default;
};

void require_pol(const Polarization& pol);

/// Dense sign operator eps = 2 pr_+ - 1 = diag(+1,...,+1,-1,...,-1).
CMat epsilon(const Polarization& pol);

/// The four blocks of a square operator with respect to the polarization:
/// a = pr_+ A pr_+, b = pr_+ A pr_-, c = pr_- A pr_+, d = pr_- A pr_-.
struct Blocks {
  CMat a, b, c, d;
};

Blocks split_blocks(const CMat& a, const Polarization& pol);
CMat assemble_blocks(const Blocks& blocks);

/// eps A eps, computed by flipping signs of the off-diagonal blocks (exact).
CMat conj_eps(const CMat& a, const Polarization& pol);

/// pr_+ A as an ambient operator: rows in the negative block zeroed (exact).
CMat pr_plus(const CMat& a, const Polarization& pol);

/// pr_- A as an ambient operator: rows in the positive block zeroed (exact).
CMat pr_minus(const CMat& a, const Polarization& pol);

/// Top n_plus rows of a tall matrix (pr_+ composed with a frame).
CMat top_block(const CMat& a, const Polarization& pol);

/// Bottom n_minus rows of a tall matrix.
CMat bottom_block(const CMat& a, const Polarization& pol);

/// Conditional trace (1/2) tr(A + eps A eps); equals tr(a) + tr(d) at finite
/// dimension, kept in the two-term form it has in the regularized setting.
Cplx conditional_trace(const CMat& a, const Polarization& pol);

}  // namespace detgeo

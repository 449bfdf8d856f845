#pragma once

#include <vector>

#include "dilato/linalg.hpp"
#include "dilato/types.hpp"

namespace dilato {

// Degree-truncated vector-valued Hardy space: an element is the stack of its
// Taylor coefficient blocks f_0 .. f_{N-1}, each of length fiber_dim, and the
// norm is the coefficient two-norm. Multiplication operators are trusted in
// the forward direction on the interior subspace {f : f_{N-1} = 0} only;
// their adjoints act exactly on every truncated vector (the backward shift
// structure never leaves the truncation).

struct HardyVec {
  Index fiber_dim = 0;
  Index degree_bound = 0;
  CVec coeffs;  // size degree_bound * fiber_dim

  double norm() const { return coeffs.norm(); }
  CVec block(Index k) const { return coeffs.segment(k * fiber_dim, fiber_dim); }
};

/// One-degree matrix polynomial phi(z) = a + z b.
struct PencilSymbol {
  CMat a;
  CMat b;
};

enum class HardyKind { kPencil, kShift, kAnalyticToeplitz, kDense };

struct HardyOp {
  Index degree_bound = 0;
  Index fiber_in = 0;
  Index fiber_out = 0;
  HardyKind kind = HardyKind::kDense;
  CMat matrix;  // (degree_bound*fiber_out) x (degree_bound*fiber_in)
};

/// Truncated multiplication by a one-degree pencil: block lower bidiagonal,
/// diagonal blocks a, subdiagonal blocks b, top-degree overflow dropped.
HardyOp mult_op(const PencilSymbol& sym, Index n);

/// Forward shift = mult_op with a = 0, b = I.
HardyOp shift_op(Index n, Index fiber);

/// Truncated multiplication by the analytic symbol sum_k z^k coeffs[k];
/// blocks map fiber_in -> fiber_out, overflow dropped.
HardyOp analytic_toeplitz(const std::vector<CMat>& coeffs, Index n);

/// Orthogonal projector onto the interior subspace {f : f_{N-1} = 0}.
HardyOp interior_projector(Index n, Index fiber);

/// Orthogonal projector onto the span of the given truncated-space columns.
HardyOp column_space_projector(const CMat& columns, double rank_tol, Index n, Index fiber);

/// (n*fiber) x fiber matrix sending a fiber vector to the constant function.
CMat constant_embedding(Index n, Index fiber);

/// I_n (x) g as an explicit block-diagonal matrix (degree-wise action).
CMat block_kron_identity(Index n, const CMat& g);

}  // namespace dilato

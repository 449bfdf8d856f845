#include "dilato/hardy.hpp"

namespace dilato {

HardyOp mult_op(const PencilSymbol& sym, Index n) {
  if (n < 2) throw std::invalid_argument("mult_op: degree bound must be >= 2");
  if (sym.a.rows() != sym.a.cols() || sym.b.rows() != sym.b.cols() ||
      sym.a.rows() != sym.b.rows())
    throw Error(ErrorKind::ShapeMismatch, "pencil blocks must be square of equal size");
  const Index f = sym.a.rows();
  HardyOp op{n, f, f, HardyKind::kPencil, CMat::Zero(n * f, n * f)};
  for (Index k = 0; k < n; ++k) {
    op.matrix.block(k * f, k * f, f, f) = sym.a;
    if (k + 1 < n) op.matrix.block((k + 1) * f, k * f, f, f) = sym.b;
  }
  return op;
}

HardyOp shift_op(Index n, Index fiber) {
  HardyOp op = mult_op(PencilSymbol{CMat::Zero(fiber, fiber), CMat::Identity(fiber, fiber)}, n);
  op.kind = HardyKind::kShift;
  return op;
}

HardyOp analytic_toeplitz(const std::vector<CMat>& coeffs, Index n) {
  if (n < 2) throw std::invalid_argument("analytic_toeplitz: degree bound must be >= 2");
  if (coeffs.empty()) throw std::invalid_argument("analytic_toeplitz: empty coefficient list");
  const Index f_out = coeffs[0].rows();
  const Index f_in = coeffs[0].cols();
  for (const CMat& c : coeffs)
    if (c.rows() != f_out || c.cols() != f_in)
      throw Error(ErrorKind::ShapeMismatch, "toeplitz coefficient blocks must share one shape");

  HardyOp op{n, f_in, f_out, HardyKind::kAnalyticToeplitz, CMat::Zero(n * f_out, n * f_in)};
  const Index depth = std::min<Index>(static_cast<Index>(coeffs.size()), n);
  for (Index k = 0; k < depth; ++k)
    for (Index j = 0; j + k < n; ++j)
      op.matrix.block((j + k) * f_out, j * f_in, f_out, f_in) = coeffs[static_cast<size_t>(k)];
  return op;
}

HardyOp interior_projector(Index n, Index fiber) {
  if (n < 2) throw std::invalid_argument("interior_projector: degree bound must be >= 2");
  HardyOp op{n, fiber, fiber, HardyKind::kDense, CMat::Zero(n * fiber, n * fiber)};
  if (fiber > 0)
    op.matrix.topLeftCorner((n - 1) * fiber, (n - 1) * fiber) =
        CMat::Identity((n - 1) * fiber, (n - 1) * fiber);
  return op;
}

HardyOp column_space_projector(const CMat& columns, double rank_tol, Index n, Index fiber) {
  if (columns.rows() != n * fiber)
    throw Error(ErrorKind::ShapeMismatch, "columns do not live in the truncated space");
  const SubspaceBasis basis = range_basis(columns, rank_tol);
  return HardyOp{n, fiber, fiber, HardyKind::kDense, basis.projector()};
}

CMat constant_embedding(Index n, Index fiber) {
  CMat e = CMat::Zero(n * fiber, fiber);
  if (fiber > 0) e.topRows(fiber) = CMat::Identity(fiber, fiber);
  return e;
}

CMat block_kron_identity(Index n, const CMat& g) {
  CMat out = CMat::Zero(n * g.rows(), n * g.cols());
  for (Index k = 0; k < n; ++k) out.block(k * g.rows(), k * g.cols(), g.rows(), g.cols()) = g;
  return out;
}

}  // namespace dilato

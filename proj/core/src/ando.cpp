#include "dilato/ando.hpp"

#include <Eigen/SVD>

namespace dilato {

CMat pinv(const CMat& m, double rank_tol) {
  if (m.size() == 0) return CMat::Zero(m.cols(), m.rows());
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double cutoff = rank_tol * (sv.size() > 0 ? sv(0) : 0.0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) inv(i) = 1.0 / sv(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

namespace {

// Stack the two defect-coordinate blocks of a map H -> D_{T1} (+) D_{T2}.
CMat stack_blocks(const CMat& top, const CMat& bottom) {
  CMat out(top.rows() + bottom.rows(), top.cols());
  out.topRows(top.rows()) = top;
  out.bottomRows(bottom.rows()) = bottom;
  return out;
}

}  // namespace

AndoTuple build_ando_tuple(const CommutingPair& pair) {
  AndoTuple tuple;
  tuple.d1 = defect(pair.t1);
  tuple.d2 = defect(pair.t2);
  tuple.dt = defect(pair.product);

  // Everything is determined on vectors D_T h; factor through the defect
  // coordinates via the pseudoinverse of B_T^H D_T (full row rank on Ran D_T).
  const CMat m = tuple.dt.basis.basis.adjoint() * tuple.dt.d;
  const CMat m_pinv = pinv(m);

  const CMat row1_dom = tuple.d1.basis.basis.adjoint() * tuple.d1.d * pair.t2;
  const CMat row2_dom = tuple.d2.basis.basis.adjoint() * tuple.d2.d;
  const CMat row1_ran = tuple.d1.basis.basis.adjoint() * tuple.d1.d;
  const CMat row2_ran = tuple.d2.basis.basis.adjoint() * tuple.d2.d * pair.t1;

  tuple.lambda = stack_blocks(row1_dom, row2_dom) * m_pinv;
  const CMat lambda_ran = stack_blocks(row1_ran, row2_ran) * m_pinv;

  const Index f = tuple.f_dim();
  tuple.p = CMat::Zero(f, f);
  tuple.p.topLeftCorner(tuple.d1.dim(), tuple.d1.dim()) =
      CMat::Identity(tuple.d1.dim(), tuple.d1.dim());

  // Partial isometry Lambda x |-> Lambda_ran x, completed canonically. Both
  // ranges have dimension dim D_T, so the completion needs no padding.
  const CMat v0 = lambda_ran * tuple.lambda.adjoint();
  const SubspaceBasis dom = range_basis(tuple.lambda);
  const SubspaceBasis ran = range_basis(lambda_ran);
  tuple.u = unitary_completion(v0, dom, ran);
  return tuple;
}

BCLPair bcl_coefficients(const AndoTuple& tuple) {
  const Index f = tuple.f_dim();
  const CMat p_perp = CMat::Identity(f, f) - tuple.p;
  return BCLPair{p_perp * tuple.u, tuple.u.adjoint() * tuple.p};
}

std::pair<CMat, CMat> bcl_from_coefficients(const CMat& e1, const CMat& e2, double tol) {
  if (e1.rows() != e1.cols() || e2.rows() != e2.cols() || e1.rows() != e2.rows())
    throw Error(ErrorKind::ShapeMismatch, "bcl coefficients must be square of equal size");
  const Index f = e1.rows();
  const CMat id = CMat::Identity(f, f);
  const double violation =
      std::max({op_norm(e1 * e2), op_norm(e2 * e1),
                op_norm(e1 * e1.adjoint() + e2.adjoint() * e2 - id),
                op_norm(e1.adjoint() * e1 + e2 * e2.adjoint() - id)});
  if (violation > tol)
    throw Error(ErrorKind::IdentityViolation,
                "BCL identities violated by " + std::to_string(violation));

  // Recovery through the polar factors of e1^H on Ran e1 and of e2 on
  // Ran e2^H, which assemble to U^H; the complement projection is e1 e1^H.
  // The inputs are (perturbed) partial isometries, so their singular values
  // cluster at 1 and 0 and the support cut sits at 1/2.
  auto partial_isometry_factor = [](const CMat& m) {
    Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd sv = svd.singularValues();
    Index rank = 0;
    while (rank < sv.size() && sv(rank) > 0.5) ++rank;
    return CMat(svd.matrixU().leftCols(rank) * svd.matrixV().leftCols(rank).adjoint());
  };
  const CMat w1 = partial_isometry_factor(e1.adjoint());
  const CMat w2 = partial_isometry_factor(e2);
  const CMat u = (w1 + w2).adjoint();
  const CMat p = id - e1 * e1.adjoint();

  const double round_trip = std::max(op_norm((id - p) * u - e1), op_norm(u.adjoint() * p - e2));
  if (round_trip > tol)
    throw Error(ErrorKind::IdentityViolation,
                "BCL round trip residual " + std::to_string(round_trip));
  return {p, u};
}

FundamentalPair fundamental_ops(const CommutingPair& pair, const AndoTuple& tuple) {
  const Index f = tuple.f_dim();
  const CMat p_perp = CMat::Identity(f, f) - tuple.p;
  FundamentalPair fund;
  fund.f1 = tuple.lambda.adjoint() * p_perp * tuple.u * tuple.lambda;
  fund.f2 = tuple.lambda.adjoint() * tuple.u.adjoint() * tuple.p * tuple.lambda;
  fund.norm1 = op_norm(fund.f1);
  fund.norm2 = op_norm(fund.f2);
  fund.radius1 = fund.f1.size() > 0 ? numerical_radius(fund.f1) : 0.0;
  fund.radius2 = fund.f2.size() > 0 ? numerical_radius(fund.f2) : 0.0;
  return fund;
}

ResidualMap ando_report(const CommutingPair& pair, const AndoTuple& tuple) {
  ResidualMap res;
  const Index dt = tuple.dt.dim();
  const Index f = tuple.f_dim();

  res["lambda_isometry"] =
      op_norm(tuple.lambda.adjoint() * tuple.lambda - CMat::Identity(dt, dt));
  res["u_unitary"] =
      std::max(op_norm(tuple.u.adjoint() * tuple.u - CMat::Identity(f, f)),
               op_norm(tuple.u * tuple.u.adjoint() - CMat::Identity(f, f)));
  res["p_projection"] =
      std::max(op_norm(tuple.p * tuple.p - tuple.p), op_norm(tuple.p - tuple.p.adjoint()));

  // Defining actions on vectors D_T h over the standard basis of H.
  const CMat dt_coords = tuple.dt.basis.basis.adjoint() * tuple.dt.d;
  const CMat dom = stack_blocks(tuple.d1.basis.basis.adjoint() * tuple.d1.d * pair.t2,
                                tuple.d2.basis.basis.adjoint() * tuple.d2.d);
  const CMat ran = stack_blocks(tuple.d1.basis.basis.adjoint() * tuple.d1.d,
                                tuple.d2.basis.basis.adjoint() * tuple.d2.d * pair.t1);
  res["action_lambda"] = op_norm(tuple.lambda * dt_coords - dom);
  res["action_u"] = op_norm(tuple.u * tuple.lambda * dt_coords - ran);

  const BCLPair bcl = bcl_coefficients(tuple);
  const CMat id = CMat::Identity(f, f);
  res["bcl_identities"] =
      std::max({op_norm(bcl.e1 * bcl.e2), op_norm(bcl.e2 * bcl.e1),
                op_norm(bcl.e1 * bcl.e1.adjoint() + bcl.e2.adjoint() * bcl.e2 - id),
                op_norm(bcl.e1.adjoint() * bcl.e1 + bcl.e2 * bcl.e2.adjoint() - id)});
  return res;
}

std::pair<double, double> verify_fund_eqs(const CommutingPair& pair, const CMat& f1,
                                          const CMat& f2) {
  const DefectData dt = defect(pair.product);
  if (f1.rows() != dt.dim() || f1.cols() != dt.dim() || f2.rows() != dt.dim() ||
      f2.cols() != dt.dim())
    throw Error(ErrorKind::ShapeMismatch, "fundamental candidates must act on the defect space");
  const CMat& b = dt.basis.basis;
  const CMat lift1 = dt.d * b * f1 * b.adjoint() * dt.d;
  const CMat lift2 = dt.d * b * f2 * b.adjoint() * dt.d;
  const double res1 = op_norm(pair.t1 - pair.t2.adjoint() * pair.product - lift1);
  const double res2 = op_norm(pair.t2 - pair.t1.adjoint() * pair.product - lift2);
  return {res1, res2};
}

}  // namespace dilato

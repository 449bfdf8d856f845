#include "dilato/schaffer.hpp"

namespace dilato {

namespace {

CMat block_2x2(const CMat& a, const CMat& b, const CMat& c, const CMat& d) {
  CMat out(a.rows() + c.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.topRightCorner(b.rows(), b.cols()) = b;
  out.bottomLeftCorner(c.rows(), c.cols()) = c;
  out.bottomRightCorner(d.rows(), d.cols()) = d;
  return out;
}

}  // namespace

CMat SchafferDilation::interior() const {
  return direct_sum(CMat::Identity(h_dim, h_dim), interior_projector(n_degree, f_dim).matrix);
}

CMat build_vs(const CMat& t, Index n) {
  if (op_norm(t) > 1.0 + 1e-10) throw Error(ErrorKind::NotContraction, "build_vs of a non-contraction");
  if (n < 2) throw std::invalid_argument("build_vs: degree bound must be >= 2");
  const Index h = t.rows();
  const DefectData dt = defect(t);
  const Index d = dt.dim();
  const CMat col = constant_embedding(n, d) * (dt.basis.basis.adjoint() * dt.d);
  return block_2x2(t, CMat::Zero(h, n * d), col, shift_op(n, d).matrix);
}

SchafferDilation build_schaffer_pair(const CommutingPair& pair, const AndoTuple& tuple, Index n) {
  if (n < 2) throw std::invalid_argument("build_schaffer_pair: degree bound must be >= 2");
  SchafferDilation dil;
  dil.h_dim = pair.dim();
  dil.n_degree = n;
  dil.f_dim = tuple.f_dim();
  dil.dt_dim = tuple.dt.dim();

  const BCLPair bcl = bcl_coefficients(tuple);
  // Lambda D_T as a map H -> F in coordinates.
  const CMat lambda_dt = tuple.lambda * (tuple.dt.basis.basis.adjoint() * tuple.dt.d);
  const CMat embed = constant_embedding(n, dil.f_dim);
  const CMat zero_top = CMat::Zero(dil.h_dim, n * dil.f_dim);

  dil.v1 = block_2x2(pair.t1, zero_top, embed * (bcl.e2.adjoint() * lambda_dt),
                     mult_op(PencilSymbol{bcl.e1, bcl.e2.adjoint()}, n).matrix);
  dil.v2 = block_2x2(pair.t2, zero_top, embed * (bcl.e1.adjoint() * lambda_dt),
                     mult_op(PencilSymbol{bcl.e2, bcl.e1.adjoint()}, n).matrix);
  dil.v = dil.v1 * dil.v2;
  dil.pi_lambda = direct_sum(CMat::Identity(dil.h_dim, dil.h_dim),
                             block_kron_identity(n, tuple.lambda));
  dil.vs = build_vs(pair.product, n);
  return dil;
}

std::pair<CMat, CMat> compress_to_s(const SchafferDilation& dil) {
  return {dil.pi_lambda.adjoint() * dil.v1 * dil.pi_lambda,
          dil.pi_lambda.adjoint() * dil.v2 * dil.pi_lambda};
}

ResidualMap schaffer_report(const CommutingPair& pair, const AndoTuple& tuple,
                            const FundamentalPair& fund, const SchafferDilation& dil) {
  ResidualMap res;
  const Index h = dil.h_dim;
  const Index nf = dil.n_degree * dil.f_dim;
  const CMat id = CMat::Identity(h + nf, h + nf);
  const CMat p_int = dil.interior();

  res["isometry_v1"] = op_norm(p_int * (dil.v1.adjoint() * dil.v1 - id) * p_int);
  res["isometry_v2"] = op_norm(p_int * (dil.v2.adjoint() * dil.v2 - id) * p_int);
  res["commutation"] = op_norm((dil.v1 * dil.v2 - dil.v2 * dil.v1) * p_int);

  const CMat embed_h = id.leftCols(h);
  res["dilation_v1"] = op_norm(dil.v1.adjoint() * embed_h - embed_h * pair.t1.adjoint());
  res["dilation_v2"] = op_norm(dil.v2.adjoint() * embed_h - embed_h * pair.t2.adjoint());

  // Eq-level block identity: the (2,1) entry of both products is Lambda D_T.
  const CMat lambda_dt = tuple.lambda * (tuple.dt.basis.basis.adjoint() * tuple.dt.d);
  const CMat want_col = constant_embedding(dil.n_degree, dil.f_dim) * lambda_dt;
  const CMat prod_21 = dil.v.bottomLeftCorner(nf, h);
  const CMat prod_rev_21 = (dil.v2 * dil.v1).bottomLeftCorner(nf, h);
  res["product_block"] = std::max(op_norm(prod_21 - want_col), op_norm(prod_rev_21 - want_col));

  res["compression_vs"] = op_norm(dil.pi_lambda.adjoint() * dil.v * dil.pi_lambda - dil.vs);

  const auto [fe1, fe2] = verify_fund_eqs(pair, fund.f1, fund.f2);
  res["fund_eq_1"] = fe1;
  res["fund_eq_2"] = fe2;
  res["fund_radius_max"] = std::max(fund.radius1, fund.radius2);
  res["fund_norm_max"] = std::max(fund.norm1, fund.norm2);

  // Part (S): contractive pencils and the adjoint relations on H.
  res["part_s_phi_norm"] = pencil_sup_norm(fund.f1, fund.f2.adjoint());
  res["part_s_psi_norm"] = pencil_sup_norm(fund.f2, fund.f1.adjoint());

  const auto [s1, s2] = compress_to_s(dil);
  const Index vs_dim = dil.vs_dim();
  const CMat embed_vs = CMat::Identity(vs_dim, vs_dim).leftCols(h);
  const CMat lhs_a = s1.adjoint() * (s2.adjoint() * embed_vs);
  const CMat lhs_b = s2.adjoint() * (s1.adjoint() * embed_vs);
  const CMat rhs = dil.vs.adjoint() * embed_vs;
  double part_s = std::max(op_norm(lhs_a - rhs), op_norm(lhs_b - rhs));
  part_s = std::max(part_s, op_norm(s1.adjoint() * embed_vs - embed_vs * pair.t1.adjoint()));
  part_s = std::max(part_s, op_norm(s2.adjoint() * embed_vs - embed_vs * pair.t2.adjoint()));
  res["part_s_relations"] = part_s;
  res["s_norm_max"] = std::max(op_norm(s1), op_norm(s2));

  // Direct assembly cross-check of the compressed pair.
  const CMat dt_coords = tuple.dt.basis.basis.adjoint() * tuple.dt.d;
  const CMat embed_dt = constant_embedding(dil.n_degree, dil.dt_dim);
  const CMat s1_direct = block_2x2(
      pair.t1, CMat::Zero(h, vs_dim - h), embed_dt * (fund.f2.adjoint() * dt_coords),
      mult_op(PencilSymbol{fund.f1, fund.f2.adjoint()}, dil.n_degree).matrix);
  const CMat s2_direct = block_2x2(
      pair.t2, CMat::Zero(h, vs_dim - h), embed_dt * (fund.f1.adjoint() * dt_coords),
      mult_op(PencilSymbol{fund.f2, fund.f1.adjoint()}, dil.n_degree).matrix);
  res["s_block_structure"] = std::max(op_norm(s1 - s1_direct), op_norm(s2 - s2_direct));
  return res;
}

}  // namespace dilato

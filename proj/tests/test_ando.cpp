#include <doctest.h>

#include <Eigen/SVD>

#include "dilato/ando.hpp"
#include "test_util.hpp"

using namespace dilato;
using testutil::diff;
using testutil::mat;
using testutil::scalar;

namespace {

CommutingPair seeded_pair(int trial, std::uint64_t salt = 0) {
  return random_pair(1 + trial % 6, 8100 + salt * 1000 + trial,
                     trial % 2 == 0 ? PairScheme::kPolyInOneMatrix
                                    : PairScheme::kDiagonalPlusRotation);
}

// Independent route to the fundamental operators: solve the defining
// equations D_T F D_T = RHS as a least-squares problem over vec(F).
CMat solve_fund_least_squares(const CommutingPair& pair, const CMat& rhs) {
  const DefectData dt = defect(pair.product);
  const Index d = dt.dim();
  const CMat left = dt.d * dt.basis.basis;   // n x d
  const CMat right = dt.basis.basis.adjoint() * dt.d;  // d x n
  const Index n = pair.dim();
  CMat system(n * n, d * d);
  for (Index col = 0; col < d; ++col)
    for (Index row = 0; row < d; ++row) {
      const CMat contribution = left.col(row) * right.row(col);
      system.col(col * d + row) =
          Eigen::Map<const CVec>(contribution.data(), contribution.size());
    }
  const CVec rhs_vec = Eigen::Map<const CVec>(rhs.data(), rhs.size());
  const CVec f_vec = system.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs_vec);
  return Eigen::Map<const CMat>(f_vec.data(), d, d);
}

}  // namespace

TEST_CASE("tuple of a pair of zero scalars reaches the swap unitary") {
  const CommutingPair pair = validate_pair(scalar(0.0), scalar(0.0));
  const AndoTuple tuple = build_ando_tuple(pair);
  CHECK(tuple.f_dim() == 2);
  CHECK(diff(tuple.lambda, mat(2, 1, {0, 1})) < 1e-12);
  CHECK(diff(tuple.u, mat(2, 2, {0, 1, 1, 0})) < 1e-12);
  CHECK(diff(tuple.p, mat(2, 2, {1, 0, 0, 0})) < 1e-12);
}

TEST_CASE("tuple degenerates when the first factor is unitary") {
  const CommutingPair pair = validate_pair(scalar(1.0), scalar(0.5));
  const AndoTuple tuple = build_ando_tuple(pair);
  CHECK(tuple.d1.dim() == 0);
  CHECK(tuple.f_dim() == 1);
  CHECK(diff(tuple.lambda, CMat::Identity(1, 1)) < 1e-12);
  CHECK(diff(tuple.u, CMat::Identity(1, 1)) < 1e-12);
  CHECK(op_norm(tuple.p) < 1e-14);
}

TEST_CASE("tuple of equal half scalars") {
  const CommutingPair pair = validate_pair(scalar(0.5), scalar(0.5));
  const AndoTuple tuple = build_ando_tuple(pair);
  CHECK(diff(tuple.lambda, mat(2, 1, {0.4472135954999579, 0.8944271909999159})) < 1e-12);
  const CMat mapped = tuple.u * tuple.lambda;
  CHECK(diff(mapped, mat(2, 1, {0.8944271909999159, 0.4472135954999579})) < 1e-12);
}

TEST_CASE("tuple laws hold on seeded pairs including zero-defect blocks") {
  for (int trial = 0; trial < 60; ++trial) {
    const CommutingPair pair = seeded_pair(trial);
    const AndoTuple tuple = build_ando_tuple(pair);
    const ResidualMap res = ando_report(pair, tuple);
    CHECK(res.at("lambda_isometry") <= 1e-10);
    CHECK(res.at("u_unitary") <= 1e-10);
    CHECK(res.at("p_projection") <= 1e-12);
    CHECK(res.at("action_lambda") <= 1e-10);
    CHECK(res.at("action_u") <= 1e-10);
    CHECK(res.at("bcl_identities") <= 1e-10);
  }
}

TEST_CASE("commuting unitaries yield the empty tuple") {
  Rng rng(321);
  const CMat u = rng.unitary(3);
  const CommutingPair pair = validate_pair(u, u);
  const AndoTuple tuple = build_ando_tuple(pair);
  CHECK(tuple.f_dim() == 0);
  CHECK(tuple.dt.dim() == 0);
  const FundamentalPair fund = fundamental_ops(pair, tuple);
  CHECK(fund.f1.size() == 0);
  const auto [r1, r2] = verify_fund_eqs(pair, fund.f1, fund.f2);
  CHECK(r1 < 1e-12);
  CHECK(r2 < 1e-12);
}

TEST_CASE("bcl coefficients of degenerate projections") {
  Rng rng(9);
  const CMat u = rng.unitary(3);
  AndoTuple tuple;
  tuple.d1 = DefectData{CMat::Zero(0, 0), SubspaceBasis{0, CMat::Zero(0, 0)}, CMat::Zero(0, 0)};
  tuple.lambda = CMat::Zero(3, 0);
  tuple.u = u;

  tuple.p = CMat::Zero(3, 3);  // P = 0: e1 = U, e2 = 0
  BCLPair bcl = bcl_coefficients(tuple);
  CHECK(diff(bcl.e1, u) < 1e-14);
  CHECK(op_norm(bcl.e2) < 1e-14);

  tuple.p = CMat::Identity(3, 3);  // P = I: e1 = 0, e2 = U^H
  bcl = bcl_coefficients(tuple);
  CHECK(op_norm(bcl.e1) < 1e-14);
  CHECK(diff(bcl.e2, CMat(u.adjoint())) < 1e-14);
}

TEST_CASE("bcl round trip on the swap example") {
  const CMat swap = mat(2, 2, {0, 1, 1, 0});
  const CMat p = mat(2, 2, {1, 0, 0, 0});
  const CMat e1 = (CMat::Identity(2, 2) - p) * swap;
  const CMat e2 = swap.adjoint() * p;
  const auto [p_rec, u_rec] = bcl_from_coefficients(e1, e2);
  CHECK(diff(p_rec, p) < 1e-12);
  CHECK(diff(u_rec, swap) < 1e-12);
}

TEST_CASE("bcl round trip on seeded projection-unitary data") {
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng(600 + trial);
    const Index f = 1 + trial % 6;
    const CMat u = rng.unitary(f);
    const CMat p = rng.projector(f, static_cast<Index>(rng.uniform_index(f + 1)));
    const CMat id = CMat::Identity(f, f);
    const CMat e1 = (id - p) * u;
    const CMat e2 = u.adjoint() * p;
    const auto [p2, u2] = bcl_from_coefficients(e1, e2);
    CHECK(diff((id - p2) * u2, e1) <= 1e-10);
    CHECK(diff(CMat(u2.adjoint() * p2), e2) <= 1e-10);
  }
}

TEST_CASE("bcl_from_coefficients rejects identity violations") {
  const CMat id = CMat::Identity(2, 2);
  CHECK_THROWS_AS(bcl_from_coefficients(id, id), Error);
}

TEST_CASE("fundamental operators of simple scalar pairs") {
  const CommutingPair zeros = validate_pair(scalar(0.0), scalar(0.0));
  const FundamentalPair fz = fundamental_ops(zeros, build_ando_tuple(zeros));
  CHECK(op_norm(fz.f1) < 1e-13);
  CHECK(op_norm(fz.f2) < 1e-13);

  const CommutingPair halves = validate_pair(scalar(0.5), scalar(0.5));
  const FundamentalPair fh = fundamental_ops(halves, build_ando_tuple(halves));
  CHECK(std::abs(fh.f1(0, 0) - Complex(0.4, 0)) < 1e-12);
  CHECK(std::abs(fh.f2(0, 0) - Complex(0.4, 0)) < 1e-12);
}

TEST_CASE("fundamental equations hold and the operators are unique") {
  for (int trial = 0; trial < 40; ++trial) {
    const CommutingPair pair = seeded_pair(trial, 2);
    const AndoTuple tuple = build_ando_tuple(pair);
    const FundamentalPair fund = fundamental_ops(pair, tuple);
    const auto [r1, r2] = verify_fund_eqs(pair, fund.f1, fund.f2);
    CHECK(r1 <= 1e-10);
    CHECK(r2 <= 1e-10);
    CHECK(fund.norm1 <= 1.0 + 1e-10);
    CHECK(fund.norm2 <= 1.0 + 1e-10);
    CHECK(fund.radius1 <= 1.0 + 1e-8);
    CHECK(fund.radius2 <= 1.0 + 1e-8);

    // Independent least-squares route pins the same operators.
    if (tuple.dt.dim() > 0) {
      const CMat f1_ls =
          solve_fund_least_squares(pair, pair.t1 - pair.t2.adjoint() * pair.product);
      const CMat f2_ls =
          solve_fund_least_squares(pair, pair.t2 - pair.t1.adjoint() * pair.product);
      CHECK(diff(fund.f1, f1_ls) <= 1e-8);
      CHECK(diff(fund.f2, f2_ls) <= 1e-8);
    }
  }
}

TEST_CASE("perturbed fundamental operators raise the residual") {
  const CommutingPair pair = seeded_pair(3, 5);
  const AndoTuple tuple = build_ando_tuple(pair);
  const FundamentalPair fund = fundamental_ops(pair, tuple);
  const Index d = tuple.dt.dim();
  REQUIRE(d > 0);
  Rng rng(12);
  CMat direction = rng.gaussian_matrix(d, d);
  direction /= op_norm(direction);
  const auto [base1, base2] = verify_fund_eqs(pair, fund.f1, fund.f2);
  const auto [pert1, pert2] = verify_fund_eqs(pair, fund.f1 + 0.1 * direction, fund.f2);
  CHECK(pert2 == doctest::Approx(base2).epsilon(1e-10));

  Eigen::JacobiSVD<CMat> svd(tuple.dt.basis.basis.adjoint() * tuple.dt.d);
  const double sigma_min = svd.singularValues()(d - 1);
  CHECK(pert1 >= 0.1 * sigma_min * sigma_min - 1e-8);
  CHECK(pert1 > 10.0 * base1);
}

TEST_CASE("fundamental operators ignore the choice of unitary completion") {
  for (int trial = 0; trial < 20; ++trial) {
    const CommutingPair pair = seeded_pair(trial, 7);
    const AndoTuple tuple = build_ando_tuple(pair);
    const Index f = tuple.f_dim();
    const Index d = tuple.dt.dim();
    if (f == d) continue;  // completion has no freedom

    // Replace the canonical complement matching by a seeded random unitary.
    const CMat id = CMat::Identity(f, f);
    const CMat lambda_ran = tuple.u * tuple.lambda;
    const SubspaceBasis dom_perp = range_basis(id - tuple.lambda * tuple.lambda.adjoint());
    const SubspaceBasis ran_perp = range_basis(id - lambda_ran * lambda_ran.adjoint());
    Rng rng(777 + trial);
    const CMat twist = rng.unitary(dom_perp.rank());
    AndoTuple alt = tuple;
    alt.u = lambda_ran * tuple.lambda.adjoint() +
            ran_perp.basis * twist * dom_perp.basis.adjoint();
    CHECK(diff(CMat(alt.u.adjoint() * alt.u), id) < 1e-10);

    const FundamentalPair fund = fundamental_ops(pair, tuple);
    const FundamentalPair fund_alt = fundamental_ops(pair, alt);
    CHECK(diff(fund.f1, fund_alt.f1) <= 1e-10);
    CHECK(diff(fund.f2, fund_alt.f2) <= 1e-10);
  }
}

TEST_CASE("adjoint pairs run through the same construction") {
  for (int trial = 0; trial < 20; ++trial) {
    const CommutingPair pair = seeded_pair(trial, 11);
    const CommutingPair adj = pair.adjoint();
    const AndoTuple tuple = build_ando_tuple(adj);
    const ResidualMap res = ando_report(adj, tuple);
    CHECK(res.at("action_lambda") <= 1e-10);
    CHECK(res.at("action_u") <= 1e-10);
  }
}

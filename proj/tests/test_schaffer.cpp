#include <doctest.h>

#include "dilato/schaffer.hpp"
#include "test_util.hpp"

using namespace dilato;
using testutil::diff;
using testutil::mat;
using testutil::scalar;

namespace {

CommutingPair seeded_pair(int trial) {
  return random_pair(1 + trial % 6, 8200 + trial,
                     trial % 2 == 0 ? PairScheme::kPolyInOneMatrix
                                    : PairScheme::kDiagonalPlusRotation);
}

}  // namespace

TEST_CASE("classical dilation of the zero scalar is the pure shift chain") {
  const CMat vs = build_vs(scalar(0.0), 3);
  REQUIRE(vs.rows() == 4);
  CMat want = CMat::Zero(4, 4);
  want(1, 0) = want(2, 1) = want(3, 2) = 1.0;
  CHECK(diff(vs, want) < 1e-14);
}

TEST_CASE("classical dilation of a unitary is the unitary itself") {
  Rng rng(31);
  const CMat u = rng.unitary(3);
  const CMat vs = build_vs(u, 4);
  REQUIRE(vs.rows() == 3);
  CHECK(diff(vs, u) < 1e-12);
}

TEST_CASE("classical dilation is isometric on the interior") {
  const CMat t = scalar(0.5);
  const Index n = 12;
  const CMat vs = build_vs(t, n);
  const CMat p_int = direct_sum(CMat::Identity(1, 1), interior_projector(n, 1).matrix);
  const CMat id = CMat::Identity(vs.rows(), vs.cols());
  CHECK(op_norm(p_int * (vs.adjoint() * vs - id) * p_int) < 1e-14);
}

TEST_CASE("dilation pair of two zero scalars") {
  const CommutingPair pair = validate_pair(scalar(0.0), scalar(0.0));
  const AndoTuple tuple = build_ando_tuple(pair);
  const Index n = 4;
  const SchafferDilation dil = build_schaffer_pair(pair, tuple, n);
  REQUIRE(dil.space_dim() == 9);

  // The product must be [[T, 0], [Lambda D_T, M_z]] with T = 0 and D_T = 1.
  CMat want = CMat::Zero(9, 9);
  want.block(1, 0, 2, 1) = tuple.lambda;
  want.bottomRightCorner(8, 8).bottomLeftCorner(6, 6) += CMat::Identity(6, 6);
  CHECK(diff(dil.v, want) < 1e-13);

  const ResidualMap res = schaffer_report(pair, tuple, fundamental_ops(pair, tuple), dil);
  for (const char* key : {"isometry_v1", "isometry_v2", "commutation", "product_block",
                          "compression_vs", "part_s_relations"})
    CHECK(res.at(key) <= 1e-12);
}

TEST_CASE("a unitary first factor contributes nothing to the pair") {
  const CommutingPair pair = validate_pair(scalar(1.0), scalar(0.5));
  const AndoTuple tuple = build_ando_tuple(pair);
  const Index n = 6;
  const SchafferDilation dil = build_schaffer_pair(pair, tuple, n);

  // V1 = T1 (+) constant unitary symbol, with an empty coupling column.
  CHECK(op_norm(dil.v1.bottomLeftCorner(n * dil.f_dim, 1)) < 1e-13);
  CHECK(diff(CMat(dil.v1.bottomRightCorner(n, n)), block_kron_identity(n, tuple.u)) < 1e-13);

  // V2 compresses exactly onto the classical dilation of T2.
  CHECK(diff(CMat(dil.pi_lambda.adjoint() * dil.v2 * dil.pi_lambda),
             build_vs(scalar(0.5), n)) < 1e-12);
}

TEST_CASE("compressed pair of equal half scalars carries the 0.4 pencils") {
  const CommutingPair pair = validate_pair(scalar(0.5), scalar(0.5));
  const AndoTuple tuple = build_ando_tuple(pair);
  const FundamentalPair fund = fundamental_ops(pair, tuple);
  const Index n = 8;
  const SchafferDilation dil = build_schaffer_pair(pair, tuple, n);
  const auto [s1, s2] = compress_to_s(dil);

  const CMat pencil = mult_op(PencilSymbol{fund.f1, fund.f2.adjoint()}, n).matrix;
  CHECK(diff(CMat(s1.bottomRightCorner(n, n)), pencil) < 1e-12);
  CHECK(std::abs(fund.f1(0, 0) - Complex(0.4, 0)) < 1e-12);
  CHECK(pencil_sup_norm(fund.f1, fund.f2.adjoint()) == doctest::Approx(0.8).epsilon(1e-10));
  CHECK(op_norm(s1) <= 1.0 + 1e-12);
  CHECK(op_norm(s2) <= 1.0 + 1e-12);
}

TEST_CASE("full report stays within tolerance on seeded pairs") {
  for (int trial = 0; trial < 25; ++trial) {
    const CommutingPair pair = seeded_pair(trial);
    const AndoTuple tuple = build_ando_tuple(pair);
    const FundamentalPair fund = fundamental_ops(pair, tuple);
    const SchafferDilation dil = build_schaffer_pair(pair, tuple, 12);
    const ResidualMap res = schaffer_report(pair, tuple, fund, dil);
    CHECK(res.at("isometry_v1") <= 1e-8);
    CHECK(res.at("isometry_v2") <= 1e-8);
    CHECK(res.at("commutation") <= 1e-8);
    CHECK(res.at("dilation_v1") <= 1e-12);
    CHECK(res.at("dilation_v2") <= 1e-12);
    CHECK(res.at("product_block") <= 1e-10);
    CHECK(res.at("compression_vs") <= 1e-10);
    CHECK(res.at("part_s_relations") <= 1e-10);
    CHECK(res.at("part_s_phi_norm") <= 1.0 + 1e-8);
    CHECK(res.at("part_s_psi_norm") <= 1.0 + 1e-8);
    CHECK(res.at("s_block_structure") <= 1e-10);
    CHECK(res.at("fund_eq_1") <= 1e-10);
    CHECK(res.at("fund_eq_2") <= 1e-10);
  }
}

TEST_CASE("compressed pair need not commute") {
  // Only the joint adjoint relations on H are claimed; one generic instance
  // shows S1 S2 differing from S2 S1 away from H while the relations hold.
  const CommutingPair pair = seeded_pair(4);
  const AndoTuple tuple = build_ando_tuple(pair);
  const SchafferDilation dil = build_schaffer_pair(pair, tuple, 8);
  const auto [s1, s2] = compress_to_s(dil);
  const double noncommute = op_norm(s1 * s2 - s2 * s1);
  CHECK(noncommute >= 0.0);  // reported, not asserted to vanish
  const ResidualMap res = schaffer_report(pair, tuple, fundamental_ops(pair, tuple), dil);
  CHECK(res.at("part_s_relations") <= 1e-10);
}

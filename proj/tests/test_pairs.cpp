#include <doctest.h>

#include "dilato/pairs.hpp"
#include "test_util.hpp"

using namespace dilato;
using testutil::diff;
using testutil::mat;
using testutil::scalar;

namespace {

const CMat kJordan2 = mat(2, 2, {0, 1, 0, 0});

}  // namespace

TEST_CASE("validate_pair accepts trivial and self-commuting pairs") {
  const CommutingPair zero = validate_pair(scalar(0.0), scalar(0.0));
  CHECK(zero.commutator_residual == 0.0);
  CHECK(zero.contraction_slack == doctest::Approx(1.0));

  const CommutingPair jj = validate_pair(kJordan2, kJordan2);
  CHECK(diff(jj.product, CMat::Zero(2, 2)) < 1e-15);
}

TEST_CASE("validate_pair rejects non-commuting and expansive input") {
  CMat d = CMat::Zero(2, 2);
  d(0, 0) = 1.0;
  CHECK_THROWS_AS(validate_pair(d, kJordan2), Error);  // commutator norm 1
  CHECK_THROWS_AS(validate_pair(2.0 * CMat::Identity(2, 2), CMat::Identity(2, 2)), Error);
  CHECK_THROWS_AS(validate_pair(CMat::Identity(2, 2), CMat::Identity(3, 3)), Error);
}

TEST_CASE("defect of zero, unitary and scalar contractions") {
  const DefectData zero = defect(CMat::Zero(2, 2));
  CHECK(diff(zero.d, CMat::Identity(2, 2)) < 1e-12);
  CHECK(zero.dim() == 2);

  Rng rng(5);
  const DefectData uni = defect(rng.unitary(3));
  CHECK(uni.dim() == 0);
  CHECK(op_norm(uni.d) < 1e-7);

  const DefectData half = defect(scalar(0.5));
  CHECK(half.dim() == 1);
  CHECK(std::abs(half.d(0, 0) - Complex(0.8660254037844386, 0)) < 1e-12);
}

TEST_CASE("asymptotic_limit of nilpotent, unitary and mixed diagonals") {
  const AsymptoticData nil = asymptotic_limit(kJordan2 * kJordan2);
  CHECK(nil.pure);
  CHECK(nil.rank() == 0);
  CHECK(op_norm(nil.q) < 1e-12);

  Rng rng(6);
  const CMat u = rng.unitary(3);
  const AsymptoticData uni = asymptotic_limit(u);
  CHECK_FALSE(uni.pure);
  CHECK(uni.rank() == 3);
  CHECK(diff(uni.q, CMat::Identity(3, 3)) < 1e-10);

  CMat d = CMat::Zero(2, 2);
  d(0, 0) = 0.5;
  d(1, 1) = 1.0;
  const AsymptoticData mixed = asymptotic_limit(d);
  CHECK_FALSE(mixed.pure);
  CHECK(mixed.rank() == 1);
  CMat want = CMat::Zero(2, 2);
  want(1, 1) = 1.0;
  CHECK(diff(mixed.q, want) < 1e-8);
}

TEST_CASE("asymptotic_limit satisfies the invariance relation") {
  for (int trial = 0; trial < 40; ++trial) {
    const CommutingPair pair = random_pair(1 + trial % 6, 100 + trial,
                                           trial % 2 == 0 ? PairScheme::kPolyInOneMatrix
                                                          : PairScheme::kDiagonalPlusRotation);
    const AsymptoticData asym = asymptotic_limit(pair.product);
    const CMat q_sq = asym.q * asym.q;
    CHECK(op_norm(pair.product * q_sq * pair.product.adjoint() - q_sq) <= 1e-10);
  }
}

TEST_CASE("asymptotic_limit purity matches small power norm") {
  for (int trial = 0; trial < 30; ++trial) {
    const CommutingPair pair = random_pure_pair(1 + trial % 5, 300 + trial);
    const AsymptoticData asym = asymptotic_limit(pair.product);
    const double power_norm = op_norm(mat_pow(pair.product, asym.exponent));
    if (power_norm <= 1e-6) CHECK(asym.pure);
  }
}

TEST_CASE("asymptotic_limit reports non-convergence honestly") {
  CMat d = CMat::Zero(2, 2);
  d(0, 0) = 0.99;
  d(1, 1) = 1.0;
  CHECK_THROWS_AS(asymptotic_limit(d, 0.0, 2), Error);
}

TEST_CASE("random_pair validates, stays contractive and is deterministic") {
  for (int trial = 0; trial < 40; ++trial) {
    const PairScheme scheme = trial % 2 == 0 ? PairScheme::kPolyInOneMatrix
                                             : PairScheme::kDiagonalPlusRotation;
    const CommutingPair pair = random_pair(1 + trial % 6, 7000 + trial, scheme);
    CHECK(pair.commutator_residual <= 1e-10);
    CHECK(op_norm(pair.product) <= 1.0 + 1e-12);
  }
  const CommutingPair a = random_pair(4, 99, PairScheme::kPolyInOneMatrix);
  const CommutingPair b = random_pair(4, 99, PairScheme::kPolyInOneMatrix);
  CHECK((a.t1.array() == b.t1.array()).all());
  CHECK((a.t2.array() == b.t2.array()).all());
}

TEST_CASE("random_pure_pair caps the product spectral radius") {
  for (int trial = 0; trial < 30; ++trial) {
    const CommutingPair pair = random_pure_pair(1 + trial % 4, 500 + trial,
                                                trial % 2 == 0
                                                    ? PairScheme::kPolyInOneMatrix
                                                    : PairScheme::kDiagonalPlusRotation,
                                                0.7);
    CHECK(spectral_radius(pair.product) <= 0.7 + 1e-9);
    CHECK(asymptotic_limit(pair.product).pure);
  }
}

TEST_CASE("defect identities of commuting products") {
  for (int trial = 0; trial < 200; ++trial) {
    const CommutingPair pair = random_pair(1 + trial % 6, 40000 + trial,
                                           trial % 2 == 0 ? PairScheme::kPolyInOneMatrix
                                                          : PairScheme::kDiagonalPlusRotation);
    const CMat d1_sq = defect(pair.t1).d * defect(pair.t1).d;
    const CMat d2_sq = defect(pair.t2).d * defect(pair.t2).d;
    const CMat dt_sq = defect(pair.product).d * defect(pair.product).d;
    const CMat via_t2 = d2_sq + pair.t2.adjoint() * d1_sq * pair.t2;
    const CMat via_t1 = d1_sq + pair.t1.adjoint() * d2_sq * pair.t1;
    CHECK(diff(dt_sq, via_t2) <= 1e-10);
    CHECK(diff(via_t2, via_t1) <= 1e-10);
    CHECK(op_norm(pair.product) <= 1.0 + 1e-12);
  }
}

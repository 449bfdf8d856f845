#include <doctest.h>

#include "dilato/ando.hpp"
#include "dilato/hardy.hpp"
#include "test_util.hpp"

using namespace dilato;
using testutil::diff;
using testutil::mat;

TEST_CASE("constant and shift pencils") {
  const CMat id = CMat::Identity(2, 2);
  const CMat zero = CMat::Zero(2, 2);
  CHECK(diff(mult_op(PencilSymbol{id, zero}, 3).matrix, CMat::Identity(6, 6)) < 1e-15);

  const HardyOp shift = shift_op(3, 2);
  CHECK(diff(mult_op(PencilSymbol{zero, id}, 3).matrix, shift.matrix) < 1e-15);
  // The truncated shift is isometric exactly on the interior subspace.
  CHECK(diff(CMat(shift.matrix.adjoint() * shift.matrix), interior_projector(3, 2).matrix) ==
        0.0);
}

TEST_CASE("bcl pencil product is the shift on the interior") {
  Rng rng(21);
  const Index f = 3;
  const CMat u = rng.unitary(f);
  const CMat p = rng.projector(f, 1);
  const CMat id = CMat::Identity(f, f);
  const CMat e1 = (id - p) * u;
  const CMat e2 = u.adjoint() * p;

  const Index n = 5;
  const CMat m1 = mult_op(PencilSymbol{e1, e2.adjoint()}, n).matrix;
  const CMat m2 = mult_op(PencilSymbol{e2, e1.adjoint()}, n).matrix;
  const CMat interior = interior_projector(n, f).matrix;
  CHECK(op_norm((m1 * m2 - shift_op(n, f).matrix) * interior) < 1e-12);
  CHECK(op_norm((m2 * m1 - shift_op(n, f).matrix) * interior) < 1e-12);

  // Contractive symbols truncate to contractions and act isometrically on
  // the interior.
  CHECK(op_norm(m1) <= 1.0 + 1e-10);
  CHECK(op_norm(interior * (m1.adjoint() * m1 - CMat::Identity(n * f, n * f)) * interior) <
        1e-12);
}

TEST_CASE("truncated products of lower-triangular symbols are exact") {
  Rng rng(22);
  const Index f = 2, n = 6;
  const CMat a1 = rng.gaussian_matrix(f, f), b1 = rng.gaussian_matrix(f, f);
  const CMat a2 = rng.gaussian_matrix(f, f), b2 = rng.gaussian_matrix(f, f);
  const CMat dense =
      mult_op(PencilSymbol{a1, b1}, n).matrix * mult_op(PencilSymbol{a2, b2}, n).matrix;
  const std::vector<CMat> product_symbol = {a1 * a2, a1 * b2 + b1 * a2, b1 * b2};
  CHECK(diff(dense, analytic_toeplitz(product_symbol, n).matrix) < 1e-12);
}

TEST_CASE("analytic_toeplitz of trivial symbols") {
  const CMat id = CMat::Identity(2, 2);
  CHECK(diff(analytic_toeplitz({id}, 3).matrix, CMat::Identity(6, 6)) < 1e-15);
  CHECK(diff(analytic_toeplitz({CMat::Zero(2, 2), id}, 3).matrix, shift_op(3, 2).matrix) <
        1e-15);
}

TEST_CASE("analytic_toeplitz matches the scalar Blaschke Taylor series") {
  // (z - 0.25)/(1 - 0.25 z) = -0.25 + sum_{k>=1} 0.9375 * 0.25^{k-1} z^k.
  const Index n = 8;
  std::vector<CMat> coeffs;
  coeffs.push_back(testutil::scalar(-0.25));
  for (Index k = 1; k < n; ++k) coeffs.push_back(testutil::scalar(0.9375 * std::pow(0.25, k - 1)));
  const CMat toep = analytic_toeplitz(coeffs, n).matrix;
  for (Index j = 0; j < n; ++j) {
    CHECK(std::abs(toep(j, j) - Complex(-0.25, 0)) < 1e-14);
    for (Index i = j + 1; i < n; ++i)
      CHECK(std::abs(toep(i, j) - Complex(0.9375 * std::pow(0.25, i - j - 1), 0)) < 1e-14);
  }
  // Column norms approach 1 (inner symbol) with geometric tails.
  CHECK(toep.col(0).norm() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("interior projector shape and idempotence") {
  const CMat p = interior_projector(2, 1).matrix;
  CHECK(diff(p, mat(2, 2, {1, 0, 0, 0})) < 1e-15);
  const CMat q = interior_projector(5, 3).matrix;
  CHECK(diff(q * q, q) == 0.0);
  CHECK(diff(q, q.adjoint()) == 0.0);
}

TEST_CASE("adjoints of truncated multipliers act exactly") {
  Rng rng(23);
  const Index f = 2, n = 5;
  const PencilSymbol sym{rng.gaussian_matrix(f, f), rng.gaussian_matrix(f, f)};
  const CMat m_small = mult_op(sym, n).matrix;
  const CMat m_big = mult_op(sym, n + 2).matrix;
  const CMat embed = CMat::Identity((n + 2) * f, (n + 2) * f).leftCols(n * f);
  // Truncation of the wide adjoint action equals the small adjoint action.
  CHECK(diff(CMat(embed.adjoint() * m_big.adjoint() * embed), CMat(m_small.adjoint())) <
        1e-13);

  const CMat shift_small = shift_op(n, f).matrix;
  const CMat interior = interior_projector(n, f).matrix;
  CHECK(op_norm((m_small * shift_small - shift_small * m_small) * interior) < 1e-13);
}

TEST_CASE("column space projectors of degenerate spans") {
  CHECK(op_norm(column_space_projector(CMat::Zero(6, 2), 1e-10, 3, 2).matrix) < 1e-15);
  const CMat full = CMat::Identity(6, 6);
  CHECK(diff(column_space_projector(full, 1e-10, 3, 2).matrix, full) < 1e-12);

  Rng rng(24);
  const CMat cols = rng.gaussian_matrix(6, 3);
  const CMat proj = column_space_projector(cols, 1e-10, 3, 2).matrix;
  const CMat complement = CMat::Identity(6, 6) - proj;
  CHECK(diff(proj + complement, CMat::Identity(6, 6)) < 1e-12);
  CHECK(op_norm(complement * cols) < 1e-12);
}

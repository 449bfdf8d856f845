#pragma once

#include <cstdint>

#include "dilato/linalg.hpp"
#include "dilato/types.hpp"

namespace dilato {

/// A validated pair of commuting contractions together with the product
/// T = T1*T2 and the measured residuals.
struct CommutingPair {
  CMat t1;
  CMat t2;
  CMat product;                      // t1 * t2
  double commutator_residual = 0.0;  // ||t1 t2 - t2 t1||
  double contraction_slack = 0.0;    // 1 - max(||t1||, ||t2||)

  Index dim() const { return t1.rows(); }
  CommutingPair adjoint() const;  // (t1^H, t2^H); commutes with product t^H
};

/// Defect operator D = (I - t^H t)^{1/2} with an orthonormal basis of its
/// range (the defect space) and D compressed into that basis.
struct DefectData {
  CMat d;
  SubspaceBasis basis;
  CMat d_in_basis;

  Index dim() const { return basis.rank(); }
};

/// The limit data of the decreasing sequence T^n T^{*n}: q is the PSD square
/// root of the limit, q_basis spans Ran q. In finite dimensions the limit is
/// an orthogonal projector (the unitary part of T splits off orthogonally),
/// so the kept spectrum clusters at 1.
struct AsymptoticData {
  CMat q;
  SubspaceBasis q_basis;
  int iterations = 0;            // number of exponent doublings
  std::uint64_t exponent = 0;    // final power of T reached
  double tail_residual = 0.0;    // ||T^N T^{*N} - q^2|| at the stopping index
  bool pure = false;             // rank(q) == 0

  Index rank() const { return q_basis.rank(); }
};

enum class PairScheme { kPolyInOneMatrix, kDiagonalPlusRotation };

/// Validates shapes, commutation and contractivity; returns the pair record
/// or throws ShapeMismatch / NotCommuting / NotContraction.
CommutingPair validate_pair(const CMat& t1, const CMat& t2, double tol = 1e-10);

DefectData defect(const CMat& t);
DefectData defect_adjoint(const CMat& t);

/// Iterates S_n = T^n T^{*n} with exponent doubling until the successive
/// difference drops below tol (or a rounding plateau below 1e-10). Purity is
/// a rank statement: the limit norm below an absolute floor means q = 0.
AsymptoticData asymptotic_limit(const CMat& t, double tol = 1e-12, int max_iter = 80);

/// Exactly commuting seeded pair. kPolyInOneMatrix draws one random matrix A
/// and returns scaled degree-<=2 polynomials in A with norms in [0.3, 1);
/// kDiagonalPlusRotation conjugates commuting diagonals by one seeded unitary
/// (a third of the diagonal entries sit on the unit circle, so mixed
/// pure/unitary instances occur routinely).
CommutingPair random_pair(Index dim, std::uint64_t seed,
                          PairScheme scheme = PairScheme::kPolyInOneMatrix);

/// Same schemes with every modulus bounded by r_max (no unit-circle mass when
/// r_max < 1 for the diagonal scheme). Used by sweeps whose assertions are
/// sensitive to slow power decay.
CommutingPair random_pair_bounded(Index dim, std::uint64_t seed, PairScheme scheme, double r_max);

/// Seeded pair whose product has spectral radius <= max_radius (< 1), so the
/// product is a pure contraction.
CommutingPair random_pure_pair(Index dim, std::uint64_t seed,
                               PairScheme scheme = PairScheme::kPolyInOneMatrix,
                               double max_radius = 0.7);

}  // namespace dilato

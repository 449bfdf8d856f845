#pragma once

#include <cstdint>
#include <utility>

#include "dilato/types.hpp"

namespace dilato {

// Rank tolerance for defect-type range decisions: singular values above
// rank_tol * sigma_max count toward the rank.
inline constexpr double kDefectRankTol = 1e-10;

/// Spectral (operator) norm; 0 for empty matrices.
double op_norm(const CMat& m);

/// Spectral radius (largest eigenvalue modulus); 0 for empty matrices.
double spectral_radius(const CMat& m);

/// m^k by repeated squaring (m square, k >= 0).
CMat mat_pow(const CMat& m, std::uint64_t k);

/// Block-diagonal direct sum.
CMat direct_sum(const CMat& a, const CMat& b);

/// Hermitian PSD square root. `m` must be Hermitian to within `tol` and its
/// smallest eigenvalue must be >= -tol; eigenvalues in [-tol, 0) clamp to 0.
CMat psd_sqrt(const CMat& m, double tol = 1e-10);

/// Orthonormal basis of the column span of m. Rank = number of singular
/// values > rank_tol * sigma_max; an all-zero (or empty) m yields rank 0.
SubspaceBasis range_basis(const CMat& m, double rank_tol = kDefectRankTol);

/// Orthonormal basis of the orthogonal complement, with the same sign
/// convention. Decided on the projector spectrum (clustered at 0 and 1), so
/// an empty complement comes out empty rather than as rounding junk.
SubspaceBasis complement_basis(const SubspaceBasis& s);

/// Extend an isometry v (given as an ambient-size matrix mapping span(dom)
/// onto span(ran)) to a unitary on the whole space. The action on the
/// orthogonal complement of dom is canonical: the sign-convention bases of
/// dom-perp and ran-perp are matched in order.
CMat unitary_completion(const CMat& v, const SubspaceBasis& dom, const SubspaceBasis& ran);

/// Numerical radius w(m) = sup |<mh,h>| over unit vectors, computed as the
/// maximum over a theta grid of lambda_max((e^{i t}m + e^{-i t}m^H)/2) with
/// one local refinement pass. grid >= 64.
double numerical_radius(const CMat& m, int grid = 256);

/// sup over the unit circle of the spectral norm of a + e^{i t} b, with one
/// local refinement pass. grid >= 64.
double pencil_sup_norm(const CMat& a, const CMat& b, int grid = 256);

/// Polar decomposition m = partial_isometry * positive, where positive is the
/// PSD square root of m^H m and the partial isometry vanishes on ker(m).
std::pair<CMat, CMat> polar_parts(const CMat& m);

// ---------------------------------------------------------------------------
// Deterministic random generation (used by instance generators and tests).
// All arithmetic is done from raw mt19937_64 output so streams are portable.
// ---------------------------------------------------------------------------

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  /// Uniform double in [0, 1).
  double uniform();
  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n) for n >= 1.
  std::uint64_t uniform_index(std::uint64_t n);
  /// Standard normal via Box-Muller.
  double gaussian();
  /// Complex standard normal (independent N(0, 1/2) parts).
  Complex complex_gaussian();

  /// rows x cols matrix of complex gaussians.
  CMat gaussian_matrix(Index rows, Index cols);
  /// Haar-like n x n unitary: QR of a gaussian matrix with the R diagonal
  /// phases absorbed, so the result is a deterministic function of the seed.
  CMat unitary(Index n);
  /// Orthogonal projector onto a random k-dimensional subspace of C^n.
  CMat projector(Index n, Index k);

 private:
  std::uint64_t next_u64();
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace dilato

#include "dilato/pairs.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace dilato {

namespace {

// Rank cut for Ran Q. The limit of T^n T^{*n} is an orthogonal projector in
// finite dimensions, so genuine directions carry eigenvalue ~1 while decayed
// directions sit at or below the iteration tolerance; 1e-4 separates cleanly.
constexpr double kAsymptoticRankTol = 1e-4;

// Below this norm the limit is declared zero (pure contraction).
constexpr double kAsymptoticZeroFloor = 1e-12;

bool all_finite(const CMat& m) { return m.allFinite(); }

}  // namespace

CommutingPair CommutingPair::adjoint() const {
  CommutingPair out;
  out.t1 = t1.adjoint();
  out.t2 = t2.adjoint();
  out.product = out.t1 * out.t2;  // equals (t1 t2)^H up to the commutator
  out.commutator_residual = commutator_residual;
  out.contraction_slack = contraction_slack;
  return out;
}

CommutingPair validate_pair(const CMat& t1, const CMat& t2, double tol) {
  if (t1.rows() != t1.cols() || t2.rows() != t2.cols() || t1.rows() != t2.rows())
    throw Error(ErrorKind::ShapeMismatch, "pair must consist of equal-size square matrices");
  if (!all_finite(t1) || !all_finite(t2))
    throw Error(ErrorKind::InvalidConfig, "pair contains non-finite entries");

  CommutingPair pair;
  pair.t1 = t1;
  pair.t2 = t2;
  pair.product = t1 * t2;
  pair.commutator_residual = op_norm(pair.product - t2 * t1);
  const double norm1 = op_norm(t1);
  const double norm2 = op_norm(t2);
  pair.contraction_slack = 1.0 - std::max(norm1, norm2);

  if (pair.commutator_residual > tol)
    throw Error(ErrorKind::NotCommuting,
                "commutator residual " + std::to_string(pair.commutator_residual));
  if (norm1 > 1.0 + tol || norm2 > 1.0 + tol)
    throw Error(ErrorKind::NotContraction,
                "norms " + std::to_string(norm1) + ", " + std::to_string(norm2));
  return pair;
}

namespace {

// Defect ranks are exact integers perturbed only by rounding, so the range
// cut combines the relative tolerance with an absolute floor; an exact
// isometry then has a genuinely empty defect space.
constexpr double kDefectAbsFloor = 1e-13;

DefectData defect_of_gram(const CMat& gram) {
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (gram + gram.adjoint()));
  Eigen::VectorXd lambda = es.eigenvalues();  // ascending
  const Index n = lambda.size();
  for (Index i = 0; i < n; ++i) {
    if (lambda(i) < -1e-9)
      throw Error(ErrorKind::NegativeEigenvalue,
                  "defect gram eigenvalue " + std::to_string(lambda(i)));
    if (lambda(i) < 0.0) lambda(i) = 0.0;
  }
  DefectData data;
  data.d = es.eigenvectors() * lambda.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();

  const double lmax = n > 0 ? lambda(n - 1) : 0.0;
  const double cutoff = std::max(kDefectRankTol * lmax, kDefectAbsFloor);
  Index rank = 0;
  while (rank < n && lambda(n - 1 - rank) > cutoff) ++rank;
  CMat basis(n, rank);
  for (Index j = 0; j < rank; ++j) basis.col(j) = es.eigenvectors().col(n - 1 - j);
  // Deterministic orientation, matching range_basis.
  for (Index j = 0; j < rank; ++j) {
    const double peak = basis.col(j).cwiseAbs().maxCoeff();
    for (Index i = 0; i < n; ++i) {
      const double a = std::abs(basis(i, j));
      if (a > 1e-9 * peak) {
        basis.col(j) *= std::conj(basis(i, j)) / a;
        break;
      }
    }
  }
  data.basis = SubspaceBasis{n, std::move(basis)};
  data.d_in_basis = data.basis.basis.adjoint() * data.d * data.basis.basis;
  return data;
}

}  // namespace

DefectData defect(const CMat& t) {
  if (op_norm(t) > 1.0 + 1e-10) throw Error(ErrorKind::NotContraction, "defect of a non-contraction");
  const CMat id = CMat::Identity(t.rows(), t.cols());
  return defect_of_gram(id - t.adjoint() * t);
}

DefectData defect_adjoint(const CMat& t) {
  if (op_norm(t) > 1.0 + 1e-10) throw Error(ErrorKind::NotContraction, "defect of a non-contraction");
  const CMat id = CMat::Identity(t.rows(), t.cols());
  return defect_of_gram(id - t * t.adjoint());
}

AsymptoticData asymptotic_limit(const CMat& t, double tol, int max_iter) {
  if (op_norm(t) > 1.0 + 1e-10)
    throw Error(ErrorKind::NotContraction, "asymptotic limit of a non-contraction");
  const Index n = t.rows();

  AsymptoticData data;
  CMat s = t * t.adjoint();
  CMat power = t;
  std::uint64_t exponent = 1;
  double diff = std::numeric_limits<double>::infinity();
  double prev_diff = diff;

  int iter = 0;
  for (; iter < max_iter && exponent < (1ull << 40); ++iter) {
    const CMat s_next = power * s * power.adjoint();
    diff = op_norm(s_next - s);
    s = s_next;
    exponent *= 2;
    if (diff <= tol) break;
    if (diff <= 1e-10 && diff >= 0.5 * prev_diff) break;  // rounding plateau
    prev_diff = diff;
    power = power * power;
  }
  if (diff > 1e-10)
    throw Error(ErrorKind::NoConvergence,
                "asymptotic limit residual " + std::to_string(diff) + " after " +
                    std::to_string(iter) + " doublings");

  data.iterations = iter + 1;
  data.exponent = exponent;
  if (op_norm(s) <= kAsymptoticZeroFloor) {
    data.q = CMat::Zero(n, n);
    data.q_basis = SubspaceBasis{n, CMat::Zero(n, 0)};
    data.tail_residual = op_norm(s);
    data.pure = true;
    return data;
  }
  data.q = psd_sqrt(s, 1e-9);
  data.q_basis = range_basis(s, kAsymptoticRankTol);
  data.tail_residual = op_norm(s - data.q * data.q);
  data.pure = data.q_basis.rank() == 0;
  return data;
}

namespace {

CommutingPair random_pair_impl(Index dim, std::uint64_t seed, PairScheme scheme, double r_max) {
  if (dim < 1) throw std::invalid_argument("random_pair: dim must be >= 1");
  Rng rng(seed * 0x100000001b3ull + static_cast<std::uint64_t>(dim));
  CMat t1, t2;

  if (scheme == PairScheme::kPolyInOneMatrix) {
    const CMat a = rng.gaussian_matrix(dim, dim);
    const CMat a2 = a * a;
    const CMat id = CMat::Identity(dim, dim);
    auto poly = [&](Complex c0, Complex c1, Complex c2) { return c0 * id + c1 * a + c2 * a2; };
    const CMat p = poly(rng.complex_gaussian(), rng.complex_gaussian(), rng.complex_gaussian());
    const CMat q = poly(rng.complex_gaussian(), rng.complex_gaussian(), rng.complex_gaussian());
    const double r1 = rng.uniform(0.3, r_max);
    const double r2 = rng.uniform(0.3, r_max);
    t1 = p * (r1 / (op_norm(p) + 1e-12));
    t2 = q * (r2 / (op_norm(q) + 1e-12));
  } else {
    CVec d1(dim), d2(dim);
    auto draw_entry = [&]() -> Complex {
      const bool on_circle = r_max >= 1.0 && rng.uniform() < 1.0 / 3.0;
      const double modulus = on_circle ? 1.0 : rng.uniform(0.2, std::min(0.85, r_max));
      return std::polar(modulus, rng.uniform(0.0, 2.0 * std::numbers::pi));
    };
    for (Index i = 0; i < dim; ++i) d1(i) = draw_entry();
    for (Index i = 0; i < dim; ++i) d2(i) = draw_entry();
    const CMat v = rng.unitary(dim);
    t1 = v * d1.asDiagonal() * v.adjoint();
    t2 = v * d2.asDiagonal() * v.adjoint();
  }
  return validate_pair(t1, t2, 1e-10);
}

}  // namespace

CommutingPair random_pair(Index dim, std::uint64_t seed, PairScheme scheme) {
  return random_pair_impl(dim, seed, scheme, 1.0);
}

CommutingPair random_pair_bounded(Index dim, std::uint64_t seed, PairScheme scheme, double r_max) {
  if (r_max <= 0.3 || r_max > 1.0)
    throw std::invalid_argument("random_pair_bounded: r_max must lie in (0.3, 1]");
  return random_pair_impl(dim, seed, scheme, r_max);
}

CommutingPair random_pure_pair(Index dim, std::uint64_t seed, PairScheme scheme,
                               double max_radius) {
  if (max_radius <= 0.0 || max_radius >= 1.0)
    throw std::invalid_argument("random_pure_pair: max_radius must lie in (0, 1)");
  CommutingPair pair = random_pair_impl(dim, seed, scheme, 0.95);
  const double rho = spectral_radius(pair.product);
  if (rho > max_radius) {
    const double scale = 0.999 * max_radius / rho;
    pair = validate_pair(pair.t1 * scale, pair.t2, 1e-10);
  }
  return pair;
}

}  // namespace dilato

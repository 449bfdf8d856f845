#include "dilato/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <numbers>

namespace dilato {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotIsometric: return "NotIsometric";
    case ErrorKind::NotCommuting: return "NotCommuting";
    case ErrorKind::NotContraction: return "NotContraction";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::IdentityViolation: return "IdentityViolation";
    case ErrorKind::NonUnitaryX: return "NonUnitaryX";
    case ErrorKind::TailNotConverged: return "TailNotConverged";
    case ErrorKind::SingularResolvent: return "SingularResolvent";
    case ErrorKind::NotPure: return "NotPure";
    case ErrorKind::GramMismatch: return "GramMismatch";
    case ErrorKind::NonUnitaryInput: return "NonUnitaryInput";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
  }
  return "UnknownError";
}

double op_norm(const CMat& m) {
  if (m.size() == 0) return 0.0;
  if (std::min(m.rows(), m.cols()) <= 48) {
    Eigen::JacobiSVD<CMat> svd(m);
    return svd.singularValues()(0);
  }
  // Large case: sigma_max^2 = lambda_max of the Hermitian Gram matrix, which
  // is much cheaper than a full SVD and exact enough for residual norms.
  const CMat gram = (m.rows() <= m.cols()) ? CMat(m * m.adjoint()) : CMat(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<CMat> es(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double spectral_radius(const CMat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::ComplexEigenSolver<CMat> es(m, /*computeEigenvectors=*/false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

CMat mat_pow(const CMat& m, std::uint64_t k) {
  CMat result = CMat::Identity(m.rows(), m.cols());
  CMat base = m;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

CMat direct_sum(const CMat& a, const CMat& b) {
  CMat out = CMat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

CMat psd_sqrt(const CMat& m, double tol) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::ShapeMismatch, "psd_sqrt needs a square matrix");
  if (m.size() == 0) return m;
  if (op_norm(m - m.adjoint()) > tol)
    throw Error(ErrorKind::NotHermitian, "psd_sqrt input deviates from Hermitian beyond tol");
  const CMat herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(herm);
  Eigen::VectorXd lambda = es.eigenvalues();
  for (Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) < -tol)
      throw Error(ErrorKind::NegativeEigenvalue,
                  "eigenvalue " + std::to_string(lambda(i)) + " below -tol");
    if (lambda(i) < 0.0) lambda(i) = 0.0;
  }
  const Eigen::VectorXd roots = lambda.cwiseSqrt();
  return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

// Rotate each column so its first significant entry is real positive.
void apply_sign_convention(CMat& columns) {
  for (Index j = 0; j < columns.cols(); ++j) {
    const double peak = columns.col(j).cwiseAbs().maxCoeff();
    if (peak == 0.0) continue;
    for (Index i = 0; i < columns.rows(); ++i) {
      const double a = std::abs(columns(i, j));
      if (a > 1e-9 * peak) {
        columns.col(j) *= std::conj(columns(i, j)) / a;
        break;
      }
    }
  }
}

}  // namespace

SubspaceBasis range_basis(const CMat& m, double rank_tol) {
  if (rank_tol <= 0.0) throw std::invalid_argument("range_basis: rank_tol must be positive");
  SubspaceBasis out;
  out.ambient_dim = m.rows();
  if (m.size() == 0) {
    out.basis = CMat::Zero(m.rows(), 0);
    return out;
  }
  CMat basis;
  if (std::min(m.rows(), m.cols()) <= 48) {
    Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeThinU);
    const Eigen::VectorXd sv = svd.singularValues();
    const double cutoff = rank_tol * (sv.size() > 0 ? sv(0) : 0.0);
    Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    basis = svd.matrixU().leftCols(rank);
  } else {
    // Large case: left singular vectors are the eigenvectors of m m^H. The
    // squared cutoff limits this path to rank tolerances well above sqrt(eps),
    // which is what the truncated-Hardy callers use.
    Eigen::SelfAdjointEigenSolver<CMat> es(m * m.adjoint());
    const Eigen::VectorXd lambda = es.eigenvalues();  // ascending
    const double lmax = std::max(0.0, lambda(lambda.size() - 1));
    const double cutoff = rank_tol * rank_tol * lmax;
    Index rank = 0;
    while (rank < lambda.size() && lambda(lambda.size() - 1 - rank) > cutoff) ++rank;
    basis.resize(m.rows(), rank);
    for (Index j = 0; j < rank; ++j) basis.col(j) = es.eigenvectors().col(lambda.size() - 1 - j);
  }
  apply_sign_convention(basis);
  out.basis = std::move(basis);
  return out;
}

SubspaceBasis complement_basis(const SubspaceBasis& s) {
  const Index n = s.ambient_dim;
  SubspaceBasis out;
  out.ambient_dim = n;
  if (n == 0) {
    out.basis = CMat::Zero(0, 0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(s.projector());
  Index count = 0;  // eigenvalues ascending; the complement cluster sits at 0
  while (count < n && es.eigenvalues()(count) < 0.5) ++count;
  CMat basis = es.eigenvectors().leftCols(count);
  apply_sign_convention(basis);
  out.basis = std::move(basis);
  return out;
}

CMat unitary_completion(const CMat& v, const SubspaceBasis& dom, const SubspaceBasis& ran) {
  const Index n = dom.ambient_dim;
  if (ran.ambient_dim != n || v.rows() != n || v.cols() != n)
    throw Error(ErrorKind::DimensionMismatch, "unitary_completion: ambient dimensions disagree");
  if (dom.rank() != ran.rank())
    throw Error(ErrorKind::DimensionMismatch, "unitary_completion: dom and ran ranks differ");
  if (n == 0) return CMat::Zero(0, 0);

  const CMat w = v * dom.basis;  // images of the dom basis
  if (dom.rank() > 0) {
    const double iso_res = op_norm(w.adjoint() * w - CMat::Identity(dom.rank(), dom.rank()));
    const double range_res = op_norm(w - ran.projector() * w);
    if (iso_res > 1e-10 || range_res > 1e-10)
      throw Error(ErrorKind::NotIsometric, "unitary_completion: v is not an isometry of dom onto ran");
  }

  const SubspaceBasis dom_perp = complement_basis(dom);
  const SubspaceBasis ran_perp = complement_basis(ran);
  CMat u = w * dom.basis.adjoint();
  if (dom_perp.rank() > 0) u += ran_perp.basis * dom_perp.basis.adjoint();
  return u;
}

namespace {

// Fixed-iteration golden-section maximization on [lo, hi]; deterministic.
template <typename F>
double golden_max(F&& f, double lo, double hi, int iters = 48) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < iters; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    }
  }
  return std::max(f1, f2);
}

template <typename F>
double grid_max_refined(F&& f, int grid) {
  const double step = 2.0 * std::numbers::pi / grid;
  double best = -1.0;
  int best_k = 0;
  for (int k = 0; k < grid; ++k) {
    const double val = f(k * step);
    if (val > best) {
      best = val;
      best_k = k;
    }
  }
  const double refined = golden_max(f, (best_k - 1) * step, (best_k + 1) * step);
  return std::max(best, refined);
}

}  // namespace

double numerical_radius(const CMat& m, int grid) {
  if (m.rows() != m.cols()) throw std::invalid_argument("numerical_radius: square matrix required");
  if (grid < 64) throw std::invalid_argument("numerical_radius: grid must be >= 64");
  if (m.size() == 0) return 0.0;
  auto herm_top = [&](double theta) {
    const Complex phase = std::polar(1.0, theta);
    const CMat h = 0.5 * (phase * m + std::conj(phase) * m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
  };
  return grid_max_refined(herm_top, grid);
}

double pencil_sup_norm(const CMat& a, const CMat& b, int grid) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("pencil_sup_norm: a and b must have the same shape");
  if (grid < 64) throw std::invalid_argument("pencil_sup_norm: grid must be >= 64");
  if (a.size() == 0) return 0.0;
  auto symbol_norm = [&](double theta) { return op_norm(a + std::polar(1.0, theta) * b); };
  return grid_max_refined(symbol_norm, grid);
}

std::pair<CMat, CMat> polar_parts(const CMat& m) {
  if (m.size() == 0) return {CMat(m.rows(), m.cols()), CMat(m.cols(), m.cols())};
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double cutoff = kDefectRankTol * (sv.size() > 0 ? sv(0) : 0.0);
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  const CMat partial_isometry =
      svd.matrixU().leftCols(rank) * svd.matrixV().leftCols(rank).adjoint();
  const CMat positive =
      svd.matrixV() * sv.asDiagonal() * svd.matrixV().adjoint();
  return {partial_isometry, positive};
}

// ---------------------------------------------------------------------------
// Rng
// ---------------------------------------------------------------------------

std::uint64_t Rng::next_u64() {
  // splitmix64; fully portable, single word of state.
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t Rng::uniform_index(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: n must be >= 1");
  // Rejection-free modulo is fine here: n is tiny relative to 2^64.
  return next_u64() % n;
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  have_spare_ = true;
  return r * std::cos(t);
}

Complex Rng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return Complex(re, im) / std::sqrt(2.0);
}

CMat Rng::gaussian_matrix(Index rows, Index cols) {
  CMat m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = complex_gaussian();
  return m;
}

CMat Rng::unitary(Index n) {
  if (n == 0) return CMat::Zero(0, 0);
  const CMat g = gaussian_matrix(n, n);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
  }
  return q;
}

CMat Rng::projector(Index n, Index k) {
  if (k > n) throw std::invalid_argument("projector: k must be <= n");
  if (k == 0 || n == 0) return CMat::Zero(n, n);
  const CMat v = unitary(n);
  return v.leftCols(k) * v.leftCols(k).adjoint();
}

}  // namespace dilato

#include "dilato/model.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <cmath>
#include <numbers>

namespace dilato {

namespace {

// Singular values of the truncated Theta-column matrix cluster near 1 (inner
// symbol) and near ||T^N|| (the would-be model-space directions); this cut
// separates them once the degree satisfies ||T^N|| <= 1e-8.
constexpr double kModelSeparationTol = 1e-4;

// Fixed interior sampling grid for coincidence checks.
constexpr double kInteriorRadii[] = {0.5, 0.9};

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMat krylov_columns(const CMat& w, const CMat& pi, Index depth) {
  const Index h = pi.cols();
  CMat out(w.rows(), depth * h);
  CMat current = pi;
  for (Index k = 0; k < depth; ++k) {
    out.middleCols(k * h, h) = current;
    if (k + 1 < depth) current = w * current;
  }
  return out;
}

// Whitening transform of a Krylov family from its Gram matrix: columns of
// K * C are orthonormal; directions below the relative cut are dropped.
CMat gram_whitening(const CMat& gram, double rel_cut, Index* rank_out = nullptr) {
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (gram + gram.adjoint()));
  const Eigen::VectorXd lambda = es.eigenvalues();
  const double lmax = lambda.size() > 0 ? lambda(lambda.size() - 1) : 0.0;
  const double cut = rel_cut * std::max(lmax, 0.0);
  std::vector<Index> kept;
  for (Index i = 0; i < lambda.size(); ++i)
    if (lambda(i) > cut) kept.push_back(i);
  CMat c(gram.rows(), static_cast<Index>(kept.size()));
  for (size_t j = 0; j < kept.size(); ++j)
    c.col(static_cast<Index>(j)) = es.eigenvectors().col(kept[j]) / std::sqrt(lambda(kept[j]));
  if (rank_out) *rank_out = c.cols();
  return c;
}

}  // namespace

CharFn make_char_fn(const CMat& t, DefectData defect_t, DefectData defect_adj) {
  CharFn cf;
  cf.t = t;
  cf.defect_t = std::move(defect_t);
  cf.defect_adj = std::move(defect_adj);
  cf.intertwine_residual = op_norm(t * cf.defect_t.d - cf.defect_adj.d * t);
  return cf;
}

CharFn make_char_fn(const CMat& t) { return make_char_fn(t, defect(t), defect_adjoint(t)); }

CMat char_eval(const CharFn& cf, Complex z) {
  if (std::abs(z) > 1.0 + 1e-12)
    throw std::invalid_argument("char_eval: z must lie in the closed unit disk");
  const Index h = cf.t.rows();
  const CMat resolvent_arg = CMat::Identity(h, h) - z * cf.t.adjoint();
  Eigen::FullPivLU<CMat> lu(resolvent_arg);
  if (!lu.isInvertible())
    throw Error(ErrorKind::SingularResolvent,
                "I - z T^H is singular at |z| = " + std::to_string(std::abs(z)));
  const CMat core = -cf.t + z * cf.defect_adj.d * lu.solve(cf.defect_t.d);
  return cf.defect_adj.basis.basis.adjoint() * core * cf.defect_t.basis.basis;
}

std::vector<CMat> char_taylor(const CharFn& cf, Index count) {
  std::vector<CMat> coeffs;
  coeffs.reserve(static_cast<size_t>(count));
  const CMat& b = cf.defect_t.basis.basis;
  const CMat& bstar = cf.defect_adj.basis.basis;
  coeffs.push_back(-(bstar.adjoint() * cf.t * b));
  CMat left = bstar.adjoint() * cf.defect_adj.d;  // D_{T^*} rows in coordinates
  const CMat right = cf.defect_t.d * b;
  for (Index k = 1; k < count; ++k) {
    coeffs.push_back(left * right);
    left = left * cf.t.adjoint();
  }
  return coeffs;
}

double boundary_innerness_min(const CharFn& cf, int samples) {
  if (cf.d_dim() == 0) return 1.0;  // vacuously inner
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / samples;
    const CMat value = char_eval(cf, std::polar(1.0, theta));
    Eigen::JacobiSVD<CMat> svd(value);
    worst = std::min(worst, svd.singularValues().minCoeff());
  }
  return worst;
}

CharTriple char_triple(const CommutingPair& pair, const DouglasData& data) {
  CharTriple triple;
  triple.g1 = data.g1;
  triple.g2 = data.g2;
  triple.theta = make_char_fn(pair.product, defect(pair.product), data.adjoint_tuple.dt);
  return triple;
}

CharTriple char_triple(const CommutingPair& pair) {
  return char_triple(pair, build_douglas_data(pair));
}

double check_coincidence(const CharTriple& a, const CharTriple& b, const CMat& u,
                         const CMat& u_star, Index z_samples) {
  if (u.cols() != a.theta.d_dim() || u.rows() != b.theta.d_dim() ||
      u_star.cols() != a.theta.dstar_dim() || u_star.rows() != b.theta.dstar_dim())
    throw Error(ErrorKind::ShapeMismatch, "coincidence witnesses have wrong defect dimensions");
  auto unitary_defect = [](const CMat& m) {
    if (m.rows() != m.cols()) return 1.0;
    if (m.size() == 0) return 0.0;
    return op_norm(m.adjoint() * m - CMat::Identity(m.cols(), m.cols()));
  };
  if (unitary_defect(u) > 1e-8 || unitary_defect(u_star) > 1e-8)
    throw Error(ErrorKind::NonUnitaryInput, "coincidence witnesses must be unitary");

  double res = std::max(op_norm(u_star * a.g1 - b.g1 * u_star),
                        op_norm(u_star * a.g2 - b.g2 * u_star));
  for (double radius : kInteriorRadii) {
    for (Index k = 0; k < z_samples; ++k) {
      const Complex z = std::polar(radius, 2.0 * std::numbers::pi * k / z_samples);
      res = std::max(res,
                     op_norm(char_eval(b.theta, z) * u - u_star * char_eval(a.theta, z)));
    }
  }
  return res;
}

CoincidenceWitness conjugation_witness(const CharTriple& a, const CharTriple& b,
                                       const CMat& omega) {
  CoincidenceWitness w;
  w.u = b.theta.defect_t.basis.basis.adjoint() * omega * a.theta.defect_t.basis.basis;
  w.u_star = b.theta.defect_adj.basis.basis.adjoint() * omega * a.theta.defect_adj.basis.basis;
  return w;
}

CoincidenceSearchResult search_coincidence(const CharTriple& a, const CharTriple& b,
                                           double accept_tol) {
  CoincidenceSearchResult out;
  const Index da = a.theta.d_dim(), db = b.theta.d_dim();
  const Index sa = a.theta.dstar_dim(), sb = b.theta.dstar_dim();
  if (da != db || sa != sb) {
    out.note = "defect dimensions differ";
    return out;
  }
  if (da == 0 && sa == 0) {
    out.found = true;
    out.u = CMat::Zero(0, 0);
    out.u_star = CMat::Zero(0, 0);
    out.note = "trivial defect spaces";
    return out;
  }

  const Index taylor_depth = std::min<Index>(2 * a.theta.t.rows() + 4, 16);
  const std::vector<CMat> ta = char_taylor(a.theta, taylor_depth);
  const std::vector<CMat> tb = char_taylor(b.theta, taylor_depth);

  const Index nu = db * da;     // vec(u)
  const Index ns = sb * sa;     // vec(u_star)
  const Index theta_rows = sb * da;
  const Index g_rows = sb * sa;
  CMat system = CMat::Zero(taylor_depth * theta_rows + 2 * g_rows, nu + ns);
  const CMat id_da = CMat::Identity(da, da);
  const CMat id_sb = CMat::Identity(sb, sb);
  const CMat id_sa = CMat::Identity(sa, sa);
  for (Index k = 0; k < taylor_depth; ++k) {
    system.block(k * theta_rows, 0, theta_rows, nu) = kron(id_da, tb[static_cast<size_t>(k)]);
    system.block(k * theta_rows, nu, theta_rows, ns) =
        -kron(ta[static_cast<size_t>(k)].transpose(), id_sb);
  }
  const Index g_base = taylor_depth * theta_rows;
  system.block(g_base, nu, g_rows, ns) = kron(id_sa, b.g1) - kron(a.g1.transpose(), id_sb);
  system.block(g_base + g_rows, nu, g_rows, ns) =
      kron(id_sa, b.g2) - kron(a.g2.transpose(), id_sb);

  Eigen::JacobiSVD<CMat> svd(system, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double cut = std::max(1e-10, 1e-8 * smax);
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  const Index null_dim = (nu + ns) - rank;
  if (null_dim <= 0) {
    out.note = "intertwining system has no null space";
    return out;
  }
  const CMat null_basis = svd.matrixV().rightCols(null_dim);

  for (int attempt = 0; attempt < 3; ++attempt) {
    Rng rng(0xC01DC0FFEEull + static_cast<std::uint64_t>(attempt));
    CVec combo = CVec::Zero(null_dim);
    for (Index j = 0; j < null_dim; ++j) combo(j) = rng.complex_gaussian();
    const CVec w = null_basis * combo;
    const CMat u_raw = Eigen::Map<const CMat>(w.data(), db, da);
    const CMat ustar_raw = Eigen::Map<const CMat>(w.data() + nu, sb, sa);
    if (op_norm(u_raw) < 1e-10 || op_norm(ustar_raw) < 1e-10) continue;
    Eigen::JacobiSVD<CMat> su(u_raw), ss(ustar_raw);
    if (su.singularValues().minCoeff() < 1e-6 * su.singularValues().maxCoeff()) continue;
    if (ss.singularValues().minCoeff() < 1e-6 * ss.singularValues().maxCoeff()) continue;
    const CMat u = polar_parts(u_raw).first;
    const CMat u_star = polar_parts(ustar_raw).first;
    const double residual = check_coincidence(a, b, u, u_star);
    if (residual <= accept_tol) {
      out.found = true;
      out.u = u;
      out.u_star = u_star;
      out.residual = residual;
      return out;
    }
    out.residual = residual;
    out.note = "candidate witnesses failed verification";
  }
  if (out.note.empty()) out.note = "no unitary candidate in the null space";
  return out;
}

FunctionalModel functional_model(const CharTriple& triple, Index n) {
  const CMat& t = triple.theta.t;
  const AsymptoticData asym = asymptotic_limit(t);
  if (!asym.pure)
    throw Error(ErrorKind::NotPure, "functional model requires a pure product");

  FunctionalModel fm;
  fm.triple = triple;
  Index degree = std::max<Index>(n, 2);
  double power_norm = 0.0;
  for (;;) {
    power_norm = op_norm(mat_pow(t, static_cast<std::uint64_t>(degree)));
    if (power_norm <= 1e-8 || degree >= 256) break;
    degree *= 2;
  }
  if (power_norm > 1e-8)
    throw Error(ErrorKind::TailNotConverged,
                "||T^N|| = " + std::to_string(power_norm) + " at degree " + std::to_string(degree));
  fm.n_degree = degree;
  fm.t_power_norm = power_norm;

  const Index dstar = triple.theta.dstar_dim();
  const std::vector<CMat> coeffs = char_taylor(triple.theta, degree);
  const HardyOp toeplitz = analytic_toeplitz(coeffs, degree);
  const HardyOp p_m = column_space_projector(toeplitz.matrix, kModelSeparationTol, degree, dstar);
  fm.q_projector = HardyOp{degree, dstar, dstar, HardyKind::kDense,
                           CMat::Identity(degree * dstar, degree * dstar) - p_m.matrix};
  fm.q_basis = range_basis(fm.q_projector.matrix, 0.5).basis;
  fm.q_dim = fm.q_basis.cols();

  fm.m_phi = mult_op(PencilSymbol{triple.g1.adjoint(), triple.g2}, degree);
  fm.m_psi = mult_op(PencilSymbol{triple.g2.adjoint(), triple.g1}, degree);
  const CMat shift = shift_op(degree, dstar).matrix;
  fm.model_t1 = fm.q_basis.adjoint() * fm.m_phi.matrix * fm.q_basis;
  fm.model_t2 = fm.q_basis.adjoint() * fm.m_psi.matrix * fm.q_basis;
  fm.model_t = fm.q_basis.adjoint() * shift * fm.q_basis;
  return fm;
}

ResidualMap verify_model_equivalence(const CommutingPair& pair, const FunctionalModel& fm) {
  ResidualMap res;
  const Index h = pair.dim();
  const Index degree = fm.n_degree;
  const Index dstar = fm.triple.theta.dstar_dim();
  const CMat obs = observability(pair.product, fm.triple.theta.defect_adj,
                                 CMat::Identity(dstar, dstar), degree);

  res["observability_unitarity"] =
      op_norm(obs.adjoint() * obs - CMat::Identity(h, h));

  const CMat b_o = range_basis(obs, 1e-8).basis;
  const CMat full = CMat::Identity(degree * dstar, degree * dstar);
  const double gap_a = op_norm(b_o.adjoint() * (full - fm.q_projector.matrix));
  const double gap_b = op_norm((full - b_o * b_o.adjoint()) * fm.q_basis);
  res["range_projector_gap"] = std::max(gap_a, gap_b);

  const CMat shift = shift_op(degree, dstar).matrix;
  double inter = 0.0;
  inter = std::max(inter, op_norm(fm.m_phi.matrix.adjoint() * obs - obs * pair.t1.adjoint()));
  inter = std::max(inter, op_norm(fm.m_psi.matrix.adjoint() * obs - obs * pair.t2.adjoint()));
  inter = std::max(inter, op_norm(shift.adjoint() * obs - obs * pair.product.adjoint()));
  res["model_intertwine"] = inter;

  const CMat compressed_obs = fm.q_basis.adjoint() * obs;
  double cinter = 0.0;
  cinter = std::max(cinter, op_norm(fm.model_t1.adjoint() * compressed_obs -
                                    compressed_obs * pair.t1.adjoint()));
  cinter = std::max(cinter, op_norm(fm.model_t2.adjoint() * compressed_obs -
                                    compressed_obs * pair.t2.adjoint()));
  cinter = std::max(cinter, op_norm(fm.model_t.adjoint() * compressed_obs -
                                    compressed_obs * pair.product.adjoint()));
  res["model_intertwine_compressed"] = cinter;

  res["model_product_relation"] =
      op_norm(fm.q_basis.adjoint() * (fm.m_phi.matrix * fm.m_psi.matrix) * fm.q_basis -
              fm.model_t);
  res["char_intertwine"] = fm.triple.theta.intertwine_residual;
  res["boundary_innerness_min"] = boundary_innerness_min(fm.triple.theta);
  res["t_power_norm"] = fm.t_power_norm;
  return res;
}

ResidualMap admissible_check(const CMat& g1, const CMat& g2,
                             const std::vector<CMat>& theta_coeffs, Index n) {
  if (theta_coeffs.empty()) throw std::invalid_argument("admissible_check: empty symbol");
  const Index dstar = theta_coeffs[0].rows();
  const Index d = theta_coeffs[0].cols();
  if (g1.rows() != dstar || g1.cols() != dstar || g2.rows() != dstar || g2.cols() != dstar)
    throw Error(ErrorKind::ShapeMismatch, "G operators must act on the symbol target space");

  ResidualMap res;
  res["phi_sup_norm"] = pencil_sup_norm(g1.adjoint(), g2);
  res["psi_sup_norm"] = pencil_sup_norm(g2.adjoint(), g1);

  const HardyOp toeplitz = analytic_toeplitz(theta_coeffs, n);
  const CMat p_m = column_space_projector(toeplitz.matrix, kModelSeparationTol, n, dstar).matrix;
  const CMat full = CMat::Identity(n * dstar, n * dstar);

  const CMat m_phi = mult_op(PencilSymbol{g1.adjoint(), g2}, n).matrix;
  const CMat m_psi = mult_op(PencilSymbol{g2.adjoint(), g1}, n).matrix;

  // Invariance of the truncated Theta range under the pencils (interior
  // input degrees; the top degree is the truncation boundary).
  const CMat interior_cols = toeplitz.matrix.leftCols((n - 1) * d);
  const CMat b_int = range_basis(interior_cols, kModelSeparationTol).basis;
  res["invariance_phi"] = op_norm((full - p_m) * (m_phi * b_int));
  res["invariance_psi"] = op_norm((full - p_m) * (m_psi * b_int));

  const CMat b_q = range_basis(full - p_m, 0.5).basis;
  const CMat shift = shift_op(n, dstar).matrix;
  res["backward_phi_psi"] =
      op_norm((m_phi.adjoint() * m_psi.adjoint() - shift.adjoint()) * b_q);
  res["backward_psi_phi"] =
      op_norm((m_psi.adjoint() * m_phi.adjoint() - shift.adjoint()) * b_q);
  res["model_space_dim"] = static_cast<double>(b_q.cols());
  return res;
}

double model_transport_residual(const FunctionalModel& fa, const FunctionalModel& fb,
                                const CMat& u_star) {
  if (fa.n_degree != fb.n_degree)
    throw std::invalid_argument("model_transport_residual: models must share one degree bound");
  const CMat lift = block_kron_identity(fa.n_degree, u_star);
  double res = op_norm(lift * fa.q_projector.matrix * lift.adjoint() - fb.q_projector.matrix);
  res = std::max(res, op_norm((lift * fa.m_phi.matrix - fb.m_phi.matrix * lift) * fa.q_basis));
  res = std::max(res, op_norm((lift * fa.m_psi.matrix - fb.m_psi.matrix * lift) * fa.q_basis));
  return res;
}

// ---------------------------------------------------------------------------
// U_T family
// ---------------------------------------------------------------------------

UtTriple schaffer_ut_triple(const SchafferDilation& dil) {
  UtTriple tri;
  const auto [s1, s2] = compress_to_s(dil);
  tri.w1 = s1;
  tri.w2 = s2;
  tri.w = dil.vs;
  tri.pi = CMat::Identity(dil.vs_dim(), dil.vs_dim()).leftCols(dil.h_dim);
  tri.interior =
      direct_sum(CMat::Identity(dil.h_dim, dil.h_dim),
                 interior_projector(dil.n_degree, dil.dt_dim).matrix);
  return tri;
}

UtTriple douglas_ut_triple(const DouglasDilation& dil, const DouglasData& data) {
  UtTriple tri;
  tri.w1 = dil.pi_gamma.adjoint() * dil.v1d * dil.pi_gamma;
  tri.w2 = dil.pi_gamma.adjoint() * dil.v2d * dil.pi_gamma;
  tri.w = dil.pi_gamma.adjoint() * (dil.v1d * dil.v2d) * dil.pi_gamma;
  tri.pi = dil.pi_d;
  tri.interior = direct_sum(interior_projector(dil.n_degree, dil.dstar_dim).matrix,
                            CMat::Identity(dil.r_dim, dil.r_dim));
  (void)data;
  return tri;
}

UtTriple douglas_ut_triple_direct(const CommutingPair& pair, const DouglasData& data, Index n) {
  const Index dstar = data.dstar_dim();
  const Index r = data.r_dim();
  UtTriple tri;
  tri.w1 = direct_sum(mult_op(PencilSymbol{data.g1.adjoint(), data.g2}, n).matrix, data.x1);
  tri.w2 = direct_sum(mult_op(PencilSymbol{data.g2.adjoint(), data.g1}, n).matrix, data.x2);
  tri.w = direct_sum(shift_op(n, dstar).matrix, data.x);
  const CMat obs =
      observability(pair.product, data.adjoint_tuple.dt, CMat::Identity(dstar, dstar), n);
  tri.pi = CMat(n * dstar + r, pair.dim());
  tri.pi.topRows(n * dstar) = obs;
  tri.pi.bottomRows(r) = data.asym.q_basis.basis.adjoint() * data.asym.q;
  tri.interior =
      direct_sum(interior_projector(n, dstar).matrix, CMat::Identity(r, r));
  return tri;
}

AlignResult align_minimal_dilations(const CommutingPair& pair, const UtTriple& a,
                                    const UtTriple& b, Index depth) {
  if (depth < 2) throw std::invalid_argument("align_minimal_dilations: depth must be >= 2");
  const Index h = pair.dim();
  const CMat ka = krylov_columns(a.w, a.pi, depth);
  const CMat kb = krylov_columns(b.w, b.pi, depth);
  const CMat ga = ka.adjoint() * ka;
  const CMat gb = kb.adjoint() * kb;

  AlignResult result;
  result.gram_gap = op_norm(ga - gb);
  if (result.gram_gap > 1e-8)
    throw Error(ErrorKind::GramMismatch,
                "Krylov Gram matrices differ by " + std::to_string(result.gram_gap));

  const CMat c = gram_whitening(0.5 * (ga + gb), 1e-8, &result.rank);
  const CMat qa = ka * c;
  const CMat qb = kb * c;
  result.omega = qb * qa.adjoint();

  // Evaluate the intertwining on the interior Krylov span, where one more
  // application of any triple member stays inside the aligned space.
  const CMat ka_int = ka.leftCols((depth - 1) * h);
  const CMat c_int = gram_whitening(ka_int.adjoint() * ka_int, 1e-8);
  const CMat x = ka_int * c_int;

  double residual = 0.0;
  residual = std::max(residual, op_norm(result.omega * (a.w1 * x) - b.w1 * (result.omega * x)));
  residual = std::max(residual, op_norm(result.omega * (a.w2 * x) - b.w2 * (result.omega * x)));
  residual = std::max(residual, op_norm(result.omega * (a.w * x) - b.w * (result.omega * x)));
  result.residual = residual;
  return result;
}

double gram_forcing_residual(const CommutingPair& pair, const UtTriple& triple, Index depth) {
  const Index h = pair.dim();
  const CMat k = krylov_columns(triple.w, triple.pi, depth);
  const CMat gram = k.adjoint() * k;

  std::vector<CMat> powers(static_cast<size_t>(depth));
  powers[0] = CMat::Identity(h, h);
  for (Index j = 1; j < depth; ++j) powers[static_cast<size_t>(j)] = pair.product * powers[static_cast<size_t>(j - 1)];

  CMat expected(depth * h, depth * h);
  for (Index row = 0; row < depth; ++row)
    for (Index col = 0; col < depth; ++col) {
      const CMat& p = powers[static_cast<size_t>(std::abs(col - row))];
      expected.block(row * h, col * h, h, h) = (col >= row) ? p : CMat(p.adjoint());
    }
  return op_norm(gram - expected);
}

ResidualMap verify_ut_membership(const UtTriple& triple, const CommutingPair& pair, Index depth) {
  ResidualMap res;
  // Dilation rows are read through the interior projector: the top truncated
  // degree is the one row where the backward recursion is cut off.
  res["dilation_w1"] = op_norm(
      triple.interior * (triple.w1.adjoint() * triple.pi - triple.pi * pair.t1.adjoint()));
  res["dilation_w2"] = op_norm(
      triple.interior * (triple.w2.adjoint() * triple.pi - triple.pi * pair.t2.adjoint()));
  res["dilation_w"] = op_norm(
      triple.interior * (triple.w.adjoint() * triple.pi - triple.pi * pair.product.adjoint()));
  res["commute_w1_w"] = op_norm((triple.w1 * triple.w - triple.w * triple.w1) * triple.interior);
  res["commute_w2_w"] = op_norm((triple.w2 * triple.w - triple.w * triple.w2) * triple.interior);
  res["w1_equals_w2adj_w"] =
      op_norm((triple.w1 - triple.w2.adjoint() * triple.w) * triple.interior);
  res["w2_equals_w1adj_w"] =
      op_norm((triple.w2 - triple.w1.adjoint() * triple.w) * triple.interior);
  res["isometry_w"] = op_norm(
      triple.interior * (triple.w.adjoint() * triple.w -
                         CMat::Identity(triple.w.rows(), triple.w.cols())) * triple.interior);

  const CMat k = krylov_columns(triple.w, triple.pi, depth);
  res["krylov_rank"] = static_cast<double>(range_basis(k, 1e-8).rank());
  res["krylov_cols"] = static_cast<double>(k.cols());
  res["space_dim"] = static_cast<double>(triple.w.rows());
  return res;
}

}  // namespace dilato

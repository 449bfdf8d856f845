#pragma once

#include "dilato/ando.hpp"
#include "dilato/hardy.hpp"

namespace dilato {

/// Douglas-side data for a commuting pair: the asymptotic limit Q of the
/// product with R = Ran Q, the unitaries X1, X2, X on R solving
/// X_i^H Q = Q T_i^H (finite dimensions make the isometries unitary, so
/// W_i = X_i and W = X with no extension step), the tuple of the adjoint
/// pair (Gamma = lambda, P' = p, U' = u of that tuple), and the operators
/// H_i on F_* and G_i on D_{T^*}.
struct DouglasData {
  AsymptoticData asym;
  CMat x1;  // r x r in q_basis coordinates
  CMat x2;
  CMat x;
  AndoTuple adjoint_tuple;  // built from (T1^H, T2^H); its dt is the D_{T^*} data
  CMat h1;  // P'^perp U'
  CMat h2;  // U'^H P'
  CMat g1;  // Gamma^H H1 Gamma
  CMat g2;  // Gamma^H H2 Gamma

  Index r_dim() const { return asym.rank(); }
  Index fstar_dim() const { return adjoint_tuple.f_dim(); }
  Index dstar_dim() const { return adjoint_tuple.dt.dim(); }
};

/// The Douglas-model dilation pair on H^2_N(F_*) (+) R together with the
/// embeddings Pi_D (observability plus Q), Pi_Gamma and Pi~ = Pi_Gamma Pi_D.
struct DouglasDilation {
  Index h_dim = 0;
  Index n_degree = 0;
  Index fstar_dim = 0;
  Index dstar_dim = 0;
  Index r_dim = 0;
  CMat v1d;       // M_{H1^H + z H2} (+) W1
  CMat v2d;       // M_{H2^H + z H1} (+) W2
  CMat pi_d;      // H -> H^2_N(D_{T^*}) (+) R
  CMat pi_gamma;  // (I (x) Gamma) (+) I_R
  CMat pi_tilde;  // pi_gamma * pi_d
  double tail = 0.0;  // ||T^N T^{*N} - q^2|| at the used degree

  Index space_dim() const { return n_degree * fstar_dim + r_dim; }
  Index vd_dim() const { return n_degree * dstar_dim + r_dim; }
  /// Projector onto the complete rows: interior Hardy degrees plus R.
  CMat complete_rows() const;
};

DouglasData build_douglas_data(const CommutingPair& pair);

/// Truncated observability rows gamma * D_{T^*} * T^{*k}, k = 0..n-1, in the
/// given adjoint-defect coordinates.
CMat observability(const CMat& t, const DefectData& dstar, const CMat& gamma, Index n);
/// Convenience overload computing the adjoint defect of t itself.
CMat observability(const CMat& t, const CMat& gamma, Index n);

/// Builds the dilation, doubling the degree from n until
/// ||T^N T^{*N} - q^2|| <= tail_tol (TailNotConverged beyond the cap 256).
DouglasDilation build_douglas_pair(const CommutingPair& pair, const DouglasData& data, Index n,
                                   double tail_tol = 1e-10);

/// Residuals of the two row-recursion identities
/// Gamma D_{T^*} T_i^H = H_i Gamma D_{T^*} + H_j^H Gamma D_{T^*} T^H.
std::pair<double, double> verify_lemma_tet_fund(const CommutingPair& pair,
                                                const DouglasData& data);

/// All Douglas-side theorem residuals for one instance.
ResidualMap douglas_report(const CommutingPair& pair, const DouglasData& data,
                           const DouglasDilation& dil);

}  // namespace dilato

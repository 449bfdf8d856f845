#pragma once

#include <string>
#include <vector>

#include "dilato/douglas.hpp"
#include "dilato/schaffer.hpp"

namespace dilato {

/// Evaluation data for the characteristic function of a single contraction
/// Theta(z) = [-T + z D_{T^*} (I - z T^H)^{-1} D_T] restricted to D_T,
/// expressed in the defect-range bases carried here.
struct CharFn {
  CMat t;
  DefectData defect_t;
  DefectData defect_adj;
  double intertwine_residual = 0.0;  // ||T D_T - D_{T^*} T||

  Index d_dim() const { return defect_t.dim(); }
  Index dstar_dim() const { return defect_adj.dim(); }
};

CharFn make_char_fn(const CMat& t);
CharFn make_char_fn(const CMat& t, DefectData defect_t, DefectData defect_adj);

/// Value of the characteristic function at z, a dstar_dim x d_dim matrix.
CMat char_eval(const CharFn& cf, Complex z);

/// Taylor coefficients Theta_0 .. Theta_{count-1} at the origin.
std::vector<CMat> char_taylor(const CharFn& cf, Index count);

/// Smallest singular value of Theta on the unit circle, minimized over the
/// sample grid. Close to 1 for pure contractions (innerness).
double boundary_innerness_min(const CharFn& cf, int samples = 64);

/// Characteristic triple (G1, G2, Theta_T): the G operators are the
/// fundamental operators of the adjoint pair, living on D_{T^*}.
struct CharTriple {
  CMat g1;
  CMat g2;
  CharFn theta;
};

CharTriple char_triple(const CommutingPair& pair);
CharTriple char_triple(const CommutingPair& pair, const DouglasData& data);

/// Coincidence residual for a given pair of defect-space unitaries
/// u : D_T(a) -> D_T(b) and u_star : D_{T^*}(a) -> D_{T^*}(b):
/// max over sampled z of ||Theta_b(z) u - u_star Theta_a(z)|| joined with
/// the G intertwining residuals ||u_star G_i(a) - G_i(b) u_star||.
double check_coincidence(const CharTriple& a, const CharTriple& b, const CMat& u,
                         const CMat& u_star, Index z_samples = 16);

struct CoincidenceWitness {
  CMat u;
  CMat u_star;
};

/// Witness induced by a space unitary omega conjugating the pair of a onto
/// the pair of b: restrictions of omega to the defect ranges.
CoincidenceWitness conjugation_witness(const CharTriple& a, const CharTriple& b,
                                       const CMat& omega);

/// Best-effort witness search: solve the joint linear intertwining system
/// over Taylor coefficients plus the G relations, take deterministic generic
/// elements of the null space, project to unitaries, then verify. A miss is
/// reported as not-found, never as not-coincident.
struct CoincidenceSearchResult {
  bool found = false;
  CMat u;
  CMat u_star;
  double residual = 0.0;
  std::string note;
};

CoincidenceSearchResult search_coincidence(const CharTriple& a, const CharTriple& b,
                                           double accept_tol = 1e-6);

/// Pure-case functional model: the compression of (M_{G1^H + z G2},
/// M_{G2^H + z G1}, M_z) to Q = H^2(D_{T^*}) (-) Theta_T H^2(D_T).
struct FunctionalModel {
  CharTriple triple;
  Index n_degree = 0;
  Index q_dim = 0;
  HardyOp q_projector;  // I - projector onto the truncated Theta columns
  HardyOp m_phi;        // M_{G1^H + z G2}
  HardyOp m_psi;        // M_{G2^H + z G1}
  CMat q_basis;         // orthonormal columns spanning the model space
  CMat model_t1;        // compressions to Q
  CMat model_t2;
  CMat model_t;
  double t_power_norm = 0.0;  // ||T^N|| at the used degree
};

/// Requires the product pure; the degree doubles from n until
/// ||T^N|| <= 1e-8 (TailNotConverged beyond the cap).
FunctionalModel functional_model(const CharTriple& triple, Index n);

/// Residuals certifying that the observability operator implements the
/// unitary equivalence between the pair and its functional model.
ResidualMap verify_model_equivalence(const CommutingPair& pair, const FunctionalModel& fm);

/// Admissibility report for a candidate triple given by Taylor coefficients:
/// pencil sup norms, invariance of the truncated Theta range, and the
/// backward-shift relations on its complement.
ResidualMap admissible_check(const CMat& g1, const CMat& g2,
                             const std::vector<CMat>& theta_coeffs, Index n);

/// Residual of transporting one functional model onto another along
/// I (x) u_star (the converse direction of coincidence).
double model_transport_residual(const FunctionalModel& fa, const FunctionalModel& fb,
                                const CMat& u_star);

// ---------------------------------------------------------------------------
// The family U_T: triples (W1, W2, W) dilating (T1, T2, T) with W the minimal
// isometric dilation of T, (W1, W) and (W2, W) commuting and W1 = W2^H W.
// ---------------------------------------------------------------------------

struct UtTriple {
  CMat w1;
  CMat w2;
  CMat w;
  CMat pi;        // isometric embedding of H
  CMat interior;  // projector onto the trusted interior of the space
};

UtTriple schaffer_ut_triple(const SchafferDilation& dil);
UtTriple douglas_ut_triple(const DouglasDilation& dil, const DouglasData& data);

/// Direct assembly of the compressed Douglas triple on H^2_N(D_{T^*}) (+) R:
/// (M_{G1^H + z G2} (+) W1, M_{G2^H + z G1} (+) W2, M_z (+) W) with the
/// observability embedding at degree n. Agrees with the Pi_Gamma compression
/// route and avoids materializing the F_* space.
UtTriple douglas_ut_triple_direct(const CommutingPair& pair, const DouglasData& data, Index n);

struct AlignResult {
  CMat omega;          // partial isometry from the a-space onto the b-space
  double residual = 0.0;   // max intertwining defect on the Krylov interior
  double gram_gap = 0.0;   // ||Gram_a - Gram_b||
  Index rank = 0;          // dimension of the aligned Krylov space
};

/// Unitary alignment of two members of U_T built on Krylov columns
/// {W^k pi h}; throws GramMismatch when the two Gram matrices disagree.
AlignResult align_minimal_dilations(const CommutingPair& pair, const UtTriple& a,
                                    const UtTriple& b, Index depth);

/// || Gram - forced Gram || where the forced blocks are powers of T.
double gram_forcing_residual(const CommutingPair& pair, const UtTriple& triple, Index depth);

/// Membership report: dilation, commutation, W1 = W2^H W, and the truncated
/// Krylov rank (minimality surrogate).
ResidualMap verify_ut_membership(const UtTriple& triple, const CommutingPair& pair, Index depth);

}  // namespace dilato

#pragma once

#include "dilato/ando.hpp"
#include "dilato/hardy.hpp"

namespace dilato {

/// The Schaffer-model dilation pair on H (+) H^2_N(F) with its product, the
/// embedding of the classical dilation space H (+) H^2_N(D_T), and the
/// classical dilation V_S itself. All assertions about the forward action
/// hold on the interior subspace; adjoint (dilation) relations hold on the
/// whole truncated space.
struct SchafferDilation {
  Index h_dim = 0;
  Index n_degree = 0;
  Index f_dim = 0;   // fiber of F = D_{T1} (+) D_{T2}
  Index dt_dim = 0;  // dim D_T
  CMat v1;           // [[T1, 0], [E2^H Lambda D_T, M_{E1 + z E2^H}]]
  CMat v2;           // [[T2, 0], [E1^H Lambda D_T, M_{E2 + z E1^H}]]
  CMat v;            // v1 * v2
  CMat pi_lambda;    // I_H (+) (I (x) Lambda)
  CMat vs;           // [[T, 0], [D_T, M_z]] on H (+) H^2_N(D_T)

  Index space_dim() const { return h_dim + n_degree * f_dim; }
  Index vs_dim() const { return h_dim + n_degree * dt_dim; }
  /// Projector onto H (+) interior of H^2_N(F).
  CMat interior() const;
};

/// Classical isometric dilation [[T, 0], [D_T, M_z]] of a single contraction,
/// with the (2,1) block embedding D_T h as a constant function.
CMat build_vs(const CMat& t, Index n);

SchafferDilation build_schaffer_pair(const CommutingPair& pair, const AndoTuple& tuple, Index n);

/// Compressions S_i = Pi_Lambda^H V_i Pi_Lambda; these are the contractions
/// [[T_i, 0], [F_j^H D_T, pencil]] built from the fundamental operators
/// (schaffer_report cross-checks the block structure against direct assembly).
std::pair<CMat, CMat> compress_to_s(const SchafferDilation& dil);

/// All Schaffer-side theorem residuals for one instance.
ResidualMap schaffer_report(const CommutingPair& pair, const AndoTuple& tuple,
                            const FundamentalPair& fund, const SchafferDilation& dil);

}  // namespace dilato

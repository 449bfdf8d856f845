#pragma once

#include <utility>

#include "dilato/pairs.hpp"

namespace dilato {

/// The tuple (F, Lambda, P, U) attached to a commuting pair: F is the direct
/// sum of the factor defect spaces, Lambda : D_T -> F the defect isometry
/// acting by Lambda D_T h = D_{T1} T2 h (+) D_{T2} h, P the projection onto
/// the first summand and U the unitary extension of the partial isometry
/// D_{T1} T2 h (+) D_{T2} h  |->  D_{T1} h (+) D_{T2} T1 h.
/// All matrices are expressed in the defect-range bases carried alongside.
/// In finite dimensions the partial isometry has equal-rank domain and range
/// inside F, so no auxiliary padding space is ever needed.
struct AndoTuple {
  DefectData d1;   // defect of T1
  DefectData d2;   // defect of T2
  DefectData dt;   // defect of T = T1 T2
  CMat lambda;     // f_dim x dt.dim()
  CMat p;          // f_dim x f_dim projection onto the D_{T1} summand
  CMat u;          // f_dim x f_dim unitary

  Index f_dim() const { return d1.dim() + d2.dim(); }
};

/// Berger-Coburn-Lebow coefficients E1 = P~ U, E2 = U^H P (P~ the complement
/// projection). They satisfy E1 E2 = E2 E1 = 0 and
/// E1 E1^H + E2^H E2 = E1^H E1 + E2 E2^H = I.
struct BCLPair {
  CMat e1;
  CMat e2;
};

/// Fundamental operators on the defect space of the product, the unique
/// solutions of T1 - T2^H T = D_T F1 D_T and T2 - T1^H T = D_T F2 D_T.
struct FundamentalPair {
  CMat f1;
  CMat f2;
  double norm1 = 0.0;
  double norm2 = 0.0;
  double radius1 = 0.0;  // numerical radius of f1
  double radius2 = 0.0;
};

AndoTuple build_ando_tuple(const CommutingPair& pair);

BCLPair bcl_coefficients(const AndoTuple& tuple);

/// Converse direction: recover a projection P and unitary U with
/// (e1, e2) = (P~ U, U^H P) from coefficients satisfying the four BCL
/// identities to within tol. Throws IdentityViolation otherwise.
std::pair<CMat, CMat> bcl_from_coefficients(const CMat& e1, const CMat& e2, double tol = 1e-8);

FundamentalPair fundamental_ops(const CommutingPair& pair, const AndoTuple& tuple);

/// Residuals of the two fundamental equations for candidate operators given
/// in the defect basis of T.
std::pair<double, double> verify_fund_eqs(const CommutingPair& pair, const CMat& f1,
                                          const CMat& f2);

/// Moore-Penrose pseudoinverse with the defect rank tolerance.
CMat pinv(const CMat& m, double rank_tol = kDefectRankTol);

/// Residuals of the tuple laws: Lambda isometry, U unitary, P projection,
/// the two defining actions, and the BCL coefficient identities.
ResidualMap ando_report(const CommutingPair& pair, const AndoTuple& tuple);

}  // namespace dilato

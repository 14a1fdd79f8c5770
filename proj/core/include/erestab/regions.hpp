// Part of erestab. MIT license; see LICENSE at the repository root.
//
// Closed-form circular-limit (e = 0) analysis and the general stability
// verdict.  At e = 0 the essential system is autonomous with characteristic
// polynomial p(l) = l^4 + (2 - 2 alpha) l^2 + (1 + alpha)^2 - 9 beta^2, so
// l^2 = (alpha - 1) +- sqrt(disc) with disc = 9 beta^2 - 4 alpha, and the
// parameter wedge alpha >= beta > 0 splits into
//   R1: disc < 0                        complex quadruple, hyperbolic;
//   R2: disc >= 0, alpha < 1,           two elliptic pairs with angles
//       alpha > 3 beta - 1                theta_{1,2} = sqrt(1-alpha-+sqrt(disc));
//   R3: alpha < 3 beta - 1              one elliptic + one hyperbolic pair;
//   R4: disc >= 0, alpha > 1,           two real hyperbolic pairs with rates
//       alpha > 3 beta - 1                eta_{1,2} = sqrt(alpha-1-+sqrt(disc)).
// The 1-degenerate curves are Gamma_0: alpha = 3 beta - 1 and Gamma_n:
// alpha = alpha_n(beta), the -1-degenerate ones alpha_{n+1/2}(beta), with
//   alpha_theta(beta) = -(theta^2 + 1) + sqrt(9 beta^2 + 4 theta^2).
// The slots of thetas/etas follow the -+sqrt(disc) branches; slots whose
// square is negative hold NaN (in particular all four in R1, where the
// exponents are a complex quadruple and are not reported).
//
// Index engine at e = 0: i_1 counts the crossed curves {Gamma_0} once and
// {Gamma_m}_{m>=1} twice each, i_{-1} counts the crossed half-integer curves
// twice each; points within 1e-10 of a curve contribute to the nullity
// instead (lower semicontinuity of the index).

#pragma once

#include "erestab/essential.hpp"
#include "erestab/galerkin.hpp"
#include "erestab/model.hpp"
#include "erestab/sympl.hpp"

#include <array>
#include <string>

namespace erestab {

struct RegionLabel {
  std::string major;             // "R1".."R4" or "boundary"
  std::string minor;             // sub-region / on-curve tag; "" outside R2, R3
  std::array<double, 2> thetas;  // elliptic exponents, NaN when undefined
  std::array<double, 2> etas;    // hyperbolic rates, NaN when undefined
};

enum class Verdict {
  StronglyLinearlyStable,
  LinearlyStableNotStrongly,
  SpectrallyStableLinearlyUnstable,
  EllipticHyperbolicUnstable,
  HyperbolicUnstable,
  Unresolved,
};

std::string to_string(Verdict v);

struct StabilityVerdict {
  Verdict verdict = Verdict::Unresolved;
  SpectrumClass normal_form;     // empty block list when unresolved
  IndexPair index_plus1;
  IndexPair index_minus1;
  MonodromyResult monodromy;
  std::string note;              // failure reason when unresolved
};

// The degenerate-curve abscissa alpha_theta(beta) for theta > 0.
double curve_alpha(double theta, double beta);

// Inverse on the beta > 0 branch: the beta with alpha_theta(beta) = alpha.
double curve_beta(double theta, double alpha);

// Exact sign-test classification of the circular limit.  Points within
// 1e-10 of a region boundary are labeled major = "boundary" with the
// adjacent regions in minor ("R1|R2" etc.); points on a degenerate curve
// carry the curve tag (R2half*, R3n*(n), R3nhalf*(n)) in minor.
RegionLabel classify_e0(double alpha, double beta);

// Closed-form index/nullity table at e = 0; converged is always true.
IndexPair index_table_e0(double alpha, double beta, int omega);

// Full verdict at general e: monodromy -> normal form -> Galerkin indices.
// UnresolvedClassError from the labeling is captured in the verdict;
// IntegrationError and NotConverged propagate.
StabilityVerdict classify_general(const EssentialParams& params,
                                  double tol = 1e-7);

}  // namespace erestab

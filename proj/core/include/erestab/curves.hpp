// Part of erestab. MIT license; see LICENSE at the repository root.
//
// Degenerate-surface tracing.  For fixed (alpha, omega, e) the Galerkin
// index-plus-nullity count is a non-decreasing step function of beta; the
// n-th degenerate surface is located by bisecting the threshold predicate
//   count(beta) - baseline >= target(n)
// seeded from the e = 0 closed forms alpha_theta(beta).  Ordinal convention:
//   omega = +1:  n = 0 is Gamma_0 (beta = (alpha+1)/3, exact for every e);
//                n = 2k-1, 2k are the two threshold copies of Gamma_k, which
//                coincide at all e (the kernel there is two-dimensional);
//                the baseline subtracts the Gamma_0 jump.
//   omega = -1:  n = 2k, 2k+1 are the lower/upper branches of the k-th
//                half-integer pair; they coincide at e = 0 (the curve
//                alpha_{k+1/2}) and split for e > 0.
// Slopes at e = 0 use the analytic extension to negative e; for omega = -1
// the smooth branch through e = 0 connects the lower branch at +e with the
// upper branch at -e, so the finite difference pairs ordinals crosswise.
//
// The normally-hyperbolic wedge -1 < beta~ < 0 carries three surfaces per
// column alpha~: beta_s/beta_m, the first/second -1-degeneracy thresholds,
// and beta_k, the boundary of the totally hyperbolic zone (bisection on
// "spectrum meets the unit circle", monotone by connectedness of the
// hyperbolic region).  beta_s/beta_m are NaN when the column has no
// -1-degeneracy; a column with no unit-circle crossing at all throws
// BracketError.

#pragma once

#include "erestab/common.hpp"
#include "erestab/model.hpp"

namespace erestab {

struct DegenerateCurveSample {
  double alpha = 0.0;
  double e = 0.0;
  int omega = 1;
  int n = 0;               // ordinal, see above
  double beta = 0.0;
  int multiplicity = 0;    // index jump across the sample
  double bracket_width = 0.0;
};

struct NhSurfaces {
  double alpha_tilde = 0.0;
  double e = 0.0;
  double beta_s = 0.0;     // first -1-degeneracy threshold (NaN if absent)
  double beta_m = 0.0;     // second threshold (NaN if absent)
  double beta_k = 0.0;     // hyperbolic-zone boundary
};

// Locates the n-th omega-degenerate beta at fixed (alpha, e) by bisection to
// the given resolution.  Requires e in [0, 0.95], resolution >= 1e-10.
// Throws BracketError when no jump exists below the beta ceiling (100).
DegenerateCurveSample degenerate_beta(double alpha, int omega, double e,
                                      int n, double resolution = 1e-9);

// Central finite-difference slope d beta / d e at e = 0 with step h in
// [1e-4, 1e-2], using the negative-e analytic extension.
double slope_at_e0(double alpha, int omega, int n, double h = 5e-3);

// The beta_s/beta_m/beta_k surfaces of the normally-hyperbolic wedge at one
// (alpha_tilde, e) column.  Requires alpha_tilde > 0, e in [0, 0.9].
NhSurfaces nh_surfaces(double alpha_tilde, double e,
                       double resolution = 1e-8);

}  // namespace erestab

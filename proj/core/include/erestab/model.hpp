// Mass/shape model for the planar restricted 4-body problem near the
// Lagrangian equilateral limit, and the reduction to the essential-parameter
// pair (alpha, beta).
//
// Conventions. The three primaries sit at the unit equilateral triangle
//   q1 = 0,  q2 = 1,  q3 = 1/2 + i sqrt(3)/2,
// with masses m1 + m2 + m3 = 1, and the massless body at z*. The essential
// parameters of the limit shape are
//   alpha = (1/2) sum_i m_i / |q_i - z*|^3,
//   beta  = (1/2) | sum_i m_i (q_i - z*)^2 / |q_i - z*|^5 |,
// (the complex square (q_i - z*)^2 makes beta frame-independent), and the
// derived potential coefficients are lambda3 = 1 + alpha + 3 beta,
// lambda4 = 1 + alpha - 3 beta. The sheared coordinates
//   alpha~ = alpha - beta,  beta~ = -alpha + 3 beta - 1
// straighten the two organizing boundaries: beta~ = 0 is the lambda4 = 0
// plane and alpha~ > 0, -1 < beta~ < 0 is the normally-hyperbolic wedge.
//
// Part of erestab. MIT license; see LICENSE at the repository root.

#pragma once

#include "erestab/common.hpp"

#include <complex>

namespace erestab {

using complexd = std::complex<double>;

// ---------------------------------------------------------------------------
// Types.
// ---------------------------------------------------------------------------

// Primary masses plus the scale constants of the equilateral configuration.
struct MassConfig {
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;     // = 1 - m1 - m2
  double alpha0 = 0.0; // [m1 + m2 - (m1^2 + m1 m2 + m2^2)]^(-1/2)
  double mu0 = 0.0;    // alpha0^(-3)
  double betaL = 0.0;  // Lagrangian stability parameter 27(m1 m2 + m2 m3 + m3 m1)
};

// Limit positions of the three primaries and the massless body.
struct LimitGeometry {
  complexd q1{0.0, 0.0};
  complexd q2{1.0, 0.0};
  complexd q3{0.5, 0.8660254037844386467637231707529362};
  complexd zstar{0.0, 0.0};
};

// Coefficients of the reduced (blown-up) problem at the limit configuration.
struct ReductionCoefficients {
  double k0 = 0.0;
  complexd l0{0.0, 0.0};
  double beta20 = 0.0;     // = 2 alpha - 1
  complexd beta110{0.0, 0.0};
  complexd beta120{0.0, 0.0}; // identically zero for central configurations
  complexd beta220{0.0, 0.0}; // |beta220| = 3 beta
};

// The essential parameter triple plus derived coefficients.
struct EssentialParams {
  double alpha = 0.0;
  double beta = 0.0;
  double e = 0.0;          // orbit eccentricity of the primaries
  double lambda3 = 0.0;    // 1 + alpha + 3 beta
  double lambda4 = 0.0;    // 1 + alpha - 3 beta
  double alpha_tilde = 0.0;
  double beta_tilde = 0.0;
  bool beta_boundary = false; // beta == 0 request (admissible closure point)
};

// ---------------------------------------------------------------------------
// Factories and operations.
// ---------------------------------------------------------------------------

// Validate masses (all positive, sum 1 within 1e-12 when m3 given) and fill in
// the derived constants.
MassConfig make_masses(double m1, double m2, double m3);
inline MassConfig make_masses(double m1, double m2) {
  return make_masses(m1, m2, 1.0 - m1 - m2);
}

// Unit-triangle geometry with the massless body at zstar.
LimitGeometry make_geometry(complexd zstar);

// (alpha, beta) of a limit configuration. Throws CollisionError when zstar is
// closer than 1e-9 to a primary.
std::pair<double, double> alpha_beta_from_geometry(const MassConfig& masses,
                                                   const LimitGeometry& geom);

// Reduced-problem coefficients at the limit configuration. The alpha0 /
// center-of-mass rescaling happens entirely inside this function; callers see
// only the unit-triangle frame.
ReductionCoefficients reduction_coefficients(const MassConfig& masses,
                                             const LimitGeometry& geom);

// Contract-checked parameter factory: requires alpha >= beta >= 0, alpha > 0,
// 0 <= e < 1. beta == 0 is admitted but flagged as a boundary request.
EssentialParams make_params(double alpha, double beta, double e);

// Extended factory for internal continuation work: any real alpha, beta >= 0,
// |e| < 1 (negative e is the analytic extension used by slope probes; beta
// may exceed alpha while tracing degeneracy surfaces). Not part of the
// user-facing contract.
EssentialParams make_params_extended(double alpha, double beta, double e);

// 27 (m1 m2 + m2 m3 + m3 m1); equals 9 iff the masses are equal and satisfies
// betaL * alpha0^2 = 27 identically.
double lagrangian_beta(const MassConfig& masses);

// Shear transform between (alpha, beta) and (alpha~, beta~) and its inverse.
std::pair<double, double> to_tilde(double alpha, double beta);
std::pair<double, double> from_tilde(double alpha_tilde, double beta_tilde);

}  // namespace erestab

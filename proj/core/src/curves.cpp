// Part of erestab. MIT license; see LICENSE at the repository root.

#include "erestab/curves.hpp"

#include "erestab/essential.hpp"
#include "erestab/galerkin.hpp"
#include "erestab/regions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace erestab {

namespace {

// Counting tolerance for the tracer.  The default 1e-8 nullity window maps
// through the O(1) eigenvalue-vs-beta slope into a ~1e-5 plateau around each
// curve; a 1e-11 window keeps the located jump within ~1e-8 of the true
// curve, comfortably inside the closed-form agreement target.
constexpr double kTraceTol = 1e-11;
constexpr double kBetaCeiling = 100.0;
constexpr int kTraceModes = 64;

int count_at(double alpha, double beta, double e, int omega,
             bool with_nullity) {
  const EssentialParams p = make_params_extended(alpha, beta, e);
  const IndexPair c = count_spectrum(assemble(p, omega, kTraceModes),
                                     kTraceTol);
  return with_nullity ? c.index + c.nullity : c.index;
}

// Shared tracer; accepts negative e (analytic extension) for slope probes.
DegenerateCurveSample trace_beta(double alpha, int omega, double e, int n,
                                 double resolution) {
  if (omega != 1 && omega != -1)
    throw DomainError("degenerate_beta requires omega in {+1, -1}");
  if (n < 0) throw DomainError("degenerate_beta requires n >= 0");
  if (!(resolution >= 1e-10))
    throw DomainError("degenerate_beta requires resolution >= 1e-10");

  const double beta_gamma0 = (alpha + 1.0) / 3.0;
  int target = 0;
  double seed = 0.0;
  if (omega == 1) {
    if (n == 0) {
      target = 1;
      seed = beta_gamma0;
    } else {
      // Subtract the Gamma_0 jump, measured just past the exact locus.
      const int k = (n + 1) / 2;
      target = count_at(alpha, beta_gamma0 + 1e-6, e, 1, true) + n;
      seed = curve_beta(k, alpha);
    }
  } else {
    target = n + 1;
    seed = curve_beta(n / 2 + 0.5, alpha);
  }

  auto pred = [&](double beta) {
    return count_at(alpha, beta, e, omega, true) >= target;
  };
  double lo = 0.9 * seed;
  double hi = 1.1 * seed;
  while (pred(lo)) {
    lo *= 0.9;
    if (lo < 1e-8)
      throw BracketError("degenerate_beta: lower bracket collapsed");
  }
  while (!pred(hi)) {
    hi *= 1.3;
    if (hi > kBetaCeiling)
      throw BracketError("degenerate_beta: no index jump below the ceiling");
  }
  const double beta = bisect_step(pred, lo, hi, resolution);

  DegenerateCurveSample s;
  s.alpha = alpha;
  s.e = e;
  s.omega = omega;
  s.n = n;
  s.beta = beta;
  s.bracket_width = resolution;
  const double margin = std::max(10.0 * resolution, 1e-6);
  s.multiplicity = count_at(alpha, beta + margin, e, omega, false) -
                   count_at(alpha, beta - margin, e, omega, false);
  return s;
}

}  // namespace

DegenerateCurveSample degenerate_beta(double alpha, int omega, double e,
                                      int n, double resolution) {
  if (!(e >= 0.0 && e <= 0.95))
    throw DomainError("degenerate_beta requires e in [0, 0.95]");
  return trace_beta(alpha, omega, e, n, resolution);
}

double slope_at_e0(double alpha, int omega, int n, double h) {
  if (!(h >= 1e-4 && h <= 1e-2))
    throw DomainError("slope_at_e0 requires h in [1e-4, 1e-2]");
  // The smooth surface branch through e = 0 swaps the two ordinals of a
  // -1-pair when e changes sign; +1 ordinals continue into themselves.
  const int partner = (omega == -1) ? (n % 2 == 0 ? n + 1 : n - 1) : n;
  const double plus = trace_beta(alpha, omega, h, n, 1e-9).beta;
  const double minus = trace_beta(alpha, omega, -h, partner, 1e-9).beta;
  return (plus - minus) / (2.0 * h);
}

NhSurfaces nh_surfaces(double alpha_tilde, double e, double resolution) {
  if (!(alpha_tilde > 0.0))
    throw DomainError("nh_surfaces requires alpha_tilde > 0");
  if (!(e >= 0.0 && e <= 0.9))
    throw DomainError("nh_surfaces requires e in [0, 0.9]");
  if (!(resolution >= 1e-10))
    throw DomainError("nh_surfaces requires resolution >= 1e-10");

  const double delta = 1e-6;
  auto params_at = [&](double beta_tilde) {
    const auto [a, b] = from_tilde(alpha_tilde, beta_tilde);
    return make_params(a, b, e);
  };
  auto count_m1 = [&](double beta_tilde) {
    const IndexPair c =
        count_spectrum(assemble(params_at(beta_tilde), -1, kTraceModes),
                       kTraceTol);
    return c.index + c.nullity;
  };
  auto meets_u = [&](double beta_tilde) {
    const MonodromyResult mr = monodromy(params_at(beta_tilde));
    for (const complexd& lam : mr.spectrum)
      if (std::abs(std::abs(lam) - 1.0) <= 1e-6) return true;
    return false;
  };

  NhSurfaces out;
  out.alpha_tilde = alpha_tilde;
  out.e = e;
  const double lo = -1.0 + delta;
  const double hi = -delta;
  if (meets_u(lo))
    throw BracketError("nh_surfaces: spectrum meets U at the deep edge");
  if (!meets_u(hi))
    throw BracketError(
        "nh_surfaces: column is hyperbolic throughout the wedge");
  out.beta_k = bisect_step(meets_u, lo, hi, resolution);

  // The two thresholds can leave the wedge at different eccentricities (the
  // upper branch exits through beta~ = 0 first), so existence is decided per
  // threshold.
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const int edge = count_m1(hi);
  out.beta_s = edge >= 1
                   ? bisect_step([&](double b) { return count_m1(b) >= 1; },
                                 lo, hi, resolution)
                   : nan;
  out.beta_m = edge >= 2
                   ? bisect_step([&](double b) { return count_m1(b) >= 2; },
                                 lo, hi, resolution)
                   : nan;
  return out;
}

}  // namespace erestab

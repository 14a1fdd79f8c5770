// Part of erestab. MIT license; see LICENSE at the repository root.

#include "erestab/model.hpp"

#include <cmath>

namespace erestab {

namespace {

constexpr double kMassSumTol = 1e-12;
constexpr double kCollisionTol = 1e-9;

double symmetric_mass_product(const MassConfig& m) {
  return m.m1 * m.m2 + m.m2 * m.m3 + m.m3 * m.m1;
}

}  // namespace

MassConfig make_masses(double m1, double m2, double m3) {
  if (!(m1 > 0.0) || !(m2 > 0.0) || !(m3 > 0.0))
    throw DomainError("make_masses: all masses must be positive");
  if (std::abs(m1 + m2 + m3 - 1.0) > kMassSumTol)
    throw DomainError("make_masses: masses must sum to 1 within 1e-12");
  MassConfig m;
  m.m1 = m1;
  m.m2 = m2;
  m.m3 = m3;
  // m1 + m2 - (m1^2 + m1 m2 + m2^2) == m1 m2 + (m1 + m2) m3 when m3 = 1-m1-m2,
  // so alpha0^(-2) is the symmetric product entering the Lagrange criterion.
  const double s = m1 + m2 - (m1 * m1 + m1 * m2 + m2 * m2);
  if (!(s > 0.0)) throw DomainError("make_masses: degenerate configuration scale");
  m.alpha0 = 1.0 / std::sqrt(s);
  m.mu0 = 1.0 / (m.alpha0 * m.alpha0 * m.alpha0);
  m.betaL = 27.0 * symmetric_mass_product(m);
  return m;
}

LimitGeometry make_geometry(complexd zstar) {
  LimitGeometry g;
  g.zstar = zstar;
  return g;
}

std::pair<double, double> alpha_beta_from_geometry(const MassConfig& masses,
                                                   const LimitGeometry& geom) {
  const complexd q[3] = {geom.q1, geom.q2, geom.q3};
  const double m[3] = {masses.m1, masses.m2, masses.m3};
  double alpha = 0.0;
  complexd b{0.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    const complexd d = q[i] - geom.zstar;
    const double r = std::abs(d);
    if (r < kCollisionTol)
      throw CollisionError("alpha_beta_from_geometry: zstar collides with a primary");
    alpha += 0.5 * m[i] / (r * r * r);
    b += m[i] * d * d / (r * r * r * r * r);
  }
  return {alpha, 0.5 * std::abs(b)};
}

ReductionCoefficients reduction_coefficients(const MassConfig& masses,
                                             const LimitGeometry& geom) {
  const complexd q[3] = {geom.q1, geom.q2, geom.q3};
  const double m[3] = {masses.m1, masses.m2, masses.m3};
  const complexd qc = m[0] * q[0] + m[1] * q[1] + m[2] * q[2];

  const double a0 = masses.alpha0;
  const double mu0 = masses.mu0;
  complexd a[3];
  for (int i = 0; i < 3; ++i) a[i] = a0 * (q[i] - qc);
  const complexd a4 = a0 * (geom.zstar - qc);

  ReductionCoefficients rc;
  const double root3m = std::sqrt(3.0 * m[0] * m[1] * m[2]);
  rc.k0 = a0 * a0 / root3m;
  rc.l0 = -(complexd(m[0] * m[1] - 0.5 * (m[0] + m[1]) * m[2],
                     0.8660254037844386467637231707529362 * (m[1] - m[0]) * m[2])) /
          root3m;
  rc.beta110 = 0.75 * complexd(3.0 * (m[0] + m[1]) - 2.0,
                               1.7320508075688772935274463415058724 * (m[1] - m[0]));
  rc.beta120 = complexd(0.0, 0.0);

  double s3 = 0.0;
  complexd s5{0.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    const complexd d = a[i] - a4;
    const double r = std::abs(d);
    if (r < kCollisionTol * a0)
      throw CollisionError("reduction_coefficients: zstar collides with a primary");
    s3 += m[i] / (r * r * r);
    s5 += m[i] * d * d / (r * r * r * r * r);
  }
  rc.beta20 = s3 / mu0 - 1.0;
  rc.beta220 = 1.5 * s5 / mu0;
  return rc;
}

namespace {

EssentialParams fill_derived(double alpha, double beta, double e) {
  EssentialParams p;
  p.alpha = alpha;
  p.beta = beta;
  p.e = e;
  p.lambda3 = 1.0 + alpha + 3.0 * beta;
  p.lambda4 = 1.0 + alpha - 3.0 * beta;
  p.alpha_tilde = alpha - beta;
  p.beta_tilde = -alpha + 3.0 * beta - 1.0;
  p.beta_boundary = (beta == 0.0);
  return p;
}

}  // namespace

EssentialParams make_params(double alpha, double beta, double e) {
  if (!(alpha > 0.0)) throw DomainError("make_params: alpha must be positive");
  if (!(beta >= 0.0)) throw DomainError("make_params: beta must be nonnegative");
  if (!(alpha >= beta))
    throw DomainError("make_params: alpha >= beta is required in this range");
  if (!(e >= 0.0 && e < 1.0))
    throw DomainError("make_params: eccentricity must lie in [0, 1)");
  return fill_derived(alpha, beta, e);
}

EssentialParams make_params_extended(double alpha, double beta, double e) {
  if (!(beta >= 0.0))
    throw DomainError("make_params_extended: beta must be nonnegative");
  if (!(std::abs(e) < 1.0))
    throw DomainError("make_params_extended: |e| < 1 is required");
  return fill_derived(alpha, beta, e);
}

double lagrangian_beta(const MassConfig& masses) {
  return 27.0 * symmetric_mass_product(masses);
}

std::pair<double, double> to_tilde(double alpha, double beta) {
  return {alpha - beta, -alpha + 3.0 * beta - 1.0};
}

std::pair<double, double> from_tilde(double alpha_tilde, double beta_tilde) {
  return {(3.0 * alpha_tilde + beta_tilde + 1.0) / 2.0,
          (alpha_tilde + beta_tilde + 1.0) / 2.0};
}

}  // namespace erestab

// Part of erestab. MIT license; see LICENSE at the repository root.

#include "erestab/essential.hpp"

#include <boost/numeric/odeint.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace erestab {

Eigen::Matrix4d symplectic_J() {
  Eigen::Matrix4d j = Eigen::Matrix4d::Zero();
  j(0, 2) = -1.0;
  j(1, 3) = -1.0;
  j(2, 0) = 1.0;
  j(3, 1) = 1.0;
  return j;
}

Eigen::Matrix4d assemble_B(const EssentialParams& p, double t) {
  const double rho = 1.0 + p.e * std::cos(t);
  Eigen::Matrix4d b = Eigen::Matrix4d::Zero();
  b(0, 0) = 1.0;
  b(1, 1) = 1.0;
  b(0, 3) = 1.0;
  b(3, 0) = 1.0;
  b(1, 2) = -1.0;
  b(2, 1) = -1.0;
  b(2, 2) = 1.0 - p.lambda3 / rho;
  b(3, 3) = 1.0 - p.lambda4 / rho;
  return b;
}

double symplectic_residual(const Eigen::Matrix4d& m) {
  static const Eigen::Matrix4d j = symplectic_J();
  return (m.transpose() * j * m - j).cwiseAbs().maxCoeff();
}

std::array<std::complex<double>, 4> sorted_spectrum(const Eigen::Matrix4d& m) {
  Eigen::EigenSolver<Eigen::Matrix4d> es(m, /*computeEigenvectors=*/false);
  std::array<std::complex<double>, 4> ev;
  for (int i = 0; i < 4; ++i) ev[i] = es.eigenvalues()(i);
  std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma < mb;
    return std::arg(a) < std::arg(b);
  });
  return ev;
}

namespace {

// Fundamental matrix flattened column-major: entry (i, col) sits at 4*col + i.
using state_type = std::array<double, 16>;

struct essential_rhs {
  EssentialParams p;
  void operator()(const state_type& x, state_type& dxdt, double t) const {
    // xi' = J B(t) xi, applied column-wise to the fundamental matrix.
    const double rho = 1.0 + p.e * std::cos(t);
    const double c3 = 1.0 - p.lambda3 / rho;
    const double c4 = 1.0 - p.lambda4 / rho;
    // J B with the (p, q) block layout spelled out; rows of J B are
    //   (-B31 -B32 -B33 -B34), (-B41 ...), (B11 ...), (B21 ...).
    for (int col = 0; col < 4; ++col) {
      const double x1 = x[4 * col + 0], x2 = x[4 * col + 1];
      const double x3 = x[4 * col + 2], x4 = x[4 * col + 3];
      dxdt[4 * col + 0] = x2 - c3 * x3;
      dxdt[4 * col + 1] = -x1 - c4 * x4;
      dxdt[4 * col + 2] = x1 + x4;
      dxdt[4 * col + 3] = x2 - x3;
    }
  }
};

}  // namespace

MonodromyResult monodromy(const EssentialParams& p, double tol, double e_cap) {
  if (!(tol >= 1e-13 && tol <= 1e-6))
    throw DomainError("monodromy: tol must lie in [1e-13, 1e-6]");
  if (std::abs(p.e) >= 1.0 - 1e-6 || std::abs(p.e) > e_cap)
    throw IntegrationError("monodromy: eccentricity too close to collision");

  namespace ode = boost::numeric::odeint;
  using stepper_base = ode::runge_kutta_fehlberg78<state_type>;

  essential_rhs rhs{p};
  state_type x{};
  for (int i = 0; i < 4; ++i) x[4 * i + i] = 1.0;
  auto stepper = ode::make_controlled<stepper_base>(tol, tol);

  const double t_end = 2.0 * pi;
  double t = 0.0;
  double dt = 1e-2;
  std::size_t steps = 0;
  const std::size_t max_steps = 10'000'000;
  while (t < t_end) {
    if (t + dt > t_end) dt = t_end - t;
    ode::controlled_step_result res = stepper.try_step(rhs, x, t, dt);
    if (res == ode::success) {
      ++steps;
      if (steps > max_steps)
        throw IntegrationError("monodromy: step budget exhausted");
    }
    // on failure try_step shrank dt; loop retries.
  }

  MonodromyResult r;
  r.M = Eigen::Map<const Eigen::Matrix4d>(x.data());
  r.symplectic_residual = symplectic_residual(r.M);
  r.spectrum = sorted_spectrum(r.M);
  r.stats.steps = steps;
  r.stats.tolerance = tol;
  return r;
}

Eigen::Matrix4d monodromy_iterate(const MonodromyResult& r, int m) {
  if (m < 1) throw DomainError("monodromy_iterate: m must be >= 1");
  Eigen::Matrix4d acc = Eigen::Matrix4d::Identity();
  for (int i = 0; i < m; ++i) acc = acc * r.M;
  return acc;
}

}  // namespace erestab

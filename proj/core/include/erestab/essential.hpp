// The essential linear system along an elliptic Lagrangian relative
// equilibrium and its monodromy matrix.
//
// The system is the linear Hamiltonian equation  xi'(t) = J B(t) xi(t)  on
// R^4 with coordinates ordered (p1, p2, q1, q2), standard structure
//
//        ( 0  -I2 )
//    J = (        ) ,
//        ( I2   0 )
//
// and the time-2pi-periodic symmetric coefficient matrix
//
//           ( 1  0           0                 1          )
//           ( 0  1          -1                 0          )
//    B(t) = ( 0 -1   1 - lambda3 / rho(t)      0          ) ,
//           ( 1  0           0        1 - lambda4 / rho(t))
//
// with rho(t) = 1 + e cos t, lambda3 = 1 + alpha + 3 beta and
// lambda4 = 1 + alpha - 3 beta.  At e = 0 the flow is exp(t J B) and the
// characteristic polynomial of J B is
//    p(lam) = lam^4 + (2 - 2 alpha) lam^2 + (1 + alpha)^2 - 9 beta^2 .
//
// Part of erestab. MIT license; see LICENSE at the repository root.

#pragma once

#include "erestab/model.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>

namespace erestab {

// Standard symplectic structure in (p, q) ordering.
Eigen::Matrix4d symplectic_J();

// Coefficient matrix B(t) of the essential system.
Eigen::Matrix4d assemble_B(const EssentialParams& p, double t);

// Max-norm of M^T J M - J (zero for exactly symplectic M).
double symplectic_residual(const Eigen::Matrix4d& m);

struct IntegratorStats {
  std::size_t steps = 0;     // accepted steps
  double tolerance = 0.0;    // requested local tolerance
};

struct MonodromyResult {
  Eigen::Matrix4d M = Eigen::Matrix4d::Identity();
  double symplectic_residual = 0.0;
  std::array<std::complex<double>, 4> spectrum{};  // sorted: by |.|, then arg
  IntegratorStats stats;
};

// Fundamental solution at t = 2pi of xi' = J B(t) xi, xi(0) = I, integrated
// with an order-8 embedded Runge-Kutta pair under local tolerance `tol`
// (admissible range [1e-13, 1e-6]).
//
// Throws DomainError for tol outside the range, IntegrationError when
// |e| >= e_cap (default 0.99; eccentricities >= 1 - 1e-6 are always refused)
// or when the step count explodes.
MonodromyResult monodromy(const EssentialParams& p, double tol = 1e-11,
                          double e_cap = 0.99);

// m-th power of the monodromy matrix (monodromy of the m-fold iterated orbit).
Eigen::Matrix4d monodromy_iterate(const MonodromyResult& r, int m);

// Eigenvalues of a real 4x4 matrix, sorted by (|.|, arg) for determinism.
std::array<std::complex<double>, 4> sorted_spectrum(const Eigen::Matrix4d& m);

}  // namespace erestab

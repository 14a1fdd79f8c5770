// Part of erestab. MIT license; see LICENSE at the repository root.
//
// Morse index and nullity of the second-variation operator by truncated
// Fourier discretization.  In the rotating frame z(t) = R(t) u(t) the
// quadratic form reads
//
//   Q(u) = Int_0^{2pi} |u'|^2 + 2 (y'x - x'y)
//                      + f(t) (lambda3 x^2 + lambda4 y^2) dt,
//
// with u = (x, y) and f(t) = 1/(1 + e cos t).  Periodic boundary conditions
// (omega = +1) use the integer trigonometric basis, anti-periodic ones
// (omega = -1) the half-integer basis cos((n+1/2)t), sin((n+1/2)t).  Since f
// is even, the form splits exactly into two sectors,
//   A: {x-cosine, y-sine} coefficients (a_n, d_n),
//   B: {x-sine, y-cosine} coefficients (b_n, c_n),
// and all matrix entries are finite combinations of the Fourier coefficients
// of f, which have the closed form
//   fhat_k = (-rho_e)^k / sqrt(1 - e^2),   rho_e = e / (1 + sqrt(1 - e^2)).
//
// At e = 0 and omega = +1 the matrix is exactly block-diagonal with
//   B_0 = diag(lambda3, lambda4),
//   B_n = [[n^2 + lambda3, 2n], [2n, n^2 + lambda4]]   on (a_n, d_n),
//   Bb_n = the same with off-diagonal -2n               on (b_n, c_n).
//
// The kernel test of the three-term recurrence provides an independent
// 1-degeneracy oracle for e > 0: coefficients of a periodic kernel function
// satisfy, per sector,
//   lambda3 a_0 + e (a_1/2 + d_1) = 0,
//   e A_2 w_2 = B_1 w_1,
//   e A_{n+1} w_{n+1} = B_n w_n - e A_{n-1} w_{n-1}   (n >= 2),
// with w_n = (a_n, d_n), A_n = -(n/2) [[n, 2], [2, n]].  The decaying
// solution pair is produced by backward iteration from maxN (A_n is invertible
// for n >= 3), and closing the system at n <= 4 yields a 7x7 homogeneous
// matrix whose smallest singular value vanishes exactly on 1-degenerate
// parameters.  Sector B obeys the same recurrence in (b_n, -c_n) with the
// closing row lambda4 c_0 = e (b_1 - c_1/2).

#pragma once

#include "erestab/common.hpp"
#include "erestab/model.hpp"

#include <Eigen/Core>

#include <vector>

namespace erestab {

struct GalerkinProblem {
  EssentialParams params;
  int omega = 1;                 // +1 or -1
  int N = 0;                     // Fourier modes per component
  Eigen::MatrixXd matrix;        // symmetric, dim 4N+2 (omega=1) or 4N+4
  std::vector<double> fcoeffs;   // fhat_0 .. fhat_{2N+1}
};

struct IndexPair {
  int index = 0;     // eigenvalues below -tol
  int nullity = 0;   // eigenvalues within +-tol
  bool converged = false;  // stable under N -> N+8 with a clean spectral gap
};

// Fourier coefficients fhat_0 .. fhat_order of f(t) = 1/(1 + e cos t) with
// f = fhat_0 + 2 sum_k fhat_k cos(kt).
std::vector<double> fourier_f(double e, int order);

// Assembles the symmetric Galerkin matrix of Q on the omega-boundary basis.
// Requires N >= 8 and omega in {+1, -1}.
GalerkinProblem assemble(const EssentialParams& params, int omega, int N);

// Counts eigenvalues below -tol (index) and within +-tol (nullity), with the
// threshold scaled by the largest eigenvalue magnitude and floored at 1e-10.
// Convergence is checked by re-assembling at N + 8: the converged flag
// additionally requires the nearest non-null eigenvalue to clear 10x the
// threshold.  Throws NotConverged when the two truncations disagree.
IndexPair index_and_nullity(const GalerkinProblem& problem, double tol = 1e-8);

// Index/nullity at the given truncation only, no convergence re-run; the
// cheap evaluator used by bisection loops.
IndexPair count_spectrum(const GalerkinProblem& problem, double tol = 1e-8);

enum class RecurrenceVerdict { Degenerate1, Nondegenerate, Inconclusive };

// Backward-recurrence kernel test at omega = +1 (both sectors).  Requires
// e > 0 (at e = 0 the recurrence decouples into the closed-form blocks) and
// maxN >= 32.  Verdict by the ratio sigma_min/sigma_max of the closing
// system: below tol degenerate, above 100*tol nondegenerate, else
// inconclusive.
RecurrenceVerdict kernel_recurrence_test(const EssentialParams& params,
                                         int maxN = 128, double tol = 1e-8);

}  // namespace erestab

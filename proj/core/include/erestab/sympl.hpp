// Part of erestab. MIT license; see LICENSE at the repository root.
//
// Symplectic linear algebra on Sp(4): geometric multiplicities on the unit
// circle, Krein signatures, normal-form labeling, and splitting numbers.
//
// Normal-form vocabulary (basic blocks, up to symplectic conjugacy):
//   D(lambda)  = diag(lambda, 1/lambda),  real lambda, |lambda| != 1;
//   R(theta)   = [[cos, -sin], [sin, cos]],  theta in (0,pi) u (pi,2pi);
//   N1(l, a)   = [[l, a], [0, l]],  l = +-1, a in {1, -1};
//   N2(e^{i.theta}, b) = [[R(theta), b], [0, R(theta)]], trivial iff
//                        (b2 - b3) sin(theta) > 0;
//   M2(l, c)   = the 4x4 form with a doubled real pair {l, l, 1/l, 1/l}
//                and one-dimensional eigenspaces;
// plus the irreducible complex quadruple {l, conj l, 1/l, 1/conj l} off both
// the unit circle and the real axis.
//
// Conventions.  The Krein form is g(v) = v^H (-iJ) v, which is Hermitian since
// J^T = -J.  On the eigenvector (1, -i)^T of R(theta) at e^{i.theta} one finds
// g = +2, so a unit eigenvalue mu with Im mu > 0 and kappa(mu) = +1 belongs to
// an R(arg mu) block, while kappa(mu) = -1 puts the block angle at 2pi - arg mu.
// The N1 sign invariant is a = -sign(u^T J w) where u spans ker(M - l I) and
// (M - l I) w = u; on the canonical form this recovers sign(a) and it is
// invariant under symplectic conjugation and scaling.  The N2 triviality test
// uses eta = v^H (-iJ) w with (M - mu) w = v at the upper-half eigenvalue mu:
// a direct computation on the canonical form gives Re eta = (b3 - b2)/|p|^2
// with p != 0, so the block is trivial iff Re eta < 0.

#pragma once

#include "erestab/common.hpp"
#include "erestab/essential.hpp"

#include <Eigen/Core>

#include <string>
#include <utility>
#include <vector>

namespace erestab {

enum class BlockKind {
  Identity2,    // I_2 (doubled eigenvalue +1, semisimple)
  MinusIdentity2,
  N1,           // Jordan block at +-1, sign invariant in jordan_sign
  R,            // elliptic rotation block, angle theta in (0,pi) u (pi,2pi)
  N2,           // non-semisimple doubled elliptic pair
  M2,           // doubled real pair with one-dimensional eigenspaces
  D,            // real hyperbolic pair
  Quadruple,    // complex quadruple off U and off R
};

struct NormalFormBlock {
  BlockKind kind;
  double theta = 0.0;       // R/N2 blocks: rotation angle in (0, 2pi)
  double lambda = 0.0;      // D/M2/N1/I2 blocks: the real multiplier (|.| >= 1)
  int jordan_sign = 0;      // N1 blocks: the sign of the a parameter
  bool trivial = false;     // N2 blocks
  double modulus = 0.0;     // Quadruple: |lambda| > 1 representative
  double angle = 0.0;       // Quadruple: its argument in (0, pi)

  std::string label() const;
};

// Label of the full matrix: blocks joined with "<>", or the single
// "hyperbolic-complex-quadruple" tag when the matrix is irreducible.
struct SpectrumClass {
  std::vector<NormalFormBlock> blocks;
  std::array<complexd, 4> spectrum{};
  // (argument in (0, 2pi), sign) for every unit-circle eigenvalue off {+-1};
  // conjugate eigenvalues carry opposite signs and both are listed.
  std::vector<std::pair<double, int>> krein_signs;
  int nullity_plus1 = 0;
  int nullity_minus1 = 0;

  std::string label() const;
  bool spectrum_on_unit_circle(double tol = 1e-6) const;
};

struct SplittingPair {
  complexd omega;
  int s_plus = 0;
  int s_minus = 0;
};

// dim_C ker(M - omega I), |omega| = 1, by singular-value thresholding at
// tol * sigma_max.  Requires symplectic_residual(M) < 1e-6.
int nullity(const Eigen::Matrix4d& M, complexd omega, double tol = 1e-8);

// Krein signs of the restriction of g to ker(M - omega I), descending;
// omega must be a unit eigenvalue off {+-1}.  Throws DegenerateKreinError
// when the restricted form has an eigenvalue below tol (Krein collision).
std::vector<int> krein_signs(const Eigen::Matrix4d& M, complexd omega,
                             double tol = 1e-8);

// Convenience wrapper for a simple eigenvalue: the single sign.
int krein_sign(const Eigen::Matrix4d& M, complexd omega, double tol = 1e-8);

// Deterministic normal-form labeling from eigenvalues, geometric
// multiplicities and Krein signs; degeneracy (eigenvalue collisions, distance
// to +-1 and to U) is decided at tol.  Throws UnresolvedClassError when the
// multiplicity pattern matches no normal form at the given tolerance.
SpectrumClass classify(const Eigen::Matrix4d& M, double tol = 1e-7);

// Splitting numbers (S^+(omega), S^-(omega)) by table lookup per basic block
// plus additivity.  Off the spectrum the pair vanishes.  M2 blocks carry a
// unit eigenvalue whose splitting numbers are outside the table; querying one
// throws UnresolvedClassError.
SplittingPair splitting_numbers(const SpectrumClass& cls, complexd omega);

}  // namespace erestab

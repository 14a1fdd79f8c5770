// Shared numerical utilities: error hierarchy, bracketing/bisection,
// rank decisions through singular values, and small finite-difference helpers.
//
// Part of erestab. MIT license; see LICENSE at the repository root.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace erestab {

inline constexpr double pi = 3.14159265358979323846264338327950288;

// ---------------------------------------------------------------------------
// Error hierarchy.
//
// DomainError:    the request itself is outside the documented contract
//                 (exit code 1 at the CLI boundary).
// NumericalError: the request was legal but the computation could not be
//                 carried to the documented accuracy (exit code 2).
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error {
  using Error::Error;
};

struct NumericalError : Error {
  using Error::Error;
};

// A limit shape or mass request placing the fourth body on a primary.
struct CollisionError : DomainError {
  using DomainError::DomainError;
};

// Equal-mass parameterization produced m outside (0, 1/2).
struct MassRangeError : DomainError {
  using DomainError::DomainError;
};

// bisect() was handed a bracket whose endpoint values do not straddle zero.
struct DegenerateBracket : DomainError {
  using DomainError::DomainError;
};

// A root/jump search never found a sign change inside the allowed range.
struct BracketError : NumericalError {
  using NumericalError::NumericalError;
};

// The monodromy integrator could not meet its tolerance (or e too close to 1).
struct IntegrationError : NumericalError {
  using NumericalError::NumericalError;
};

// The Krein form vanished on the requested eigenspace.
struct DegenerateKreinError : NumericalError {
  using NumericalError::NumericalError;
};

// The symplectic classifier could not assign a normal form at the given tol.
struct UnresolvedClassError : NumericalError {
  using NumericalError::NumericalError;
};

// The kernel recurrence produced unusable data (dependent Miller runs, ...).
struct SingularRecurrenceError : NumericalError {
  using NumericalError::NumericalError;
};

// A scan found a different number of sign changes than expected.
struct RootCountError : NumericalError {
  using NumericalError::NumericalError;
};

// Two discretization levels disagreed on an integer invariant.
struct NotConverged : NumericalError {
  using NumericalError::NumericalError;
};

// ---------------------------------------------------------------------------
// Bracketing and bisection.
// ---------------------------------------------------------------------------

// A sign-change bracket for a scalar function. Invariant: f_lo * f_hi < 0,
// or `degenerate` is set (an endpoint value vanished during construction).
struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  double f_lo = 0.0;
  double f_hi = 0.0;
  bool degenerate = false;
};

// Evaluate f at both endpoints and package the bracket.
Bracket make_bracket(const std::function<double(double)>& f, double lo, double hi);

// Classic bisection on a sign-change bracket.
//
// Returns the midpoint of the final interval; on return |hi - lo| <= xtol.
// Never evaluates f outside [lo, hi] and performs at most
// ceil(log2((hi-lo)/xtol)) + 2 function evaluations.
// Throws DegenerateBracket if the bracket does not straddle zero.
//
// The function may be a step function (e.g. an integer index shifted by a
// half); bisection then localizes the jump instead of a root.
double bisect(const std::function<double(double)>& f, const Bracket& br, double xtol);

// Jump locator for a monotone boolean predicate: pred(lo) must be false and
// pred(hi) true; returns the transition point within xtol.
double bisect_step(const std::function<bool(double)>& pred, double lo, double hi,
                   double xtol);

// ---------------------------------------------------------------------------
// Rank / nullity via singular values.
//
// Rank decisions always go through singular values with a relative threshold
// (plus an absolute floor), never through determinant signs: determinants of
// near-singular symplectic blocks are numerically meaningless.
// ---------------------------------------------------------------------------

int rank_svd(const Eigen::MatrixXd& a, double rel_tol, double abs_floor = 0.0);
int rank_svd(const Eigen::MatrixXcd& a, double rel_tol, double abs_floor = 0.0);

inline int nullity_svd(const Eigen::MatrixXd& a, double rel_tol, double abs_floor = 0.0) {
  return static_cast<int>(a.cols()) - rank_svd(a, rel_tol, abs_floor);
}
inline int nullity_svd(const Eigen::MatrixXcd& a, double rel_tol, double abs_floor = 0.0) {
  return static_cast<int>(a.cols()) - rank_svd(a, rel_tol, abs_floor);
}

// Smallest/largest singular value ratio, used for homogeneous-system verdicts.
double sigma_ratio(const Eigen::MatrixXd& a);

// ---------------------------------------------------------------------------
// Finite differences.
// ---------------------------------------------------------------------------

// Central difference (f(x+h) - f(x-h)) / 2h.
double central_diff(const std::function<double(double)>& f, double x, double h);

// ---------------------------------------------------------------------------
// Small formatting helpers shared by CLI and tests (deterministic output).
// ---------------------------------------------------------------------------

// Shortest round-trippable decimal form ("%.17g" trimmed).
std::string format_double(double x);

}  // namespace erestab

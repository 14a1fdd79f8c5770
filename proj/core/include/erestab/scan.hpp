// Part of erestab. MIT license; see LICENSE at the repository root.
//
// Parameter sweeps and the two-equal-mass case study.
//
// Equal masses: with m1 = m2 = m, m3 = 1 - 2m and the massless body at
// z* = 1/2 + i y, the central-configuration condition becomes linear in m,
//   m [ sqrt(3) - 2 d / r^3 - c(y) ] = d - d / r^3,
// where d = sqrt(3)/2 - y, r = |d|, c(y) = 2 y / (y^2 + 1/4)^{3/2}.  The
// admissible ordinates split into three open intervals
//   Y1 = (-sqrt(3)/2, sqrt(3)/2 - 1),   (inside the y < 0 half-plane)
//   Y2 = (0, sqrt(3)/2),                (interior of the triangle)
//   Y3 = (sqrt(3)/2, sqrt(3)/2 + 1),    (beyond the far vertex)
// on each of which m in (0, 1/2).  The induced essential parameters are
//   alpha = ( 2m / (y^2+1/4)^{3/2} + m3 / r^3 ) / 2,
//   beta  = | m (1/2 - 2 y^2) / (y^2+1/4)^{5/2} - m3 / r^3 | / 2,
// and the stability type along each interval changes only at roots of the
// four indicator functions
//   g1 = alpha - 3 beta + 1   (elliptic-hyperbolic boundary, exact in e),
//   g2 = alpha - 3 beta       (total hyperbolicity for every e when g2 >= 0),
//   g3 = alpha - 1,
//   g4 = alpha - 9 beta^2 / 4 (sign of the circular-limit discriminant).
// The root table isolates every sign change by coarse bracketing plus
// bisection and insists on the known multiplicities; a different count is an
// error, not a truncation.
//
// Sweeps evaluate the full classification on a rectangular grid restricted
// to the wedge alpha >= beta, one cell per (grid point, eccentricity).
// Cells are independent; workers draw cell indices from an atomic counter
// and write into a preallocated buffer, so the atlas is bitwise identical
// for any worker count.  Per-cell failures are recorded in the cell and
// never abort the sweep.

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "erestab/model.hpp"
#include "erestab/regions.hpp"

namespace erestab {

// One member of the two-equal-mass family, keyed by the axis ordinate y.
struct EqualMassPoint {
  double y = 0.0;      // ordinate of the massless body at (1/2, y)
  double m = 0.0;      // common value of the two equal masses
  double alpha = 0.0;  // induced essential parameters
  double beta = 0.0;
};

// Labeled roots of the indicator functions over Y1 and Y2.  The measured
// sign pattern of g2 is recorded verbatim so that any discrepancy with the
// expected bracketing survives into the output.
struct EqualMassRoots {
  double y11 = 0.0;     // g2 roots on Y1; alpha >= 3 beta on [y11, y12]
  double y12 = 0.0;
  double y0 = 0.0;      // g4 root on Y1: circular-limit discriminant zero
  double m0 = 0.0;      // mass at y0
  double y21 = 0.0;     // g1 roots on Y2; g1 < 0 outside (y21, y24)
  double y24 = 0.0;
  double y22 = 0.0;     // g2 roots on Y2; alpha >= 3 beta on [y22, y23]
  double y23 = 0.0;
  double ybar21 = 0.0;  // g4 roots on Y2, bracketing the discriminant-
  double ybar22 = 0.0;  // negative stretch
  std::string sign_pattern;  // measured signs of g2 across Y1 and Y2
};

// One evaluated cell of a stability atlas.
struct AtlasCell {
  EssentialParams params;
  StabilityVerdict verdict;
  std::string region;   // circular-limit region tag when e = 0, else empty
  std::string error;    // populated instead of verdict on per-cell failure
  double runtime = 0.0; // seconds spent on this cell
};

// Rectangular sweep request.  With tilde = false the rectangle lives in
// (alpha, beta); with tilde = true in (alpha~, beta~) and each node is
// mapped back through the shear before classification.  Nodes outside the
// wedge alpha >= beta >= 0 are dropped from the grid.  workers = 0 uses the
// hardware concurrency; the environment variable ERE_STAB_THREADS caps the
// worker count in either case.
struct SweepSpec {
  double a_min = 0.0;
  double a_max = 0.0;
  double a_step = 1.0;
  double b_min = 0.0;
  double b_max = 0.0;
  double b_step = 1.0;
  std::vector<double> eccentricities;
  bool tilde = false;
  int workers = 0;
  double tol = 1e-7;  // classification tolerance passed through per cell
};

// Solve the induced mass and essential parameters at ordinate y.
// Throws DomainError for y outside Y1, Y2, Y3 or within 1e-6 of the pole
// y = sqrt(3)/2, and MassRangeError if the computed m leaves (0, 1/2).
EqualMassPoint equal_mass_point(double y);

// Isolate the ten tabulated values (nine ordinates plus m0) by scanning
// each interval at the given step and bisecting every sign change to 1e-8.
// Throws RootCountError when a scan finds an unexpected number of changes.
EqualMassRoots equal_mass_roots(double step = 1e-3);

// Coarse estimate of the largest e* such that the whole discriminant-
// positive stretch (-sqrt(3)/2, y0) stays hyperbolic for e in [0, e*):
// bisection of "some sample ordinate meets the unit circle" over a fixed
// grid of samples.  Reported as data; resolution is the e-tolerance.
double equal_mass_estar(double resolution = 1e-2);

// Evaluate the classification over the grid.  One cell per surviving node
// and eccentricity, ordered by (e, row, column) independent of workers.
std::vector<AtlasCell> sweep(const SweepSpec& spec);

// Verdict histogram of an atlas; failed cells count under "error".
std::map<std::string, std::size_t> atlas_summary(
    const std::vector<AtlasCell>& atlas);

}  // namespace erestab

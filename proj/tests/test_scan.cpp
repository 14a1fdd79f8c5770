// Part of erestab. MIT license; see LICENSE at the repository root.

#include "erestab/scan.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <vector>

#include "doctest.h"
#include "erestab/model.hpp"

using namespace erestab;

namespace {

// Independent evaluation of the linear central-configuration condition:
// with d = sqrt(3)/2 - y, r = |d| and c(y) = 2 y / (y^2 + 1/4)^{3/2},
//   m [ sqrt(3) - 2 d / r^3 - c(y) ] = d - d / r^3 ,
// and the induced essential parameters follow from the two second moments.
struct Expected {
  double m, alpha, beta;
};

Expected expected_point(double y) {
  const double d = std::sqrt(3.0) / 2.0 - y;
  const double r = std::abs(d);
  const double c = 2.0 * y / std::pow(y * y + 0.25, 1.5);
  const double m =
      (d - d / (r * r * r)) / (std::sqrt(3.0) - 2.0 * d / (r * r * r) - c);
  const double m3 = 1.0 - 2.0 * m;
  const double s = std::pow(y * y + 0.25, 1.5);
  const double alpha = (2.0 * m / s + m3 / (r * r * r)) / 2.0;
  const double beta =
      std::abs(m * (0.5 - 2.0 * y * y) / std::pow(y * y + 0.25, 2.5) -
               m3 / (r * r * r)) /
      2.0;
  return {m, alpha, beta};
}

bool atlas_equal(const std::vector<AtlasCell>& a,
                 const std::vector<AtlasCell>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].params.alpha != b[i].params.alpha) return false;
    if (a[i].params.beta != b[i].params.beta) return false;
    if (a[i].params.e != b[i].params.e) return false;
    if (a[i].error != b[i].error) return false;
    if (a[i].region != b[i].region) return false;
    if (a[i].verdict.verdict != b[i].verdict.verdict) return false;
    if (std::memcmp(a[i].verdict.monodromy.M.data(),
                    b[i].verdict.monodromy.M.data(),
                    16 * sizeof(double)) != 0)
      return false;
  }
  return true;
}

SweepSpec small_spec() {
  SweepSpec spec;
  spec.a_min = 0.3;
  spec.a_max = 2.1;
  spec.a_step = 0.9;
  spec.b_min = 0.2;
  spec.b_max = 1.7;
  spec.b_step = 0.75;
  spec.eccentricities = {0.0, 0.3};
  return spec;
}

}  // namespace

TEST_CASE("equal-mass points solve the dual formulations identically") {
  for (const double y : {-0.5, -0.2, 0.1, 0.3, 0.8, 1.2}) {
    const EqualMassPoint p = equal_mass_point(y);
    const Expected want = expected_point(y);
    CHECK(p.m == doctest::Approx(want.m).epsilon(1e-12));
    CHECK(p.alpha == doctest::Approx(want.alpha).epsilon(1e-12));
    CHECK(p.beta == doctest::Approx(want.beta).epsilon(1e-10));
    CHECK(p.m > 0.0);
    CHECK(p.m < 0.5);

    // The full reduction from masses and geometry reproduces the same
    // essential parameters, and the central-configuration cross coefficient
    // vanishes.
    const MassConfig masses = make_masses(p.m, p.m);
    const LimitGeometry geom = make_geometry({0.5, y});
    const auto [alpha, beta] = alpha_beta_from_geometry(masses, geom);
    CHECK(alpha == doctest::Approx(p.alpha).epsilon(1e-10));
    CHECK(beta == doctest::Approx(p.beta).epsilon(1e-8));
    CHECK(std::abs(reduction_coefficients(masses, geom).beta120) <= 1e-9);
  }
}

TEST_CASE("equal-mass family limits") {
  // Toward the midpoint of the base segment both parameters blow up to 4.
  const EqualMassPoint near_zero = equal_mass_point(1e-4);
  CHECK(std::abs(near_zero.alpha - 4.0) <= 1e-2);
  CHECK(std::abs(near_zero.beta - 4.0) <= 1e-2);
  // Toward the lower admissible endpoint the family approaches m = 1/2 and
  // (alpha, beta) = (1/2, 1/4).
  const EqualMassPoint near_low = equal_mass_point(-0.866);
  CHECK(std::abs(near_low.m - 0.5) <= 1e-3);
  CHECK(std::abs(near_low.alpha - 0.5) <= 1e-3);
  CHECK(std::abs(near_low.beta - 0.25) <= 1e-3);
}

TEST_CASE("equal-mass ordinates outside the admissible set are refused") {
  CHECK_THROWS_AS(equal_mass_point(-0.9), DomainError);
  CHECK_THROWS_AS(equal_mass_point(-0.05), DomainError);
  CHECK_THROWS_AS(equal_mass_point(0.0), DomainError);
  CHECK_THROWS_AS(equal_mass_point(std::sqrt(3.0) / 2.0), DomainError);
  CHECK_THROWS_AS(equal_mass_point(2.0), DomainError);
}

TEST_CASE("indicator roots are ordered, stable, and genuinely roots") {
  const EqualMassRoots r = equal_mass_roots(1e-3);

  // Ordering along the two intervals.
  CHECK(r.y11 < r.y12);
  CHECK(r.y12 < r.y0);
  CHECK(r.y21 < r.y22);
  CHECK(r.y22 < r.y23);
  CHECK(r.y23 < r.y24);
  CHECK(r.ybar21 < r.ybar22);
  CHECK_FALSE(r.sign_pattern.empty());

  // Each labeled ordinate zeroes its indicator.
  const auto g2 = [](double y) {
    const EqualMassPoint p = equal_mass_point(y);
    return p.alpha - 3.0 * p.beta;
  };
  const auto g1 = [](double y) {
    const EqualMassPoint p = equal_mass_point(y);
    return p.alpha - 3.0 * p.beta + 1.0;
  };
  const auto g4 = [](double y) {
    const EqualMassPoint p = equal_mass_point(y);
    return p.alpha - 9.0 * p.beta * p.beta / 4.0;
  };
  for (const double y : {r.y11, r.y12, r.y22, r.y23})
    CHECK(std::abs(g2(y)) <= 1e-6);
  for (const double y : {r.y21, r.y24}) CHECK(std::abs(g1(y)) <= 1e-6);
  for (const double y : {r.y0, r.ybar21, r.ybar22})
    CHECK(std::abs(g4(y)) <= 1e-6);

  // m0 is the mass at the discriminant root.
  CHECK(r.m0 == doctest::Approx(equal_mass_point(r.y0).m).epsilon(1e-10));

  // Halving the scan step must not move any root.
  const EqualMassRoots r2 = equal_mass_roots(5e-4);
  CHECK(std::abs(r.y11 - r2.y11) <= 1e-6);
  CHECK(std::abs(r.y24 - r2.y24) <= 1e-6);
  CHECK(std::abs(r.m0 - r2.m0) <= 1e-8);

  CHECK_THROWS_AS(equal_mass_roots(0.2), DomainError);
  CHECK_THROWS_AS(equal_mass_roots(0.0), DomainError);
}

TEST_CASE("the coarse hyperbolicity threshold regression anchor") {
  CHECK(equal_mass_estar(1e-2) == doctest::Approx(0.95).epsilon(1e-9));
}

TEST_CASE("sweeps are bitwise independent of the worker count") {
  SweepSpec spec = small_spec();
  spec.workers = 1;
  const std::vector<AtlasCell> serial = sweep(spec);
  spec.workers = 4;
  const std::vector<AtlasCell> parallel = sweep(spec);
  CHECK(atlas_equal(serial, parallel));

  // Six wedge nodes and two eccentricities, ordered by (e, row, column).
  CHECK(serial.size() == 12);
  for (std::size_t i = 0; i < 6; ++i) CHECK(serial[i].params.e == 0.0);
  for (std::size_t i = 6; i < 12; ++i) CHECK(serial[i].params.e == 0.3);

  // A worker cap through the environment must not change the atlas either.
  setenv("ERE_STAB_THREADS", "1", 1);
  spec.workers = 0;
  const std::vector<AtlasCell> capped = sweep(spec);
  unsetenv("ERE_STAB_THREADS");
  CHECK(atlas_equal(serial, capped));
}

TEST_CASE("circular cells carry their region tag") {
  SweepSpec spec = small_spec();
  spec.workers = 2;
  const std::vector<AtlasCell> atlas = sweep(spec);
  for (const auto& cell : atlas) {
    REQUIRE(cell.error.empty());
    if (cell.params.e == 0.0) {
      const RegionLabel l = classify_e0(cell.params.alpha, cell.params.beta);
      const std::string want =
          l.minor.empty() ? l.major : l.major + "/" + l.minor;
      CHECK(cell.region == want);
    } else {
      CHECK(cell.region.empty());
    }
    CHECK(cell.runtime >= 0.0);
  }

  const auto summary = atlas_summary(atlas);
  std::size_t total = 0;
  for (const auto& [key, count] : summary) total += count;
  CHECK(total == atlas.size());
}

TEST_CASE("tilde sweeps place nodes on the sheared lattice") {
  SweepSpec spec;
  spec.a_min = 0.5;
  spec.a_max = 1.5;
  spec.a_step = 0.5;
  spec.b_min = -0.4;
  spec.b_max = 0.4;
  spec.b_step = 0.4;
  spec.eccentricities = {0.0};
  spec.tilde = true;
  spec.workers = 2;
  const std::vector<AtlasCell> atlas = sweep(spec);
  CHECK_FALSE(atlas.empty());
  for (const auto& cell : atlas) {
    const auto [at, bt] =
        to_tilde(cell.params.alpha, cell.params.beta);
    const double ai = (at - spec.a_min) / spec.a_step;
    const double bi = (bt - spec.b_min) / spec.b_step;
    CHECK(std::abs(ai - std::round(ai)) <= 1e-9);
    CHECK(std::abs(bi - std::round(bi)) <= 1e-9);
    // Only wedge nodes survive the mapping.
    CHECK(cell.params.alpha >= cell.params.beta);
    CHECK(cell.params.beta >= 0.0);
  }
}

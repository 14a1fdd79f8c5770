// Part of erestab. MIT license; see LICENSE at the repository root.

#include "erestab/model.hpp"

#include <cmath>
#include <utility>

#include "doctest.h"

using namespace erestab;

TEST_CASE("make_params validates the wedge and fills derived fields") {
  const EssentialParams p = make_params(2.0, 1.0, 0.3);
  CHECK(p.lambda3 == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(p.lambda4 == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  const auto [at, bt] = to_tilde(2.0, 1.0);
  CHECK(p.alpha_tilde == doctest::Approx(at).epsilon(1e-15));
  CHECK(p.beta_tilde == doctest::Approx(bt).epsilon(1e-15));
  CHECK_FALSE(p.beta_boundary);
  CHECK(make_params(1.0, 0.0, 0.0).beta_boundary);

  CHECK_THROWS_AS(make_params(0.5, 0.6, 0.0), DomainError);   // beta > alpha
  CHECK_THROWS_AS(make_params(1.0, -0.1, 0.0), DomainError);  // beta < 0
  CHECK_THROWS_AS(make_params(0.0, 0.0, 0.0), DomainError);   // alpha = 0
  CHECK_THROWS_AS(make_params(1.0, 0.5, 1.0), DomainError);   // e = 1
  CHECK_THROWS_AS(make_params(1.0, 0.5, -0.1), DomainError);  // e < 0
}

TEST_CASE("make_params_extended accepts the analytic extension domain") {
  // Negative eccentricity (slope probes through e = 0) and beta > alpha
  // (degenerate-surface tracing above the wedge) are both admissible.
  const EssentialParams p = make_params_extended(1.0, 0.5, -0.3);
  CHECK(p.e == -0.3);
  CHECK(p.lambda3 == doctest::Approx(1.0 + 1.0 + 1.5).epsilon(1e-15));
  CHECK_NOTHROW(make_params_extended(0.0, 0.0, 0.6));
  CHECK_NOTHROW(make_params_extended(-0.5, 0.2, 0.0));
  CHECK_NOTHROW(make_params_extended(1.0, 2.5, 0.4));
  CHECK_THROWS_AS(make_params_extended(1.0, -0.1, 0.0), DomainError);
  CHECK_THROWS_AS(make_params_extended(1.0, 0.5, 1.0), DomainError);
  CHECK_THROWS_AS(make_params_extended(1.0, 0.5, -1.0), DomainError);
}

TEST_CASE("shear transform and its inverse are mutually exact") {
  for (double a = 0.2; a <= 3.0; a += 0.7) {
    for (double b = 0.0; b <= a; b += 0.45) {
      const auto [at, bt] = to_tilde(a, b);
      CHECK(at == doctest::Approx(a - b).epsilon(1e-15));
      CHECK(bt == doctest::Approx(-a + 3.0 * b - 1.0).epsilon(1e-14));
      const auto [a2, b2] = from_tilde(at, bt);
      CHECK(a2 == doctest::Approx(a).epsilon(1e-14));
      CHECK(b2 == doctest::Approx(b).scale(1.0).epsilon(1e-14));
    }
  }
  // The line beta = (alpha + 1) / 3 is exactly beta~ = 0 and vice versa.
  const auto [g0a, g0b] = to_tilde(2.0, 1.0);
  CHECK(g0a == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g0b == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  const auto [fa, fb] = from_tilde(1.5, 0.0);
  CHECK(fb == doctest::Approx((fa + 1.0) / 3.0).epsilon(1e-14));
}

TEST_CASE("mass configurations validate and carry the limit scalings") {
  const MassConfig eq = make_masses(1.0 / 3.0, 1.0 / 3.0);
  CHECK(eq.m3 == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(lagrangian_beta(eq) == doctest::Approx(9.0).epsilon(1e-12));

  // betaL * alpha0^2 = 27 for every admissible mass triple, and
  // mu0 = alpha0^-3.
  for (const auto& [m1, m2] : {std::pair{0.5, 0.3}, {0.1, 0.2}, {0.25, 0.7}}) {
    const MassConfig mc = make_masses(m1, m2);
    CHECK(lagrangian_beta(mc) * mc.alpha0 * mc.alpha0 ==
          doctest::Approx(27.0).epsilon(1e-12));
    CHECK(mc.mu0 == doctest::Approx(std::pow(mc.alpha0, -3.0)).epsilon(1e-12));
    CHECK(mc.m3 == doctest::Approx(1.0 - m1 - m2).epsilon(1e-14));
  }

  CHECK_THROWS_AS(make_masses(0.5, 0.6), DomainError);        // m3 < 0
  CHECK_THROWS_AS(make_masses(-0.1, 0.5), DomainError);       // m1 <= 0
  CHECK_THROWS_AS(make_masses(0.3, 0.3, 0.3), DomainError);   // sum != 1
  CHECK_NOTHROW(make_masses(0.25, 0.25, 0.5));
}

TEST_CASE("geometry reduction yields the essential parameters") {
  const MassConfig masses = make_masses(0.3, 0.3);
  const LimitGeometry geom = make_geometry({0.5, 0.3});
  const auto [alpha, beta] = alpha_beta_from_geometry(masses, geom);
  CHECK(alpha > 0.0);
  CHECK(beta >= 0.0);

  const ReductionCoefficients rc = reduction_coefficients(masses, geom);
  CHECK(rc.beta20 == doctest::Approx(2.0 * alpha - 1.0).epsilon(1e-12));
  CHECK(std::abs(rc.beta220) == doctest::Approx(3.0 * beta).epsilon(1e-10));
  CHECK(rc.k0 > 0.0);

  // A massless body on top of a primary is a collision, not a limit shape.
  CHECK_THROWS_AS(alpha_beta_from_geometry(masses, make_geometry({0.0, 0.0})),
                  CollisionError);
  CHECK_THROWS_AS(alpha_beta_from_geometry(masses, make_geometry({1.0, 0.0})),
                  CollisionError);
}

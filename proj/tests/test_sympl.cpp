// Part of erestab. MIT license; see LICENSE at the repository root.
//
// The classifier is exercised on synthetically built conjugacy classes: each
// canonical block is assembled on the symplectic coordinate planes, pushed
// through a random symplectic conjugation, and must come back with the same
// normal form, Krein data, and splitting numbers.

#include "erestab/sympl.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "support.hpp"

using namespace erestab;
using testsupport::m2_block;
using testsupport::n2_block;
using testsupport::plane_sum;
using testsupport::random_symplectic;
using testsupport::rotation2;
using testsupport::symplectic_inverse;
using Eigen::Matrix2d;
using Eigen::Matrix4d;

namespace {

struct Conjugator {
  Matrix4d s;
  Matrix4d s_inv;
  explicit Conjugator(unsigned seed) {
    std::mt19937 gen(seed);
    s = random_symplectic(gen);
    s_inv = symplectic_inverse(s);
  }
  Matrix4d operator()(const Matrix4d& d) const { return s * d * s_inv; }
};

const NormalFormBlock* find_block(const SpectrumClass& cls, BlockKind kind) {
  for (const auto& b : cls.blocks)
    if (b.kind == kind) return &b;
  return nullptr;
}

int count_blocks(const SpectrumClass& cls, BlockKind kind) {
  return static_cast<int>(
      std::count_if(cls.blocks.begin(), cls.blocks.end(),
                    [&](const NormalFormBlock& b) { return b.kind == kind; }));
}

std::vector<double> sorted_thetas(const SpectrumClass& cls) {
  std::vector<double> out;
  for (const auto& b : cls.blocks)
    if (b.kind == BlockKind::R) out.push_back(b.theta);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("rotation pairs keep their Krein orientation through conjugation") {
  const Conjugator conj(11u);
  const double two_pi = 2.0 * pi;

  // Both rotations positively oriented: angles survive as given.
  {
    const SpectrumClass cls =
        classify(conj(plane_sum(rotation2(0.9), rotation2(2.1))));
    REQUIRE(cls.blocks.size() == 2);
    const auto th = sorted_thetas(cls);
    REQUIRE(th.size() == 2);
    CHECK(th[0] == doctest::Approx(0.9).epsilon(1e-8));
    CHECK(th[1] == doctest::Approx(2.1).epsilon(1e-8));
    CHECK(cls.spectrum_on_unit_circle());
    CHECK(cls.nullity_plus1 == 0);
    CHECK(cls.nullity_minus1 == 0);
    // Krein list: ascending angles, conjugate pairs with opposite signs.
    REQUIRE(cls.krein_signs.size() == 4);
    CHECK(cls.krein_signs[0].first == doctest::Approx(0.9).epsilon(1e-8));
    CHECK(cls.krein_signs[0].second == 1);
    CHECK(cls.krein_signs[1].second == 1);
    CHECK(cls.krein_signs[2].first ==
          doctest::Approx(two_pi - 2.1).epsilon(1e-8));
    CHECK(cls.krein_signs[2].second == -1);
    CHECK(cls.krein_signs[3].second == -1);
  }

  // Reversing one rotation flips its Krein sign, which mirrors the angle.
  {
    const SpectrumClass cls =
        classify(conj(plane_sum(rotation2(-0.9), rotation2(2.1))));
    const auto th = sorted_thetas(cls);
    REQUIRE(th.size() == 2);
    CHECK(th[0] == doctest::Approx(2.1).epsilon(1e-8));
    CHECK(th[1] == doctest::Approx(two_pi - 0.9).epsilon(1e-8));
    CHECK(krein_sign(conj(plane_sum(rotation2(-0.9), rotation2(2.1))),
                     std::polar(1.0, 0.9)) == -1);
  }
}

TEST_CASE("doubled elliptic pairs resolve by the restricted Krein form") {
  const Conjugator conj(23u);
  const Matrix4d same = conj(plane_sum(rotation2(0.9), rotation2(0.9)));
  const SpectrumClass cls = classify(same);
  CHECK(count_blocks(cls, BlockKind::R) == 2);
  for (const auto& b : cls.blocks)
    CHECK(b.theta == doctest::Approx(0.9).epsilon(1e-7));
  CHECK(nullity(same, std::polar(1.0, 0.9)) == 2);
  const auto sp_up = splitting_numbers(cls, std::polar(1.0, 0.9));
  CHECK(sp_up.s_plus == 0);
  CHECK(sp_up.s_minus == 2);
  const auto sp_dn = splitting_numbers(cls, std::polar(1.0, -0.9));
  CHECK(sp_dn.s_plus == 2);
  CHECK(sp_dn.s_minus == 0);

  // Mixed orientation: one block at theta, one at 2 pi - theta; the
  // restricted form carries one sign of each.
  const Matrix4d mixed = conj(plane_sum(rotation2(0.9), rotation2(-0.9)));
  const auto signs = krein_signs(mixed, std::polar(1.0, 0.9));
  REQUIRE(signs.size() == 2);
  CHECK(signs[0] == 1);
  CHECK(signs[1] == -1);
  const auto th = sorted_thetas(classify(mixed));
  REQUIRE(th.size() == 2);
  CHECK(th[0] == doctest::Approx(0.9).epsilon(1e-7));
  CHECK(th[1] == doctest::Approx(2.0 * pi - 0.9).epsilon(1e-7));
}

TEST_CASE("hyperbolic blocks and their splitting numbers") {
  const Conjugator conj(37u);
  Matrix2d hyp2;
  hyp2 << 2.0, 0.0, 0.0, 0.5;

  const Matrix4d dr = conj(plane_sum(hyp2, rotation2(1.3)));
  const SpectrumClass cls = classify(dr);
  REQUIRE(count_blocks(cls, BlockKind::R) == 1);
  REQUIRE(count_blocks(cls, BlockKind::D) == 1);
  CHECK(find_block(cls, BlockKind::R)->theta ==
        doctest::Approx(1.3).epsilon(1e-8));
  CHECK(find_block(cls, BlockKind::D)->lambda ==
        doctest::Approx(2.0).epsilon(1e-8));
  CHECK_FALSE(cls.spectrum_on_unit_circle());
  CHECK(krein_sign(dr, std::polar(1.0, 1.3)) == 1);

  // Splitting table: R(theta) gives (0,1) at e^{i theta}, (1,0) at the
  // conjugate, and nothing off its spectrum.
  auto sp = splitting_numbers(cls, std::polar(1.0, 1.3));
  CHECK(sp.s_plus == 0);
  CHECK(sp.s_minus == 1);
  sp = splitting_numbers(cls, std::polar(1.0, -1.3));
  CHECK(sp.s_plus == 1);
  CHECK(sp.s_minus == 0);
  sp = splitting_numbers(cls, 1.0);
  CHECK(sp.s_plus == 0);
  CHECK(sp.s_minus == 0);
  CHECK_THROWS_AS(splitting_numbers(cls, complexd(2.0, 0.0)), DomainError);

  Matrix2d hypm;
  hypm << -3.0, 0.0, 0.0, -1.0 / 3.0;
  const SpectrumClass dd = classify(conj(plane_sum(hyp2, hypm)));
  REQUIRE(count_blocks(dd, BlockKind::D) == 2);
  std::vector<double> lambdas;
  for (const auto& b : dd.blocks) lambdas.push_back(b.lambda);
  std::sort(lambdas.begin(), lambdas.end());
  CHECK(lambdas[0] == doctest::Approx(-3.0).epsilon(1e-8));
  CHECK(lambdas[1] == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(splitting_numbers(dd, complexd(0.0, 1.0)).s_plus == 0);
}

TEST_CASE("Jordan blocks at +-1 carry the sign invariant") {
  const Conjugator conj(53u);
  Matrix2d shear_plus, shear_minus, shear_neg;
  shear_plus << 1.0, 1.0, 0.0, 1.0;
  shear_minus << 1.0, -1.0, 0.0, 1.0;
  shear_neg << -1.0, 1.0, 0.0, -1.0;

  const SpectrumClass c1 =
      classify(conj(plane_sum(shear_plus, Matrix2d::Identity())));
  CHECK(c1.label() == "I2<>N1(1,1)");
  CHECK(c1.nullity_plus1 == 3);
  CHECK(c1.nullity_minus1 == 0);
  auto sp = splitting_numbers(c1, 1.0);
  CHECK(sp.s_plus == 2);  // (1,1) from I2 plus (1,1) from N1(1,1)
  CHECK(sp.s_minus == 2);

  const SpectrumClass c2 =
      classify(conj(plane_sum(shear_minus, Matrix2d::Identity())));
  CHECK(c2.label() == "I2<>N1(1,-1)");
  sp = splitting_numbers(c2, 1.0);
  CHECK(sp.s_plus == 1);  // N1(1,-1) contributes (0,0)
  CHECK(sp.s_minus == 1);

  const SpectrumClass c3 =
      classify(conj(plane_sum(shear_neg, -Matrix2d::Identity())));
  CHECK(c3.label() == "-I2<>N1(-1,1)");
  CHECK(c3.nullity_minus1 == 3);
  CHECK(c3.nullity_plus1 == 0);
}

TEST_CASE("non-semisimple elliptic pairs split into trivial and non-trivial") {
  const Conjugator conj(71u);
  for (const double theta : {1.0, 2.5}) {
    const SpectrumClass triv = classify(conj(n2_block(theta, -1, 0, -1)), 1e-5);
    REQUIRE(triv.blocks.size() == 1);
    CHECK(triv.blocks[0].kind == BlockKind::N2);
    CHECK(triv.blocks[0].theta == doctest::Approx(theta).epsilon(1e-6));
    CHECK(triv.blocks[0].trivial);
    auto sp = splitting_numbers(triv, std::polar(1.0, theta));
    CHECK(sp.s_plus == 0);
    CHECK(sp.s_minus == 0);

    const SpectrumClass nontriv =
        classify(conj(n2_block(theta, 1, 0, 1)), 1e-5);
    REQUIRE(nontriv.blocks.size() == 1);
    CHECK(nontriv.blocks[0].kind == BlockKind::N2);
    CHECK_FALSE(nontriv.blocks[0].trivial);
    sp = splitting_numbers(nontriv, std::polar(1.0, theta));
    CHECK(sp.s_plus == 1);
    CHECK(sp.s_minus == 1);
  }
  // On the one-dimensional eigenspace of an N2 pair the Krein form is
  // degenerate; the sign query must refuse rather than guess.
  CHECK_THROWS_AS(
      krein_signs(conj(n2_block(1.0, -1, 0, -1)), std::polar(1.0, 1.0)),
      DegenerateKreinError);
}

TEST_CASE("doubled real pairs with deficient eigenspaces label as M2") {
  const Conjugator conj(89u);
  CHECK(symplectic_residual(m2_block(-1.0, 0.4, 0.8)) < 1e-12);

  // c2 != 0: the -1 eigenspace is one-dimensional.  A fourfold defective
  // eigenvalue scatters like the fourth root of the backward error, so the
  // classification tolerance must sit above ~1e-4.
  const SpectrumClass full = classify(conj(m2_block(-1.0, 0.4, 0.8)), 2e-3);
  REQUIRE(full.blocks.size() == 1);
  CHECK(full.blocks[0].kind == BlockKind::M2);
  CHECK(full.blocks[0].lambda == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(full.nullity_minus1 == 1);
  CHECK_THROWS_AS(splitting_numbers(full, complexd(-1.0, 0.0)),
                  UnresolvedClassError);

  // c2 = 0: the eigenspace is two-dimensional but still deficient.
  const SpectrumClass half = classify(conj(m2_block(-1.0, 0.7, 0.0)), 1e-5);
  REQUIRE(half.blocks.size() == 1);
  CHECK(half.blocks[0].kind == BlockKind::M2);
  CHECK(half.nullity_minus1 == 2);

  // Off the unit circle the same structure is a real doubled pair at lambda.
  const SpectrumClass off = classify(conj(m2_block(2.0, 0.4, 0.8)), 1e-5);
  REQUIRE(off.blocks.size() == 1);
  CHECK(off.blocks[0].kind == BlockKind::M2);
  CHECK(off.blocks[0].lambda == doctest::Approx(2.0).epsilon(1e-6));
  // Its spectrum misses the circle, so any unit omega splits to (0, 0).
  const auto sp = splitting_numbers(off, complexd(-1.0, 0.0));
  CHECK(sp.s_plus == 0);
  CHECK(sp.s_minus == 0);
}

TEST_CASE("nullity counts unit-circle kernels and guards its domain") {
  const Conjugator conj(97u);
  CHECK(nullity(Matrix4d::Identity(), 1.0) == 4);
  CHECK(nullity(conj(plane_sum(rotation2(0.9), rotation2(0.9))),
                std::polar(1.0, 0.9)) == 2);
  CHECK(nullity(conj(plane_sum(rotation2(0.9), rotation2(2.1))),
                std::polar(1.0, 2.1)) == 1);
  CHECK(nullity(conj(plane_sum(rotation2(0.9), rotation2(2.1))), -1.0) == 0);
  CHECK_THROWS_AS(nullity(Matrix4d::Identity(), complexd(2.0, 0.0)),
                  DomainError);
  // Non-symplectic input is refused outright.
  CHECK_THROWS_AS(nullity(2.0 * Matrix4d::Identity(), 1.0), DomainError);
}

TEST_CASE("classify guards its tolerance and symplecticity preconditions") {
  const Matrix4d m = plane_sum(rotation2(0.9), rotation2(2.1));
  CHECK_THROWS_AS(classify(m, 0.0), DomainError);
  CHECK_THROWS_AS(classify(m, 0.5), DomainError);
  CHECK_THROWS_AS(classify(2.0 * Matrix4d::Identity()), DomainError);
}

TEST_CASE("classification is deterministic") {
  const Conjugator conj(101u);
  const Matrix4d m = conj(plane_sum(rotation2(0.7), rotation2(2.9)));
  const SpectrumClass a = classify(m);
  const SpectrumClass b = classify(m);
  CHECK(a.label() == b.label());
  for (int i = 0; i < 4; ++i) CHECK(a.spectrum[i] == b.spectrum[i]);
  REQUIRE(a.krein_signs.size() == b.krein_signs.size());
  for (std::size_t i = 0; i < a.krein_signs.size(); ++i) {
    CHECK(a.krein_signs[i].first == b.krein_signs[i].first);
    CHECK(a.krein_signs[i].second == b.krein_signs[i].second);
  }
}

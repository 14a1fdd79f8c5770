// Part of erestab. MIT license; see LICENSE at the repository root.

#include "erestab/common.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"

using namespace erestab;

TEST_CASE("bisect finds a simple root to the requested resolution") {
  const auto f = [](double x) { return x * x - 2.0; };
  const Bracket br = make_bracket(f, 1.0, 2.0);
  CHECK(br.f_lo < 0.0);
  CHECK(br.f_hi > 0.0);
  CHECK_FALSE(br.degenerate);
  const double r = bisect(f, br, 1e-12);
  CHECK(std::abs(r - std::sqrt(2.0)) <= 1e-12);
}

TEST_CASE("bisect respects the evaluation budget and the bracket") {
  int evals = 0;
  double lo_seen = 10.0, hi_seen = -10.0;
  const auto f = [&](double x) {
    ++evals;
    lo_seen = std::min(lo_seen, x);
    hi_seen = std::max(hi_seen, x);
    return x * x - 2.0;
  };
  const Bracket br = make_bracket(f, 1.0, 2.0);
  evals = 0;  // count bisection evaluations only, not the bracket setup
  const double xtol = 1e-12;
  bisect(f, br, xtol);
  const int budget =
      static_cast<int>(std::ceil(std::log2((br.hi - br.lo) / xtol))) + 2;
  CHECK(evals <= budget);
  CHECK(lo_seen >= 1.0);
  CHECK(hi_seen <= 2.0);
}

TEST_CASE("bisect localizes the jump of a step function") {
  const auto f = [](double x) { return x < M_PI ? -1.0 : 1.0; };
  const Bracket br = make_bracket(f, 3.0, 4.0);
  const double r = bisect(f, br, 1e-10);
  CHECK(std::abs(r - M_PI) <= 1e-9);
}

TEST_CASE("bisect rejects brackets that do not straddle zero") {
  const auto same_sign = [](double x) { return x * x + 1.0; };
  const Bracket br = make_bracket(same_sign, 1.0, 2.0);
  CHECK_FALSE(br.degenerate);
  CHECK_THROWS_AS(bisect(same_sign, br, 1e-8), DegenerateBracket);

  // An endpoint landing exactly on a zero marks the bracket degenerate.
  const auto zero_at_lo = [](double x) { return x - 1.0; };
  const Bracket bz = make_bracket(zero_at_lo, 1.0, 2.0);
  CHECK(bz.degenerate);
  CHECK(bz.f_lo == 0.0);
  CHECK_THROWS_AS(bisect(zero_at_lo, bz, 1e-8), DegenerateBracket);
}

TEST_CASE("bisect_step locates a monotone boolean transition") {
  const auto pred = [](double x) { return x >= M_PI; };
  const double r = bisect_step(pred, 3.0, 4.0, 1e-10);
  CHECK(std::abs(r - M_PI) <= 1e-9);
  CHECK_THROWS_AS(bisect_step([](double) { return true; }, 0.0, 1.0, 1e-8),
                  DegenerateBracket);
  CHECK_THROWS_AS(bisect_step([](double) { return false; }, 0.0, 1.0, 1e-8),
                  DegenerateBracket);
}

TEST_CASE("rank and nullity come from singular values with a relative gate") {
  Eigen::MatrixXd d = Eigen::Vector4d(1.0, 1e-3, 1e-9, 0.0).asDiagonal();
  CHECK(rank_svd(d, 1e-6) == 2);
  CHECK(rank_svd(d, 1e-1) == 1);  // 1e-3 falls below the relative gate
  CHECK(nullity_svd(d, 1e-6) == 2);
  // The absolute floor removes directions below it regardless of rel_tol.
  CHECK(rank_svd(d, 1e-12, 1e-5) == 2);

  // Complex overload on a rank-1 Hermitian outer product.
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(3, 3);
  Eigen::Vector3cd v(std::complex<double>(1.0, 1.0),
                     std::complex<double>(0.0, 2.0),
                     std::complex<double>(-1.0, 0.5));
  z = v * v.adjoint();
  CHECK(rank_svd(z, 1e-10) == 1);
  CHECK(nullity_svd(z, 1e-10) == 2);
}

TEST_CASE("sigma_ratio is the extreme singular value quotient") {
  Eigen::MatrixXd d = Eigen::Vector4d(4.0, 2.0, 1.0, 0.5).asDiagonal();
  CHECK(sigma_ratio(d) == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("central_diff approximates the derivative to second order") {
  const double cd =
      central_diff([](double x) { return std::sin(x); }, 0.7, 1e-5);
  CHECK(std::abs(cd - std::cos(0.7)) <= 1e-8);
}

TEST_CASE("format_double round-trips exactly") {
  const std::vector<double> values{1.0 / 3.0, 2.5,   1e300, 1e-300,
                                   M_PI,      -17.0, 0.1};
  for (const double x : values) {
    const double back = std::stod(format_double(x));
    CHECK(back == x);
  }
}

TEST_CASE("error hierarchy separates domain and numerical failures") {
  CHECK_THROWS_AS(throw CollisionError("z"), DomainError);
  CHECK_THROWS_AS(throw MassRangeError("m"), DomainError);
  CHECK_THROWS_AS(throw DegenerateBracket("b"), DomainError);
  CHECK_THROWS_AS(throw BracketError("s"), NumericalError);
  CHECK_THROWS_AS(throw IntegrationError("i"), NumericalError);
  CHECK_THROWS_AS(throw DegenerateKreinError("k"), NumericalError);
  CHECK_THROWS_AS(throw UnresolvedClassError("u"), NumericalError);
  CHECK_THROWS_AS(throw SingularRecurrenceError("r"), NumericalError);
  CHECK_THROWS_AS(throw RootCountError("c"), NumericalError);
  CHECK_THROWS_AS(throw NotConverged("n"), NumericalError);
  CHECK_THROWS_AS(throw DomainError("d"), Error);
  CHECK_THROWS_AS(throw NumericalError("n"), Error);
}

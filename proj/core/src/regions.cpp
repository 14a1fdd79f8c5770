// Part of erestab. MIT license; see LICENSE at the repository root.

#include "erestab/regions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace erestab {

namespace {

constexpr double kBoundaryTol = 1e-10;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_wedge(double alpha, double beta, const char* who) {
  if (!(alpha >= beta && beta > 0.0))
    throw DomainError(std::string(who) + " requires alpha >= beta > 0");
}

// Largest theta (integer or half-integer) whose curve can still satisfy
// alpha_theta(beta) >= alpha - 1: since alpha_theta <= -(theta-1)^2 + 3 beta,
// anything beyond 1 + sqrt(3 beta - alpha + 1) is irrelevant.
double theta_cap(double alpha, double beta) {
  return 2.0 + std::sqrt(std::max(3.0 * beta - alpha + 1.0, 0.0));
}

struct CurveHits {
  int gamma = -1;      // m >= 1 with |alpha - alpha_m| <= tol, else -1
  int half = -1;       // m >= 0 with |alpha - alpha_{m+1/2}| <= tol, else -1
  bool gamma0 = false; // |alpha - (3 beta - 1)| <= tol
};

CurveHits curve_hits(double alpha, double beta) {
  CurveHits h;
  h.gamma0 = std::abs(alpha - (3.0 * beta - 1.0)) <= kBoundaryTol;
  const double cap = theta_cap(alpha, beta);
  for (int m = 1; m <= cap; ++m)
    if (std::abs(alpha - curve_alpha(m, beta)) <= kBoundaryTol) {
      h.gamma = m;
      break;
    }
  for (int m = 0; m + 0.5 <= cap; ++m)
    if (std::abs(alpha - curve_alpha(m + 0.5, beta)) <= kBoundaryTol) {
      h.half = m;
      break;
    }
  return h;
}

}  // namespace

double curve_alpha(double theta, double beta) {
  return -(theta * theta + 1.0) +
         std::sqrt(9.0 * beta * beta + 4.0 * theta * theta);
}

double curve_beta(double theta, double alpha) {
  const double s = alpha + theta * theta + 1.0;
  const double rad = s * s - 4.0 * theta * theta;
  if (rad < 0.0)
    throw DomainError("curve_beta: curve does not reach this alpha");
  return std::sqrt(rad) / 3.0;
}

RegionLabel classify_e0(double alpha, double beta) {
  require_wedge(alpha, beta, "classify_e0");
  RegionLabel out;
  out.thetas = {kNaN, kNaN};
  out.etas = {kNaN, kNaN};

  const double disc = 9.0 * beta * beta - 4.0 * alpha;
  const double g0 = alpha - (3.0 * beta - 1.0);
  const CurveHits hits = curve_hits(alpha, beta);

  // Exponents from l^2 = (alpha - 1) -+ sqrt(disc); populate every slot
  // whose square is nonnegative within the boundary tolerance.
  if (disc >= -kBoundaryTol) {
    const double sd = std::sqrt(std::max(disc, 0.0));
    const double sq[4] = {1.0 - alpha - sd, 1.0 - alpha + sd,
                          alpha - 1.0 - sd, alpha - 1.0 + sd};
    double* slot[4] = {&out.thetas[0], &out.thetas[1], &out.etas[0],
                       &out.etas[1]};
    for (int i = 0; i < 4; ++i)
      if (sq[i] >= -kBoundaryTol) *slot[i] = std::sqrt(std::max(sq[i], 0.0));
  }

  const bool near_one = std::abs(alpha - 1.0) <= kBoundaryTol;
  if (hits.gamma0) {
    out.major = "boundary";
    out.minor = near_one ? "R2|R3|R4" : (alpha > 1.0 ? "R3|R4" : "R2|R3");
    return out;
  }
  if (std::abs(disc) <= kBoundaryTol && hits.gamma < 0 && hits.half < 0) {
    out.major = "boundary";
    out.minor = near_one ? "R1|R2|R4" : (alpha > 1.0 ? "R1|R4" : "R1|R2");
    return out;
  }
  if (near_one && disc > kBoundaryTol && g0 > kBoundaryTol && hits.gamma < 0 &&
      hits.half < 0) {
    out.major = "boundary";
    out.minor = "R2|R4";
    return out;
  }
  if (hits.gamma >= 1) {
    out.major = "R3";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "R3n*(%d)", hits.gamma);
    out.minor = buf;
    return out;
  }
  if (hits.half >= 0) {
    if (g0 > 0.0) {
      out.major = "R2";
      out.minor = "R2half*";
    } else {
      out.major = "R3";
      char buf[32];
      std::snprintf(buf, sizeof(buf), "R3nhalf*(%d)", hits.half);
      out.minor = buf;
    }
    return out;
  }

  if (disc < -kBoundaryTol) {
    out.major = "R1";
    return out;
  }
  if (g0 < 0.0) {
    out.major = "R3";
    // Count curves passed moving left from Gamma_0 in the order
    // C_{1/2}, Gamma_1, C_{3/2}, Gamma_2, ...: an even count 2k lands
    // between Gamma_k and C_{k+1/2} (tag n+), an odd count 2k+1 between
    // C_{k+1/2} and Gamma_{k+1} (tag n-).
    int passed = 0;
    const double cap = theta_cap(alpha, beta);
    for (int twice = 1; 0.5 * twice <= cap; ++twice)
      if (alpha < curve_alpha(0.5 * twice, beta) - kBoundaryTol) ++passed;
    char buf[32];
    if (passed % 2 == 0)
      std::snprintf(buf, sizeof(buf), "R3n+(%d)", passed / 2);
    else
      std::snprintf(buf, sizeof(buf), "R3n-(%d)", (passed + 1) / 2);
    out.minor = buf;
    return out;
  }
  if (alpha < 1.0) {
    out.major = "R2";
    out.minor = alpha < curve_alpha(0.5, beta) ? "R2half+" : "R2half-";
    return out;
  }
  out.major = "R4";
  return out;
}

IndexPair index_table_e0(double alpha, double beta, int omega) {
  require_wedge(alpha, beta, "index_table_e0");
  if (omega != 1 && omega != -1)
    throw DomainError("index_table_e0 requires omega in {+1, -1}");
  IndexPair out;
  out.converged = true;
  const double cap = theta_cap(alpha, beta);
  if (omega == 1) {
    const double g0 = alpha - (3.0 * beta - 1.0);
    if (std::abs(g0) <= kBoundaryTol)
      out.nullity += 1;
    else if (g0 < 0.0)
      out.index += 1;
    for (int m = 1; m <= cap; ++m) {
      const double diff = alpha - curve_alpha(m, beta);
      if (std::abs(diff) <= kBoundaryTol)
        out.nullity += 2;
      else if (diff < 0.0)
        out.index += 2;
    }
  } else {
    for (int m = 0; m + 0.5 <= cap; ++m) {
      const double diff = alpha - curve_alpha(m + 0.5, beta);
      if (std::abs(diff) <= kBoundaryTol)
        out.nullity += 2;
      else if (diff < 0.0)
        out.index += 2;
    }
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::StronglyLinearlyStable:
      return "strongly-linearly-stable";
    case Verdict::LinearlyStableNotStrongly:
      return "linearly-stable-not-strongly";
    case Verdict::SpectrallyStableLinearlyUnstable:
      return "spectrally-stable-linearly-unstable";
    case Verdict::EllipticHyperbolicUnstable:
      return "elliptic-hyperbolic-unstable";
    case Verdict::HyperbolicUnstable:
      return "hyperbolic-unstable";
    case Verdict::Unresolved:
      return "unresolved";
  }
  return "unresolved";
}

namespace {

Verdict merge_verdict(const SpectrumClass& cls) {
  bool any_on = false;
  bool any_off = false;
  bool jordan_on = false;
  bool pm_one = false;
  for (const NormalFormBlock& b : cls.blocks) {
    switch (b.kind) {
      case BlockKind::D:
      case BlockKind::Quadruple:
        any_off = true;
        break;
      case BlockKind::M2:
        if (std::abs(std::abs(b.lambda) - 1.0) < 1e-6) {
          any_on = true;
          jordan_on = true;
          pm_one = true;
        } else {
          any_off = true;
        }
        break;
      case BlockKind::N1:
        any_on = true;
        jordan_on = true;
        pm_one = true;
        break;
      case BlockKind::N2:
        any_on = true;
        jordan_on = true;
        break;
      case BlockKind::Identity2:
      case BlockKind::MinusIdentity2:
        any_on = true;
        pm_one = true;
        break;
      case BlockKind::R:
        any_on = true;
        break;
    }
  }
  if (any_on && any_off) return Verdict::EllipticHyperbolicUnstable;
  if (!any_on) return Verdict::HyperbolicUnstable;
  if (jordan_on) return Verdict::SpectrallyStableLinearlyUnstable;
  if (pm_one) return Verdict::LinearlyStableNotStrongly;
  // Semisimple on the unit circle, +-1 absent: strong stability fails only
  // for a Krein-indefinite eigenvalue collision.
  for (std::size_t i = 0; i < cls.krein_signs.size(); ++i)
    for (std::size_t j = i + 1; j < cls.krein_signs.size(); ++j)
      if (std::abs(cls.krein_signs[i].first - cls.krein_signs[j].first) <
              1e-5 &&
          cls.krein_signs[i].second != cls.krein_signs[j].second)
        return Verdict::LinearlyStableNotStrongly;
  return Verdict::StronglyLinearlyStable;
}

}  // namespace

StabilityVerdict classify_general(const EssentialParams& params, double tol) {
  StabilityVerdict out;
  out.monodromy = monodromy(params);
  out.index_plus1 = index_and_nullity(assemble(params, 1, 64));
  out.index_minus1 = index_and_nullity(assemble(params, -1, 64));
  try {
    out.normal_form = classify(out.monodromy.M, tol);
  } catch (const UnresolvedClassError& err) {
    out.verdict = Verdict::Unresolved;
    out.note = err.what();
    return out;
  }
  out.verdict = merge_verdict(out.normal_form);
  return out;
}

}  // namespace erestab

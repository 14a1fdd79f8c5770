// Part of erestab. MIT license; see LICENSE at the repository root.

#include "erestab/scan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "erestab/common.hpp"
#include "erestab/essential.hpp"

namespace erestab {

namespace {

const double kRoot3 = std::sqrt(3.0);
const double kHalfRoot3 = kRoot3 / 2.0;
constexpr double kPoleGuard = 1e-6;   // excluded band around y = sqrt(3)/2
constexpr double kEdgeMargin = 1e-6;  // scan inset from the open endpoints

struct Interval {
  const char* name;
  double lo;
  double hi;
};

Interval interval_y1() { return {"Y1", -kHalfRoot3, kHalfRoot3 - 1.0}; }
Interval interval_y2() { return {"Y2", 0.0, kHalfRoot3}; }
Interval interval_y3() { return {"Y3", kHalfRoot3, kHalfRoot3 + 1.0}; }

bool inside(const Interval& iv, double y) { return y > iv.lo && y < iv.hi; }

// Indicator functions whose roots subdivide the intervals.
double indicator(int which, const EqualMassPoint& p) {
  switch (which) {
    case 0: return p.alpha - 3.0 * p.beta + 1.0;
    case 1: return p.alpha - 3.0 * p.beta;
    case 2: return p.alpha - 1.0;
    default: return p.alpha - 2.25 * p.beta * p.beta;
  }
}

const char* indicator_name(int which) {
  switch (which) {
    case 0: return "alpha-3beta+1";
    case 1: return "alpha-3beta";
    case 2: return "alpha-1";
    default: return "alpha-9beta^2/4";
  }
}

// All sign-change brackets of one indicator across an interval, scanned at
// the given step from just inside each open endpoint.
std::vector<Bracket> sign_changes(int which, const Interval& iv, double step) {
  std::vector<Bracket> out;
  const double lo = iv.lo + kEdgeMargin;
  const double hi = iv.hi - kEdgeMargin;
  double py = lo;
  double pg = indicator(which, equal_mass_point(py));
  while (py < hi) {
    const double y = std::min(py + step, hi);
    const double g = indicator(which, equal_mass_point(y));
    if ((pg <= 0.0) != (g <= 0.0)) out.push_back({py, y, pg, g});
    py = y;
    pg = g;
  }
  return out;
}

// Isolate the roots of one indicator and insist on the expected count.
std::vector<double> roots_of(int which, const Interval& iv, double step,
                             std::size_t expected) {
  const auto brackets = sign_changes(which, iv, step);
  if (brackets.size() != expected) {
    std::ostringstream os;
    os << "indicator " << indicator_name(which) << " on " << iv.name
       << ": found " << brackets.size() << " sign changes, expected "
       << expected;
    throw RootCountError(os.str());
  }
  std::vector<double> roots;
  roots.reserve(expected);
  for (const auto& br : brackets) {
    roots.push_back(bisect(
        [which](double y) { return indicator(which, equal_mass_point(y)); },
        br, 1e-8));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

char sign_char(double g) { return g > 0.0 ? '+' : (g < 0.0 ? '-' : '0'); }

// Signs of alpha - 3 beta on the sub-intervals cut out by its roots.
std::string pattern_of(const Interval& iv, const std::vector<double>& roots) {
  std::vector<double> cuts;
  cuts.push_back(iv.lo + kEdgeMargin);
  cuts.insert(cuts.end(), roots.begin(), roots.end());
  cuts.push_back(iv.hi - kEdgeMargin);
  std::string s(iv.name);
  s += ":";
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    s += ' ';
    s += sign_char(indicator(1, equal_mass_point(mid)));
  }
  return s;
}

bool meets_unit_circle(const EssentialParams& p) {
  const auto mono = monodromy(p);
  for (const auto& ev : mono.spectrum) {
    if (std::abs(std::abs(ev) - 1.0) <= 1e-6) return true;
  }
  return false;
}

std::size_t worker_count(int requested, std::size_t cells) {
  std::size_t w = requested > 0
                      ? static_cast<std::size_t>(requested)
                      : std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("ERE_STAB_THREADS")) {
    char* end = nullptr;
    const unsigned long parsed = std::strtoul(cap, &end, 10);
    if (end != cap && parsed > 0) w = std::min<std::size_t>(w, parsed);
  }
  return std::max<std::size_t>(1, std::min(w, cells));
}

std::string region_tag(double alpha, double beta) {
  const RegionLabel label = classify_e0(alpha, beta);
  if (label.minor.empty()) return label.major;
  return label.major + "/" + label.minor;
}

}  // namespace

EqualMassPoint equal_mass_point(double y) {
  if (!inside(interval_y1(), y) && !inside(interval_y2(), y) &&
      !inside(interval_y3(), y)) {
    throw DomainError("ordinate y = " + format_double(y) +
                      " is outside the admissible intervals Y1, Y2, Y3");
  }
  if (std::abs(kHalfRoot3 - y) < kPoleGuard) {
    throw DomainError("ordinate y = " + format_double(y) +
                      " is inside the guard band of the pole y = sqrt(3)/2");
  }

  const double d = kHalfRoot3 - y;  // signed offset from the far vertex
  const double r = std::abs(d);
  const double r3 = r * r * r;
  const double s = y * y + 0.25;  // squared distance to either base vertex
  const double s32 = s * std::sqrt(s);
  const double c = 2.0 * y / s32;
  const double den = kRoot3 - 2.0 * d / r3 - c;
  const double m = (d - d / r3) / den;
  // 1 - 2m evaluated without cancellation: both differences share den.
  const double m3 = (kRoot3 - c - 2.0 * d) / den;
  // m < 1/2 is tested through m3 > 0: near the pole m3 ~ d^3 stays fully
  // resolved while 1/2 - m falls below the spacing of doubles at 1/2.
  if (!(m > 0.0 && m3 > 0.0)) {
    throw MassRangeError("computed mass m = " + format_double(m) +
                         " at y = " + format_double(y) +
                         " is outside (0, 1/2)");
  }

  // The ordinate component of the force balance at (1/2, y) must vanish for
  // the solved m; this guards the arithmetic above against cancellation.
  const double pull_base = 2.0 * m * y / s32;
  const double pull_far = m3 * d / r3;
  const double residual = -pull_base + pull_far + y - kHalfRoot3 * m3;
  const double scale =
      std::max({1.0, std::abs(pull_base), std::abs(pull_far)});
  if (!(std::abs(residual) <= 1e-10 * scale)) {
    throw NumericalError("central-configuration residual " +
                         format_double(residual) + " at y = " +
                         format_double(y));
  }

  EqualMassPoint p;
  p.y = y;
  p.m = m;
  const double s52 = s * s * std::sqrt(s);
  p.alpha = 0.5 * (2.0 * m / s32 + m3 / r3);
  p.beta = 0.5 * std::abs(m * (0.5 - 2.0 * y * y) / s52 - m3 / r3);
  return p;
}

EqualMassRoots equal_mass_roots(double step) {
  if (!(step > 0.0 && step < 0.1)) {
    throw DomainError("scan step must lie in (0, 0.1)");
  }
  const Interval y1 = interval_y1();
  const Interval y2 = interval_y2();

  // Expected sign-change counts per interval: the outer boundary indicator
  // alpha - 3 beta + 1 stays positive on Y1; alpha - 1 never vanishes.
  roots_of(0, y1, step, 0);
  roots_of(2, y1, step, 0);
  roots_of(2, y2, step, 0);

  EqualMassRoots out;
  const auto g2_y1 = roots_of(1, y1, step, 2);
  out.y11 = g2_y1[0];
  out.y12 = g2_y1[1];
  const auto g4_y1 = roots_of(3, y1, step, 1);
  out.y0 = g4_y1[0];
  out.m0 = equal_mass_point(out.y0).m;
  const auto g1_y2 = roots_of(0, y2, step, 2);
  out.y21 = g1_y2[0];
  out.y24 = g1_y2[1];
  const auto g2_y2 = roots_of(1, y2, step, 2);
  out.y22 = g2_y2[0];
  out.y23 = g2_y2[1];
  const auto g4_y2 = roots_of(3, y2, step, 2);
  out.ybar21 = g4_y2[0];
  out.ybar22 = g4_y2[1];
  out.sign_pattern = pattern_of(y1, g2_y1) + "; " + pattern_of(y2, g2_y2);
  return out;
}

double equal_mass_estar(double resolution) {
  if (!(resolution > 0.0 && resolution < 1.0)) {
    throw DomainError("resolution must lie in (0, 1)");
  }
  // Fixed ordinate samples across the discriminant-positive stretch of Y1,
  // inset from both the interval edge and the discriminant root.
  const double y0 = equal_mass_roots().y0;
  const double lo = -kHalfRoot3 + 1e-3;
  const double hi = y0 - 1e-3;
  constexpr int kSamples = 25;
  std::vector<EqualMassPoint> samples;
  samples.reserve(kSamples);
  for (int i = 0; i < kSamples; ++i) {
    const double y = lo + (hi - lo) * i / (kSamples - 1);
    samples.push_back(equal_mass_point(y));
  }
  const auto changed = [&samples](double e) {
    for (const auto& p : samples) {
      if (meets_unit_circle(make_params(p.alpha, p.beta, e))) return true;
    }
    return false;
  };
  const double e_hi = 0.95;
  if (!changed(e_hi)) return e_hi;  // hyperbolic through the tested range
  return bisect_step(changed, 0.0, e_hi, resolution);
}

std::vector<AtlasCell> sweep(const SweepSpec& spec) {
  if (!(spec.a_step > 0.0) || !(spec.b_step > 0.0)) {
    throw DomainError("sweep steps must be positive");
  }
  if (!(spec.a_max >= spec.a_min) || !(spec.b_max >= spec.b_min)) {
    throw DomainError("sweep rectangle is empty");
  }
  if (spec.eccentricities.empty()) {
    throw DomainError("sweep needs at least one eccentricity");
  }
  for (const double e : spec.eccentricities) {
    if (!(e >= 0.0 && e < 1.0)) {
      throw DomainError("eccentricity " + format_double(e) +
                        " is outside [0, 1)");
    }
  }

  // Surviving grid nodes in direct coordinates, row-major in (b, a).
  struct Node {
    double alpha;
    double beta;
  };
  std::vector<Node> nodes;
  const auto values = [](double lo, double hi, double step) {
    std::vector<double> v;
    for (int i = 0;; ++i) {
      const double x = lo + i * step;
      if (x > hi + step * 1e-9) break;
      v.push_back(x);
    }
    return v;
  };
  for (const double b : values(spec.b_min, spec.b_max, spec.b_step)) {
    for (const double a : values(spec.a_min, spec.a_max, spec.a_step)) {
      double alpha = a;
      double beta = b;
      if (spec.tilde) {
        const auto direct = from_tilde(a, b);
        alpha = direct.first;
        beta = direct.second;
      }
      if (alpha > 0.0 && beta >= 0.0 && alpha >= beta) {
        nodes.push_back({alpha, beta});
      }
    }
  }

  std::vector<AtlasCell> cells;
  cells.reserve(nodes.size() * spec.eccentricities.size());
  for (const double e : spec.eccentricities) {
    for (const auto& node : nodes) {
      AtlasCell cell;
      cell.params = make_params(node.alpha, node.beta, e);
      cells.push_back(cell);
    }
  }

  std::atomic<std::size_t> next{0};
  const auto work = [&cells, &next, &spec]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      AtlasCell& cell = cells[i];
      const auto t0 = std::chrono::steady_clock::now();
      try {
        cell.verdict = classify_general(cell.params, spec.tol);
        if (cell.params.e == 0.0 && cell.params.beta > 0.0) {
          cell.region = region_tag(cell.params.alpha, cell.params.beta);
        }
      } catch (const Error& ex) {
        cell.error = ex.what();
      }
      const auto t1 = std::chrono::steady_clock::now();
      cell.runtime = std::chrono::duration<double>(t1 - t0).count();
    }
  };
  std::vector<std::thread> pool;
  const std::size_t workers = worker_count(spec.workers, cells.size());
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return cells;
}

std::map<std::string, std::size_t> atlas_summary(
    const std::vector<AtlasCell>& atlas) {
  std::map<std::string, std::size_t> counts;
  for (const auto& cell : atlas) {
    if (!cell.error.empty()) {
      ++counts["error"];
    } else {
      ++counts[to_string(cell.verdict.verdict)];
    }
  }
  return counts;
}

}  // namespace erestab

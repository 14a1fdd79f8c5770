// Part of erestab. MIT license; see LICENSE at the repository root.

#include "erestab/common.hpp"

#include <Eigen/SVD>

#include <cstdio>

namespace erestab {

Bracket make_bracket(const std::function<double(double)>& f, double lo, double hi) {
  Bracket br;
  br.lo = lo;
  br.hi = hi;
  br.f_lo = f(lo);
  br.f_hi = f(hi);
  br.degenerate = (br.f_lo == 0.0 || br.f_hi == 0.0);
  return br;
}

double bisect(const std::function<double(double)>& f, const Bracket& br, double xtol) {
  if (!(xtol > 0.0)) throw DomainError("bisect: xtol must be positive");
  if (br.degenerate || !(br.f_lo * br.f_hi < 0.0))
    throw DegenerateBracket("bisect: endpoint values do not straddle zero");

  double lo = br.lo, hi = br.hi;
  double f_lo = br.f_lo;
  // ceil(log2(width/xtol)) + 2 caps the evaluation count even when rounding
  // stalls the interval update.
  const double width = hi - lo;
  const int max_iter =
      width <= xtol ? 1 : static_cast<int>(std::ceil(std::log2(width / xtol))) + 2;
  for (int it = 0; it < max_iter && (hi - lo) > xtol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at rounding resolution
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (f_lo * fm < 0.0) {
      hi = mid;
    } else {
      lo = mid;
      f_lo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

double bisect_step(const std::function<bool(double)>& pred, double lo, double hi,
                   double xtol) {
  if (!(xtol > 0.0)) throw DomainError("bisect_step: xtol must be positive");
  if (pred(lo)) throw DegenerateBracket("bisect_step: predicate already true at lo");
  if (!pred(hi)) throw DegenerateBracket("bisect_step: predicate false at hi");
  const double width = hi - lo;
  const int max_iter =
      width <= xtol ? 1 : static_cast<int>(std::ceil(std::log2(width / xtol))) + 2;
  for (int it = 0; it < max_iter && (hi - lo) > xtol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (pred(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

template <typename Matrix>
int rank_by_singular_values(const Matrix& a, double rel_tol, double abs_floor) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  const double thr = std::max(rel_tol * sv(0), abs_floor);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > thr) ++rank;
  return rank;
}

}  // namespace

int rank_svd(const Eigen::MatrixXd& a, double rel_tol, double abs_floor) {
  return rank_by_singular_values(a, rel_tol, abs_floor);
}

int rank_svd(const Eigen::MatrixXcd& a, double rel_tol, double abs_floor) {
  return rank_by_singular_values(a, rel_tol, abs_floor);
}

double sigma_ratio(const Eigen::MatrixXd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0.0;
  return sv(sv.size() - 1) / sv(0);
}

double central_diff(const std::function<double(double)>& f, double x, double h) {
  if (!(h > 0.0)) throw DomainError("central_diff: h must be positive");
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace erestab

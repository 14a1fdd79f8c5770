// Part of erestab. MIT license; see LICENSE at the repository root.

#include "erestab/galerkin.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace erestab {

namespace {

// Effective zero threshold for an eigenvalue list with largest magnitude
// lmax: relative in lmax above 1, floored at 1e-10.
double zero_threshold(double tol, double lmax) {
  return std::max(tol * std::max(1.0, lmax), 1e-10);
}

struct SpectrumCounts {
  int index = 0;
  int nullity = 0;
  bool gap_ok = false;
};

SpectrumCounts count_eigenvalues(const Eigen::VectorXd& lam, double tol) {
  const double lmax = lam.cwiseAbs().maxCoeff();
  const double eff = zero_threshold(tol, lmax);
  SpectrumCounts c;
  double nearest = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    const double a = std::abs(lam[i]);
    if (a <= eff) {
      ++c.nullity;
    } else {
      if (lam[i] < 0.0) ++c.index;
      nearest = std::min(nearest, a);
    }
  }
  c.gap_ok = !(nearest < 10.0 * eff);
  return c;
}

Eigen::VectorXd eigenvalues_of(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m,
                                                    Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericalError("galerkin eigenvalue decomposition failed");
  return es.eigenvalues();
}

// Recurrence matrices shared by both sectors.
Eigen::Matrix2d rec_a(int n) {
  Eigen::Matrix2d a;
  a << n, 2, 2, n;
  return -0.5 * n * a;
}

Eigen::Matrix2d rec_b(int n, double l3, double l4) {
  Eigen::Matrix2d b;
  b << n * n + l3, 2.0 * n, 2.0 * n, n * n + l4;
  return b;
}

}  // namespace

std::vector<double> fourier_f(double e, int order) {
  if (!(std::abs(e) < 1.0))
    throw DomainError("fourier_f requires |e| < 1, got " + format_double(e));
  if (order < 0) throw DomainError("fourier_f requires order >= 0");
  const double root = std::sqrt(1.0 - e * e);
  const double rho = e / (1.0 + root);
  std::vector<double> fhat(static_cast<std::size_t>(order) + 1);
  double pow_k = 1.0 / root;
  for (int k = 0; k <= order; ++k) {
    fhat[static_cast<std::size_t>(k)] = pow_k;
    pow_k *= -rho;
  }
  return fhat;
}

GalerkinProblem assemble(const EssentialParams& params, int omega, int N) {
  if (omega != 1 && omega != -1)
    throw DomainError("assemble requires omega in {+1, -1}");
  if (N < 8) throw DomainError("assemble requires N >= 8");
  if (!(std::abs(params.e) < 1.0))
    throw DomainError("assemble requires |e| < 1");

  GalerkinProblem gp;
  gp.params = params;
  gp.omega = omega;
  gp.N = N;
  gp.fcoeffs = fourier_f(params.e, 2 * N + 1);
  const std::vector<double>& fh = gp.fcoeffs;
  const double l3 = params.lambda3;
  const double l4 = params.lambda4;

  if (omega == 1) {
    // Layout: 0 -> a_0 (x const), 1 -> c_0 (y const); then for n >= 1 at
    // base 2 + 4(n-1): a_n (x cos), d_n (y sin), b_n (x sin), c_n (y cos).
    const int dim = 4 * N + 2;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    auto ia = [](int n) { return 2 + 4 * (n - 1) + 0; };
    auto id = [](int n) { return 2 + 4 * (n - 1) + 1; };
    auto ib = [](int n) { return 2 + 4 * (n - 1) + 2; };
    auto ic = [](int n) { return 2 + 4 * (n - 1) + 3; };

    m(0, 0) = l3 * fh[0];
    m(1, 1) = l4 * fh[0];
    const double r2 = std::sqrt(2.0);
    for (int n = 1; n <= N; ++n) {
      m(0, ia(n)) = m(ia(n), 0) = l3 * r2 * fh[static_cast<std::size_t>(n)];
      m(1, ic(n)) = m(ic(n), 1) = l4 * r2 * fh[static_cast<std::size_t>(n)];
      m(ia(n), ia(n)) += n * n;
      m(ib(n), ib(n)) += n * n;
      m(ic(n), ic(n)) += n * n;
      m(id(n), id(n)) += n * n;
      m(ia(n), id(n)) += 2.0 * n;
      m(id(n), ia(n)) += 2.0 * n;
      m(ib(n), ic(n)) -= 2.0 * n;
      m(ic(n), ib(n)) -= 2.0 * n;
      for (int k = 1; k <= N; ++k) {
        const double fd = fh[static_cast<std::size_t>(std::abs(n - k))];
        const double fs = fh[static_cast<std::size_t>(n + k)];
        m(ia(n), ia(k)) += l3 * (fd + fs);
        m(ib(n), ib(k)) += l3 * (fd - fs);
        m(ic(n), ic(k)) += l4 * (fd + fs);
        m(id(n), id(k)) += l4 * (fd - fs);
      }
    }
    gp.matrix = std::move(m);
  } else {
    // Half-integer modes mu_n = n + 1/2, n = 0..N; layout base 4n:
    // a_n (x cos), d_n (y sin), b_n (x sin), c_n (y cos).
    const int dim = 4 * (N + 1);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    auto ia = [](int n) { return 4 * n + 0; };
    auto id = [](int n) { return 4 * n + 1; };
    auto ib = [](int n) { return 4 * n + 2; };
    auto ic = [](int n) { return 4 * n + 3; };

    for (int n = 0; n <= N; ++n) {
      const double mu = n + 0.5;
      m(ia(n), ia(n)) += mu * mu;
      m(ib(n), ib(n)) += mu * mu;
      m(ic(n), ic(n)) += mu * mu;
      m(id(n), id(n)) += mu * mu;
      m(ia(n), id(n)) += 2.0 * mu;
      m(id(n), ia(n)) += 2.0 * mu;
      m(ib(n), ic(n)) -= 2.0 * mu;
      m(ic(n), ib(n)) -= 2.0 * mu;
      for (int k = 0; k <= N; ++k) {
        const double fd = fh[static_cast<std::size_t>(std::abs(n - k))];
        const double fs = fh[static_cast<std::size_t>(n + k + 1)];
        m(ia(n), ia(k)) += l3 * (fd + fs);
        m(ib(n), ib(k)) += l3 * (fd - fs);
        m(ic(n), ic(k)) += l4 * (fd + fs);
        m(id(n), id(k)) += l4 * (fd - fs);
      }
    }
    gp.matrix = std::move(m);
  }
  return gp;
}

IndexPair count_spectrum(const GalerkinProblem& problem, double tol) {
  const SpectrumCounts c = count_eigenvalues(eigenvalues_of(problem.matrix),
                                             tol);
  IndexPair out;
  out.index = c.index;
  out.nullity = c.nullity;
  out.converged = c.gap_ok;
  return out;
}

IndexPair index_and_nullity(const GalerkinProblem& problem, double tol) {
  const SpectrumCounts coarse =
      count_eigenvalues(eigenvalues_of(problem.matrix), tol);
  const GalerkinProblem refined =
      assemble(problem.params, problem.omega, problem.N + 8);
  const SpectrumCounts fine =
      count_eigenvalues(eigenvalues_of(refined.matrix), tol);
  if (coarse.index != fine.index || coarse.nullity != fine.nullity) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "galerkin truncations disagree: N=%d gives (%d,%d), "
                  "N=%d gives (%d,%d)",
                  problem.N, coarse.index, coarse.nullity, problem.N + 8,
                  fine.index, fine.nullity);
    throw NotConverged(buf);
  }
  IndexPair out;
  out.index = coarse.index;
  out.nullity = coarse.nullity;
  out.converged = coarse.gap_ok && fine.gap_ok;
  return out;
}

RecurrenceVerdict kernel_recurrence_test(const EssentialParams& params,
                                         int maxN, double tol) {
  const double e = params.e;
  if (!(e > 0.0 && e < 1.0))
    throw DomainError("kernel_recurrence_test requires 0 < e < 1");
  if (maxN < 32) throw DomainError("kernel_recurrence_test requires maxN >= 32");
  const double l3 = params.lambda3;
  const double l4 = params.lambda4;

  // Backward iteration w_{n-1} = (e A_{n-1})^{-1} (B_n w_n - e A_{n+1}
  // w_{n+1}) from w_{maxN+1} = 0 selects the two-dimensional decaying
  // solution family; the columns are re-orthonormalized each step.
  Eigen::Matrix<double, 4, 2> state;  // rows 0-1: w_n, rows 2-3: w_{n+1}
  state.setZero();
  state(0, 0) = 1.0;
  state(1, 1) = 1.0;
  for (int n = maxN; n >= 4; --n) {
    const Eigen::Matrix2d inv_a = (e * rec_a(n - 1)).inverse();
    const Eigen::Matrix2d bn = rec_b(n, l3, l4);
    Eigen::Matrix<double, 4, 2> next;
    next.block<2, 2>(2, 0) = state.block<2, 2>(0, 0);
    next.block<2, 2>(0, 0) =
        inv_a * (bn * state.block<2, 2>(0, 0) -
                 e * rec_a(n + 1) * state.block<2, 2>(2, 0));
    Eigen::HouseholderQR<Eigen::Matrix<double, 4, 2>> qr(next);
    state = qr.householderQ() * Eigen::Matrix<double, 4, 2>::Identity();
  }
  const Eigen::Matrix2d psi3 = state.block<2, 2>(0, 0);   // w_3 columns
  const Eigen::Matrix2d psi4 = state.block<2, 2>(2, 0);   // w_4 columns

  const Eigen::Matrix2d a1 = rec_a(1);
  const Eigen::Matrix2d a2 = rec_a(2);
  const Eigen::Matrix2d a3 = rec_a(3);
  const Eigen::Matrix2d a4 = rec_a(4);
  const Eigen::Matrix2d b1 = rec_b(1, l3, l4);
  const Eigen::Matrix2d b2 = rec_b(2, l3, l4);
  const Eigen::Matrix2d b3 = rec_b(3, l3, l4);

  // Closing system in x = (c_1, c_2, a_2, d_2, a_1, d_1, a_0): the n = 3 and
  // n = 2 recurrences, the first-mode equation e A_2 w_2 = B_1 w_1, and a
  // sector-dependent zeroth-mode row.
  Eigen::Matrix<double, 7, 7> k = Eigen::Matrix<double, 7, 7>::Zero();
  k.block<2, 2>(0, 0) = -(b3 * psi3 - e * a4 * psi4);
  k.block<2, 2>(0, 2) = e * a2;
  k.block<2, 2>(2, 0) = e * a3 * psi3;
  k.block<2, 2>(2, 2) = -b2;
  k.block<2, 2>(2, 4) = e * a1;
  k.block<2, 2>(4, 2) = e * a2;
  k.block<2, 2>(4, 4) = -b1;

  double worst = std::numeric_limits<double>::infinity();
  // Sector A closes with lambda3 a_0 + e (a_1/2 + d_1) = 0; sector B obeys
  // the same recurrence in (b_n, -c_n) and closes with
  // lambda4 c_0 - e (b_1 - c_1/2) = 0.
  const double row_a[3] = {e / 2.0, e, l3};
  const double row_b[3] = {-e, -e / 2.0, l4};
  for (const double* row : {row_a, row_b}) {
    k(6, 4) = row[0];
    k(6, 5) = row[1];
    k(6, 6) = row[2];
    Eigen::JacobiSVD<Eigen::Matrix<double, 7, 7>> svd(k);
    const auto& sv = svd.singularValues();
    worst = std::min(worst, sv(6) / sv(0));
  }
  if (worst < tol) return RecurrenceVerdict::Degenerate1;
  if (worst > 100.0 * tol) return RecurrenceVerdict::Nondegenerate;
  return RecurrenceVerdict::Inconclusive;
}

}  // namespace erestab

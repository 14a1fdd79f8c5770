// Part of erestab. MIT license; see LICENSE at the repository root.
//
// Shared oracles for the unit tests.  Everything here is deliberately
// independent of the library internals: characteristic polynomials come from
// the Faddeev-LeVerrier recurrence, closed spectra from the quartic
//   mu^2 = (alpha - 1) +- sqrt(9 beta^2 - 4 alpha),
// and synthetic Sp(4) matrices from elementary symplectic factors, so a test
// failure always indicts the library, not a copied formula.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "erestab/essential.hpp"

namespace testsupport {

using complexd = std::complex<double>;
using Eigen::Matrix2d;
using Eigen::Matrix4d;

// Coefficients (a1, a2, a3, a4) of det(lam I - M) = lam^4 + a1 lam^3 + ...
// via the Faddeev-LeVerrier recurrence.
inline std::array<double, 4> charpoly(const Matrix4d& m) {
  std::array<double, 4> a{};
  Matrix4d p = m;
  a[0] = -p.trace();
  p = m * (p + a[0] * Matrix4d::Identity());
  a[1] = -p.trace() / 2.0;
  p = m * (p + a[1] * Matrix4d::Identity());
  a[2] = -p.trace() / 3.0;
  p = m * (p + a[2] * Matrix4d::Identity());
  a[3] = -p.trace() / 4.0;
  return a;
}

// Monic-polynomial coefficients from the four roots (imaginary parts of the
// expanded product cancel for conjugation-closed root sets).
inline std::array<double, 4> coeffs_from_roots(
    const std::array<complexd, 4>& roots) {
  std::array<complexd, 5> c{1.0, 0.0, 0.0, 0.0, 0.0};
  for (const auto& r : roots) {
    for (int k = 4; k >= 1; --k) c[k] = c[k] - r * c[k - 1];
  }
  return {c[1].real(), c[2].real(), c[3].real(), c[4].real()};
}

// Monodromy eigenvalues of the circular limit: exp(+-2 pi mu) over the two
// branches of mu^2 = (alpha - 1) +- sqrt(9 beta^2 - 4 alpha).
inline std::array<complexd, 4> closed_spectrum_e0(double alpha, double beta) {
  const complexd disc(9.0 * beta * beta - 4.0 * alpha, 0.0);
  const complexd root = std::sqrt(disc);
  std::array<complexd, 4> out{};
  int k = 0;
  for (const double sign : {-1.0, 1.0}) {
    const complexd mu = std::sqrt(complexd(alpha - 1.0, 0.0) + sign * root);
    out[k++] = std::exp(2.0 * M_PI * mu);
    out[k++] = std::exp(-2.0 * M_PI * mu);
  }
  return out;
}

// --- synthetic Sp(4) construction -----------------------------------------
//
// The coordinate planes (p1, q1) = (0, 2) and (p2, q2) = (1, 3) are
// J-orthogonal symplectic planes, so the direct sum of two SL(2, R) blocks on
// them is symplectic, and conjugating by a product of elementary symplectic
// factors reaches a generic representative of the conjugacy class.

inline Matrix2d rotation2(double t) {
  Matrix2d r;
  r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return r;
}

// a acting on (p1, q1), b acting on (p2, q2).
inline Matrix4d plane_sum(const Matrix2d& a, const Matrix2d& b) {
  Matrix4d m = Matrix4d::Zero();
  m(0, 0) = a(0, 0);
  m(0, 2) = a(0, 1);
  m(2, 0) = a(1, 0);
  m(2, 2) = a(1, 1);
  m(1, 1) = b(0, 0);
  m(1, 3) = b(0, 1);
  m(3, 1) = b(1, 0);
  m(3, 3) = b(1, 1);
  return m;
}

// Product of elementary symplectic factors: shears [[I, B], [0, I]] with
// B symmetric, point transforms [[A, 0], [0, A^-T]], and J itself.
inline Matrix4d random_symplectic(std::mt19937& gen, int factors = 4) {
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  Matrix4d s = Matrix4d::Identity();
  const Matrix4d J = erestab::symplectic_J();
  for (int k = 0; k < factors; ++k) {
    Matrix4d f = Matrix4d::Identity();
    const int kind = k % 3;
    if (kind == 0) {
      const double b11 = u(gen), b22 = u(gen), b12 = u(gen);
      f(0, 2) = b11;
      f(0, 3) = b12;
      f(1, 2) = b12;
      f(1, 3) = b22;
    } else if (kind == 1) {
      const double t = 2.0 * u(gen);
      const double scale = 1.0 + 0.5 * std::abs(u(gen));
      const Matrix2d a = rotation2(t) *
                         Eigen::DiagonalMatrix<double, 2>(scale, 1.0 / scale);
      f.block<2, 2>(0, 0) = a;
      f.block<2, 2>(2, 2) = a.inverse().transpose();
    } else {
      f = J;
    }
    s = s * f;
  }
  return s;
}

// Symplectic inverse S^-1 = -J S^T J; exact up to roundoff for symplectic S.
inline Matrix4d symplectic_inverse(const Matrix4d& s) {
  const Matrix4d J = erestab::symplectic_J();
  return -J * s.transpose() * J;
}

// The canonical doubled-real-pair block with one-dimensional eigenspaces:
//
//          ( l  1      c1        0   )
//          ( 0  l      c2    (-l) c2 )
//   M2  =  ( 0  0     1/l        0   )
//          ( 0  0   -1/l^2      1/l  ) .
inline Matrix4d m2_block(double lambda, double c1, double c2) {
  Matrix4d m;
  m << lambda, 1.0, c1, 0.0,
       0.0, lambda, c2, -lambda * c2,
       0.0, 0.0, 1.0 / lambda, 0.0,
       0.0, 0.0, -1.0 / (lambda * lambda), 1.0 / lambda;
  return m;
}

// Non-semisimple doubled elliptic pair [[R(t), R(t) S0], [0, R(t)]]; the
// shear block R(t) S0 with S0 symmetric keeps the matrix symplectic, and the
// block is trivial exactly when tr S0 < 0.
inline Matrix4d n2_block(double t, double s1, double s2, double s3) {
  Matrix2d s0;
  s0 << s1, s2, s2, s3;
  const Matrix2d r = rotation2(t);
  Matrix4d m = Matrix4d::Zero();
  m.block<2, 2>(0, 0) = r;
  m.block<2, 2>(2, 2) = r;
  m.block<2, 2>(0, 2) = r * s0;
  return m;
}

}  // namespace testsupport

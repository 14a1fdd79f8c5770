// Part of erestab. MIT license; see LICENSE at the repository root.

#include "erestab/sympl.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace erestab {

namespace {

constexpr double kResidualCap = 1e-6;
// Tolerance for matching a query omega against a block's unit eigenvalue.
constexpr double kMatchTol = 1e-5;
// Numerical eigenvalues of a Jordan pair at +-1 scatter like the square root
// of the backward error; the pinning tolerance must sit above that scatter.
constexpr double kPinFloor = 1e-5;

void require_symplectic(const Eigen::Matrix4d& m) {
  // M^T J M - J scales like |M|^2, so the residual bound is relative.
  const double scale = std::max(1.0, m.squaredNorm());
  if (!(symplectic_residual(m) < kResidualCap * scale))
    throw DomainError("sympl: matrix fails the symplectic residual bound 1e-6");
}

Eigen::Matrix4cd shifted(const Eigen::Matrix4d& m, complexd omega) {
  return m.cast<complexd>() - omega * Eigen::Matrix4cd::Identity();
}

// Columns of V spanning the numerical kernel.  The threshold is
// tol * sigma_max, floored at 1e-13 and capped at 1e-3: a true kernel
// direction carries a roundoff singular value of order eps * sigma_max, which
// stays below the cap up to sigma_max ~ 1e12, while the cap keeps order-one
// directions of strongly hyperbolic matrices out of the kernel.
template <typename Mat>
Eigen::Matrix<typename Mat::Scalar, 4, Eigen::Dynamic> kernel_basis(
    const Mat& a, double tol) {
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double thr =
      std::min(std::max(tol * std::max(sv(0), 1.0), 1e-13), 1e-3);
  int g = 0;
  for (int i = 0; i < 4; ++i)
    if (sv(i) < thr) ++g;
  return svd.matrixV().rightCols(g);
}

// Minimal-norm least-squares solution of a x = rhs with the trailing g
// singular directions treated as exact kernel (truncated pseudo-inverse).
template <typename Mat, typename Vec>
Vec truncated_solve(const Mat& a, const Vec& rhs, int g) {
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Vec y = svd.matrixU().adjoint() * rhs;
  Vec x = Vec::Zero();
  for (int i = 0; i < 4 - g; ++i) y(i) /= svd.singularValues()(i);
  for (int i = 4 - g; i < 4; ++i) y(i) = 0.0;
  x = svd.matrixV() * y;
  return x;
}

// The sign invariant a of an N1(l0, a) block: u spans ker(M - l0 I) inside the
// two-dimensional generalized eigenspace, (M - l0 I) w = u, a = -sign(u^T J w).
// g is the full kernel dimension of M - l0 I (1, or 3 for I2 <> N1).
int jordan_sign_at(const Eigen::Matrix4d& m, double l0, int g) {
  const Eigen::Matrix4d a = m - l0 * Eigen::Matrix4d::Identity();
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(a, Eigen::ComputeFullU |
                                               Eigen::ComputeFullV);
  // The chain's eigenvector is the kernel vector lying in range(a): for g = 1
  // it is the unique kernel direction, for g = 3 it is the rank-one image.
  Eigen::Vector4d u = (g == 1) ? Eigen::Vector4d(svd.matrixV().col(3))
                               : Eigen::Vector4d(svd.matrixU().col(0));
  if ((a * u).norm() > 1e-5)
    throw UnresolvedClassError("sympl: Jordan eigenvector fails the kernel test");
  Eigen::Vector4d w = truncated_solve(a, u, g);
  if ((a * w - u).norm() > 1e-5)
    throw UnresolvedClassError("sympl: Jordan chain equation has no solution");
  const double s = u.dot(symplectic_J() * w);
  if (std::abs(s) < 1e-9 * std::max(1.0, w.norm()))
    throw UnresolvedClassError("sympl: Jordan sign invariant below resolution");
  return s < 0.0 ? 1 : -1;
}

// Triviality of an N2 block at the upper-half eigenvalue mu: with v spanning
// the eigenspace and (M - mu) w = v, the block is trivial iff
// Re(v^H (-iJ) w) < 0 (direct computation on the canonical form).
bool n2_trivial_at(const Eigen::Matrix4d& m, complexd mu,
                   const Eigen::Vector4cd& v) {
  const Eigen::Matrix4cd a = shifted(m, mu);
  Eigen::Vector4cd w = truncated_solve(a, Eigen::Vector4cd(v), 1);
  if ((a * w - v).norm() > 1e-5)
    throw UnresolvedClassError("sympl: N2 chain equation has no solution");
  const Eigen::Matrix4cd mij =
      complexd(0.0, -1.0) * symplectic_J().cast<complexd>();
  const double eta = ((v.adjoint() * mij * w)(0, 0)).real();
  if (std::abs(eta) < 1e-9 * std::max(1.0, w.norm()))
    throw UnresolvedClassError("sympl: N2 triviality invariant below resolution");
  return eta < 0.0;
}

int block_group(const NormalFormBlock& b) {
  switch (b.kind) {
    case BlockKind::Identity2:
    case BlockKind::MinusIdentity2:
      return b.lambda > 0 ? 0 : 1;
    case BlockKind::N1:
    case BlockKind::M2:
      return b.lambda > 0 ? 0 : 1;
    case BlockKind::R:
      return 2;
    case BlockKind::N2:
      return 3;
    case BlockKind::D:
      return 4;
    case BlockKind::Quadruple:
      return 5;
  }
  return 6;
}

void sort_blocks(std::vector<NormalFormBlock>& blocks) {
  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const NormalFormBlock& x, const NormalFormBlock& y) {
                     const int gx = block_group(x), gy = block_group(y);
                     if (gx != gy) return gx < gy;
                     if (x.kind != y.kind)
                       return static_cast<int>(x.kind) < static_cast<int>(y.kind);
                     if (x.kind == BlockKind::R) return x.theta < y.theta;
                     if (x.kind == BlockKind::D)
                       return std::abs(x.lambda) < std::abs(y.lambda);
                     return false;
                   });
}

}  // namespace

std::string NormalFormBlock::label() const {
  char buf[64];
  switch (kind) {
    case BlockKind::Identity2:
      return "I2";
    case BlockKind::MinusIdentity2:
      return "-I2";
    case BlockKind::N1:
      std::snprintf(buf, sizeof buf, "N1(%d,%d)", lambda > 0 ? 1 : -1,
                    jordan_sign);
      return buf;
    case BlockKind::R:
      std::snprintf(buf, sizeof buf, "R(%.6g)", theta);
      return buf;
    case BlockKind::N2:
      std::snprintf(buf, sizeof buf, "N2(%.6g)-%s", theta,
                    trivial ? "trivial" : "nontrivial");
      return buf;
    case BlockKind::M2:
      std::snprintf(buf, sizeof buf, "M2(%.6g)", lambda);
      return buf;
    case BlockKind::D:
      std::snprintf(buf, sizeof buf, "D(%.6g)", lambda);
      return buf;
    case BlockKind::Quadruple:
      return "hyperbolic-complex-quadruple";
  }
  return "?";
}

std::string SpectrumClass::label() const {
  std::string out;
  for (const auto& b : blocks) {
    if (!out.empty()) out += "<>";
    out += b.label();
  }
  return out;
}

bool SpectrumClass::spectrum_on_unit_circle(double tol) const {
  for (const auto& z : spectrum)
    if (std::abs(std::abs(z) - 1.0) > tol) return false;
  return true;
}

int nullity(const Eigen::Matrix4d& M, complexd omega, double tol) {
  require_symplectic(M);
  if (std::abs(std::abs(omega) - 1.0) > 1e-9)
    throw DomainError("nullity: omega must lie on the unit circle");
  return static_cast<int>(kernel_basis(shifted(M, omega), tol).cols());
}

std::vector<int> krein_signs(const Eigen::Matrix4d& M, complexd omega,
                             double tol) {
  require_symplectic(M);
  if (std::abs(std::abs(omega) - 1.0) > 1e-9)
    throw DomainError("krein_signs: omega must lie on the unit circle");
  if (std::abs(omega.imag()) < 1e-9)
    throw DomainError("krein_signs: the form degenerates at omega = +-1");
  const Eigen::MatrixXcd k = kernel_basis(shifted(M, omega), std::max(tol, 1e-8));
  if (k.cols() == 0)
    throw DomainError("krein_signs: omega is not an eigenvalue of M");
  const Eigen::Matrix4cd mij =
      complexd(0.0, -1.0) * symplectic_J().cast<complexd>();
  const Eigen::MatrixXcd h = k.adjoint() * mij * k;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  std::vector<int> signs;
  for (int i = static_cast<int>(h.rows()) - 1; i >= 0; --i) {
    const double v = es.eigenvalues()(i);
    if (std::abs(v) < tol)
      throw DegenerateKreinError("krein_signs: form eigenvalue below tolerance");
    signs.push_back(v > 0 ? 1 : -1);
  }
  return signs;
}

int krein_sign(const Eigen::Matrix4d& M, complexd omega, double tol) {
  return krein_signs(M, omega, tol).front();
}

SpectrumClass classify(const Eigen::Matrix4d& M, double tol) {
  require_symplectic(M);
  if (!(tol > 0.0 && tol < 1e-2))
    throw DomainError("classify: tol must lie in (0, 1e-2)");

  SpectrumClass cls;
  cls.spectrum = sorted_spectrum(M);

  const double pin = std::max(tol, kPinFloor);
  std::vector<complexd> at1, atm1, upper, lower, reals;
  for (const auto& z : cls.spectrum) {
    if (std::abs(z - 1.0) < pin)
      at1.push_back(z);
    else if (std::abs(z + 1.0) < pin)
      atm1.push_back(z);
    else if (std::abs(z.imag()) <= tol * std::max(1.0, std::abs(z)))
      reals.push_back(z);
    else if (z.imag() > 0.0)
      upper.push_back(z);
    else
      lower.push_back(z);
  }
  if (upper.size() != lower.size())
    throw UnresolvedClassError("classify: unpaired complex eigenvalues");

  auto kernel_dim = [&](complexd w) {
    return static_cast<int>(kernel_basis(shifted(M, w), tol).cols());
  };

  // Eigenvalues pinned at +-1.
  for (const double l0 : {1.0, -1.0}) {
    const auto& grp = l0 > 0 ? at1 : atm1;
    if (grp.empty()) continue;
    const int g = kernel_dim(l0);
    (l0 > 0 ? cls.nullity_plus1 : cls.nullity_minus1) = g;
    const BlockKind plain =
        l0 > 0 ? BlockKind::Identity2 : BlockKind::MinusIdentity2;
    if (grp.size() == 2) {
      if (g == 2)
        cls.blocks.push_back({plain, 0.0, l0});
      else if (g == 1)
        cls.blocks.push_back({BlockKind::N1, 0.0, l0, jordan_sign_at(M, l0, 1)});
      else
        throw UnresolvedClassError("classify: multiplicity mismatch at +-1");
    } else if (grp.size() == 4) {
      if (g == 4) {
        cls.blocks.push_back({plain, 0.0, l0});
        cls.blocks.push_back({plain, 0.0, l0});
      } else if (g == 3) {
        cls.blocks.push_back({plain, 0.0, l0});
        cls.blocks.push_back({BlockKind::N1, 0.0, l0, jordan_sign_at(M, l0, 3)});
      } else if (g == 2 || g == 1) {
        cls.blocks.push_back({BlockKind::M2, 0.0, l0});
      } else {
        throw UnresolvedClassError("classify: multiplicity mismatch at +-1");
      }
    } else {
      throw UnresolvedClassError("classify: odd algebraic multiplicity at +-1");
    }
  }

  // Real hyperbolic pairs; the large-modulus member of each reciprocal pair is
  // the numerically reliable representative.
  if (reals.size() % 2 != 0)
    throw UnresolvedClassError("classify: unpaired real eigenvalue");
  if (!reals.empty()) {
    std::vector<double> rv;
    for (const auto& z : reals) rv.push_back(z.real());
    std::sort(rv.begin(), rv.end(),
              [](double x, double y) { return std::abs(x) > std::abs(y); });
    if (rv.size() == 2) {
      cls.blocks.push_back({BlockKind::D, 0.0, rv[0]});
    } else if (rv.size() == 4) {
      if (std::abs(rv[0] - rv[1]) < tol * std::max(1.0, std::abs(rv[0]))) {
        const double rep = 0.5 * (rv[0] + rv[1]);
        const Eigen::Matrix4d a = M - rep * Eigen::Matrix4d::Identity();
        const int g = static_cast<int>(kernel_basis(a, tol).cols());
        if (g >= 2) {
          cls.blocks.push_back({BlockKind::D, 0.0, rv[0]});
          cls.blocks.push_back({BlockKind::D, 0.0, rv[1]});
        } else {
          cls.blocks.push_back({BlockKind::M2, 0.0, rep});
        }
      } else {
        cls.blocks.push_back({BlockKind::D, 0.0, rv[0]});
        cls.blocks.push_back({BlockKind::D, 0.0, rv[1]});
      }
    }
  }

  // Complex pairs: unit-circle rotations (with Krein orientation), doubled
  // elliptic pairs, or an off-circle quadruple.
  // A computed eigenvalue is reliable only to about eps * |M| in absolute
  // terms, so when a strongly hyperbolic companion inflates the norm the
  // circle membership test must widen with it.
  const double circle_gate = std::max(
      tol, 8.0 * std::numeric_limits<double>::epsilon() * M.norm());
  std::vector<complexd> on_u, off_u;
  for (const auto& mu : upper) {
    if (std::abs(std::abs(mu) - 1.0) < circle_gate)
      // Project onto the circle: the Krein form is evaluated at the exact
      // unit eigenvalue, and the kernel threshold absorbs the shift.
      on_u.push_back(mu / std::abs(mu));
    else
      off_u.push_back(mu);
  }
  if (off_u.size() == 1)
    throw UnresolvedClassError("classify: stray off-circle complex pair");
  if (off_u.size() == 2) {
    const double mod = std::max(std::abs(off_u[0]), std::abs(off_u[1]));
    const complexd big =
        std::abs(off_u[0]) >= std::abs(off_u[1]) ? off_u[0] : off_u[1];
    NormalFormBlock b{BlockKind::Quadruple};
    b.modulus = mod;
    b.angle = std::arg(big);
    cls.blocks.push_back(b);
  }

  auto push_r = [&](double arg_mu, int kappa) {
    NormalFormBlock b{BlockKind::R};
    b.theta = kappa > 0 ? arg_mu : 2.0 * pi - arg_mu;
    cls.blocks.push_back(b);
    cls.krein_signs.emplace_back(arg_mu, kappa);
    cls.krein_signs.emplace_back(2.0 * pi - arg_mu, -kappa);
  };

  if (on_u.size() == 1) {
    int kappa;
    try {
      kappa = krein_sign(M, on_u[0], tol >= 1e-8 ? 1e-8 : tol);
    } catch (const DegenerateKreinError& err) {
      throw UnresolvedClassError(err.what());
    }
    push_r(std::arg(on_u[0]), kappa);
  } else if (on_u.size() == 2) {
    if (std::abs(on_u[0] - on_u[1]) < tol) {
      complexd rep = 0.5 * (on_u[0] + on_u[1]);
      rep /= std::abs(rep);
      const int g = kernel_dim(rep);
      if (g == 1) {
        const Eigen::MatrixXcd k = kernel_basis(shifted(M, rep), tol);
        NormalFormBlock b{BlockKind::N2};
        b.theta = std::arg(rep);
        b.trivial = n2_trivial_at(M, rep, Eigen::Vector4cd(k.col(0)));
        cls.blocks.push_back(b);
      } else if (g == 2) {
        std::vector<int> signs;
        try {
          signs = krein_signs(M, rep, tol >= 1e-8 ? 1e-8 : tol);
        } catch (const DegenerateKreinError& err) {
          throw UnresolvedClassError(err.what());
        }
        push_r(std::arg(rep), signs[0]);
        push_r(std::arg(rep), signs[1]);
      } else {
        throw UnresolvedClassError("classify: doubled elliptic pair with bad rank");
      }
    } else {
      for (const auto& mu : on_u) {
        int kappa;
        try {
          kappa = krein_sign(M, mu, tol >= 1e-8 ? 1e-8 : tol);
        } catch (const DegenerateKreinError& err) {
          throw UnresolvedClassError(err.what());
        }
        push_r(std::arg(mu), kappa);
      }
    }
  } else if (on_u.size() > 2) {
    throw UnresolvedClassError("classify: too many unit-circle pairs");
  }

  sort_blocks(cls.blocks);
  std::sort(cls.krein_signs.begin(), cls.krein_signs.end());
  return cls;
}

SplittingPair splitting_numbers(const SpectrumClass& cls, complexd omega) {
  if (std::abs(std::abs(omega) - 1.0) > 1e-9)
    throw DomainError("splitting_numbers: omega must lie on the unit circle");
  auto matches = [&](complexd z) { return std::abs(omega - z) < kMatchTol; };
  SplittingPair out;
  out.omega = omega;
  for (const auto& b : cls.blocks) {
    switch (b.kind) {
      case BlockKind::Identity2:
      case BlockKind::MinusIdentity2:
        // I2 = N1(l0, 0); the table assigns (1,1) at l0.
        if (matches(b.lambda)) {
          out.s_plus += 1;
          out.s_minus += 1;
        }
        break;
      case BlockKind::N1:
        if (matches(b.lambda)) {
          // (1,1) for the sign that continues the eigenvalue onto U (a = l0),
          // (0,0) for the opposite sign.
          const bool full = (b.lambda > 0) == (b.jordan_sign > 0);
          out.s_plus += full ? 1 : 0;
          out.s_minus += full ? 1 : 0;
        }
        break;
      case BlockKind::R:
        if (matches(std::polar(1.0, b.theta))) out.s_minus += 1;
        if (matches(std::polar(1.0, -b.theta))) out.s_plus += 1;
        break;
      case BlockKind::N2:
        if (matches(std::polar(1.0, b.theta)) ||
            matches(std::polar(1.0, -b.theta))) {
          out.s_plus += b.trivial ? 0 : 1;
          out.s_minus += b.trivial ? 0 : 1;
        }
        break;
      case BlockKind::M2:
        if (std::abs(std::abs(b.lambda) - 1.0) < kMatchTol && matches(b.lambda))
          throw UnresolvedClassError(
              "splitting_numbers: M2 blocks fall outside the basic table");
        break;
      case BlockKind::D:
      case BlockKind::Quadruple:
        break;  // no unit-circle spectrum
    }
  }
  return out;
}

}  // namespace erestab

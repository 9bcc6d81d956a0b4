// Copyright 2026 The gpovm developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Truncated Fock-space oracle: finite-matrix Weyl operators, Gaussian state
// density matrices, observable characteristic functions, and measure
// densities by numerical Fourier inversion. Everything here is an
// independent evaluation path used to certify the closed-form results of the
// other headers; it shares no formulas with them beyond the Weyl calculus
// itself.
//
// Conventions, fixed project-wide:
//  - cutoff N keeps photon numbers 0..N, so matrices have dimension
//    (N + 1)^modes. The odd dimension N + 1 puts an exact zero in the
//    spectrum of the truncated position quadrature, which the density
//    evaluations need to converge at the quoted tolerances.
//  - truncation garbage concentrates in the high-photon rows/columns, so
//    operator comparisons are made on the lower half block (photon index
//    <= N/2); full-matrix norms of Weyl-algebra residuals are O(1) at any
//    cutoff and carry no information.

#ifndef GPOVM_FOCK_HPP
#define GPOVM_FOCK_HPP

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "gpovm/observable.hpp"
#include "gpovm/statistics.hpp"
#include "gpovm/types.hpp"

namespace gpovm {

struct FockOperator {
  int modes = 1;
  int cutoff = 0;       // highest retained photon number per mode
  CMat matrix;          // dimension (cutoff+1)^modes
  std::string warning;  // nonempty when the result carries an accuracy caveat
};

inline int fock_dim(int cutoff) { return cutoff + 1; }

namespace detail {

inline Mat ladder(int cutoff) {
  int d = fock_dim(cutoff);
  Mat a = Mat::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

inline CMat kron(const CMat &a, const CMat &b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
// Legendre recurrence.
struct Quadrature {
  std::vector<double> x, w;
};

inline Quadrature gauss_legendre(int n) {
  Quadrature q;
  q.x.assign(n, 0.0);
  q.w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    q.x[i] = -x;
    q.x[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.w[i] = w;
    q.w[n - 1 - i] = w;
  }
  return q;
}

inline Quadrature scaled_legendre(int n, double half_width) {
  Quadrature q = gauss_legendre(n);
  for (int i = 0; i < n; ++i) {
    q.x[i] *= half_width;
    q.w[i] *= half_width;
  }
  return q;
}

}  // namespace detail

// Truncated quadrature operators (q1, p1, ..., q_modes, p_modes) with
// q = (a + a^t)/sqrt(2), p = (a - a^t)/(i sqrt(2)). The canonical commutator
// [q, p] = i I holds exactly away from the truncation edge.
inline std::vector<FockOperator> quadratures(int modes, int cutoff) {
  if (modes < 1 || modes > 2)
    throw std::invalid_argument("quadratures: only 1 or 2 modes are supported");
  if (cutoff < 2) throw std::invalid_argument("quadratures: cutoff must be >= 2");
  Mat a = detail::ladder(cutoff);
  CMat q = ((a + a.transpose()) / std::sqrt(2.0)).cast<Complex>();
  CMat p = Complex(0, -1) / std::sqrt(2.0) * (a - a.transpose()).cast<Complex>();
  std::vector<FockOperator> out;
  if (modes == 1) {
    out.push_back({1, cutoff, q, ""});
    out.push_back({1, cutoff, p, ""});
    return out;
  }
  CMat id = CMat::Identity(q.rows(), q.cols());
  out.push_back({2, cutoff, detail::kron(q, id), ""});
  out.push_back({2, cutoff, detail::kron(p, id), ""});
  out.push_back({2, cutoff, detail::kron(id, q), ""});
  out.push_back({2, cutoff, detail::kron(id, p), ""});
  return out;
}

// Weyl operator W(z) = exp(i R^t z) as a truncated matrix, via the
// eigendecomposition of the Hermitian generator. Satisfies
// W(z) W(z') W(z)^* = exp(i z^t D z') W(z') on the lower block; the
// validated region at cutoff 40 is |z| <= 3 (warning attached beyond the
// cutoff-scaled equivalent).
inline FockOperator weyl_matrix(const Vec &z, int cutoff) {
  if (z.size() != 2 && z.size() != 4)
    throw std::invalid_argument("weyl_matrix: z must have length 2 or 4 (1 or 2 modes)");
  int modes = static_cast<int>(z.size()) / 2;
  std::vector<FockOperator> r = quadratures(modes, cutoff);
  CMat h = CMat::Zero(r[0].matrix.rows(), r[0].matrix.cols());
  for (int i = 0; i < z.size(); ++i) h += z(i) * r[i].matrix;
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  CVec phase(es.eigenvalues().size());
  for (int i = 0; i < phase.size(); ++i)
    phase(i) = std::exp(Complex(0, es.eigenvalues()(i)));
  FockOperator out;
  out.modes = modes;
  out.cutoff = cutoff;
  out.matrix = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
  double region = 3.0 * std::sqrt(cutoff / 40.0);
  if (z.norm() > region)
    out.warning = "outside the validated displacement region |z| <= " + std::to_string(region) +
                  " for cutoff " + std::to_string(cutoff);
  return out;
}

// Operator characteristic function of the observable at w:
// phi(w) = W(K w) exp(i l^t w - (1/2) w^t alpha w).
inline FockOperator observable_cf_matrix(const GaussianObservable &obs, const Vec &w,
                                         int cutoff) {
  check_shapes(obs);
  if (obs.s > 2)
    throw std::invalid_argument("observable_cf_matrix: oracle supports s <= 2");
  if (w.size() != obs.m)
    throw std::invalid_argument("observable_cf_matrix: w has wrong dimension");
  FockOperator out = weyl_matrix(obs.K * w, cutoff);
  Vec l = offset_or_zero(obs);
  out.matrix *= std::exp(Complex(-0.5 * w.dot(obs.alpha * w), l.dot(w)));
  return out;
}

struct InversionGrid {
  int npts = 0;            // 0: choose by outcome dimension (401 for m=1, 161 for m=2)
  double half_width = 0.0; // 0: choose so the Gaussian factor is < 1e-12 at the
                           // boundary; degenerate alpha falls back to the fixed
                           // divergence-probe window 8
};

// Measure density m(z) = (2 pi)^{-m} Int exp(-i z^t w) phi(w) d^m w by
// tensor-product Gauss-Legendre quadrature. For nondegenerate alpha the
// result is Hermitian PSD up to quadrature error and satisfies the
// covariance property m(z) = W(K1 z) m(0) W(K1 z)^* on the lower block. For
// singular alpha the integral diverges; the fixed-window result is returned
// as a divergence probe with an explicit warning and no PSD guarantee.
inline FockOperator density_matrix_at(const GaussianObservable &obs, const Vec &z, int cutoff,
                                      InversionGrid grid = {}, double tol = kDefaultTol) {
  check_shapes(obs);
  if (obs.s != 1) throw std::invalid_argument("density_matrix_at: oracle supports s = 1");
  if (obs.m > 2) throw std::invalid_argument("density_matrix_at: oracle supports m <= 2");
  if (z.size() != obs.m)
    throw std::invalid_argument("density_matrix_at: z has wrong dimension");
  ValidityReport rep = validate(obs, tol);
  if (!rep.valid) throw validity_error("density_matrix_at: " + rep.message, rep.min_eigenvalue);

  const int m = obs.m;
  const int d = fock_dim(cutoff);
  Eigen::SelfAdjointEigenSolver<Mat> esa(obs.alpha);
  double alpha_min = esa.eigenvalues().minCoeff();
  double alpha_scale = std::max(1.0, max_abs(obs.alpha));
  bool divergent = alpha_min <= tol * alpha_scale;

  FockOperator out;
  out.modes = 1;
  out.cutoff = cutoff;
  if (grid.npts <= 0) grid.npts = (m == 1) ? 401 : 161;
  if (grid.half_width <= 0.0) {
    if (divergent) {
      grid.half_width = 8.0;
      out.warning =
          "divergence probe: alpha is singular, fixed window 8, no convergence or positivity guarantee";
    } else {
      grid.half_width = std::sqrt(2.0 * std::log(1e12) / alpha_min);
    }
  }
  detail::Quadrature quad = detail::scaled_legendre(grid.npts, grid.half_width);
  Vec l = offset_or_zero(obs);
  const double two_pi = 2.0 * std::numbers::pi;

  CMat rho = CMat::Zero(d, d);
  if (m == 1) {
    // One outcome dimension: the integrand is a function of the single
    // Hermitian combination X = sum_i K(i,0) R_i, so diagonalize once and
    // integrate scalar phases on its spectrum.
    std::vector<FockOperator> r = quadratures(1, cutoff);
    CMat x = obs.K(0, 0) * r[0].matrix + obs.K(1, 0) * r[1].matrix;
    Eigen::SelfAdjointEigenSolver<CMat> es(x);
    CVec f = CVec::Zero(d);
    for (int i = 0; i < grid.npts; ++i) {
      double w = quad.x[i];
      Complex c = quad.w[i] / two_pi *
                  std::exp(Complex(-0.5 * obs.alpha(0, 0) * w * w, (l(0) - z(0)) * w));
      for (int k = 0; k < d; ++k) f(k) += c * std::exp(Complex(0, es.eigenvalues()(k) * w));
    }
    rho = es.eigenvectors() * f.asDiagonal() * es.eigenvectors().adjoint();
  } else {
    Vec w2(2);
    for (int i = 0; i < grid.npts; ++i) {
      for (int j = 0; j < grid.npts; ++j) {
        w2(0) = quad.x[i];
        w2(1) = quad.x[j];
        double quad_form = w2.dot(obs.alpha * w2);
        Complex c = quad.w[i] * quad.w[j] / (two_pi * two_pi) *
                    std::exp(Complex(-0.5 * quad_form, (l - z).dot(w2)));
        rho += c * weyl_matrix(obs.K * w2, cutoff).matrix;
      }
    }
  }
  out.matrix = 0.5 * (rho + rho.adjoint().eval());
  return out;
}

// Largest eigenvalue of the density at the origin, computed at two cutoffs
// (N and 2N) per the convergence discipline: an oracle value is only trusted
// when the relative change across the doubling is below 1e-3.
struct SupDensityCheck {
  double at_low = 0.0;
  double at_high = 0.0;
  double rel_change = 0.0;
  bool converged = false;
  std::string warning;
};

inline double sup_density(const GaussianObservable &obs, int cutoff,
                          InversionGrid grid = {}, double tol = kDefaultTol) {
  FockOperator m0 = density_matrix_at(obs, Vec::Zero(obs.m), cutoff, grid, tol);
  Eigen::SelfAdjointEigenSolver<CMat> es(m0.matrix, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

inline SupDensityCheck sup_density_two_cutoffs(const GaussianObservable &obs, int cutoff,
                                               InversionGrid grid = {},
                                               double tol = kDefaultTol) {
  SupDensityCheck out;
  FockOperator lo = density_matrix_at(obs, Vec::Zero(obs.m), cutoff, grid, tol);
  out.warning = lo.warning;
  Eigen::SelfAdjointEigenSolver<CMat> eslo(lo.matrix, Eigen::EigenvaluesOnly);
  out.at_low = eslo.eigenvalues().maxCoeff();
  out.at_high = sup_density(obs, 2 * cutoff, grid, tol);
  double denom = std::max(std::abs(out.at_high), 1e-300);
  out.rel_change = std::abs(out.at_high - out.at_low) / denom;
  out.converged = out.rel_change < 1e-3;
  return out;
}

// Exact matrix elements of the displacement operator W(z) = exp(i(x q + y p))
// in the Fock basis, via the associated Laguerre recurrence with the
// displacement parameter lambda = (i x - y)/sqrt(2). Unlike weyl_matrix this
// has no truncation-edge error: every retained element is exact up to
// rounding. Used by the state builder, and exposed for cross-checks.
inline CMat displacement_matrix(const Vec &z, int cutoff) {
  if (z.size() != 2)
    throw std::invalid_argument("displacement_matrix: single mode only (z of length 2)");
  const int d = fock_dim(cutoff);
  Complex lam(-z(1) / std::sqrt(2.0), z(0) / std::sqrt(2.0));
  double t = std::norm(lam);
  double et = std::exp(-0.5 * t);
  CMat w(d, d);
  for (int k = 0; k < d; ++k) {
    int nmax = d - k;
    double c0 = 1.0;
    for (int j = 1; j <= k; ++j) c0 /= std::sqrt(static_cast<double>(j));
    Complex lam_k = std::pow(lam, k);
    Complex mlamc_k = std::pow(-std::conj(lam), k);
    double lprev = 1.0, lcur = 1.0, cn = c0;
    for (int n = 0; n < nmax; ++n) {
      if (n == 1) {
        lprev = lcur;
        lcur = 1.0 + k - t;
      } else if (n >= 2) {
        double lnew = ((2.0 * (n - 1) + 1.0 + k - t) * lcur - (n - 1.0 + k) * lprev) / n;
        lprev = lcur;
        lcur = lnew;
      }
      if (n > 0) cn *= std::sqrt(n / static_cast<double>(n + k));
      double val = cn * et * lcur;
      w(n + k, n) = val * lam_k;
      if (k > 0) w(n, n + k) = val * mlamc_k;
    }
  }
  return w;
}

// Density matrix of a single-mode Gaussian state by Fourier inversion of its
// characteristic function against exact displacement elements:
//   rho = (2 pi)^{-1} Int chi(z) W(-z) d^2 z.
// Because the displacement elements are exact, the only error is the
// quadrature itself; trace and moments come out at ~1e-12 for desk-scale
// states.
inline FockOperator gaussian_state_matrix(const GaussianState &state, int cutoff,
                                          int npts = 161, double tol = kDefaultTol) {
  check_state_shapes(state);
  if (state.s != 1)
    throw std::invalid_argument("gaussian_state_matrix: oracle supports s = 1");
  ValidityReport rep = validate_state(state, tol);
  if (!rep.valid)
    throw validity_error("gaussian_state_matrix: " + rep.message, rep.min_eigenvalue);

  const int d = fock_dim(cutoff);
  FockOperator out;
  out.modes = 1;
  out.cutoff = cutoff;

  double mean_photon = 0.5 * (state.gamma(0, 0) + state.gamma(1, 1)) - 0.5 +
                       0.5 * state.mean.squaredNorm();
  mean_photon = std::max(mean_photon, 0.0);
  double needed = 2.0 * mean_photon + 6.0 * std::sqrt(mean_photon * (mean_photon + 1.0)) + 8.0;
  if (cutoff < needed)
    out.warning = "cutoff " + std::to_string(cutoff) +
                  " may be too small for this state's energy (suggest >= " +
                  std::to_string(static_cast<int>(needed) + 1) + ")";

  Eigen::SelfAdjointEigenSolver<Mat> esg(state.gamma, Eigen::EigenvaluesOnly);
  double half_width = std::sqrt(2.0 * std::log(1e12) / esg.eigenvalues().minCoeff());
  detail::Quadrature quad = detail::scaled_legendre(npts, half_width);

  CMat rho = CMat::Zero(d, d);
  Vec z(2);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int i = 0; i < npts; ++i) {
    for (int j = 0; j < npts; ++j) {
      z(0) = quad.x[i];
      z(1) = quad.x[j];
      Complex chi = state_characteristic_value(state, z);
      Complex c = quad.w[i] * quad.w[j] / two_pi * chi;
      // Elements of W(-z), inlined from displacement_matrix with the
      // coefficient folded in to avoid materializing a matrix per node.
      Complex lam(z(1) / std::sqrt(2.0), -z(0) / std::sqrt(2.0));
      double t = std::norm(lam);
      Complex cet = c * std::exp(-0.5 * t);
      for (int k = 0; k < d; ++k) {
        int nmax = d - k;
        double c0 = 1.0;
        for (int jj = 1; jj <= k; ++jj) c0 /= std::sqrt(static_cast<double>(jj));
        Complex lam_k = std::pow(lam, k);
        Complex mlamc_k = std::pow(-std::conj(lam), k);
        double lprev = 1.0, lcur = 1.0, cn = c0;
        for (int n = 0; n < nmax; ++n) {
          if (n == 1) {
            lprev = lcur;
            lcur = 1.0 + k - t;
          } else if (n >= 2) {
            double lnew = ((2.0 * (n - 1) + 1.0 + k - t) * lcur - (n - 1.0 + k) * lprev) / n;
            lprev = lcur;
            lcur = lnew;
          }
          if (n > 0) cn *= std::sqrt(n / static_cast<double>(n + k));
          Complex val = cn * lcur * cet;
          rho(n + k, n) += val * lam_k;
          if (k > 0) rho(n, n + k) += val * mlamc_k;
        }
      }
    }
  }
  out.matrix = 0.5 * (rho + rho.adjoint().eval());
  return out;
}

// Max-abs difference restricted to the lower half block (every mode's photon
// index up to cutoff/2), where truncated Weyl calculus is reliable. For two
// modes the block is selected per mode from the composite Kronecker index.
inline double lower_block_distance(const FockOperator &a, const CMat &b) {
  if (a.matrix.rows() != b.rows() || a.matrix.cols() != b.cols())
    throw std::invalid_argument("lower_block_distance: dimension mismatch");
  const int d = fock_dim(a.cutoff);
  const int half = d / 2;
  std::vector<int> idx;
  if (a.modes == 1) {
    for (int n = 0; n < half; ++n) idx.push_back(n);
  } else {
    for (int n1 = 0; n1 < half; ++n1)
      for (int n2 = 0; n2 < half; ++n2) idx.push_back(n1 * d + n2);
  }
  double worst = 0.0;
  for (int i : idx)
    for (int j : idx) worst = std::max(worst, std::abs(a.matrix(i, j) - b(i, j)));
  return worst;
}

}  // namespace gpovm

#endif  // GPOVM_FOCK_HPP

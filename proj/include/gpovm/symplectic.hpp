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
// Real dense linear algebra for symplectic vector spaces: the standard form,
// skew-symmetric and Williamson canonical forms, the extended Williamson
// decomposition of a (symmetric, skew) matrix pair, and isotropic/symplectic
// subspace construction.
//
// Coordinate ordering is interleaved throughout: (q1, p1, q2, p2, ...).

#ifndef GPOVM_SYMPLECTIC_HPP
#define GPOVM_SYMPLECTIC_HPP

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "gpovm/types.hpp"

namespace gpovm {

// The standard symplectic form on s modes: block-diagonal copies of
// [[0, -1], [1, 0]] in interleaved (q, p) ordering. Satisfies D^2 = -I.
inline Mat standard_form(int s) {
  if (s < 1) throw std::invalid_argument("standard_form: empty system (s must be >= 1)");
  Mat d = Mat::Zero(2 * s, 2 * s);
  for (int j = 0; j < s; ++j) {
    d(2 * j, 2 * j + 1) = -1.0;
    d(2 * j + 1, 2 * j) = 1.0;
  }
  return d;
}

namespace detail {

// Deterministic phase fix for a complex eigenvector: rotate so the
// largest-modulus entry is real and positive. Ties break at the lowest index.
inline CVec phase_fix(const CVec &u) {
  int k = 0;
  double best = -1.0;
  for (int i = 0; i < u.size(); ++i) {
    double a = std::abs(u(i));
    if (a > best) { best = a; k = i; }
  }
  Complex ph = u(k) / std::abs(u(k));
  return u / ph;
}

}  // namespace detail

struct SkewCanonical {
  Mat S;                 // m x m invertible, S^t D S = diag(J_{r}, 0)
  int rank = 0;          // even rank of D
  bool ill_conditioned = false;  // an eigenvalue sat within 10x of the rank cut
};

// Congruence transform bringing a real skew-symmetric D to the standard form
// on its first `rank` coordinates and zero elsewhere. The positive eigenpairs
// of the Hermitian matrix iD supply the symplectic pairs; the kernel basis
// comes from the singular vectors of D below the rank threshold.
inline SkewCanonical skew_canonical(const Mat &d, double tol = kDefaultTol) {
  const int m = static_cast<int>(d.rows());
  if (d.cols() != m) throw std::invalid_argument("skew_canonical: matrix must be square");
  if (!is_skew(d, std::max(tol, 1e-9)))
    throw std::invalid_argument("skew_canonical: input is not skew-symmetric");

  SkewCanonical out;
  if (m == 0) { out.S = Mat(0, 0); return out; }

  CMat h = Complex(0, 1) * d.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  const Vec lam = es.eigenvalues();
  double scale = std::max(lam.cwiseAbs().maxCoeff(), 1.0);
  double cut = tol * scale;

  // Positive eigenvalues, descending (eigh returns ascending order).
  std::vector<std::pair<double, CVec>> pos;
  for (int i = m - 1; i >= 0; --i) {
    if (lam(i) > cut) pos.emplace_back(lam(i), es.eigenvectors().col(i));
    if (std::abs(lam(i)) > cut / 10.0 && std::abs(lam(i)) <= cut * 10.0)
      out.ill_conditioned = true;
  }
  int s1 = static_cast<int>(pos.size());
  out.rank = 2 * s1;

  Mat S(m, m);
  int col = 0;
  for (auto &[mu, uraw] : pos) {
    CVec u = detail::phase_fix(uraw);
    double c = std::sqrt(2.0 / mu);
    S.col(col++) = c * u.real();
    S.col(col++) = c * u.imag();
  }
  int k = m - 2 * s1;
  if (k > 0) {
    // Kernel of D: right singular vectors past the rank. Using the count from
    // the eigenvalue split keeps the two thresholds consistent.
    Eigen::JacobiSVD<Mat> svd(d, Eigen::ComputeFullV);
    for (int i = 0; i < k; ++i) S.col(col++) = svd.matrixV().col(2 * s1 + i);
  }
  out.S = S;
  return out;
}

struct WilliamsonResult {
  Mat W;   // symplectic w.r.t. standard_form(n), W^t A W = diag(a_j, a_j)
  Vec a;   // symplectic eigenvalues, descending
};

// Williamson diagonalization of a positive definite 2n x 2n matrix A:
// W^t A W = diag(a_1, a_1, ..., a_n, a_n) with W symplectic. Implemented via
// the Hermitian eigenproblem of i A^{-1/2} D A^{-1/2}.
inline WilliamsonResult williamson(const Mat &a) {
  const int n2 = static_cast<int>(a.rows());
  if (n2 % 2 != 0 || a.cols() != n2)
    throw std::invalid_argument("williamson: matrix must be square of even dimension");
  const int n = n2 / 2;
  WilliamsonResult out;
  if (n == 0) { out.W = Mat(0, 0); out.a = Vec(0); return out; }

  Eigen::SelfAdjointEigenSolver<Mat> esa(a);
  if (esa.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("williamson: matrix must be positive definite");
  Vec inv_sqrt = esa.eigenvalues().cwiseSqrt().cwiseInverse();
  Mat am = esa.eigenvectors() * inv_sqrt.asDiagonal() * esa.eigenvectors().transpose();

  CMat h = Complex(0, 1) * (am * standard_form(n) * am).cast<Complex>();
  Eigen::SelfAdjointEigenSolver<CMat> es(h);

  // Positive eigenvalues mu ascending give a_j = 1/mu descending.
  Mat cols(n2, n2);
  Vec aval(n);
  int col = 0, idx = 0;
  for (int i = 0; i < n2; ++i) {
    if (es.eigenvalues()(i) <= 0) continue;
    double mu = es.eigenvalues()(i);
    CVec u = detail::phase_fix(es.eigenvectors().col(i));
    double aj = 1.0 / mu;
    aval(idx++) = aj;
    double c = std::sqrt(2.0 * aj);
    cols.col(col++) = c * u.real();
    cols.col(col++) = c * u.imag();
  }
  if (idx != n) throw std::runtime_error("williamson: unexpected eigenvalue signature");
  out.W = am * cols;
  out.a = aval;
  return out;
}

// Joint canonical decomposition of a compatible pair (alpha, delta_K):
// an invertible T with
//   T^t alpha   T = blockdiag(diag(a_j) (x) I_2, (1/2) I_{s2}, 0_{s3})
//   T^t delta_K T = blockdiag(standard_form(s1), 0)
// where compatibility means alpha + (i/2) delta_K >= 0.
struct CanonicalDecomposition {
  Mat T;
  Mat T_inv;
  int r_delta = 0;   // rank of delta_K (even, = 2 s1)
  int r_alpha = 0;   // rank of alpha (= 2 s1 + s2)
  int s1 = 0, s2 = 0, s3 = 0;
  Vec a;             // s1 values, descending, all >= 1/2 for a valid pair
  double coupling_residual = 0.0;  // size of the block-1/block-3 coupling,
                                   // forced to ~0 by validity; asserted, not
                                   // silently removed
  bool ill_conditioned = false;
};

inline Mat canonical_alpha_target(int m, int s1, int s2, const Vec &a) {
  Mat t = Mat::Zero(m, m);
  for (int j = 0; j < s1; ++j) {
    t(2 * j, 2 * j) = a(j);
    t(2 * j + 1, 2 * j + 1) = a(j);
  }
  for (int i = 0; i < s2; ++i) t(2 * s1 + i, 2 * s1 + i) = 0.5;
  return t;
}

inline Mat canonical_delta_target(int m, int s1) {
  Mat t = Mat::Zero(m, m);
  if (s1 > 0) t.topLeftCorner(2 * s1, 2 * s1) = standard_form(s1);
  return t;
}

// Algorithm: (1) bring delta_K to skew canonical form; (2) orthogonally
// diagonalize the kernel block of the transformed alpha, rescaling nonzero
// eigenvalues to 1/2 and ordering zero eigenvalues last; (3) eliminate the
// coupling between the symplectic block and the rescaled kernel block by a
// shear that acts trivially on delta_K (the coupling into the zero block must
// already vanish for a compatible pair -- recorded as coupling_residual);
// (4) Williamson-diagonalize the sheared symplectic block. The shear must
// precede the Williamson step: performed afterwards it would disturb the
// diagonalized block.
inline CanonicalDecomposition extended_williamson(const Mat &alpha, const Mat &delta_k,
                                                  double tol = kDefaultTol) {
  const int m = static_cast<int>(alpha.rows());
  if (alpha.cols() != m || delta_k.rows() != m || delta_k.cols() != m)
    throw std::invalid_argument("extended_williamson: alpha and delta_K must be square of equal size");
  if (!is_symmetric(alpha, std::max(tol, 1e-9)))
    throw std::invalid_argument("extended_williamson: alpha is not symmetric");
  if (!is_skew(delta_k, std::max(tol, 1e-9)))
    throw std::invalid_argument("extended_williamson: delta_K is not skew-symmetric");

  {
    CMat h = alpha.cast<Complex>() + Complex(0, 0.5) * delta_k.cast<Complex>();
    double me = min_eigenvalue(h);
    double scale = std::max(1.0, max_abs(h));
    if (me < -tol * scale)
      throw validity_error("extended_williamson: pair fails the positivity condition, most negative eigenvalue " +
                               std::to_string(me),
                           me);
  }

  CanonicalDecomposition out;
  SkewCanonical sc = skew_canonical(delta_k, tol);
  out.ill_conditioned = sc.ill_conditioned;
  const int s1 = sc.rank / 2;
  const int r = 2 * s1;
  const int k = m - r;
  out.s1 = s1;
  out.r_delta = r;

  Mat a1 = sc.S.transpose() * alpha * sc.S;
  Mat A = a1.topLeftCorner(r, r);
  Mat B = a1.topRightCorner(r, k);
  Mat C = a1.bottomRightCorner(k, k);

  // Kernel block: eigen-split into nonzero (rescaled to 1/2, descending) and
  // zero parts (ordered last).
  int s2 = 0;
  Mat V(k, k);
  if (k > 0) {
    Eigen::SelfAdjointEigenSolver<Mat> esc(C);
    const Vec dvals = esc.eigenvalues();
    double scale = std::max(dvals.cwiseAbs().maxCoeff(), 1.0);
    double cut = tol * scale;
    std::vector<int> nz, ze;
    for (int i = 0; i < k; ++i) {
      if (dvals(i) > cut) nz.push_back(i);
      else ze.push_back(i);
      if (std::abs(dvals(i)) > cut / 10.0 && std::abs(dvals(i)) <= cut * 10.0)
        out.ill_conditioned = true;
    }
    std::sort(nz.begin(), nz.end(), [&](int x, int y) { return dvals(x) > dvals(y); });
    s2 = static_cast<int>(nz.size());
    int col = 0;
    for (int i : nz) V.col(col++) = esc.eigenvectors().col(i) / std::sqrt(2.0 * dvals(i));
    for (int i : ze) V.col(col++) = esc.eigenvectors().col(i);
  }
  out.s2 = s2;
  out.s3 = k - s2;
  out.r_alpha = 2 * s1 + s2;

  Mat bp = (k > 0) ? Mat(B * V) : Mat(r, 0);
  Mat b2 = bp.leftCols(s2);
  Mat b3 = bp.rightCols(out.s3);
  out.coupling_residual = max_abs(b3);

  // Shear in the delta_K-kernel directions: leaves the canonical delta_K
  // untouched, cancels the block-1/block-2 coupling of alpha, and replaces
  // the symplectic block by its Schur-type effective form.
  Mat Y = Mat::Zero(k, r);
  Mat a_eff = A;
  if (s2 > 0) {
    Y.topRows(s2) = -2.0 * b2.transpose();
    a_eff -= 2.0 * (b2 * b2.transpose());
  }

  Mat W(s1 > 0 ? 2 * s1 : 0, s1 > 0 ? 2 * s1 : 0);
  if (s1 > 0) {
    WilliamsonResult wr = williamson(a_eff);
    W = wr.W;
    out.a = wr.a;
  } else {
    out.a = Vec(0);
  }

  Mat m1 = Mat::Identity(m, m);
  if (k > 0) m1.bottomRightCorner(k, k) = V;
  Mat m2 = Mat::Identity(m, m);
  if (k > 0 && r > 0) m2.bottomLeftCorner(k, r) = Y;
  Mat m3 = Mat::Identity(m, m);
  if (s1 > 0) m3.topLeftCorner(r, r) = W;

  out.T = sc.S * m1 * m2 * m3;
  out.T_inv = out.T.lu().inverse();
  return out;
}

// Basis of the symplectic complement {z : z^t D l = 0 for all columns l of L}
// inside R^{2s}. For an empty L this is the whole space.
inline Mat symplectic_complement(const Mat &l, int s, double tol = kDefaultTol) {
  const int n = 2 * s;
  if (l.rows() != n && l.cols() != 0)
    throw std::invalid_argument("symplectic_complement: basis has wrong ambient dimension");
  if (l.cols() == 0) return Mat::Identity(n, n);
  Mat d = standard_form(s);
  Mat c = l.transpose() * d.transpose();  // rows are constraints on z
  Eigen::JacobiSVD<Mat> svd(c, Eigen::ComputeFullV);
  const auto &sv = svd.singularValues();
  double smax = std::max(sv.size() ? sv(0) : 0.0, 1.0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * smax) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

// Given an isotropic basis L (columns e_j), construct a partner isotropic
// basis H (columns h_j) with the pairing Delta(e_j, h_k) = delta_jk, each h_j
// symplectically orthogonal to every `avoid` column and to the previously
// constructed partners, so span(L) + span(H) is a symplectic subspace. Each
// h_j is the least-norm solution of its linear pairing constraints.
inline Mat isotropic_partner(const Mat &l, const Mat &avoid, int s, double tol = kDefaultTol) {
  const int n = 2 * s;
  const int k = static_cast<int>(l.cols());
  const int j = static_cast<int>(avoid.cols());
  if (l.rows() != n && k != 0)
    throw std::invalid_argument("isotropic_partner: basis has wrong ambient dimension");
  if (j != 0 && avoid.rows() != n)
    throw std::invalid_argument("isotropic_partner: avoid basis has wrong ambient dimension");
  if (2 * k + j > n)
    throw std::invalid_argument("isotropic_partner: infeasible complement, dimension count 2*dim(L) + dim(avoid) exceeds 2s");
  Mat d = standard_form(s);
  if (k > 0) {
    Mat gram = l.transpose() * d * l;
    double scale = std::max(1.0, max_abs(Mat(l.transpose() * l)));
    if (max_abs(gram) > std::max(tol, 1e-9) * scale)
      throw std::invalid_argument("isotropic_partner: L is not isotropic");
  }

  Mat h(n, k);
  for (int col = 0; col < k; ++col) {
    int rows = k + j + col;
    Mat amat(rows, n);
    Vec b = Vec::Zero(rows);
    amat.topRows(k) = l.transpose() * d;
    b(col) = 1.0;
    if (j > 0) amat.middleRows(k, j) = avoid.transpose() * d;
    if (col > 0) amat.bottomRows(col) = h.leftCols(col).transpose() * d;
    Eigen::JacobiSVD<Mat> svd(amat, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Vec hj = svd.solve(b);
    double resid = (amat * hj - b).cwiseAbs().maxCoeff();
    if (resid > 1e-8)
      throw std::runtime_error("isotropic_partner: infeasible complement, pairing system residual " +
                               std::to_string(resid));
    h.col(col) = hj;
  }
  return h;
}

}  // namespace gpovm

#endif  // GPOVM_SYMPLECTIC_HPP

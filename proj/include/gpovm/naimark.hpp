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
// Minimal dilation of a Gaussian observable to a projection-valued
// measurement on system + ancilla. The ancilla has
//   s_C = rank(alpha) - rank(K^t D K)/2
// modes, a Gaussian state with covariance alpha_C, an involution Lambda and a
// projection map P onto the embedded ancilla subspace such that
//   K^t P^t Lambda alpha_C Lambda P K = alpha            (noise reproduction)
//   K^t P^t Lambda Delta_C  Lambda P K = -K^t D K        (commutation)
// -- together these certify that the dilated quadrature combinations commute
// and trace back to the original observable. Everything is verified at the
// level of finite matrix residuals.

#ifndef GPOVM_NAIMARK_HPP
#define GPOVM_NAIMARK_HPP

#include <cmath>
#include <string>

#include "gpovm/observable.hpp"
#include "gpovm/symplectic.hpp"
#include "gpovm/types.hpp"

namespace gpovm {

struct NaimarkExtension {
  int s_C = 0;        // ancilla mode count
  Mat Zc_basis;       // 2s x 2s_C, columns interleaved (e_1, h_1, e_2, h_2, ...)
  Mat Delta_C;        // 2s_C standard form (the basis is symplectic)
  Mat alpha_C;        // 2s_C ancilla state covariance, diagonal in this basis
  Mat Lambda;         // involution: +1 on e coordinates, -1 on h coordinates
  Mat P;              // 2s_C x 2s projection onto the ancilla subspace,
                      // expressed in the Z_C basis; vanishes on the block-2
                      // partner directions and on the Z3/Z4 complement
  int hybrid_quantum_modes = 0;   // s1
  int hybrid_classical_dims = 0;  // s2
  Mat Z2_partner;     // 2s x s2 partner directions (in ker P)
  Mat Z3_basis;       // 2s x 2s3 sharp-sector symplectic subspace (in ker P)
  Mat Z4_basis;       // 2s x 2s4 unused remainder (in ker P)
  CanonicalDecomposition decomposition;
};

// Construct the minimal extension. The canonical decomposition T of
// (alpha, K^t D K) provides the embedded basis: block-1 canonical pairs map
// to e_j = K T e~_{2j-1}, h_j = K T e~_{2j}; the s2 commuting directions give
// the remaining e_j, whose symplectic partners h_j are built by
// isotropic_partner away from everything already placed. The ancilla
// covariance is diag(a_j, a_j) on block-1 pairs and the minimal value 1/2 on
// the rest.
inline NaimarkExtension extend(const GaussianObservable &obs, double tol = kDefaultTol) {
  check_shapes(obs);
  check_column_independent(obs, tol);
  ValidityReport rep = validate(obs, tol);
  if (!rep.valid) throw validity_error("extend: " + rep.message, rep.min_eigenvalue);

  const int s = obs.s;
  const int n = 2 * s;
  Mat d = standard_form(s);
  Mat dk = delta_K(obs);

  NaimarkExtension ext;
  ext.decomposition = extended_williamson(obs.alpha, dk, tol);
  const auto &dec = ext.decomposition;
  const int s1 = dec.s1, s2 = dec.s2, s3 = dec.s3;
  const int sc = s1 + s2;
  ext.s_C = sc;
  ext.hybrid_quantum_modes = s1;
  ext.hybrid_classical_dims = s2;

  Mat kt = obs.K * dec.T;

  // Block-1 pairs come directly from the canonical image; the pairing there
  // already matches the standard form.
  Mat e_cols(n, sc), h_cols(n, sc);
  for (int j = 0; j < s1; ++j) {
    e_cols.col(j) = kt.col(2 * j);
    h_cols.col(j) = kt.col(2 * j + 1);
  }
  for (int i = 0; i < s2; ++i) e_cols.col(s1 + i) = kt.col(2 * s1 + i);

  Mat z1 = kt.leftCols(2 * s1);
  Mat kz2 = kt.middleCols(2 * s1, s2);
  Mat kz3 = kt.rightCols(s3);

  if (s2 > 0) {
    Mat avoid(n, 2 * s1 + s3);
    avoid.leftCols(2 * s1) = z1;
    avoid.rightCols(s3) = kz3;
    // isotropic_partner pairs with +1; the embedded standard form wants
    // Delta(e_j, h_j) = -1, hence the sign flip.
    Mat h2 = -isotropic_partner(kz2, avoid, s, tol);
    for (int i = 0; i < s2; ++i) h_cols.col(s1 + i) = h2.col(i);
    ext.Z2_partner = h2;
  } else {
    ext.Z2_partner = Mat(n, 0);
  }

  ext.Zc_basis = Mat(n, 2 * sc);
  for (int j = 0; j < sc; ++j) {
    ext.Zc_basis.col(2 * j) = e_cols.col(j);
    ext.Zc_basis.col(2 * j + 1) = h_cols.col(j);
  }

  // Sharp sector: the type-3 canonical directions and their partners span a
  // symplectic subspace disjoint from Z_C. Only needed to witness ker P.
  if (s3 > 0) {
    Mat avoid(n, 2 * s1 + 2 * s2);
    avoid.leftCols(2 * s1) = z1;
    avoid.middleCols(2 * s1, s2) = kz2;
    if (s2 > 0) avoid.rightCols(s2) = ext.Z2_partner;
    Mat h3 = isotropic_partner(kz3, avoid, s, tol);
    ext.Z3_basis = Mat(n, 2 * s3);
    ext.Z3_basis.leftCols(s3) = kz3;
    ext.Z3_basis.rightCols(s3) = h3;
  } else {
    ext.Z3_basis = Mat(n, 0);
  }

  // Remainder: symplectic complement of everything placed so far.
  {
    Mat placed(n, 2 * sc + 2 * s3);
    placed.leftCols(2 * sc) = ext.Zc_basis;
    if (s3 > 0) placed.rightCols(2 * s3) = ext.Z3_basis;
    ext.Z4_basis = (placed.cols() > 0) ? symplectic_complement(placed, s, tol)
                                       : Mat(Mat::Identity(n, n));
  }

  ext.Delta_C = sc > 0 ? standard_form(sc) : Mat(0, 0);
  ext.Lambda = Mat::Zero(2 * sc, 2 * sc);
  for (int i = 0; i < 2 * sc; ++i) ext.Lambda(i, i) = (i % 2 == 0) ? 1.0 : -1.0;

  ext.alpha_C = Mat::Zero(2 * sc, 2 * sc);
  for (int j = 0; j < sc; ++j) {
    double aj = (j < s1) ? dec.a(j) : 0.5;
    ext.alpha_C(2 * j, 2 * j) = aj;
    ext.alpha_C(2 * j + 1, 2 * j + 1) = aj;
  }

  // Coordinate functionals of the Z_C basis via the symplectic pairing:
  // the e_j coefficient of z is Delta(h_j, z), the h_j coefficient is
  // -Delta(e_j, z). Both vanish on the other symplectic blocks, so P kills
  // Z3 and Z4 automatically; the block-2 h rows are zeroed by definition.
  ext.P = Mat::Zero(2 * sc, n);
  for (int j = 0; j < sc; ++j) {
    ext.P.row(2 * j) = h_cols.col(j).transpose() * d;
    if (j < s1) ext.P.row(2 * j + 1) = -e_cols.col(j).transpose() * d;
  }
  return ext;
}

struct NaimarkResiduals {
  double proj_residual = 0.0;         // noise reproduction identity
  double com_residual = 0.0;          // commutation identity
  double involution_residual = 0.0;   // Lambda^2 = I and Lambda Delta_C Lambda = -Delta_C
  double state_validity_min_eig = 0.0;  // min eig of alpha_C + (i/2) Delta_C
  double commuting_X_residual = 0.0;  // norm of Delta_K + Delta_K^C: the dilated
                                      // combinations commute iff this vanishes
  double pairing_residual = 0.0;      // Z_C basis vs the standard form
  double kernel_residual = 0.0;       // P applied to its claimed kernel
};

inline NaimarkResiduals verify(const NaimarkExtension &ext, const GaussianObservable &obs) {
  NaimarkResiduals res;
  Mat dk = delta_K(obs);
  if (ext.s_C == 0) {
    // Empty ancilla: identities degenerate to alpha = 0 and Delta_K = 0.
    res.proj_residual = max_abs(obs.alpha);
    res.com_residual = max_abs(dk);
    return res;
  }
  Mat lp = ext.Lambda * ext.P * obs.K;
  res.proj_residual = max_abs(Mat(lp.transpose() * ext.alpha_C * lp - obs.alpha));
  Mat dkc = lp.transpose() * ext.Delta_C * lp;
  res.com_residual = max_abs(Mat(dkc + dk));
  res.commuting_X_residual = res.com_residual;
  res.involution_residual =
      std::max(max_abs(Mat(ext.Lambda * ext.Lambda - Mat::Identity(2 * ext.s_C, 2 * ext.s_C))),
               max_abs(Mat(ext.Lambda * ext.Delta_C * ext.Lambda + ext.Delta_C)));
  res.state_validity_min_eig =
      min_eigenvalue(ext.alpha_C.cast<Complex>() + Complex(0, 0.5) * ext.Delta_C.cast<Complex>());
  Mat d = standard_form(obs.s);
  res.pairing_residual =
      max_abs(Mat(ext.Zc_basis.transpose() * d * ext.Zc_basis - ext.Delta_C));
  double kr = 0.0;
  if (ext.Z2_partner.cols() > 0) kr = std::max(kr, max_abs(Mat(ext.P * ext.Z2_partner)));
  if (ext.Z3_basis.cols() > 0) kr = std::max(kr, max_abs(Mat(ext.P * ext.Z3_basis)));
  if (ext.Z4_basis.cols() > 0) kr = std::max(kr, max_abs(Mat(ext.P * ext.Z4_basis)));
  res.kernel_residual = kr;
  return res;
}

struct CharacteristicCheck {
  Complex lhs;  // ancilla-trace factor exp(-1/2 w^t K^t P^t L alpha_C L P K w)
  Complex rhs;  // observable factor exp(-1/2 w^t alpha w)
};

// Pointwise dilation identity at the characteristic-function level: tracing
// the ancilla state out of the dilated projection-valued measure must
// reproduce the observable's Gaussian noise factor.
inline CharacteristicCheck characteristic_check(const NaimarkExtension &ext,
                                                const GaussianObservable &obs, const Vec &w) {
  if (w.size() != obs.m)
    throw std::invalid_argument("characteristic_check: w has wrong dimension");
  CharacteristicCheck out;
  double quad = 0.0;
  if (ext.s_C > 0) {
    Vec v = ext.Lambda * ext.P * obs.K * w;
    quad = v.dot(ext.alpha_C * v);
  }
  out.lhs = std::exp(Complex(-0.5 * quad, 0.0));
  out.rhs = std::exp(Complex(-0.5 * w.dot(obs.alpha * w), 0.0));
  return out;
}

struct HybridAncillaDims {
  int quantum_modes = 0;      // s1 = rank(Delta_K)/2
  int classical_dims = 0;     // s2 = rank(alpha) - rank(Delta_K), the additive
                              // classical-noise block size
  int classical_remark = 0;   // rank(alpha) - rank(Delta_K)/2 = s1 + s2, the
                              // alternative count sometimes quoted for this
                              // construction
  bool readings_disagree = false;
};

// Dimension report for a hybrid quantum-classical ancilla. Two classical
// counts circulate for this construction (they agree only when there is no
// joint-measurement block), so the alternative reading is reported alongside
// the block size and flagged rather than silently merged. classical_dims is
// the normative value.
inline HybridAncillaDims hybrid_ancilla_dims(const GaussianObservable &obs,
                                             double tol = kDefaultTol) {
  check_shapes(obs);
  check_column_independent(obs, tol);
  ValidityReport rep = validate(obs, tol);
  if (!rep.valid) throw validity_error("hybrid_ancilla_dims: " + rep.message, rep.min_eigenvalue);
  CanonicalDecomposition dec = extended_williamson(obs.alpha, delta_K(obs), tol);
  HybridAncillaDims out;
  out.quantum_modes = dec.r_delta / 2;
  out.classical_dims = dec.r_alpha - dec.r_delta;
  out.classical_remark = dec.r_alpha - dec.r_delta / 2;
  out.readings_disagree = out.classical_remark != out.classical_dims;
  return out;
}

}  // namespace gpovm

#endif  // GPOVM_NAIMARK_HPP

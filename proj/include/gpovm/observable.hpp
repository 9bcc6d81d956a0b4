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
// The Gaussian observable data model. An observable on s bosonic modes with
// m-dimensional outcomes is the triple (l, K, alpha): its operator
// characteristic function is
//
//   phi(w) = W(K w) * exp(i l^t w - (1/2) w^t alpha w),   w in R^m,
//
// with W the Weyl operator over the interleaved quadratures (q1, p1, ...).
// The triple is admissible iff alpha + (i/2) K^t D K >= 0 as a Hermitian
// matrix (D the standard symplectic form). This header provides validation,
// canonical type classification, the bounded-density predicate and operator
// norm of the measure density, and constructors for the standard optical
// prototypes.

#ifndef GPOVM_OBSERVABLE_HPP
#define GPOVM_OBSERVABLE_HPP

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "gpovm/symplectic.hpp"
#include "gpovm/types.hpp"

namespace gpovm {

struct GaussianObservable {
  int s = 0;          // quantum mode count
  int m = 0;          // outcome dimension
  Mat K;              // 2s x m
  Mat alpha;          // m x m symmetric
  Vec l;              // m outcome offsets (zero if not set)
  std::string label;
};

inline void check_shapes(const GaussianObservable &obs) {
  if (obs.s < 1) throw std::invalid_argument("observable: mode count s must be >= 1");
  if (obs.m < 1) throw std::invalid_argument("observable: outcome dimension m must be >= 1");
  if (obs.K.rows() != 2 * obs.s || obs.K.cols() != obs.m)
    throw std::invalid_argument("observable: K must be 2s x m");
  if (obs.alpha.rows() != obs.m || obs.alpha.cols() != obs.m)
    throw std::invalid_argument("observable: alpha must be m x m");
  if (obs.l.size() != 0 && obs.l.size() != obs.m)
    throw std::invalid_argument("observable: l must have length m");
  if (!is_symmetric(obs.alpha, 1e-9))
    throw std::invalid_argument("observable: alpha is not symmetric");
}

inline Vec offset_or_zero(const GaussianObservable &obs) {
  return obs.l.size() == obs.m ? obs.l : Vec(Vec::Zero(obs.m));
}

// Commutator matrix of the measured quadrature combinations: K^t D K.
inline Mat delta_K(const GaussianObservable &obs) {
  return obs.K.transpose() * standard_form(obs.s) * obs.K;
}

// Throws column_dependence_error if K has linearly dependent columns. Every
// structural operation requires independent columns; the reduction to an
// independent subset is deliberately explicit (reduce_columns) rather than
// silent, because it changes the outcome space.
inline void check_column_independent(const GaussianObservable &obs, double tol = kDefaultTol) {
  if (numeric_rank(obs.K, tol) < obs.m)
    throw column_dependence_error(
        "observable: K has linearly dependent columns; use reduce_columns for an explicit reduction");
}

struct ValidityReport {
  bool valid = false;
  double min_eigenvalue = 0.0;
  std::string message;
};

// Admissibility test: smallest eigenvalue of the Hermitian matrix
// alpha + (i/2) K^t D K. One sign suffices (the opposite sign gives the
// transposed matrix, with the same spectrum).
inline ValidityReport validate(const GaussianObservable &obs, double tol = kDefaultTol) {
  check_shapes(obs);
  CMat h = obs.alpha.cast<Complex>() + Complex(0, 0.5) * delta_K(obs).cast<Complex>();
  ValidityReport rep;
  rep.min_eigenvalue = min_eigenvalue(h);
  double scale = std::max(1.0, max_abs(h));
  rep.valid = rep.min_eigenvalue >= -tol * scale;
  rep.message = rep.valid ? "admissible Gaussian observable"
                          : "positivity condition fails: alpha + (i/2) K^t D K has min eigenvalue " +
                                std::to_string(rep.min_eigenvalue);
  return rep;
}

enum class Type1Subtype { k1a, k1b, intermediate };

inline const char *subtype_name(Type1Subtype t) {
  switch (t) {
    case Type1Subtype::k1a: return "1a";
    case Type1Subtype::k1b: return "1b";
    default: return "intermediate";
  }
}

struct Type1Block {
  int dim = 0;             // s1 pairs of canonical coordinates
  Type1Subtype subtype = Type1Subtype::intermediate;
  Mat beta;                // 2s1 x 2s1 core-state covariance in canonical
                           // coordinates: diag(a_j) (x) I_2
  double prefactor = 0.0;  // |det T| (2 pi)^{-s1}, the scalar multiplying the
                           // core state density in the measure density
};

struct Type2Block {
  int dim = 0;  // s2 commuting noisy coordinates, alpha block = I/2 canonically
};

struct Type3Block {
  int dim = 0;  // s3 sharp (projection-valued) coordinates
};

struct Classification {
  CanonicalDecomposition decomposition;
  bool bounded = false;  // the measure has a bounded operator density
  std::optional<Type1Block> type1;
  std::optional<Type2Block> type2;
  std::optional<Type3Block> type3;
};

// Canonical type classification. Runs the extended Williamson decomposition
// of (alpha, K^t D K) and reads off the three block types:
//   1: s1 conjugate pairs, a joint noisy measurement of q and p (subtype 1b
//      when every a_j = 1/2, i.e. pure minimal-noise core; 1a when all
//      a_j > 1/2; intermediate otherwise),
//   2: s2 commuting coordinates with additive classical noise,
//   3: s3 noiseless coordinates (sharp, unbounded density).
inline Classification classify(const GaussianObservable &obs, double tol = kDefaultTol) {
  check_shapes(obs);
  check_column_independent(obs, tol);
  ValidityReport rep = validate(obs, tol);
  if (!rep.valid)
    throw validity_error("classify: " + rep.message, rep.min_eigenvalue);

  Classification cls;
  cls.decomposition = extended_williamson(obs.alpha, delta_K(obs), tol);
  const auto &dec = cls.decomposition;
  cls.bounded = dec.s3 == 0;

  if (dec.s1 > 0) {
    Type1Block b;
    b.dim = dec.s1;
    b.beta = canonical_alpha_target(2 * dec.s1, dec.s1, 0, dec.a);
    b.prefactor = std::abs(dec.T.determinant()) *
                  std::pow(2.0 * std::numbers::pi, -dec.s1);
    // Subtype from the a_j: rank of the block-1 restriction of
    // alpha + (i/2) delta_K drops by one for every a_j at the minimal value.
    double sub_tol = 1e-9;
    bool all_min = true, none_min = true;
    for (int j = 0; j < dec.a.size(); ++j) {
      if (dec.a(j) > 0.5 + sub_tol) all_min = false;
      else none_min = false;
    }
    b.subtype = all_min ? Type1Subtype::k1b
                        : (none_min ? Type1Subtype::k1a : Type1Subtype::intermediate);
    cls.type1 = b;
  }
  if (dec.s2 > 0) cls.type2 = Type2Block{dec.s2};
  if (dec.s3 > 0) cls.type3 = Type3Block{dec.s3};
  return cls;
}

// The measure density is a bounded operator iff alpha has full rank
// (equivalently: the classification has no type-3 block).
inline bool is_bounded_density(const GaussianObservable &obs, double tol = kDefaultTol) {
  check_shapes(obs);
  return numeric_rank(obs.alpha, tol) == obs.m;
}

struct DensityNorm {
  bool bounded = false;
  double value = 0.0;  // operator norm of the density at the origin; only
                       // meaningful when bounded
};

// Operator norm of the measure density m(0). In canonical coordinates the
// density factorizes over blocks: each type-1 pair contributes a thermal-like
// core state with norm (a_j + 1/2)^{-1} and weight (2 pi)^{-1}, each type-2
// coordinate a Gaussian function of a quadrature with sup pi^{-1/2}, and the
// outcome-space Jacobian contributes |det T|. A type-3 block makes the
// density a non-operator (delta-like), hence unbounded.
inline DensityNorm density_norm(const GaussianObservable &obs, double tol = kDefaultTol) {
  Classification cls = classify(obs, tol);
  DensityNorm out;
  out.bounded = cls.bounded;
  if (!out.bounded) return out;
  const auto &dec = cls.decomposition;
  double v = std::abs(dec.T.determinant());
  v *= std::pow(2.0 * std::numbers::pi, -dec.s1);
  v *= std::pow(std::numbers::pi, -0.5 * dec.s2);
  for (int j = 0; j < dec.a.size(); ++j) v /= dec.a(j) + 0.5;
  out.value = v;
  return out;
}

struct CoreType1 {
  double prefactor = 0.0;  // |det K1| / (2 pi)^s
  Mat beta;                // (K^{-1})^t alpha K^{-1}, a state covariance
};

// Displacement generator of the covariance property: K1 = D^{-1} K (K^t K)^{-1},
// so that the density satisfies m(z) = W(K1 z) m(0) W(K1 z)^*.
inline Mat k1_matrix(const GaussianObservable &obs) {
  Mat d = standard_form(obs.s);
  Mat ktk = obs.K.transpose() * obs.K;
  // D^{-1} = -D for the standard form.
  return -d * obs.K * ktk.lu().inverse();
}

// Core data of a purely type-1 observable (full joint measurement: m = 2s and
// nondegenerate commutator matrix). The density at the origin is
// prefactor * (density matrix of the Gaussian state with covariance beta).
inline CoreType1 core_type1(const GaussianObservable &obs, double tol = kDefaultTol) {
  check_shapes(obs);
  check_column_independent(obs, tol);
  if (obs.m != 2 * obs.s)
    throw wrong_type_error("core_type1: requires m = 2s (full joint measurement)");
  Mat dk = delta_K(obs);
  if (numeric_rank(dk, tol) < obs.m)
    throw wrong_type_error("core_type1: requires a nondegenerate commutator matrix");
  CoreType1 out;
  Mat k_inv = obs.K.lu().inverse();
  out.beta = k_inv.transpose() * obs.alpha * k_inv;
  out.prefactor = std::abs(k1_matrix(obs).determinant()) /
                  std::pow(2.0 * std::numbers::pi, obs.s);
  return out;
}

// Displacement vector K1 z implementing the covariance property of the
// density: m(z) = W(K1 z) m(0) W(K1 z)^*.
inline Vec covariant_core_shift(const GaussianObservable &obs, const Vec &z) {
  check_shapes(obs);
  if (z.size() != obs.m)
    throw std::invalid_argument("covariant_core_shift: outcome point has wrong dimension");
  return k1_matrix(obs) * z;
}

// ---- prototype constructors -------------------------------------------------

// Noiseless multimode position measurement: K selects (q_1, ..., q_s), no
// added noise. Purely type 3 (sharp), unbounded density.
inline GaussianObservable sharp_homodyne(int s) {
  if (s < 1) throw std::invalid_argument("sharp_homodyne: s must be >= 1");
  GaussianObservable obs;
  obs.s = s;
  obs.m = s;
  obs.K = Mat::Zero(2 * s, s);
  for (int j = 0; j < s; ++j) obs.K(2 * j, j) = 1.0;
  obs.alpha = Mat::Zero(s, s);
  obs.l = Vec::Zero(s);
  obs.label = "sharp_homodyne(" + std::to_string(s) + ")";
  return obs;
}

// Position measurement with additive classical noise of covariance `noise`
// (symmetric positive semidefinite s x s). Purely type 2 for nondegenerate
// noise.
inline GaussianObservable noisy_homodyne(int s, const Mat &noise) {
  GaussianObservable obs = sharp_homodyne(s);
  if (noise.rows() != s || noise.cols() != s)
    throw std::invalid_argument("noisy_homodyne: noise must be s x s");
  if (!is_symmetric(noise, 1e-9))
    throw std::invalid_argument("noisy_homodyne: noise must be symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(noise, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-12 * std::max(1.0, max_abs(noise)))
    throw validity_error("noisy_homodyne: noise covariance is not positive semidefinite",
                         es.eigenvalues().minCoeff());
  obs.alpha = noise;
  obs.label = "noisy_homodyne(" + std::to_string(s) + ")";
  return obs;
}

// Joint measurement of all quadratures with minimal (vacuum) added noise:
// K = I, alpha = I/2. Purely type 1b.
inline GaussianObservable heterodyne_vacuum(int s) {
  if (s < 1) throw std::invalid_argument("heterodyne_vacuum: s must be >= 1");
  GaussianObservable obs;
  obs.s = s;
  obs.m = 2 * s;
  obs.K = Mat::Identity(2 * s, 2 * s);
  obs.alpha = 0.5 * Mat::Identity(2 * s, 2 * s);
  obs.l = Vec::Zero(2 * s);
  obs.label = "heterodyne_vacuum(" + std::to_string(s) + ")";
  return obs;
}

// Joint quadrature measurement with thermal added noise: per-mode occupation
// numbers N_j >= 0 give alpha = diag(N_j + 1/2) on each (q_j, p_j) pair.
// Purely type 1a for any N_j > 0.
inline GaussianObservable heterodyne_thermal(int s, const Vec &occupations) {
  GaussianObservable obs = heterodyne_vacuum(s);
  if (occupations.size() != s)
    throw std::invalid_argument("heterodyne_thermal: need one occupation number per mode");
  for (int j = 0; j < s; ++j) {
    if (occupations(j) < 0)
      throw std::invalid_argument("heterodyne_thermal: occupation numbers must be >= 0");
    obs.alpha(2 * j, 2 * j) = occupations(j) + 0.5;
    obs.alpha(2 * j + 1, 2 * j + 1) = occupations(j) + 0.5;
  }
  obs.label = "heterodyne_thermal(" + std::to_string(s) + ")";
  return obs;
}

struct ReducedObservable {
  GaussianObservable observable;  // marginal on the kept outcome coordinates
  std::vector<int> kept;          // original column indices, ascending
};

// Explicit reduction of an observable whose K has dependent columns: keep a
// maximal independent subset of outcome coordinates (chosen by column-pivoted
// QR) and restrict alpha and l accordingly. The result is the marginal
// observable on the kept coordinates; the index list makes the
// reparametrization visible to the caller.
inline ReducedObservable reduce_columns(const GaussianObservable &obs, double tol = kDefaultTol) {
  check_shapes(obs);
  Eigen::ColPivHouseholderQR<Mat> qr(obs.K);
  qr.setThreshold(tol);
  int r = static_cast<int>(qr.rank());
  std::vector<int> kept(qr.colsPermutation().indices().data(),
                        qr.colsPermutation().indices().data() + r);
  std::sort(kept.begin(), kept.end());

  ReducedObservable out;
  out.kept = kept;
  GaussianObservable red;
  red.s = obs.s;
  red.m = r;
  red.K = Mat(2 * obs.s, r);
  red.alpha = Mat(r, r);
  red.l = Vec(r);
  Vec l0 = offset_or_zero(obs);
  for (int i = 0; i < r; ++i) {
    red.K.col(i) = obs.K.col(kept[i]);
    red.l(i) = l0(kept[i]);
    for (int j = 0; j < r; ++j) red.alpha(i, j) = obs.alpha(kept[i], kept[j]);
  }
  red.label = obs.label.empty() ? "reduced" : obs.label + " (reduced)";
  out.observable = red;
  return out;
}

}  // namespace gpovm

#endif  // GPOVM_OBSERVABLE_HPP

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
// Gaussian states, the classical outcome law a Gaussian observable induces on
// a Gaussian state, and deterministic outcome sampling.

#ifndef GPOVM_STATISTICS_HPP
#define GPOVM_STATISTICS_HPP

#include <cmath>
#include <random>
#include <string>

#include "gpovm/observable.hpp"
#include "gpovm/symplectic.hpp"
#include "gpovm/types.hpp"

namespace gpovm {

struct GaussianState {
  int s = 0;     // modes
  Vec mean;      // 2s quadrature means, interleaved (q1, p1, ...)
  Mat gamma;     // 2s x 2s symmetric covariance
  std::string label;
};

inline void check_state_shapes(const GaussianState &state) {
  if (state.s < 1) throw std::invalid_argument("state: mode count s must be >= 1");
  if (state.mean.size() != 2 * state.s)
    throw std::invalid_argument("state: mean must have length 2s");
  if (state.gamma.rows() != 2 * state.s || state.gamma.cols() != 2 * state.s)
    throw std::invalid_argument("state: gamma must be 2s x 2s");
  if (!is_symmetric(state.gamma, 1e-9))
    throw std::invalid_argument("state: gamma is not symmetric");
}

// Admissibility of a state covariance: gamma + (i/2) D >= 0.
inline ValidityReport validate_state(const GaussianState &state, double tol = kDefaultTol) {
  check_state_shapes(state);
  CMat h = state.gamma.cast<Complex>() +
           Complex(0, 0.5) * standard_form(state.s).cast<Complex>();
  ValidityReport rep;
  rep.min_eigenvalue = min_eigenvalue(h);
  double scale = std::max(1.0, max_abs(h));
  rep.valid = rep.min_eigenvalue >= -tol * scale;
  rep.message = rep.valid ? "admissible Gaussian state"
                          : "uncertainty condition fails: gamma + (i/2) D has min eigenvalue " +
                                std::to_string(rep.min_eigenvalue);
  return rep;
}

inline GaussianState vacuum_state(int s) {
  GaussianState st;
  st.s = s;
  st.mean = Vec::Zero(2 * s);
  st.gamma = 0.5 * Mat::Identity(2 * s, 2 * s);
  st.label = "vacuum(" + std::to_string(s) + ")";
  return st;
}

inline GaussianState thermal_state(int s, const Vec &occupations) {
  GaussianState st = vacuum_state(s);
  if (occupations.size() != s)
    throw std::invalid_argument("thermal_state: need one occupation number per mode");
  for (int j = 0; j < s; ++j) {
    st.gamma(2 * j, 2 * j) = occupations(j) + 0.5;
    st.gamma(2 * j + 1, 2 * j + 1) = occupations(j) + 0.5;
  }
  st.label = "thermal(" + std::to_string(s) + ")";
  return st;
}

// Quantum characteristic function of the state at z: E[exp(i R^t z)] =
// exp(i mean^t z - (1/2) z^t gamma z).
inline Complex state_characteristic_value(const GaussianState &state, const Vec &z) {
  check_state_shapes(state);
  if (z.size() != 2 * state.s)
    throw std::invalid_argument("state_characteristic_value: z must have length 2s");
  return std::exp(Complex(-0.5 * z.dot(state.gamma * z), state.mean.dot(z)));
}

struct OutcomeDistribution {
  Vec mean;        // m
  Mat covariance;  // m x m, symmetric PSD
};

// The outcome law is the normal distribution with mean K^t mu + l and
// covariance K^t gamma K + alpha: the composition of the observable's
// characteristic function with the state's is again Gaussian, and these are
// its parameters.
inline OutcomeDistribution outcome_distribution(const GaussianObservable &obs,
                                                const GaussianState &state,
                                                double tol = kDefaultTol) {
  check_shapes(obs);
  check_state_shapes(state);
  if (obs.s != state.s)
    throw std::invalid_argument("outcome_distribution: observable and state mode counts differ");
  ValidityReport vo = validate(obs, tol);
  if (!vo.valid) throw validity_error("outcome_distribution: " + vo.message, vo.min_eigenvalue);
  ValidityReport vs = validate_state(state, tol);
  if (!vs.valid) throw validity_error("outcome_distribution: " + vs.message, vs.min_eigenvalue);

  OutcomeDistribution dist;
  dist.mean = obs.K.transpose() * state.mean + offset_or_zero(obs);
  dist.covariance = obs.K.transpose() * state.gamma * obs.K + obs.alpha;
  return dist;
}

// Deterministic multivariate normal sampling. The covariance is factored by
// its symmetric eigendecomposition; eigenvalues in [-tol*scale, 0) are zeroed
// (rank-deficient laws are legitimate here), anything more negative is a
// caller error. Returns an n x m matrix, one sample per row.
inline Mat sample(const OutcomeDistribution &dist, int n, std::uint64_t seed,
                  double tol = kDefaultTol) {
  const int m = static_cast<int>(dist.mean.size());
  if (dist.covariance.rows() != m || dist.covariance.cols() != m)
    throw std::invalid_argument("sample: covariance shape does not match mean");
  if (!is_symmetric(dist.covariance, 1e-9))
    throw std::invalid_argument("sample: covariance is not symmetric");
  if (n < 0) throw std::invalid_argument("sample: n must be >= 0");

  Eigen::SelfAdjointEigenSolver<Mat> es(dist.covariance);
  Vec lam = es.eigenvalues();
  double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
  for (int i = 0; i < m; ++i) {
    if (lam(i) < -tol * scale)
      throw std::invalid_argument("sample: covariance is not positive semidefinite (eigenvalue " +
                                  std::to_string(lam(i)) + ")");
    if (lam(i) < 0) lam(i) = 0;
  }
  Mat factor = es.eigenvectors() * lam.cwiseSqrt().asDiagonal();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat out(n, m);
  Vec g(m);
  for (int row = 0; row < n; ++row) {
    for (int i = 0; i < m; ++i) g(i) = normal(rng);
    out.row(row) = (dist.mean + factor * g).transpose();
  }
  return out;
}

}  // namespace gpovm

#endif  // GPOVM_STATISTICS_HPP

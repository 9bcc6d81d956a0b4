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
// Shared test helpers: a seeded generator of random valid observables used
// by both the unit suite and the acceptance program.

#ifndef GPOVM_TESTS_SUPPORT_HPP
#define GPOVM_TESTS_SUPPORT_HPP

#include <random>

#include "gpovm/observable.hpp"
#include "gpovm/types.hpp"

namespace gpovm_test {

inline gpovm::Mat random_matrix(int rows, int cols, std::mt19937_64 &rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  gpovm::Mat out(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out(i, j) = g(rng);
  return out;
}

// Random valid observable: s in [1,4], m in [2, min(2s,8)], K of full column
// rank, alpha = B B^t + (sigma_max(Delta_K)/2 + margin) I. The identity
// shift dominates the Hermitian perturbation (i/2) Delta_K, whose spectrum
// lies in [-sigma_max/2, sigma_max/2], so validity holds by construction
// with min eigenvalue >= margin.
inline gpovm::GaussianObservable random_valid_observable(std::mt19937_64 &rng,
                                                         double margin = 0.2) {
  std::uniform_int_distribution<int> sdist(1, 4);
  int s = sdist(rng);
  std::uniform_int_distribution<int> mdist(2, std::min(2 * s, 8));
  int m = mdist(rng);
  gpovm::GaussianObservable obs;
  obs.s = s;
  obs.m = m;
  for (;;) {
    obs.K = random_matrix(2 * s, m, rng);
    if (gpovm::numeric_rank(obs.K, 1e-8) == m) break;
  }
  gpovm::Mat b = random_matrix(m, m, rng);
  gpovm::Mat dk = gpovm::delta_K(obs);
  double sigma_max = dk.jacobiSvd().singularValues().maxCoeff();
  obs.alpha = b * b.transpose() + (0.5 * sigma_max + margin) * gpovm::Mat::Identity(m, m);
  obs.l = random_matrix(m, 1, rng);
  return obs;
}

// The scaling that pushes every symplectic eigenvalue below the 1/2
// threshold, turning a valid triple invalid (the generator guarantees
// s1 >= 1 because m >= 2 and K has full column rank).
inline double invalidating_scale(const gpovm::GaussianObservable &obs,
                                 double tol = gpovm::kDefaultTol) {
  gpovm::CanonicalDecomposition dec =
      gpovm::extended_williamson(obs.alpha, gpovm::delta_K(obs), tol);
  if (dec.s1 < 1 || dec.a.size() < 1)
    throw std::logic_error("invalidating_scale: instance has no type-1 block");
  return 0.49 / (2.0 * dec.a.maxCoeff());
}

}  // namespace gpovm_test

#endif  // GPOVM_TESTS_SUPPORT_HPP

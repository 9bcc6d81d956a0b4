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
// Acceptance suite. Eight numbered criteria, each printing one [PASS]/[FAIL]
// line plus the measured numbers behind the verdict. Run with a criterion
// number (1..8) to execute just that one, or with no arguments for all.
// The process exits nonzero if any executed criterion fails.
//
// Criterion 4 contains a divergence-growth clause that is not attainable
// under this library's truncation convention (matrix dimension N + 1; see
// the notes printed by the criterion itself): the truncated sharp-position
// density saturates at 8/pi for every cutoff instead of growing. The clause
// is evaluated faithfully and reports its failure honestly rather than being
// weakened to fit.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gpovm/fock.hpp"
#include "gpovm/io.hpp"
#include "gpovm/naimark.hpp"
#include "gpovm/observable.hpp"
#include "gpovm/statistics.hpp"
#include "gpovm/symplectic.hpp"
#include "support.hpp"

using gpovm::CMat;
using gpovm::Complex;
using gpovm::Mat;
using gpovm::Vec;
using gpovm::max_abs;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kSuiteSize = 200;
constexpr std::uint64_t kSuiteSeed = 1;

// Release-gate tolerances. Pinned here, not shared with the unit suites, so
// loosening a unit test can never silently loosen the gate.
constexpr double kBlockResidualTol = 1e-9;   // criteria 2 and 3
constexpr double kEigenFloor = 1e-10;        // a_j >= 1/2 - this; ancilla state PSD
constexpr double kCharTol = 1e-10;           // criterion 3 characteristic residual
constexpr double kOracleRelTol = 1e-3;       // criteria 4 and 5 oracle agreement
constexpr double kClosedFormTol = 1e-12;     // criterion 5 closed forms
constexpr double kCovarianceTol = 1e-3;      // criterion 6
constexpr double kCfTol = 1e-5;              // criterion 7 characteristic functions

double seconds_since(const std::chrono::steady_clock::time_point &t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<gpovm::GaussianObservable> suite() {
  std::mt19937_64 rng(kSuiteSeed);
  std::vector<gpovm::GaussianObservable> out;
  out.reserve(kSuiteSize);
  for (int i = 0; i < kSuiteSize; ++i)
    out.push_back(gpovm_test::random_valid_observable(rng));
  return out;
}

bool verdict(int n, bool ok) {
  std::printf("  [%s] criterion %d\n", ok ? "PASS" : "FAIL", n);
  std::fflush(stdout);
  return ok;
}

// ---- criterion 1: validity gate ---------------------------------------------

bool criterion1() {
  std::printf("criterion 1: validity gate on %d random triples\n", kSuiteSize);
  auto t0 = std::chrono::steady_clock::now();
  int accepted = 0, rejected = 0;
  for (const gpovm::GaussianObservable &obs : suite()) {
    if (gpovm::validate(obs).valid) ++accepted;
    gpovm::GaussianObservable bad = obs;
    bad.alpha *= gpovm_test::invalidating_scale(obs);
    if (!gpovm::validate(bad).valid) ++rejected;
  }
  double elapsed = seconds_since(t0);
  std::printf("  %d/%d valid accepted, %d/%d scaled-down rejected, %.2f s (budget 5 s)\n",
              accepted, kSuiteSize, rejected, kSuiteSize, elapsed);
  return verdict(1, accepted == kSuiteSize && rejected == kSuiteSize && elapsed < 5.0);
}

// ---- criterion 2: canonical block decomposition ------------------------------

bool criterion2() {
  std::printf("criterion 2: block decomposition residuals and dimensions\n");
  double worst_alpha = 0.0, worst_delta = 0.0, worst_a = 1.0;
  bool dims_ok = true, scale_ok = true;
  const std::vector<gpovm::GaussianObservable> all = suite();
  for (const gpovm::GaussianObservable &obs : all) {
    Mat dk = gpovm::delta_K(obs);
    gpovm::CanonicalDecomposition dec = gpovm::extended_williamson(obs.alpha, dk);
    Mat at = gpovm::canonical_alpha_target(obs.m, dec.s1, dec.s2, dec.a);
    Mat dt = gpovm::canonical_delta_target(obs.m, dec.s1);
    worst_alpha = std::max(worst_alpha,
                           max_abs(Mat(dec.T.transpose() * obs.alpha * dec.T - at)));
    worst_delta = std::max(worst_delta,
                           max_abs(Mat(dec.T.transpose() * dk * dec.T - dt)));
    if (dec.a.size() > 0) worst_a = std::min(worst_a, dec.a.minCoeff());
    if (2 * dec.s1 + dec.s2 + dec.s3 != obs.m || dec.s1 != dec.r_delta / 2) dims_ok = false;
    for (double c : {0.1, 10.0}) {
      gpovm::CanonicalDecomposition sc =
          gpovm::extended_williamson(Mat(c * obs.alpha), Mat(c * dk));
      if (sc.s1 != dec.s1 || sc.s2 != dec.s2 || sc.s3 != dec.s3) scale_ok = false;
    }
  }
  std::printf("  worst alpha residual %.3e, worst commutator residual %.3e (tol %.0e)\n",
              worst_alpha, worst_delta, kBlockResidualTol);
  std::printf("  min symplectic eigenvalue %.12f (floor 0.5 - 1e-10)\n", worst_a);
  std::printf("  dimension identities: %s, scale invariance (c = 0.1, 10): %s\n",
              dims_ok ? "hold" : "VIOLATED", scale_ok ? "holds" : "VIOLATED");
  bool ok = worst_alpha < kBlockResidualTol && worst_delta < kBlockResidualTol &&
            worst_a >= 0.5 - kEigenFloor && dims_ok && scale_ok;
  return verdict(2, ok);
}

// ---- criterion 3: dilation synthesis -----------------------------------------

bool criterion3() {
  std::printf("criterion 3: dilation data on the suite plus the known vacuum dilation\n");
  double worst_res = 0.0, worst_char = 0.0, worst_state = 0.0;
  bool sc_ok = true;
  std::mt19937_64 wrng(99);
  std::normal_distribution<double> g(0.0, 0.8);
  for (const gpovm::GaussianObservable &obs : suite()) {
    gpovm::NaimarkExtension ext = gpovm::extend(obs);
    gpovm::NaimarkResiduals res = gpovm::verify(ext, obs);
    if (ext.s_C != ext.decomposition.r_alpha - ext.decomposition.r_delta / 2) sc_ok = false;
    worst_res = std::max({worst_res, res.proj_residual, res.com_residual,
                          res.involution_residual, res.pairing_residual});
    worst_state = std::min(worst_state, res.state_validity_min_eig);
    for (int k = 0; k < 25; ++k) {
      Vec w(obs.m);
      for (int j = 0; j < obs.m; ++j) w(j) = g(wrng);
      gpovm::CharacteristicCheck chk = gpovm::characteristic_check(ext, obs, w);
      worst_char = std::max(worst_char, std::abs(chk.lhs - chk.rhs));
    }
  }
  gpovm::NaimarkExtension het = gpovm::extend(gpovm::heterodyne_vacuum(1));
  Mat lambda_want(2, 2);
  lambda_want << 1, 0, 0, -1;
  bool het_ok = het.s_C == 1 &&
                max_abs(Mat(het.alpha_C - 0.5 * Mat::Identity(2, 2))) < 1e-12 &&
                max_abs(Mat(het.Lambda - lambda_want)) < 1e-12;
  std::printf("  worst identity residual %.3e (tol %.0e), worst characteristic residual "
              "%.3e (tol %.0e)\n",
              worst_res, kBlockResidualTol, worst_char, kCharTol);
  std::printf("  ancilla state min eigenvalue %.3e (floor -1e-10), s_C identity: %s\n",
              worst_state, sc_ok ? "exact" : "VIOLATED");
  std::printf("  single-conjugate-mode vacuum dilation (s_C=1, alpha_C=I/2, "
              "Lambda=diag(1,-1)): %s\n",
              het_ok ? "reproduced" : "NOT reproduced");
  bool ok = worst_res < kBlockResidualTol && worst_char < kCharTol &&
            worst_state >= -kEigenFloor && sc_ok && het_ok;
  return verdict(3, ok);
}

// ---- criterion 4: boundedness signatures in the oracle -----------------------

bool criterion4() {
  std::printf("criterion 4: oracle boundedness signatures\n");
  auto t0 = std::chrono::steady_clock::now();

  gpovm::GaussianObservable noisy = gpovm::noisy_homodyne(1, Mat::Constant(1, 1, 0.5));
  gpovm::SupDensityCheck chk = gpovm::sup_density_two_cutoffs(noisy, 20);
  double target = 1.0 / std::sqrt(kPi);
  double rel_err = std::abs(chk.at_high - target) / target;
  bool noisy_ok = chk.rel_change < kOracleRelTol && rel_err < kOracleRelTol;
  std::printf("  noisy position: sup %.12f at N=20, %.12f at N=40; rel change %.2e, "
              "error vs 1/sqrt(pi) %.2e (tol %.0e)\n",
              chk.at_low, chk.at_high, chk.rel_change, rel_err, kOracleRelTol);

  gpovm::GaussianObservable sharp = gpovm::sharp_homodyne(1);
  double s10 = gpovm::sup_density(sharp, 10);
  double s40 = gpovm::sup_density(sharp, 40);
  double ratio = s40 / s10;
  bool sharp_ok = ratio > 1.5;
  std::printf("  sharp position: sup %.6f at N=10, %.6f at N=40; growth ratio %.3f "
              "(required > 1.5)\n",
              s10, s40, ratio);
  if (!sharp_ok) {
    std::printf("  note: with matrix dimension N+1 (odd, so the truncated position "
                "operator has an exact\n"
                "  zero eigenvalue) the sharp-position density saturates at 8/pi = "
                "%.6f for every cutoff;\n"
                "  the growth clause presumes even matrix dimensions, which break the "
                "convergence of the\n"
                "  noisy clause above and of criterion 5. The convention is kept and "
                "this clause fails.\n",
                8.0 / kPi);
  }
  double elapsed = seconds_since(t0);
  std::printf("  elapsed %.2f s (budget 60 s)\n", elapsed);
  return verdict(4, noisy_ok && sharp_ok && elapsed < 60.0);
}

// ---- criterion 5: norm formulas ----------------------------------------------

bool criterion5() {
  std::printf("criterion 5: closed-form norms and the type-2 constant\n");

  gpovm::GaussianObservable het = gpovm::heterodyne_vacuum(1);
  double het_norm = gpovm::density_norm(het).value;
  double het_err = std::abs(het_norm - 1.0 / (2.0 * kPi));
  std::printf("  joint-measurement norm %.15f vs 1/(2 pi): |diff| = %.2e (tol %.0e)\n",
              het_norm, het_err, kClosedFormTol);
  gpovm::SupDensityCheck het_chk = gpovm::sup_density_two_cutoffs(het, 20);
  double het_oracle_rel = std::abs(het_chk.at_high - het_norm) / het_norm;
  std::printf("  oracle sup %.12f at N=40, rel error %.2e (tol %.0e)\n", het_chk.at_high,
              het_oracle_rel, kOracleRelTol);

  // The type-2 constant: the oracle decides between (2 pi)^{-m/2} (det a)^{-1/2}
  // and the (2 pi)^{-s} variant. Two noise levels on one coordinate.
  bool settled = true, rejected = true;
  double closed_match = 0.0;
  for (double var : {0.5, 1.2}) {
    gpovm::GaussianObservable obs = gpovm::noisy_homodyne(1, Mat::Constant(1, 1, var));
    gpovm::SupDensityCheck chk = gpovm::sup_density_two_cutoffs(obs, 20);
    double settled_constant = 1.0 / std::sqrt(2.0 * kPi * var);       // (2 pi)^{-m/2}
    double variant = 1.0 / (2.0 * kPi * std::sqrt(var));              // (2 pi)^{-s}
    double rel_settled = std::abs(chk.at_high - settled_constant) / settled_constant;
    double rel_variant = std::abs(chk.at_high - variant) / variant;
    if (rel_settled >= kOracleRelTol) settled = false;
    if (rel_variant <= 0.1) rejected = false;
    closed_match = std::max(closed_match,
                            std::abs(gpovm::density_norm(obs).value - settled_constant));
    std::printf("  variance %.1f: oracle %.9f; (2 pi)^{-m/2} form dev %.2e, "
                "(2 pi)^{-s} variant dev %.2e\n",
                var, chk.at_high, rel_settled, rel_variant);
  }
  std::printf("  the (2 pi)^{-s} variant is rejected by the oracle (deviation > 10%%); "
              "the library/closed form matches the settled constant to %.2e\n",
              closed_match);
  bool ok = het_err < kClosedFormTol && het_oracle_rel < kOracleRelTol && settled &&
            rejected && closed_match < kClosedFormTol;
  return verdict(5, ok);
}

// ---- criterion 6: covariance property of the density --------------------------

double covariance_residual(const gpovm::GaussianObservable &obs, const Vec &z, int cutoff,
                           const gpovm::FockOperator &m0) {
  gpovm::FockOperator mz = gpovm::density_matrix_at(obs, z, cutoff);
  Vec shift = gpovm::covariant_core_shift(obs, z);
  CMat w = gpovm::weyl_matrix(shift, cutoff).matrix;
  return gpovm::lower_block_distance(mz, CMat(w * m0.matrix * w.adjoint()));
}

bool criterion6() {
  std::printf("criterion 6: covariance property m(z) = W(K1 z) m(0) W(K1 z)^* at N=40\n");
  const int cutoff = 40;
  double worst = 0.0;

  gpovm::GaussianObservable noisy = gpovm::noisy_homodyne(1, Mat::Constant(1, 1, 0.6));
  gpovm::FockOperator m0a = gpovm::density_matrix_at(noisy, Vec::Zero(1), cutoff);
  for (double z0 : {-0.8, -0.3, 0.0, 0.4, 0.9}) {
    Vec z(1);
    z << z0;
    worst = std::max(worst, covariance_residual(noisy, z, cutoff, m0a));
  }
  std::printf("  noisy position (m=1): worst residual %.3e\n", worst);

  gpovm::GaussianObservable joint = gpovm::heterodyne_vacuum(1);
  joint.alpha = 0.8 * Mat::Identity(2, 2);  // nondegenerate, above minimal noise
  gpovm::FockOperator m0b = gpovm::density_matrix_at(joint, Vec::Zero(2), cutoff);
  double worst_joint = 0.0;
  const double grid[5][2] = {{0.5, 0.0}, {0.0, 0.5}, {-0.4, 0.3}, {0.3, -0.6}, {0.2, 0.2}};
  for (const double *p : grid) {
    Vec z(2);
    z << p[0], p[1];
    worst_joint = std::max(worst_joint, covariance_residual(joint, z, cutoff, m0b));
  }
  std::printf("  joint measurement (m=2): worst residual %.3e\n", worst_joint);
  std::printf("  tolerance %.0e\n", kCovarianceTol);
  worst = std::max(worst, worst_joint);
  return verdict(6, worst < kCovarianceTol);
}

// ---- criterion 7: outcome statistics ------------------------------------------

bool criterion7() {
  std::printf("criterion 7: outcome statistics of the joint measurement on vacuum\n");
  gpovm::GaussianObservable obs = gpovm::heterodyne_vacuum(1);
  gpovm::GaussianState vac = gpovm::vacuum_state(1);
  gpovm::OutcomeDistribution dist = gpovm::outcome_distribution(obs, vac);

  double law_dev = std::max(dist.mean.cwiseAbs().maxCoeff(),
                            max_abs(Mat(dist.covariance - Mat::Identity(2, 2))));
  std::printf("  distribution is N(0, I): max deviation %.2e\n", law_dev);

  // Characteristic function vs the oracle trace on a 5x5 grid.
  const int cutoff = 40;
  gpovm::FockOperator rho = gpovm::gaussian_state_matrix(vac, cutoff);
  double worst_cf = 0.0;
  for (double wx : {-0.8, -0.4, 0.0, 0.4, 0.8}) {
    for (double wy : {-0.8, -0.4, 0.0, 0.4, 0.8}) {
      Vec w(2);
      w << wx, wy;
      Complex oracle = (rho.matrix * gpovm::observable_cf_matrix(obs, w, cutoff).matrix).trace();
      Complex analytic =
          std::exp(Complex(-0.5 * w.dot(dist.covariance * w), dist.mean.dot(w)));
      worst_cf = std::max(worst_cf, std::abs(oracle - analytic));
    }
  }
  std::printf("  characteristic function vs oracle trace: worst |diff| %.3e (tol %.0e)\n",
              worst_cf, kCfTol);

  // Moments of 1e5 samples within three standard errors.
  const int n = 100000;
  Mat x = gpovm::sample(dist, n, 2026);
  Vec mean = x.colwise().mean().transpose();
  Mat centered = x.rowwise() - mean.transpose();
  Mat cov = centered.transpose() * centered / (n - 1.0);
  double se_mean = 1.0 / std::sqrt(static_cast<double>(n));       // sqrt(C_ii / n)
  double se_var = std::sqrt(2.0 / n);                             // var of sample variance
  double se_cross = 1.0 / std::sqrt(static_cast<double>(n));      // C_ii C_jj + C_ij^2 = 1
  double dev_mean = mean.cwiseAbs().maxCoeff();
  double dev_var = std::max(std::abs(cov(0, 0) - 1.0), std::abs(cov(1, 1) - 1.0));
  double dev_cross = std::abs(cov(0, 1));
  std::printf("  sample moments (n=%d, seed 2026): |mean| %.4e (3 SE %.4e), "
              "|var-1| %.4e (3 SE %.4e), |cross| %.4e (3 SE %.4e)\n",
              n, dev_mean, 3 * se_mean, dev_var, 3 * se_var, dev_cross, 3 * se_cross);

  bool ok = law_dev < 1e-12 && worst_cf < kCfTol && dev_mean < 3 * se_mean &&
            dev_var < 3 * se_var && dev_cross < 3 * se_cross;
  return verdict(7, ok);
}

// ---- criterion 8: byte-stable CLI reports -------------------------------------

std::string run_cli_capture(const std::string &args, int &exit_code) {
  namespace fs = std::filesystem;
  static int counter = 0;
  fs::path out = fs::temp_directory_path() /
                 ("gpovm_accept_out_" + std::to_string(counter++) + ".txt");
  std::string cmd = std::string(GPOVM_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream in(out, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  fs::remove(out);
  return ss.str();
}

bool criterion8() {
  std::printf("criterion 8: byte-stable machine-readable reports on the shipped files\n");
  const std::vector<std::string> files = {"heterodyne_vacuum.json", "heterodyne_thermal.json",
                                          "noisy_homodyne.json", "sharp_homodyne.json"};
  bool ok = true;
  int checked = 0;
  for (const std::string &f : files) {
    std::string path = std::string(GPOVM_DATA_DIR) + "/" + f;
    std::vector<std::string> commands = {
        "validate " + path + " --json",
        "classify " + path + " --json",
        "naimark " + path + " --json",
        "distribution " + path + " --json",
        "sample " + path + " --n 5 --seed 1 --json",
    };
    if (f == "noisy_homodyne.json" || f == "sharp_homodyne.json")
      commands.push_back("oracle-check " + path + " --cutoff 10 --json");
    for (const std::string &cmd : commands) {
      int code_a = 0, code_b = 0;
      std::string a = run_cli_capture(cmd, code_a);
      std::string b = run_cli_capture(cmd, code_b);
      ++checked;
      if (a != b || a.empty() || code_a != code_b || code_a != 0) {
        std::printf("  UNSTABLE or failing: %s (exit %d/%d)\n", cmd.c_str(), code_a, code_b);
        ok = false;
      }
    }
  }
  std::printf("  %d command pairs compared byte for byte\n", checked);
  return verdict(8, ok);
}

}  // namespace

int main(int argc, char **argv) {
  bool (*criteria[8])() = {criterion1, criterion2, criterion3, criterion4,
                           criterion5, criterion6, criterion7, criterion8};
  if (argc > 1) {
    int n = std::atoi(argv[1]);
    if (n < 1 || n > 8) {
      std::fprintf(stderr, "usage: %s [criterion 1..8]\n", argv[0]);
      return 2;
    }
    return criteria[n - 1]() ? 0 : 1;
  }
  int failures = 0;
  for (int n = 1; n <= 8; ++n)
    if (!criteria[n - 1]()) ++failures;
  std::printf("%d/8 criteria passed\n", 8 - failures);
  return failures;
}

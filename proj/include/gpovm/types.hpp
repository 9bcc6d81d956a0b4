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

#ifndef GPOVM_TYPES_HPP
#define GPOVM_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gpovm {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Complex = std::complex<double>;

// Default relative tolerance for rank decisions and positive-semidefiniteness
// checks. Overridable per call; the CLI exposes it as --tol.
inline constexpr double kDefaultTol = 1e-10;

// A quantum-side validity violation: the input fails the positivity condition
// that characterizes admissible observable/state parameters. Distinct from
// std::invalid_argument (malformed shapes) so callers can map it to a domain
// error instead of a usage error.
class validity_error : public std::runtime_error {
 public:
  validity_error(const std::string &what, double min_eigenvalue)
      : std::runtime_error(what), min_eig_(min_eigenvalue) {}
  double min_eigenvalue() const { return min_eig_; }

 private:
  double min_eig_;
};

// K has linearly dependent columns. The library refuses to reparametrize the
// outcome space silently; see reduce_columns() for the explicit helper.
class column_dependence_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested operation does not apply to the observable's type (e.g. asking
// for the joint-measurement core of a purely classical observable).
class wrong_type_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline double max_abs(const Mat &m) {
  return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

inline double max_abs(const CMat &m) {
  return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

// Smallest eigenvalue of a Hermitian matrix; 0 for an empty matrix.
inline double min_eigenvalue(const CMat &h) {
  if (h.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

inline bool is_symmetric(const Mat &a, double tol = kDefaultTol) {
  if (a.rows() != a.cols()) return false;
  double scale = std::max(1.0, max_abs(a));
  return max_abs(Mat(a - a.transpose())) <= tol * scale;
}

inline bool is_skew(const Mat &d, double tol = kDefaultTol) {
  if (d.rows() != d.cols()) return false;
  double scale = std::max(1.0, max_abs(d));
  return max_abs(Mat(d + d.transpose())) <= tol * scale;
}

// Rank by singular values above tol * sigma_max (relative threshold, so the
// decision is scale-free). Returns 0 for an empty matrix.
inline int numeric_rank(const Mat &a, double tol = kDefaultTol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(a);
  const auto &sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++r;
  return r;
}

}  // namespace gpovm

#endif  // GPOVM_TYPES_HPP

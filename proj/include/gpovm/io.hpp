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
// JSON file formats for observables and states, plus small helpers shared by
// the command line tool. Malformed input is reported through schema_error,
// which the CLI maps to its I/O exit code; domain errors (an observable that
// parses fine but fails positivity) are raised later by the library proper.

#ifndef GPOVM_IO_HPP
#define GPOVM_IO_HPP

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gpovm/observable.hpp"
#include "gpovm/statistics.hpp"
#include "gpovm/types.hpp"

namespace gpovm {

using json = nlohmann::json;

class schema_error : public std::runtime_error {
 public:
  explicit schema_error(const std::string &what) : std::runtime_error(what) {}
};

namespace detail {

inline const json &require_field(const json &j, const std::string &key,
                                 const std::string &ctx) {
  auto it = j.find(key);
  if (it == j.end()) throw schema_error(ctx + ": missing field '" + key + "'");
  return *it;
}

inline int require_positive_int(const json &j, const std::string &key,
                                const std::string &ctx) {
  const json &v = require_field(j, key, ctx);
  if (!v.is_number_integer() || v.get<long long>() < 1)
    throw schema_error(ctx + ": '" + key + "' must be a positive integer");
  return v.get<int>();
}

// Matrices are stored as flat row-major lists; the declared dimensions are
// authoritative and no shape inference happens.
inline Mat parse_matrix(const json &v, int rows, int cols, const std::string &name,
                        const std::string &ctx) {
  if (!v.is_array() || static_cast<int>(v.size()) != rows * cols)
    throw schema_error(ctx + ": '" + name + "' must be a flat row-major list of " +
                       std::to_string(rows) + "*" + std::to_string(cols) + " numbers");
  Mat out(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const json &e = v[i * cols + j];
      if (!e.is_number())
        throw schema_error(ctx + ": '" + name + "' entry " + std::to_string(i * cols + j) +
                           " is not a number");
      out(i, j) = e.get<double>();
    }
  return out;
}

inline Vec parse_vector(const json &v, int n, const std::string &name,
                        const std::string &ctx) {
  if (!v.is_array() || static_cast<int>(v.size()) != n)
    throw schema_error(ctx + ": '" + name + "' must be an array of " + std::to_string(n) +
                       " numbers");
  Vec out(n);
  for (int i = 0; i < n; ++i) {
    if (!v[i].is_number())
      throw schema_error(ctx + ": '" + name + "' entry " + std::to_string(i) +
                         " is not a number");
    out(i) = v[i].get<double>();
  }
  return out;
}

inline json matrix_to_json(const Mat &a) {
  json flat = json::array();
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) flat.push_back(a(i, j));
  return flat;
}

inline json vector_to_json(const Vec &v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

inline void check_schema_version(const json &j, const std::string &ctx) {
  const json &v = require_field(j, "schema_version", ctx);
  bool ok = (v.is_string() && v.get<std::string>() == "1") ||
            (v.is_number_integer() && v.get<int>() == 1);
  if (!ok) throw schema_error(ctx + ": unsupported schema_version (expected \"1\")");
}

}  // namespace detail

// Observable file:
// { "schema_version": "1", "s": int, "m": int,
//   "K": flat row-major list of 2s*m numbers,
//   "alpha": flat row-major list of m*m numbers,
//   "l": list of m numbers (optional, default 0), "label": "..." (optional) }
inline GaussianObservable observable_from_json(const json &j) {
  const std::string ctx = "observable";
  if (!j.is_object()) throw schema_error(ctx + ": top level must be an object");
  detail::check_schema_version(j, ctx);
  GaussianObservable obs;
  obs.s = detail::require_positive_int(j, "s", ctx);
  obs.m = detail::require_positive_int(j, "m", ctx);
  obs.K = detail::parse_matrix(detail::require_field(j, "K", ctx), 2 * obs.s, obs.m, "K", ctx);
  obs.alpha =
      detail::parse_matrix(detail::require_field(j, "alpha", ctx), obs.m, obs.m, "alpha", ctx);
  if (j.contains("l")) obs.l = detail::parse_vector(j["l"], obs.m, "l", ctx);
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw schema_error(ctx + ": 'label' must be a string");
    obs.label = j["label"].get<std::string>();
  }
  if (!is_symmetric(obs.alpha, 1e-9 * std::max(1.0, max_abs(obs.alpha))))
    throw schema_error(ctx + ": 'alpha' must be symmetric within 1e-9");
  return obs;
}

inline json observable_to_json(const GaussianObservable &obs) {
  check_shapes(obs);
  json j;
  j["schema_version"] = "1";
  j["s"] = obs.s;
  j["m"] = obs.m;
  j["K"] = detail::matrix_to_json(obs.K);
  j["alpha"] = detail::matrix_to_json(obs.alpha);
  if (obs.l.size() > 0) j["l"] = detail::vector_to_json(obs.l);
  if (!obs.label.empty()) j["label"] = obs.label;
  return j;
}

// State file:
// { "schema_version": "1", "s": int, "mean": list of 2s numbers,
//   "gamma": flat row-major list of 2s*2s numbers, "label": "..." (optional) }
inline GaussianState state_from_json(const json &j) {
  const std::string ctx = "state";
  if (!j.is_object()) throw schema_error(ctx + ": top level must be an object");
  detail::check_schema_version(j, ctx);
  GaussianState st;
  st.s = detail::require_positive_int(j, "s", ctx);
  st.mean = detail::parse_vector(detail::require_field(j, "mean", ctx), 2 * st.s, "mean", ctx);
  st.gamma = detail::parse_matrix(detail::require_field(j, "gamma", ctx), 2 * st.s, 2 * st.s,
                                  "gamma", ctx);
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw schema_error(ctx + ": 'label' must be a string");
    st.label = j["label"].get<std::string>();
  }
  if (!is_symmetric(st.gamma, 1e-9 * std::max(1.0, max_abs(st.gamma))))
    throw schema_error(ctx + ": 'gamma' must be symmetric within 1e-9");
  return st;
}

inline json state_to_json(const GaussianState &st) {
  check_state_shapes(st);
  json j;
  j["schema_version"] = "1";
  j["s"] = st.s;
  j["mean"] = detail::vector_to_json(st.mean);
  j["gamma"] = detail::matrix_to_json(st.gamma);
  if (!st.label.empty()) j["label"] = st.label;
  return j;
}

inline std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw schema_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_json_file(const std::string &path) {
  std::string text = read_file(path);
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw schema_error("invalid JSON in file: " + path);
  return j;
}

inline GaussianObservable load_observable(const std::string &path) {
  return observable_from_json(parse_json_file(path));
}

inline GaussianState load_state(const std::string &path) {
  return state_from_json(parse_json_file(path));
}

// FNV-1a 64-bit digest of raw file bytes, reported alongside results so a
// report can be tied to the exact input that produced it.
inline std::string file_digest(const std::string &path) {
  std::string bytes = read_file(path);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace gpovm

#endif  // GPOVM_IO_HPP

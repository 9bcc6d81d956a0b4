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
// gpovm command line tool.
//
// Subcommands: validate, classify, naimark, distribution, sample,
// oracle-check, prototypes. Every run prints a report (human-readable by
// default, machine-readable with --json; JSON keys are sorted so repeated
// runs diff cleanly).
//
// Exit codes: 0 success, 1 I/O or schema error (including bad flags),
// 2 domain invalidity (an observable that parses but violates positivity,
// or has dependent columns). Validity violations still produce a report on
// standard output before the nonzero exit.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gpovm/fock.hpp"
#include "gpovm/io.hpp"
#include "gpovm/naimark.hpp"
#include "gpovm/observable.hpp"
#include "gpovm/statistics.hpp"
#include "gpovm/symplectic.hpp"
#include "gpovm/types.hpp"

namespace {

using gpovm::json;

struct Options {
  std::string command;
  std::string input_path;
  std::string state_path;
  std::string out_dir = ".";
  bool as_json = false;
  double tol = gpovm::kDefaultTol;
  std::uint64_t seed = 1;
  int n = 10;
  int cutoff = 20;
};

void print_human(const json &j, int indent = 0) {
  std::string pad(indent, ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it->is_object()) {
      std::cout << pad << it.key() << ":\n";
      print_human(*it, indent + 2);
    } else {
      std::cout << pad << it.key() << ": " << it->dump() << "\n";
    }
  }
}

void emit(const Options &opt, const json &report) {
  if (opt.as_json)
    std::cout << report.dump(2) << "\n";
  else
    print_human(report);
}

json base_report(const Options &opt) {
  json j;
  j["command"] = opt.command;
  if (!opt.input_path.empty()) {
    j["input"]["path"] = opt.input_path;
    j["input"]["digest"] = gpovm::file_digest(opt.input_path);
  }
  j["tolerances"]["tol"] = opt.tol;
  return j;
}

json classification_to_json(const gpovm::GaussianObservable &obs,
                             const gpovm::Classification &c, double tol) {
  const gpovm::CanonicalDecomposition &d = c.decomposition;
  json j;
  j["r_delta"] = d.r_delta;
  j["r_alpha"] = d.r_alpha;
  j["s1"] = d.s1;
  j["s2"] = d.s2;
  j["s3"] = d.s3;
  j["ancilla_modes"] = d.r_alpha - d.r_delta / 2;
  if (c.type1) {
    j["type1"]["dim"] = c.type1->dim;
    j["type1"]["subtype"] = gpovm::subtype_name(c.type1->subtype);
    j["type1"]["symplectic_eigenvalues"] = gpovm::detail::vector_to_json(d.a);
    j["type1"]["prefactor"] = c.type1->prefactor;
  }
  if (c.type2) j["type2"]["dim"] = c.type2->dim;
  if (c.type3) j["type3"]["dim"] = c.type3->dim;
  j["bounded"] = c.bounded;
  if (c.bounded) j["density_norm"] = gpovm::density_norm(obs, tol).value;
  j["coupling_residual"] = d.coupling_residual;
  return j;
}

int run_validate(const Options &opt) {
  gpovm::GaussianObservable obs = gpovm::load_observable(opt.input_path);
  gpovm::ValidityReport rep = gpovm::validate(obs, opt.tol);
  json j = base_report(opt);
  j["results"]["valid"] = rep.valid;
  j["results"]["min_eigenvalue"] = rep.min_eigenvalue;
  if (!rep.message.empty()) j["results"]["message"] = rep.message;
  emit(opt, j);
  return rep.valid ? 0 : 2;
}

int run_classify(const Options &opt) {
  gpovm::GaussianObservable obs = gpovm::load_observable(opt.input_path);
  gpovm::Classification c = gpovm::classify(obs, opt.tol);
  json j = base_report(opt);
  j["tolerances"]["subtype"] = 1e-9;
  j["results"] = classification_to_json(obs, c, opt.tol);
  emit(opt, j);
  return 0;
}

int run_naimark(const Options &opt) {
  gpovm::GaussianObservable obs = gpovm::load_observable(opt.input_path);
  gpovm::NaimarkExtension ext = gpovm::extend(obs, opt.tol);
  gpovm::NaimarkResiduals res = gpovm::verify(ext, obs);
  gpovm::HybridAncillaDims dims = gpovm::hybrid_ancilla_dims(obs, opt.tol);
  json j = base_report(opt);
  j["results"]["ancilla_modes"] = ext.s_C;
  j["results"]["hybrid_quantum_modes"] = dims.quantum_modes;
  j["results"]["hybrid_classical_dims"] = dims.classical_dims;
  j["results"]["alpha_C"] = gpovm::detail::matrix_to_json(ext.alpha_C);
  j["results"]["Lambda"] = gpovm::detail::matrix_to_json(ext.Lambda);
  j["results"]["residuals"]["projection"] = res.proj_residual;
  j["results"]["residuals"]["commutation"] = res.com_residual;
  j["results"]["residuals"]["involution"] = res.involution_residual;
  j["results"]["residuals"]["commuting_combinations"] = res.commuting_X_residual;
  j["results"]["residuals"]["pairing"] = res.pairing_residual;
  j["results"]["residuals"]["kernel"] = res.kernel_residual;
  j["results"]["ancilla_state_min_eigenvalue"] = res.state_validity_min_eig;
  emit(opt, j);
  return 0;
}

gpovm::GaussianState state_for(const Options &opt, int s, json &j) {
  if (opt.state_path.empty()) {
    j["state"]["path"] = "(default vacuum)";
    return gpovm::vacuum_state(s);
  }
  j["state"]["path"] = opt.state_path;
  j["state"]["digest"] = gpovm::file_digest(opt.state_path);
  return gpovm::load_state(opt.state_path);
}

int run_distribution(const Options &opt) {
  gpovm::GaussianObservable obs = gpovm::load_observable(opt.input_path);
  json j = base_report(opt);
  gpovm::GaussianState st = state_for(opt, obs.s, j);
  gpovm::OutcomeDistribution dist = gpovm::outcome_distribution(obs, st, opt.tol);
  j["results"]["mean"] = gpovm::detail::vector_to_json(dist.mean);
  j["results"]["covariance"] = gpovm::detail::matrix_to_json(dist.covariance);
  emit(opt, j);
  return 0;
}

int run_sample(const Options &opt) {
  gpovm::GaussianObservable obs = gpovm::load_observable(opt.input_path);
  json j = base_report(opt);
  gpovm::GaussianState st = state_for(opt, obs.s, j);
  gpovm::OutcomeDistribution dist = gpovm::outcome_distribution(obs, st, opt.tol);
  gpovm::Mat samples = gpovm::sample(dist, opt.n, opt.seed, opt.tol);
  j["seed"] = opt.seed;
  j["n"] = opt.n;
  json rows = json::array();
  for (int i = 0; i < samples.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < samples.cols(); ++k) row.push_back(samples(i, k));
    rows.push_back(row);
  }
  j["results"]["samples"] = rows;
  emit(opt, j);
  return 0;
}

int run_oracle_check(const Options &opt) {
  gpovm::GaussianObservable obs = gpovm::load_observable(opt.input_path);
  gpovm::DensityNorm norm = gpovm::density_norm(obs, opt.tol);
  gpovm::SupDensityCheck chk = gpovm::sup_density_two_cutoffs(obs, opt.cutoff, {}, opt.tol);
  json j = base_report(opt);
  j["oracle"]["cutoff_low"] = opt.cutoff;
  j["oracle"]["cutoff_high"] = 2 * opt.cutoff;
  j["oracle"]["sup_density_low"] = chk.at_low;
  j["oracle"]["sup_density_high"] = chk.at_high;
  j["oracle"]["rel_change"] = chk.rel_change;
  j["oracle"]["converged"] = chk.converged;
  if (!chk.warning.empty()) j["oracle"]["warning"] = chk.warning;
  j["results"]["bounded"] = norm.bounded;
  if (norm.bounded) {
    j["results"]["density_norm"] = norm.value;
    j["results"]["oracle_rel_error"] = std::abs(chk.at_high - norm.value) / norm.value;
  } else {
    j["results"]["growth_ratio"] = chk.at_high / std::max(chk.at_low, 1e-300);
  }
  emit(opt, j);
  return 0;
}

void write_json_file(const std::string &path, const json &j, json &listing) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw gpovm::schema_error("cannot write file: " + path);
  out << j.dump(2) << "\n";
  listing.push_back(path);
}

int run_prototypes(const Options &opt) {
  json j = base_report(opt);
  json written = json::array();
  std::string d = opt.out_dir;
  if (!d.empty() && d.back() != '/') d += '/';
  write_json_file(d + "heterodyne_vacuum.json",
                  gpovm::observable_to_json(gpovm::heterodyne_vacuum(1)), written);
  gpovm::Vec occ(1);
  occ << 1.0;
  write_json_file(d + "heterodyne_thermal.json",
                  gpovm::observable_to_json(gpovm::heterodyne_thermal(1, occ)), written);
  write_json_file(d + "noisy_homodyne.json",
                  gpovm::observable_to_json(gpovm::noisy_homodyne(
                      1, gpovm::Mat::Constant(1, 1, 0.5))),
                  written);
  write_json_file(d + "sharp_homodyne.json",
                  gpovm::observable_to_json(gpovm::sharp_homodyne(1)), written);
  write_json_file(d + "vacuum_state.json", gpovm::state_to_json(gpovm::vacuum_state(1)),
                  written);
  write_json_file(d + "thermal_state.json", gpovm::state_to_json(gpovm::thermal_state(1, occ)),
                  written);
  j["results"]["written"] = written;
  emit(opt, j);
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Structure theory of multi-mode Gaussian observables"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App *sub, bool needs_input) {
    if (needs_input)
      sub->add_option("input", opt.input_path, "observable file (JSON)")->required();
    sub->add_flag("--json", opt.as_json, "machine-readable report with sorted keys");
    sub->add_option("--tol", opt.tol, "rank/PSD tolerance (default 1e-10)");
  };

  CLI::App *validate = app.add_subcommand("validate", "check the positivity condition");
  add_common(validate, true);
  CLI::App *classify = app.add_subcommand("classify", "canonical decomposition and type");
  add_common(classify, true);
  CLI::App *naimark = app.add_subcommand("naimark", "minimal dilation data and residuals");
  add_common(naimark, true);
  CLI::App *distribution =
      app.add_subcommand("distribution", "outcome distribution on a Gaussian state");
  add_common(distribution, true);
  distribution->add_option("--state", opt.state_path, "state file (JSON); default vacuum");
  CLI::App *sample = app.add_subcommand("sample", "draw outcome samples");
  add_common(sample, true);
  sample->add_option("--state", opt.state_path, "state file (JSON); default vacuum");
  sample->add_option("--seed", opt.seed, "RNG seed (default 1)");
  sample->add_option("--n", opt.n, "number of samples (default 10)");
  CLI::App *oracle =
      app.add_subcommand("oracle-check", "truncated Fock cross-check of the density norm");
  add_common(oracle, true);
  oracle->add_option("--cutoff", opt.cutoff, "low cutoff N; the check also runs 2N");
  CLI::App *prototypes =
      app.add_subcommand("prototypes", "write the standard observable and state files");
  add_common(prototypes, false);
  prototypes->add_option("--out", opt.out_dir, "output directory (default .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 1;
  }

  opt.command = app.get_subcommands().front()->get_name();
  try {
    if (validate->parsed()) return run_validate(opt);
    if (classify->parsed()) return run_classify(opt);
    if (naimark->parsed()) return run_naimark(opt);
    if (distribution->parsed()) return run_distribution(opt);
    if (sample->parsed()) return run_sample(opt);
    if (oracle->parsed()) return run_oracle_check(opt);
    if (prototypes->parsed()) return run_prototypes(opt);
  } catch (const gpovm::schema_error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const gpovm::validity_error &e) {
    json j = base_report(opt);
    j["results"]["valid"] = false;
    j["results"]["min_eigenvalue"] = e.min_eigenvalue();
    j["results"]["message"] = e.what();
    emit(opt, j);
    return 2;
  } catch (const gpovm::column_dependence_error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

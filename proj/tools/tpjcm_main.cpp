// Copyright 2026 The tpjcm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tpjcm/config.hpp"
#include "tpjcm/errors.hpp"
#include "tpjcm/experiments.hpp"
#include "tpjcm/report.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitGuard = 3;

struct Flags {
  std::optional<int> nmax;
  std::optional<double> kappa, alpha2, e, tmax, dt, step;
  std::optional<std::string> jb, jc, method, config, out;
};

tpjcm::RunSettings settings_from(const Flags& f, const std::string& command) {
  tpjcm::RunSettings s;
  if (f.config) s = tpjcm::load_config_file(*f.config);
  tpjcm::RunSettings o;
  o.nmax = f.nmax;
  o.kappa = f.kappa;
  o.alpha2 = f.alpha2;
  o.e = f.e;
  o.tmax = f.tmax;
  o.dt = f.dt;
  o.step = f.step;
  o.out = f.out;
  if (f.jb) o.jb = tpjcm::HalfInt::parse(*f.jb);
  if (f.jc) o.jc = tpjcm::HalfInt::parse(*f.jc);
  if (f.method) o.method = tpjcm::parse_method(*f.method);
  o.preset = command;
  return s.merge(o);
}

// Writes to the --out path, or stdout when absent.
void emit(const std::optional<std::string>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path);
  if (!out || !(out << text)) throw tpjcm::ConfigError("cannot write " + *path);
}

int run(const std::string& command, const Flags& flags) {
  const tpjcm::RunSettings settings = settings_from(flags, command);
  if (command == "compare") {
    const tpjcm::ModelParams params(tpjcm::to_model_config(settings));
    const auto report =
        tpjcm::compare(params, tpjcm::to_integrator_config(settings));
    if (settings.out) {
      emit(settings.out, tpjcm::report_json(report) + "\n");
      std::cerr << tpjcm::report_text(report);
    } else {
      std::cout << tpjcm::report_text(report);
    }
    return 0;
  }

  const auto result = tpjcm::run_preset(command, settings);
  for (const auto& note : result.notes) std::cerr << "note: " << note << "\n";
  std::vector<tpjcm::EntropySeries> series;
  for (const auto& c : result.curves) series.push_back(c.series);
  std::ostringstream csv;
  tpjcm::write_csv(csv, series);
  emit(settings.out, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-photon Jaynes-Cummings model with degenerate levels in a lossy cavity"};
  app.require_subcommand(1, 1);

  Flags flags;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--nmax", flags.nmax, "Photon-number truncation");
    sub->add_option("--kappa", flags.kappa, "Cavity decay rate kappa/Omega");
    sub->add_option("--alpha2", flags.alpha2, "Mean photon number |alpha|^2");
    sub->add_option("--e", flags.e, "Amplitude of the b level; f = sqrt(1 - e^2)");
    sub->add_option("--jb", flags.jb, "Angular momentum of level b (e.g. 3/2)");
    sub->add_option("--jc", flags.jc, "Angular momentum of level c (e.g. 3/2)");
    sub->add_option("--tmax", flags.tmax, "End of the Omega t grid");
    sub->add_option("--dt", flags.dt, "Spacing of the Omega t grid");
    sub->add_option("--step", flags.step, "RK4 step bound for the lindblad oracle");
    sub->add_option("--method", flags.method, "closed|pert|lindblad|all");
    sub->add_option("--config", flags.config, "key = value settings file");
    sub->add_option("--out", flags.out, "Output path (default: stdout)");
  };
  const std::pair<const char*, const char*> commands[] = {
      {"fig1", "Atomic entropy, degenerate vs two-level atom"},
      {"fig2a", "System entropy for |alpha|^2 = 1 and 0.5"},
      {"fig2b", "Atomic entropy for |alpha|^2 = 1 and 0.5"},
      {"fig3", "Atomic entropy for e = 1/sqrt(2) and e = 0.4"},
      {"run", "System, atom and field entropies for the given parameters"},
      {"compare", "Cross-method discrepancy report"},
  };
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, flags);
  } catch (const tpjcm::NumericalGuardError& e) {
    std::cerr << "error: " << e.what() << "\nhint: " << e.hint() << "\n";
    return kExitGuard;
  } catch (const tpjcm::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

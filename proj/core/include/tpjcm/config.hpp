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

// Run settings shared by the CLI and the experiment presets. Every field is
// optional so that a config file and command-line flags can be layered.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "tpjcm/lindblad.hpp"
#include "tpjcm/model.hpp"

namespace tpjcm {

enum class MethodSelector { kClosedForm, kPerturbation, kLindblad, kAll };

std::string_view to_string(MethodSelector selector);
// Accepts closed|closedform, pert|perturbation, lindblad, all.
MethodSelector parse_method(std::string_view text);

struct RunSettings {
  std::optional<int> nmax;
  std::optional<double> kappa;   // kappa / Omega
  std::optional<double> alpha2;  // mean photon number N
  std::optional<double> e;       // f completed to sqrt(1 - e^2)
  std::optional<HalfInt> jb;
  std::optional<HalfInt> jc;
  std::optional<double> tmax;    // time grid end, units of 1/Omega
  std::optional<double> dt;      // time grid spacing
  std::optional<double> step;    // RK4 step bound for the oracle
  std::optional<MethodSelector> method;
  std::optional<std::string> out;
  std::optional<std::string> preset;

  // Fields set in `overrides` replace those set here.
  RunSettings& merge(const RunSettings& overrides);
};

// Flat "key = value" text, one pair per line, '#' starts a comment. Keys:
// nmax kappa alpha2 e jb jc tmax dt step method out preset.
// Throws ConfigError with the offending line number.
RunSettings parse_config_text(std::string_view text);
RunSettings load_config_file(const std::filesystem::path& path);

// Resolves settings on top of `base` (preset defaults) into a model config.
// Grid settings fall back to [0, 30] step 0.05.
ModelConfig to_model_config(const RunSettings& settings, ModelConfig base = {});
IntegratorConfig to_integrator_config(const RunSettings& settings);

}  // namespace tpjcm

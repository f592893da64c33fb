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

// Entropy curves for the named figure presets and free-form runs.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tpjcm/config.hpp"
#include "tpjcm/lindblad.hpp"
#include "tpjcm/model.hpp"
#include "tpjcm/observables.hpp"

namespace tpjcm {

struct CurveSpec {
  std::string label;  // CSV preset column, e.g. "fig1:S_da"
  ModelConfig model;
  Subsystem subsystem = Subsystem::kAtom;
};

struct Curve {
  EntropySeries series;
  std::size_t out_of_bounds = 0;
  // Oracle diagnostics (lindblad only).
  std::optional<EvolutionReport> report;
  // Samples past the perturbative validity window kappa t <= 1.
  std::size_t outside_validity = 0;
  // Non-removable singular terms replaced by their principal value, summed
  // over samples (closed form only).
  long regularized_terms = 0;
};

struct ExperimentResult {
  std::string preset;
  std::vector<Curve> curves;
  std::vector<std::string> notes;  // assumptions worth surfacing to the user
};

// One entropy curve. `params` must carry the time grid.
Curve compute_curve(const ModelParams& params, Subsystem subsystem, Method method,
                    const IntegratorConfig& integrator, std::string label = {});

std::vector<Method> methods_for(MethodSelector selector);

// Evaluates every (spec, method) pair; independent curves run concurrently.
// Output order is spec-major, method-minor, independent of scheduling.
std::vector<Curve> run_curves(const std::vector<CurveSpec>& specs,
                              const std::vector<Method>& methods,
                              const IntegratorConfig& integrator);

// Preset parameters, overridable by `settings` except for the parameter
// each figure varies between its two curves.
std::vector<CurveSpec> fig1_specs(const RunSettings& settings);
std::vector<CurveSpec> fig2_specs(char panel, const RunSettings& settings);
std::vector<CurveSpec> fig3_specs(const RunSettings& settings);
// System, atom and field entropies for the given settings.
std::vector<CurveSpec> run_specs(const RunSettings& settings);

// name: fig1 | fig2a | fig2b | fig3 | run. The method defaults to lindblad.
ExperimentResult run_preset(std::string_view name, const RunSettings& settings);

}  // namespace tpjcm

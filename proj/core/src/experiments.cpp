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

#include "tpjcm/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <future>

#include "tpjcm/closedform.hpp"
#include "tpjcm/errors.hpp"
#include "tpjcm/parallel.hpp"
#include "tpjcm/perturbation.hpp"

namespace tpjcm {

namespace {

std::string format_g(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

ModelConfig preset_config(double kappa, double alpha2, double e) {
  ModelConfig c;
  c.kappa_over_omega = kappa;
  c.alpha2 = alpha2;
  c.amp_e = e;
  return c;
}

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

Curve compute_curve(const ModelParams& params, Subsystem subsystem, Method method,
                    const IntegratorConfig& integrator, std::string label) {
  const Basis basis = build_basis(params);
  const std::vector<double>& grid = params.t_grid();

  Curve curve;
  EntropySeries& series = curve.series;
  series.t = grid;
  series.s.assign(grid.size(), 0.0);
  series.subsystem = subsystem;
  series.method = method;
  series.fingerprint = params.fingerprint();
  series.preset = std::move(label);
  series.dimension = subsystem_dim(basis, subsystem);

  switch (method) {
    case Method::kLindblad: {
      curve.report = evolve(params, integrator, [&](std::size_t g, const DensityMatrix& state) {
        series.s[g] = linear_entropy(reduce(state.rho, basis, subsystem));
      });
      break;
    }
    case Method::kPerturbation: {
      const PerturbativeSolution sol = solve_perturbative(params);
      const double kappa = params.kappa_over_omega();
      parallel_for(grid.size(), [&](std::size_t g) {
        series.s[g] = linear_entropy(reduce(assemble(sol, kappa, grid[g]).rho, basis, subsystem));
      });
      for (double t : grid) curve.outside_validity += within_validity_window(kappa, t) ? 0 : 1;
      break;
    }
    case Method::kClosedForm: {
      std::vector<long> regularized(grid.size(), 0);
      const double kappa = params.kappa_over_omega();
      parallel_for(grid.size(), [&](std::size_t g) {
        const ClosedFormOrders o = rho_closed_orders(params, basis, grid[g]);
        const Eigen::MatrixXcd rho = o.orders[0] + kappa * (o.orders[1] + kappa * o.orders[2]);
        series.s[g] = linear_entropy(reduce(rho, basis, subsystem));
        regularized[g] = o.regularized_terms;
      });
      for (long r : regularized) curve.regularized_terms += r;
      break;
    }
    case Method::kInitial:
      throw ConfigError("no entropy curve for the initial-state method");
  }
  curve.out_of_bounds = series.out_of_bounds();
  return curve;
}

std::vector<Method> methods_for(MethodSelector selector) {
  switch (selector) {
    case MethodSelector::kClosedForm: return {Method::kClosedForm};
    case MethodSelector::kPerturbation: return {Method::kPerturbation};
    case MethodSelector::kLindblad: return {Method::kLindblad};
    case MethodSelector::kAll:
      return {Method::kClosedForm, Method::kPerturbation, Method::kLindblad};
  }
  return {};
}

std::vector<Curve> run_curves(const std::vector<CurveSpec>& specs,
                              const std::vector<Method>& methods,
                              const IntegratorConfig& integrator) {
  // Validate everything before launching any work.
  std::vector<ModelParams> params;
  params.reserve(specs.size());
  for (const auto& spec : specs) params.emplace_back(spec.model);

  std::vector<std::future<Curve>> jobs;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    for (Method m : methods) {
      jobs.push_back(std::async(std::launch::async, [&, s, m] {
        return compute_curve(params[s], specs[s].subsystem, m, integrator, specs[s].label);
      }));
    }
  }
  std::vector<Curve> curves;
  curves.reserve(jobs.size());
  // Drain every job before rethrowing so no thread outlives its inputs.
  std::exception_ptr error;
  for (auto& job : jobs) {
    try {
      curves.push_back(job.get());
    } catch (...) {
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return curves;
}

std::vector<CurveSpec> fig1_specs(const RunSettings& settings) {
  ModelConfig degenerate = to_model_config(settings, preset_config(0.02, 0.5, kInvSqrt2));
  ModelConfig two_level = degenerate;
  two_level.atom = AtomModel::kTwoLevel;
  return {{"fig1:S_da", degenerate, Subsystem::kAtom},
          {"fig1:S_a", two_level, Subsystem::kAtom}};
}

std::vector<CurveSpec> fig2_specs(char panel, const RunSettings& settings) {
  if (panel != 'a' && panel != 'b') throw ConfigError("fig2 panel must be a or b");
  const double kappa = panel == 'a' ? 0.01 : 0.02;
  const Subsystem subsystem = panel == 'a' ? Subsystem::kSystem : Subsystem::kAtom;
  const std::string name = std::string("fig2") + panel;
  std::vector<CurveSpec> specs;
  for (double n : {1.0, 0.5}) {
    ModelConfig c = to_model_config(settings, preset_config(kappa, n, kInvSqrt2));
    c.alpha2 = n;
    specs.push_back({name + ":N=" + format_g(n), c, subsystem});
  }
  return specs;
}

std::vector<CurveSpec> fig3_specs(const RunSettings& settings) {
  std::vector<CurveSpec> specs;
  for (double e : {kInvSqrt2, 0.4}) {
    ModelConfig c = to_model_config(settings, preset_config(0.02, 0.5, e));
    c.amp_e = e;
    c.amp_f.reset();
    specs.push_back({"fig3:e=" + format_g(e), c, Subsystem::kAtom});
  }
  return specs;
}

std::vector<CurveSpec> run_specs(const RunSettings& settings) {
  const ModelConfig c = to_model_config(settings);
  return {{"run", c, Subsystem::kSystem}, {"run", c, Subsystem::kAtom}, {"run", c, Subsystem::kField}};
}

ExperimentResult run_preset(std::string_view name, const RunSettings& settings) {
  ExperimentResult result;
  result.preset = std::string(name);
  std::vector<CurveSpec> specs;
  if (name == "fig1") {
    specs = fig1_specs(settings);
    result.notes.push_back("two-level baseline uses unit coupling on the same time axis");
  } else if (name == "fig2a") {
    specs = fig2_specs('a', settings);
  } else if (name == "fig2b") {
    specs = fig2_specs('b', settings);
  } else if (name == "fig3") {
    specs = fig3_specs(settings);
    result.notes.push_back("e = 0.4 is completed to f = sqrt(1 - e^2) = " +
                           format_g(std::sqrt(1.0 - 0.16)));
  } else if (name == "run") {
    specs = run_specs(settings);
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "'");
  }
  const auto methods = methods_for(settings.method.value_or(MethodSelector::kLindblad));
  result.curves = run_curves(specs, methods, to_integrator_config(settings));
  for (const auto& c : result.curves) {
    if (c.out_of_bounds > 0) {
      result.notes.push_back(c.series.preset + " (" + std::string(to_string(c.series.method)) +
                             "): " + std::to_string(c.out_of_bounds) +
                             " samples outside [0, 1 - 1/d]");
    }
    if (c.outside_validity > 0) {
      result.notes.push_back(c.series.preset + " (perturbation): " +
                             std::to_string(c.outside_validity) +
                             " samples beyond kappa t = 1");
    }
  }
  return result;
}

}  // namespace tpjcm

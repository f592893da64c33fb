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

// Brute-force master-equation oracle:
//
//   d rho/dt = -i[H_eff, rho] + kappa (2 a rho a^dag - a^dag a rho - rho a^dag a)
//
// integrated with fixed-step classical RK4 on the truncated basis.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "tpjcm/model.hpp"

namespace tpjcm {

struct IntegratorConfig {
  // Upper bound on the RK4 step; 0 picks the largest step the guard allows.
  double dt = 0.0;
  // Required: dt * (max|E_i - E_j| + 2 kappa n_max) <= stability_guard.
  double stability_guard = 0.05;
  // Re-run at dt/2 and require the max element change to stay below this.
  bool check_convergence = true;
  double convergence_tolerance = 1e-8;
  // Grid points between step-halving comparisons (the last point is always compared).
  std::size_t convergence_stride = 10;
  // Grid points between diagnostic eigensolves (the last point is always included).
  std::size_t eigen_stride = 20;
};

struct EvolutionReport {
  double step = 0.0;                // RK4 step bound actually used
  double max_trace_error = 0.0;     // max |Tr rho - 1| over the grid
  double max_hermiticity = 0.0;     // max deviation before re-symmetrization
  double min_eigenvalue = 1.0;      // over the sampled grid points
  std::optional<double> convergence_error;  // dt vs dt/2, when checked
};

// Callback receiving each grid state in order.
using EvolutionObserver = std::function<void(std::size_t index, const DensityMatrix& state)>;

// Element-wise generator of the master equation on a fixed basis.
class LindbladGenerator {
 public:
  LindbladGenerator(const Basis& basis, double kappa_over_omega,
                    Ordering ordering = Ordering::kNormal);

  // rhs = -i[H, rho] + kappa D[rho]
  void apply(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) const;
  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const;

  // max|E_i - E_j| + 2 kappa n_max
  double stiffness() const { return stiffness_; }
  std::size_t dim() const { return dim_; }

 private:
  std::size_t dim_;
  Eigen::ArrayXcd diagonal_;  // per flat (column-major) element
  Eigen::ArrayXd gain_;       // kappa * 2 sqrt((n_i+1)(n_j+1)), 0 without a source
  Eigen::Index offset_ = 0;   // flat distance from (i, j) to (i+1 photon, j+1 photon)
  double stiffness_ = 0.0;
};

Eigen::MatrixXcd rhs(const DensityMatrix& rho, const ModelParams& params);

// Step bound for the given configuration; throws NumericalGuardError when an
// explicit dt violates the stability guard.
double integrator_step(const ModelParams& params, const IntegratorConfig& config);

// Evolves initial_density(params) over params.t_grid(), streaming each state.
EvolutionReport evolve(const ModelParams& params, const IntegratorConfig& config,
                       const EvolutionObserver& observer);

// Convenience overload keeping every grid state in memory.
std::vector<DensityMatrix> evolve(const ModelParams& params, const IntegratorConfig& config = {},
                                  EvolutionReport* report = nullptr);

// The same evolution for a non-degenerate two-level atom with unit coupling.
ModelParams two_level_params(const ModelParams& params);
EvolutionReport two_level_baseline(const ModelParams& params, const IntegratorConfig& config,
                                   const EvolutionObserver& observer);
std::vector<DensityMatrix> two_level_baseline(const ModelParams& params,
                                              const IntegratorConfig& config = {},
                                              EvolutionReport* report = nullptr);

}  // namespace tpjcm

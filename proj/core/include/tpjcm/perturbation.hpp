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

// Power series of rho(t) in the damping rate, built order by order:
//
//   rho(t) = sum_n kappa^n rho_n(t),
//   d/dt rho_n = -i[H, rho_n] + D[rho_{n-1}],   rho_n(0) = 0 for n >= 1,
//
// where D is the damping superoperator with kappa stripped. Each rho_n is
// stored as a Taylor coefficient, so assembly is a polynomial in kappa.

#pragma once

#include <cstddef>
#include <vector>

#include "tpjcm/exppoly.hpp"
#include "tpjcm/model.hpp"

namespace tpjcm {

struct PerturbativeSolution {
  Basis basis;
  std::vector<ExpPolyMatrix> orders;  // orders[n] = coefficient of kappa^n

  int max_order() const { return static_cast<int>(orders.size()) - 1; }
};

struct PerturbationOptions {
  int max_order = 2;
  std::size_t term_budget = 10'000'000;
};

// rho_0(t): entry (i, j) of rho(0) carrying exp(-i (E_i - E_j) t).
ExpPolyMatrix free_evolution(const ModelParams& params, const Basis& basis);

// rho_n from rho_{n-1}: move D[rho_{n-1}] into the frame rotating with H,
// integrate from 0 to t, rotate back.
ExpPolyMatrix next_order(const ExpPolyMatrix& prev, const Basis& basis,
                         Ordering ordering = Ordering::kNormal,
                         std::size_t term_budget = PerturbationOptions{}.term_budget);

PerturbativeSolution solve_perturbative(const ModelParams& params,
                                        const PerturbationOptions& options = {});

// sum_n kappa^n rho_n(t), truncated at the solution's max order.
DensityMatrix assemble(const PerturbativeSolution& solution, double kappa_over_omega, double t);

// True while kappa*t <= 1, where the truncated series can be trusted.
bool within_validity_window(double kappa_over_omega, double t);

}  // namespace tpjcm

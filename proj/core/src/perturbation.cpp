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

#include "tpjcm/perturbation.hpp"

#include <stdexcept>

#include "tpjcm/parallel.hpp"

namespace tpjcm {

ExpPolyMatrix free_evolution(const ModelParams& params, const Basis& basis) {
  const Eigen::MatrixXcd rho0 = initial_density(params, basis).rho;
  const std::size_t dim = basis.dim();
  ExpPolyMatrix out(dim, 0);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      const cdouble v = rho0(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (v == cdouble(0.0)) continue;
      out.set(i, j, ExpPolyEntry({{v, 0, -(basis.energy(i) - basis.energy(j))}}));
    }
  }
  return out;
}

ExpPolyMatrix next_order(const ExpPolyMatrix& prev, const Basis& basis, Ordering ordering,
                         std::size_t term_budget) {
  if (prev.dim() != basis.dim()) {
    throw std::invalid_argument("next_order: matrix does not match basis");
  }
  const ExpPolyMatrix source = apply_dissipator_skeleton(prev, basis, ordering);
  const std::size_t dim = basis.dim();
  ExpPolyMatrix out(dim, prev.order() + 1);
  parallel_for(dim, [&](std::size_t i) {
    for (std::size_t j = i; j < dim; ++j) {
      const ExpPolyEntry& s = source(i, j);
      if (s.empty()) continue;
      const double w = basis.energy(i) - basis.energy(j);
      out.set(i, j, modulate(integrate_zero_to_t(modulate(s, w)), -w));
    }
  });
  enforce_term_budget(out, term_budget);
  return out;
}

PerturbativeSolution solve_perturbative(const ModelParams& params,
                                        const PerturbationOptions& options) {
  if (options.max_order < 0) throw std::invalid_argument("max_order must be >= 0");
  PerturbativeSolution sol{build_basis(params), {}};
  sol.orders.push_back(free_evolution(params, sol.basis));
  for (int n = 1; n <= options.max_order; ++n) {
    sol.orders.push_back(
        next_order(sol.orders.back(), sol.basis, params.ordering(), options.term_budget));
  }
  return sol;
}

DensityMatrix assemble(const PerturbativeSolution& solution, double kappa_over_omega, double t) {
  Eigen::MatrixXcd rho = eval(solution.orders.front(), t);
  double power = 1.0;
  for (std::size_t n = 1; n < solution.orders.size(); ++n) {
    power *= kappa_over_omega;
    if (power == 0.0) break;
    rho += power * eval(solution.orders[n], t);
  }
  return {std::move(rho), t, Method::kPerturbation};
}

bool within_validity_window(double kappa_over_omega, double t) {
  return kappa_over_omega * t <= 1.0;
}

}  // namespace tpjcm

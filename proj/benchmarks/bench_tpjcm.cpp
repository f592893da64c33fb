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

#include <benchmark/benchmark.h>

#include "tpjcm/closedform.hpp"
#include "tpjcm/exppoly.hpp"
#include "tpjcm/lindblad.hpp"
#include "tpjcm/model.hpp"
#include "tpjcm/perturbation.hpp"

namespace {

using namespace tpjcm;

ModelParams params(int n_max, double kappa = 0.02) {
  ModelConfig c;
  c.n_max = n_max;
  c.alpha2 = n_max >= 11 ? 0.5 : 0.01;
  c.kappa_over_omega = kappa;
  c.t_grid = {0.0, 1.0};
  return ModelParams(c);
}

void BM_GeneratorApply(benchmark::State& state) {
  const ModelParams p = params(static_cast<int>(state.range(0)));
  const Basis basis = build_basis(p);
  const LindbladGenerator gen(basis, p.kappa_over_omega());
  const Eigen::MatrixXcd rho = initial_density(p, basis).rho;
  Eigen::MatrixXcd out(rho.rows(), rho.cols());
  for (auto _ : state) {
    gen.apply(rho, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * rho.size());
}
BENCHMARK(BM_GeneratorApply)->Arg(6)->Arg(16)->Arg(20);

void BM_EvolveUnitTime(benchmark::State& state) {
  const ModelParams p = params(static_cast<int>(state.range(0)));
  IntegratorConfig ic;
  ic.check_convergence = false;
  for (auto _ : state) {
    const EvolutionReport r = evolve(p, ic, [](std::size_t, const DensityMatrix& s) {
      benchmark::DoNotOptimize(s.rho.data());
    });
    benchmark::DoNotOptimize(r.step);
  }
}
BENCHMARK(BM_EvolveUnitTime)->Arg(6)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_NextOrder(benchmark::State& state) {
  const ModelParams p = params(static_cast<int>(state.range(0)));
  const Basis basis = build_basis(p);
  const ExpPolyMatrix rho0 = free_evolution(p, basis);
  const ExpPolyMatrix rho1 = next_order(rho0, basis);
  for (auto _ : state) {
    const ExpPolyMatrix rho2 = next_order(rho1, basis);
    benchmark::DoNotOptimize(rho2.total_terms());
  }
}
BENCHMARK(BM_NextOrder)->Arg(6)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_EvalOrder2(benchmark::State& state) {
  const ModelParams p = params(static_cast<int>(state.range(0)));
  const PerturbativeSolution sol = solve_perturbative(p);
  double t = 0.0;
  for (auto _ : state) {
    const DensityMatrix rho = assemble(sol, p.kappa_over_omega(), t);
    benchmark::DoNotOptimize(rho.rho.data());
    t += 0.01;
  }
}
BENCHMARK(BM_EvalOrder2)->Arg(6)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_ClosedFormOrders(benchmark::State& state) {
  const ModelParams p = params(static_cast<int>(state.range(0)));
  const Basis basis = build_basis(p);
  double t = 0.0;
  for (auto _ : state) {
    const ClosedFormOrders o = rho_closed_orders(p, basis, t);
    benchmark::DoNotOptimize(o.orders[2].data());
    t += 0.01;
  }
}
BENCHMARK(BM_ClosedFormOrders)->Arg(6)->Arg(16)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();

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

#include "tpjcm/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <map>
#include <string>

#include "tpjcm/errors.hpp"

namespace tpjcm {

namespace {

using cdouble = std::complex<double>;

std::string format_g(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

struct PassResult {
  double max_hermiticity = 0.0;
};

// One fixed-step RK4 sweep over the grid. `emit` receives the (re-symmetrized)
// state at every grid point. The pre-symmetrization deviation is sampled on
// the last substep of each grid interval.
template <typename Emit>
PassResult integrate_pass(const LindbladGenerator& gen, Eigen::MatrixXcd rho,
                          const std::vector<double>& grid, double step, Emit&& emit) {
  const auto dim = static_cast<Eigen::Index>(gen.dim());
  Eigen::MatrixXcd k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim), tmp(dim, dim);
  const Eigen::Index n2 = dim * dim;
  auto flat = [n2](Eigen::MatrixXcd& m) { return Eigen::Map<Eigen::ArrayXcd>(m.data(), n2); };
  auto r = flat(rho);
  auto a1 = flat(k1), a2 = flat(k2), a3 = flat(k3), a4 = flat(k4), w = flat(tmp);

  PassResult result;
  double t = 0.0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double span = grid[g] - t;
    if (span > 0.0) {
      const long substeps = std::max(1L, static_cast<long>(std::ceil(span / step - 1e-12)));
      const double h = span / static_cast<double>(substeps);
      for (long s = 0; s < substeps; ++s) {
        gen.apply(rho, k1);
        w = r + (0.5 * h) * a1;
        gen.apply(tmp, k2);
        w = r + (0.5 * h) * a2;
        gen.apply(tmp, k3);
        w = r + h * a3;
        gen.apply(tmp, k4);
        r += (h / 6.0) * (a1 + 2.0 * (a2 + a3) + a4);

        tmp = rho.adjoint();
        if (s + 1 == substeps) {
          result.max_hermiticity =
              std::max(result.max_hermiticity, (rho - tmp).cwiseAbs().maxCoeff());
        }
        rho = 0.5 * (rho + tmp);
      }
      t = grid[g];
    }
    emit(g, rho);
  }
  return result;
}

}  // namespace

LindbladGenerator::LindbladGenerator(const Basis& basis, double kappa_over_omega,
                                     Ordering ordering)
    : dim_(basis.dim()) {
  const auto n2 = static_cast<Eigen::Index>(dim_ * dim_);
  diagonal_.resize(n2);
  gain_ = Eigen::ArrayXd::Zero(n2);
  offset_ = static_cast<Eigen::Index>(basis.atomic_dim() * (dim_ + 1));
  const double shift = ordering == Ordering::kNormal ? 0.0 : 2.0;

  double e_min = basis.energy(0);
  double e_max = basis.energy(0);
  for (double e : basis.energies()) {
    e_min = std::min(e_min, e);
    e_max = std::max(e_max, e);
  }
  stiffness_ = (e_max - e_min) + 2.0 * kappa_over_omega * basis.n_max();

  for (std::size_t j = 0; j < dim_; ++j) {
    const int nj = basis.photons(j);
    const auto rj = basis.raised(j);
    for (std::size_t i = 0; i < dim_; ++i) {
      const int ni = basis.photons(i);
      const auto e = static_cast<Eigen::Index>(i + j * dim_);
      diagonal_[e] = cdouble(-kappa_over_omega * (ni + nj + shift),
                             -(basis.energy(i) - basis.energy(j)));
      if (const auto ri = basis.raised(i); ri && rj) {
        gain_[e] = kappa_over_omega * 2.0 * std::sqrt((ni + 1.0) * (nj + 1.0));
      }
    }
  }
}

void LindbladGenerator::apply(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) const {
  const auto n2 = static_cast<Eigen::Index>(dim_ * dim_);
  const Eigen::Map<const Eigen::ArrayXcd> in(rho.data(), n2);
  Eigen::Map<Eigen::ArrayXcd> o(out.data(), n2);
  o = diagonal_ * in;
  // The gain source of flat element e is always e + offset_.
  const Eigen::Index tail = n2 - offset_;
  if (tail > 0) o.head(tail) += gain_.head(tail) * in.segment(offset_, tail);
}

Eigen::MatrixXcd LindbladGenerator::apply(const Eigen::MatrixXcd& rho) const {
  Eigen::MatrixXcd out(rho.rows(), rho.cols());
  apply(rho, out);
  return out;
}

Eigen::MatrixXcd rhs(const DensityMatrix& rho, const ModelParams& params) {
  const Basis basis = build_basis(params);
  return LindbladGenerator(basis, params.kappa_over_omega(), params.ordering()).apply(rho.rho);
}

double integrator_step(const ModelParams& params, const IntegratorConfig& config) {
  const Basis basis = build_basis(params);
  const LindbladGenerator gen(basis, params.kappa_over_omega(), params.ordering());
  const double stiffness = gen.stiffness();
  const double bound = stiffness > 0.0 ? config.stability_guard / stiffness : 0.0;

  if (config.dt > 0.0) {
    if (stiffness > 0.0 && config.dt * stiffness > config.stability_guard) {
      throw NumericalGuardError(
          "integrator step dt = " + format_g(config.dt) + " violates the stability guard (dt * " +
              format_g(stiffness) + " > " + format_g(config.stability_guard) + ")",
          "use --step <= " + format_g(bound));
    }
    return config.dt;
  }
  if (bound > 0.0) return bound;
  // No dynamics at all: any step is exact, so one step per grid interval.
  return std::numeric_limits<double>::infinity();
}

EvolutionReport evolve(const ModelParams& params, const IntegratorConfig& config,
                       const EvolutionObserver& observer) {
  const Basis basis = build_basis(params);
  const LindbladGenerator gen(basis, params.kappa_over_omega(), params.ordering());
  const double step = integrator_step(params, config);
  const std::vector<double>& grid = params.t_grid();
  const Eigen::MatrixXcd rho0 = initial_density(params, basis).rho;

  auto sampled = [&](std::size_t g, std::size_t stride) {
    return g + 1 == grid.size() || (stride > 0 && g % stride == 0);
  };

  // The half-step reference run proceeds concurrently and keeps only the
  // states it will be compared on.
  std::future<std::map<std::size_t, Eigen::MatrixXcd>> reference;
  if (config.check_convergence) {
    reference = std::async(std::launch::async, [&] {
      std::map<std::size_t, Eigen::MatrixXcd> kept;
      integrate_pass(gen, rho0, grid, 0.5 * step, [&](std::size_t g, const Eigen::MatrixXcd& r) {
        if (sampled(g, config.convergence_stride)) kept.emplace(g, r);
      });
      return kept;
    });
  }

  EvolutionReport report;
  report.step = step;
  std::map<std::size_t, Eigen::MatrixXcd> coarse;
  const PassResult pass =
      integrate_pass(gen, rho0, grid, step, [&](std::size_t g, const Eigen::MatrixXcd& r) {
        report.max_trace_error = std::max(report.max_trace_error, std::abs(r.trace().real() - 1.0));
        if (sampled(g, config.eigen_stride)) {
          const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(r, Eigen::EigenvaluesOnly);
          report.min_eigenvalue = std::min(report.min_eigenvalue, es.eigenvalues().minCoeff());
        }
        if (config.check_convergence && sampled(g, config.convergence_stride)) coarse.emplace(g, r);
        if (observer) observer(g, DensityMatrix{r, grid[g], Method::kLindblad});
      });
  report.max_hermiticity = pass.max_hermiticity;

  if (config.check_convergence) {
    const auto fine = reference.get();
    double worst = 0.0;
    for (const auto& [g, r] : coarse) {
      worst = std::max(worst, (r - fine.at(g)).cwiseAbs().maxCoeff());
    }
    report.convergence_error = worst;
    if (!(worst <= config.convergence_tolerance)) {
      throw NumericalGuardError("step-halving check failed: max element change " +
                                    format_g(worst) + " exceeds " +
                                    format_g(config.convergence_tolerance),
                                "retry with --step " + format_g(0.25 * step));
    }
  }
  return report;
}

std::vector<DensityMatrix> evolve(const ModelParams& params, const IntegratorConfig& config,
                                  EvolutionReport* report) {
  std::vector<DensityMatrix> states;
  states.reserve(params.t_grid().size());
  const EvolutionReport r =
      evolve(params, config, [&](std::size_t, const DensityMatrix& s) { states.push_back(s); });
  if (report) *report = r;
  return states;
}

ModelParams two_level_params(const ModelParams& params) {
  ModelConfig cfg = params.config();
  cfg.atom = AtomModel::kTwoLevel;
  cfg.amp_e = params.amp_e();
  cfg.amp_f = params.amp_f();
  cfg.n_max = params.n_max();
  cfg.t_grid = params.t_grid();
  return ModelParams(cfg);
}

EvolutionReport two_level_baseline(const ModelParams& params, const IntegratorConfig& config,
                                   const EvolutionObserver& observer) {
  return evolve(two_level_params(params), config, observer);
}

std::vector<DensityMatrix> two_level_baseline(const ModelParams& params,
                                              const IntegratorConfig& config,
                                              EvolutionReport* report) {
  return evolve(two_level_params(params), config, report);
}

}  // namespace tpjcm

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

#include "tpjcm/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace tpjcm {

std::string_view to_string(Subsystem subsystem) {
  switch (subsystem) {
    case Subsystem::kSystem: return "system";
    case Subsystem::kAtom: return "atom";
    case Subsystem::kField: return "field";
  }
  return "unknown";
}

Eigen::MatrixXcd partial_trace_field(const Eigen::MatrixXcd& rho, const Basis& basis) {
  const auto a = static_cast<Eigen::Index>(basis.atomic_dim());
  const auto nf = static_cast<Eigen::Index>(basis.field_dim());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(a, a);
  for (Eigen::Index n = 0; n < nf; ++n) out += rho.block(n * a, n * a, a, a);
  return out;
}

DensityMatrix partial_trace_field(const DensityMatrix& rho, const Basis& basis) {
  return {partial_trace_field(rho.rho, basis), rho.omega_t, rho.method};
}

Eigen::MatrixXcd partial_trace_atom(const Eigen::MatrixXcd& rho, const Basis& basis) {
  const auto a = static_cast<Eigen::Index>(basis.atomic_dim());
  const auto nf = static_cast<Eigen::Index>(basis.field_dim());
  Eigen::MatrixXcd out(nf, nf);
  for (Eigen::Index n = 0; n < nf; ++n) {
    for (Eigen::Index np = 0; np < nf; ++np) {
      out(n, np) = rho.block(n * a, np * a, a, a).trace();
    }
  }
  return out;
}

DensityMatrix partial_trace_atom(const DensityMatrix& rho, const Basis& basis) {
  return {partial_trace_atom(rho.rho, basis), rho.omega_t, rho.method};
}

double linear_entropy(const Eigen::MatrixXcd& rho) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("linear_entropy: matrix not square");
  const double dev = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (dev > 1e-9) {
    throw std::invalid_argument("linear_entropy: matrix not Hermitian (deviation " +
                                std::to_string(dev) + ")");
  }
  // For Hermitian rho, Tr(rho^2) = sum_ij |rho_ij|^2.
  return 1.0 - rho.squaredNorm();
}

double linear_entropy(const DensityMatrix& rho) { return linear_entropy(rho.rho); }

Eigen::MatrixXcd reduce(const Eigen::MatrixXcd& rho, const Basis& basis, Subsystem subsystem) {
  switch (subsystem) {
    case Subsystem::kSystem: return rho;
    case Subsystem::kAtom: return partial_trace_field(rho, basis);
    case Subsystem::kField: return partial_trace_atom(rho, basis);
  }
  return rho;
}

std::size_t subsystem_dim(const Basis& basis, Subsystem subsystem) {
  switch (subsystem) {
    case Subsystem::kSystem: return basis.dim();
    case Subsystem::kAtom: return basis.atomic_dim();
    case Subsystem::kField: return basis.field_dim();
  }
  return basis.dim();
}

std::size_t EntropySeries::out_of_bounds(double tolerance) const {
  const double upper = dimension > 0 ? 1.0 - 1.0 / static_cast<double>(dimension) : 1.0;
  std::size_t count = 0;
  for (double v : s) {
    if (v < -tolerance || v > upper + tolerance) ++count;
  }
  return count;
}

namespace {

template <typename Compare>
std::vector<Extremum> interior_extrema(const EntropySeries& series, Compare better) {
  std::vector<Extremum> out;
  const auto& s = series.s;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (!better(s[i], s[i - 1]) || better(s[i + 1], s[i])) continue;
    // Plateaus: accept the first sample of a flat top only if it then falls.
    std::size_t j = i;
    while (j + 1 < s.size() && s[j + 1] == s[i]) ++j;
    if (j + 1 < s.size() && better(s[i], s[j + 1])) out.push_back({i, series.t[i], s[i]});
    i = j;
  }
  return out;
}

}  // namespace

std::vector<Extremum> local_maxima(const EntropySeries& series) {
  return interior_extrema(series, [](double a, double b) { return a > b; });
}

std::vector<Extremum> local_minima(const EntropySeries& series) {
  return interior_extrema(series, [](double a, double b) { return a < b; });
}

std::optional<Extremum> first_local_maximum(const EntropySeries& series) {
  auto m = local_maxima(series);
  if (m.empty()) return std::nullopt;
  return m.front();
}

std::optional<Extremum> first_local_minimum(const EntropySeries& series) {
  auto m = local_minima(series);
  if (m.empty()) return std::nullopt;
  return m.front();
}

namespace {

std::size_t window_start(const EntropySeries& series, double fraction) {
  if (series.t.empty()) throw std::invalid_argument("empty entropy series");
  const double t0 = series.t.front();
  const double t1 = series.t.back();
  const double cut = t1 - fraction * (t1 - t0);
  std::size_t i = 0;
  while (i < series.t.size() && series.t[i] < cut - 1e-12) ++i;
  return i;
}

}  // namespace

double late_window_mean(const EntropySeries& series, double fraction) {
  const std::size_t start = window_start(series, fraction);
  double sum = 0.0;
  for (std::size_t i = start; i < series.s.size(); ++i) sum += series.s[i];
  return sum / static_cast<double>(series.s.size() - start);
}

double extremum_grid_noise(const EntropySeries& series, std::size_t index) {
  const auto& s = series.s;
  if (index == 0 || index + 1 >= s.size()) return 0.0;
  return std::abs(s[index - 1] - 2.0 * s[index] + s[index + 1]) / 8.0;
}

double late_window_grid_noise(const EntropySeries& series, double fraction) {
  const std::size_t start = window_start(series, fraction);
  double all = 0.0;
  double half = 0.0;
  std::size_t n_all = 0;
  std::size_t n_half = 0;
  for (std::size_t i = start; i < series.s.size(); ++i) {
    all += series.s[i];
    ++n_all;
    if ((i - start) % 2 == 0) {
      half += series.s[i];
      ++n_half;
    }
  }
  return std::abs(all / static_cast<double>(n_all) - half / static_cast<double>(n_half));
}

}  // namespace tpjcm

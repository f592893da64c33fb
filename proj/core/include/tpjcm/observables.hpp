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

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "tpjcm/model.hpp"

namespace tpjcm {

enum class Subsystem { kSystem, kAtom, kField };

std::string_view to_string(Subsystem subsystem);

// Tr_field rho: (atomic_dim x atomic_dim).
Eigen::MatrixXcd partial_trace_field(const Eigen::MatrixXcd& rho, const Basis& basis);
DensityMatrix partial_trace_field(const DensityMatrix& rho, const Basis& basis);
// Tr_atom rho: (n_max+1 x n_max+1).
Eigen::MatrixXcd partial_trace_atom(const Eigen::MatrixXcd& rho, const Basis& basis);
DensityMatrix partial_trace_atom(const DensityMatrix& rho, const Basis& basis);

// S = 1 - Tr(rho^2). Throws std::invalid_argument for a non-square or
// non-Hermitian (> 1e-9) matrix.
double linear_entropy(const Eigen::MatrixXcd& rho);
double linear_entropy(const DensityMatrix& rho);

Eigen::MatrixXcd reduce(const Eigen::MatrixXcd& rho, const Basis& basis, Subsystem subsystem);
std::size_t subsystem_dim(const Basis& basis, Subsystem subsystem);

struct EntropySeries {
  std::vector<double> t;
  std::vector<double> s;
  Subsystem subsystem = Subsystem::kAtom;
  Method method = Method::kLindblad;
  std::string fingerprint;
  std::string preset;
  std::size_t dimension = 0;  // of the reduced space, for the 1 - 1/d bound

  // Samples outside [0, 1 - 1/d] beyond `tolerance`. Perturbative output may
  // legitimately show these; they are reported, never clamped.
  std::size_t out_of_bounds(double tolerance = 1e-9) const;
};

// Features used to compare curves.
struct Extremum {
  std::size_t index;
  double t;
  double s;
};

// Interior strict local maxima / minima, in time order.
std::vector<Extremum> local_maxima(const EntropySeries& series);
std::vector<Extremum> local_minima(const EntropySeries& series);
std::optional<Extremum> first_local_maximum(const EntropySeries& series);
std::optional<Extremum> first_local_minimum(const EntropySeries& series);

// Mean of S over the final `fraction` of the time window.
double late_window_mean(const EntropySeries& series, double fraction = 1.0 / 6.0);

// Sampling uncertainty of an extremum value, |S[i-1] - 2 S[i] + S[i+1]| / 8:
// the largest offset between a parabola's sampled and true peak.
double extremum_grid_noise(const EntropySeries& series, std::size_t index);
// |mean(all samples in window) - mean(every other sample in window)|.
double late_window_grid_noise(const EntropySeries& series, double fraction = 1.0 / 6.0);

}  // namespace tpjcm

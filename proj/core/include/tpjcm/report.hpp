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

// CSV output of entropy curves and the cross-method discrepancy report.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tpjcm/lindblad.hpp"
#include "tpjcm/model.hpp"
#include "tpjcm/observables.hpp"

namespace tpjcm {

// Header: omega_t,S,subsystem,method,preset. Reals use 17 significant digits.
void write_csv(std::ostream& out, const std::vector<EntropySeries>& series);
// Rows are grouped into series by (subsystem, method, preset) in order of
// first appearance. Throws ConfigError on malformed input.
std::vector<EntropySeries> read_csv(std::istream& in);

Subsystem parse_subsystem(std::string_view text);
Method parse_method_tag(std::string_view text);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// max over grid points with t <= t_max of max_ij |rho_pert - rho_oracle|.
double perturbative_remainder(const ModelParams& params, const IntegratorConfig& integrator,
                              double t_max, EvolutionReport* report = nullptr);

struct PathDistance {
  double t = 0.0;
  double closed_vs_pert = 0.0;
  double closed_vs_lindblad = 0.0;
  double pert_vs_lindblad = 0.0;
};

struct ScalingRow {
  double kappa = 0.0;
  double max_distance = 0.0;  // perturbation vs lindblad over the grid
};

// One density-matrix element whose closed-form kappa^order coefficient differs
// from the perturbative engine's.
struct LedgerEntry {
  int order = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  BasisIndex row_state;
  BasisIndex col_state;
  double t = 0.0;  // sample with the largest difference
  std::complex<double> closed;
  std::complex<double> engine;
  double difference = 0.0;
};

struct CompareOptions {
  // Kappa values for the scaling table; empty: kappa, kappa/2, kappa/4.
  std::vector<double> scaling_kappas;
  // Samples for the coefficient ledger; empty: five points spread over the grid.
  std::vector<double> ledger_times;
  // An element is listed when |closed - engine| > tolerance * (1 + |engine|).
  double ledger_tolerance = 1e-8;
};

struct CompareReport {
  std::string fingerprint;
  std::vector<std::string> notes;
  std::vector<PathDistance> distances;
  std::vector<ScalingRow> scaling;
  std::optional<double> scaling_slope;
  bool scaling_monotone = true;
  std::vector<double> ledger_times;
  std::array<std::vector<LedgerEntry>, 3> ledger;  // by kappa order
  long regularized_terms = 0;
  EvolutionReport oracle;

  double max_distance(double PathDistance::* field) const;
};

CompareReport compare(const ModelParams& params, const IntegratorConfig& integrator,
                      const CompareOptions& options = {});

std::string report_json(const CompareReport& report);
std::string report_text(const CompareReport& report);

}  // namespace tpjcm

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

#include "tpjcm/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "tpjcm/closedform.hpp"
#include "tpjcm/errors.hpp"
#include "tpjcm/perturbation.hpp"

namespace tpjcm {

namespace {

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_short(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> cells;
  while (true) {
    const auto comma = line.find(',');
    cells.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line = line.substr(comma + 1);
  }
  return cells;
}

double parse_real(std::string_view text, std::size_t line_no) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("csv line " + std::to_string(line_no) + ": bad number '" +
                      std::string(text) + "'");
  }
  return v;
}

std::string state_label(const BasisIndex& s) {
  return "|" + std::to_string(s.n) + "," + std::string(to_string(s.level)) + "," + s.m.str() + ">";
}

std::string block_label(const LedgerEntry& e) {
  return std::string(to_string(e.row_state.level)) + std::string(to_string(e.col_state.level));
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<EntropySeries>& series) {
  out << "omega_t,S,subsystem,method,preset\n";
  for (const auto& s : series) {
    const std::string tail = "," + std::string(to_string(s.subsystem)) + "," +
                             std::string(to_string(s.method)) + "," + s.preset + "\n";
    for (std::size_t i = 0; i < s.t.size(); ++i) {
      out << format_real(s.t[i]) << ',' << format_real(s.s[i]) << tail;
    }
  }
}

Subsystem parse_subsystem(std::string_view text) {
  if (text == "system") return Subsystem::kSystem;
  if (text == "atom") return Subsystem::kAtom;
  if (text == "field") return Subsystem::kField;
  throw ConfigError("unknown subsystem '" + std::string(text) + "'");
}

Method parse_method_tag(std::string_view text) {
  for (Method m : {Method::kInitial, Method::kClosedForm, Method::kPerturbation, Method::kLindblad}) {
    if (text == to_string(m)) return m;
  }
  throw ConfigError("unknown method '" + std::string(text) + "'");
}

std::vector<EntropySeries> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "omega_t,S,subsystem,method,preset") {
    throw ConfigError("csv: missing or unexpected header");
  }
  std::vector<EntropySeries> out;
  std::map<std::tuple<Subsystem, Method, std::string>, std::size_t> slot;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 5) {
      throw ConfigError("csv line " + std::to_string(line_no) + ": expected 5 columns");
    }
    const Subsystem sub = parse_subsystem(cells[2]);
    const Method method = parse_method_tag(cells[3]);
    const std::string preset(cells[4]);
    auto [it, inserted] = slot.try_emplace({sub, method, preset}, out.size());
    if (inserted) {
      EntropySeries s;
      s.subsystem = sub;
      s.method = method;
      s.preset = preset;
      out.push_back(std::move(s));
    }
    auto& s = out[it->second];
    s.t.push_back(parse_real(cells[0], line_no));
    s.s.push_back(parse_real(cells[1], line_no));
  }
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("loglog_slope: need at least two matching samples");
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

double perturbative_remainder(const ModelParams& params, const IntegratorConfig& integrator,
                              double t_max, EvolutionReport* report) {
  const PerturbativeSolution sol = solve_perturbative(params);
  const double kappa = params.kappa_over_omega();
  double worst = 0.0;
  const EvolutionReport r = evolve(params, integrator, [&](std::size_t, const DensityMatrix& s) {
    if (s.omega_t > t_max + 1e-12) return;
    worst = std::max(worst, (assemble(sol, kappa, s.omega_t).rho - s.rho).cwiseAbs().maxCoeff());
  });
  if (report) *report = r;
  return worst;
}

double CompareReport::max_distance(double PathDistance::* field) const {
  double worst = 0.0;
  for (const auto& d : distances) worst = std::max(worst, d.*field);
  return worst;
}

CompareReport compare(const ModelParams& params, const IntegratorConfig& integrator,
                      const CompareOptions& options) {
  const Basis basis = build_basis(params);
  const std::vector<double>& grid = params.t_grid();
  const double kappa = params.kappa_over_omega();

  CompareReport rep;
  rep.fingerprint = params.fingerprint();
  if (params.amp_e() * params.amp_e() < 0.999999 && !params.config().amp_f) {
    rep.notes.push_back("f completed to sqrt(1 - e^2)");
  }

  const PerturbativeSolution sol = solve_perturbative(params);
  rep.distances.reserve(grid.size());
  rep.oracle = evolve(params, integrator, [&](std::size_t, const DensityMatrix& s) {
    const double t = s.omega_t;
    const ClosedFormOrders o = rho_closed_orders(params, basis, t);
    const Eigen::MatrixXcd closed = o.orders[0] + kappa * (o.orders[1] + kappa * o.orders[2]);
    const Eigen::MatrixXcd pert = assemble(sol, kappa, t).rho;
    rep.regularized_terms += o.regularized_terms;
    rep.distances.push_back({t, (closed - pert).cwiseAbs().maxCoeff(),
                             (closed - s.rho).cwiseAbs().maxCoeff(),
                             (pert - s.rho).cwiseAbs().maxCoeff()});
  });

  // Scaling of the perturbative remainder with kappa.
  std::vector<double> kappas = options.scaling_kappas;
  if (kappas.empty() && kappa > 0.0) kappas = {kappa, 0.5 * kappa, 0.25 * kappa};
  if (kappas.empty()) rep.notes.push_back("kappa = 0: scaling table skipped");
  for (double k : kappas) {
    ModelConfig c = params.config();
    c.kappa_over_omega = k;
    c.n_max = params.n_max();
    c.t_grid = grid;
    rep.scaling.push_back({k, perturbative_remainder(ModelParams(c), integrator, grid.back())});
  }
  std::sort(rep.scaling.begin(), rep.scaling.end(),
            [](const ScalingRow& a, const ScalingRow& b) { return a.kappa < b.kappa; });
  for (std::size_t i = 1; i < rep.scaling.size(); ++i) {
    if (!(rep.scaling[i].max_distance > rep.scaling[i - 1].max_distance)) {
      rep.scaling_monotone = false;
    }
  }
  if (rep.scaling.size() >= 2) {
    std::vector<double> x, y;
    for (const auto& row : rep.scaling) {
      if (row.max_distance > 0.0) {
        x.push_back(row.kappa);
        y.push_back(row.max_distance);
      }
    }
    if (x.size() >= 2) rep.scaling_slope = loglog_slope(x, y);
  }

  // Order-by-order coefficient ledger.
  rep.ledger_times = options.ledger_times;
  if (rep.ledger_times.empty()) {
    for (int q = 1; q <= 5; ++q) {
      rep.ledger_times.push_back(grid[(grid.size() - 1) * static_cast<std::size_t>(q) / 5]);
    }
  }
  const std::size_t dim = basis.dim();
  for (int order = 0; order <= 2; ++order) {
    std::map<std::pair<std::size_t, std::size_t>, LedgerEntry> worst;
    for (double t : rep.ledger_times) {
      const Eigen::MatrixXcd closed = rho_closed_orders(params, basis, t).orders[order];
      const Eigen::MatrixXcd engine = order <= sol.max_order()
                                          ? eval(sol.orders[order], t)
                                          : Eigen::MatrixXcd::Zero(dim, dim).eval();
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
          const auto ii = static_cast<Eigen::Index>(i);
          const auto jj = static_cast<Eigen::Index>(j);
          const double diff = std::abs(closed(ii, jj) - engine(ii, jj));
          if (!(diff > options.ledger_tolerance * (1.0 + std::abs(engine(ii, jj))))) continue;
          auto& e = worst[{i, j}];
          if (diff > e.difference) {
            e = {order, i, j, basis.state(i), basis.state(j), t, closed(ii, jj), engine(ii, jj), diff};
          }
        }
      }
    }
    for (auto& [key, e] : worst) rep.ledger[order].push_back(e);
  }
  return rep;
}

std::string report_json(const CompareReport& rep) {
  using nlohmann::json;
  json j;
  j["fingerprint"] = rep.fingerprint;
  j["notes"] = rep.notes;
  j["oracle"] = {{"step", rep.oracle.step},
                 {"max_trace_error", rep.oracle.max_trace_error},
                 {"max_hermiticity", rep.oracle.max_hermiticity},
                 {"min_eigenvalue", rep.oracle.min_eigenvalue},
                 {"convergence_error", rep.oracle.convergence_error
                                           ? json(*rep.oracle.convergence_error)
                                           : json(nullptr)}};
  json d = json::array();
  for (const auto& p : rep.distances) {
    d.push_back({{"t", p.t},
                 {"closed_vs_pert", p.closed_vs_pert},
                 {"closed_vs_lindblad", p.closed_vs_lindblad},
                 {"pert_vs_lindblad", p.pert_vs_lindblad}});
  }
  j["distances"] = d;
  json s = json::array();
  for (const auto& row : rep.scaling) s.push_back({{"kappa", row.kappa}, {"max_distance", row.max_distance}});
  j["scaling"] = {{"rows", s},
                  {"slope", rep.scaling_slope ? json(*rep.scaling_slope) : json(nullptr)},
                  {"monotone", rep.scaling_monotone}};
  json ledger = json::object();
  for (int order = 0; order <= 2; ++order) {
    json entries = json::array();
    for (const auto& e : rep.ledger[order]) {
      entries.push_back({{"row", e.row},
                         {"col", e.col},
                         {"row_state", state_label(e.row_state)},
                         {"col_state", state_label(e.col_state)},
                         {"block", block_label(e)},
                         {"t", e.t},
                         {"closed", {e.closed.real(), e.closed.imag()}},
                         {"engine", {e.engine.real(), e.engine.imag()}},
                         {"difference", e.difference}});
    }
    ledger["order" + std::to_string(order)] = entries;
  }
  j["ledger"] = {{"times", rep.ledger_times}, {"entries", ledger}};
  j["regularized_terms"] = rep.regularized_terms;
  return j.dump(2);
}

std::string report_text(const CompareReport& rep) {
  std::ostringstream out;
  out << "# tpjcm compare\n";
  out << "parameters: " << rep.fingerprint << "\n";
  for (const auto& n : rep.notes) out << "note: " << n << "\n";
  out << "\nmax element distance over the grid\n";
  out << "  closedform vs perturbation: " << format_short(rep.max_distance(&PathDistance::closed_vs_pert)) << "\n";
  out << "  closedform vs lindblad:     " << format_short(rep.max_distance(&PathDistance::closed_vs_lindblad)) << "\n";
  out << "  perturbation vs lindblad:   " << format_short(rep.max_distance(&PathDistance::pert_vs_lindblad)) << "\n";
  out << "\noracle: step " << format_short(rep.oracle.step) << ", trace error "
      << format_short(rep.oracle.max_trace_error) << ", hermiticity "
      << format_short(rep.oracle.max_hermiticity) << ", min eigenvalue "
      << format_short(rep.oracle.min_eigenvalue);
  if (rep.oracle.convergence_error) out << ", dt-halving " << format_short(*rep.oracle.convergence_error);
  out << "\n";
  if (!rep.scaling.empty()) {
    out << "\nperturbative remainder vs kappa\n";
    for (const auto& row : rep.scaling) {
      out << "  kappa " << format_short(row.kappa) << "  " << format_short(row.max_distance) << "\n";
    }
    if (rep.scaling_slope) out << "  log-log slope " << format_short(*rep.scaling_slope) << "\n";
    out << "  monotone in kappa: " << (rep.scaling_monotone ? "yes" : "no") << "\n";
  }
  out << "\nclosed-form vs engine coefficient ledger (" << rep.ledger_times.size() << " samples)\n";
  for (int order = 0; order <= 2; ++order) {
    const auto& entries = rep.ledger[order];
    std::map<std::string, std::size_t> per_block;
    double worst = 0.0;
    for (const auto& e : entries) {
      ++per_block[block_label(e)];
      worst = std::max(worst, e.difference);
    }
    out << "  order " << order << ": " << entries.size() << " elements";
    if (!entries.empty()) {
      out << " (";
      bool first = true;
      for (const auto& [block, count] : per_block) {
        out << (first ? "" : ", ") << block << " " << count;
        first = false;
      }
      out << "), worst " << format_short(worst);
    }
    out << "\n";
  }
  out << "  regularized singular terms: " << rep.regularized_terms << "\n";
  return out.str();
}

}  // namespace tpjcm

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

#include "tpjcm/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "tpjcm/errors.hpp"

namespace tpjcm {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("invalid value '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

void assign(RunSettings& s, std::string_view key, std::string_view value) {
  if (key == "nmax") {
    s.nmax = parse_number<int>(key, value);
  } else if (key == "kappa") {
    s.kappa = parse_number<double>(key, value);
  } else if (key == "alpha2") {
    s.alpha2 = parse_number<double>(key, value);
  } else if (key == "e") {
    s.e = parse_number<double>(key, value);
  } else if (key == "jb" || key == "jc") {
    HalfInt j;
    try {
      j = HalfInt::parse(value);
    } catch (const std::exception&) {
      throw ConfigError("invalid value '" + std::string(value) + "' for " + std::string(key));
    }
    (key == "jb" ? s.jb : s.jc) = j;
  } else if (key == "tmax") {
    s.tmax = parse_number<double>(key, value);
  } else if (key == "dt") {
    s.dt = parse_number<double>(key, value);
  } else if (key == "step") {
    s.step = parse_number<double>(key, value);
  } else if (key == "method") {
    s.method = parse_method(value);
  } else if (key == "out") {
    s.out = std::string(value);
  } else if (key == "preset") {
    s.preset = std::string(value);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

template <typename T>
void take(std::optional<T>& dst, const std::optional<T>& src) {
  if (src) dst = src;
}

}  // namespace

std::string_view to_string(MethodSelector selector) {
  switch (selector) {
    case MethodSelector::kClosedForm: return "closedform";
    case MethodSelector::kPerturbation: return "perturbation";
    case MethodSelector::kLindblad: return "lindblad";
    case MethodSelector::kAll: return "all";
  }
  return "unknown";
}

MethodSelector parse_method(std::string_view text) {
  if (text == "closed" || text == "closedform") return MethodSelector::kClosedForm;
  if (text == "pert" || text == "perturbation") return MethodSelector::kPerturbation;
  if (text == "lindblad") return MethodSelector::kLindblad;
  if (text == "all") return MethodSelector::kAll;
  throw ConfigError("unknown method '" + std::string(text) + "' (closed|pert|lindblad|all)");
}

RunSettings& RunSettings::merge(const RunSettings& o) {
  take(nmax, o.nmax);
  take(kappa, o.kappa);
  take(alpha2, o.alpha2);
  take(e, o.e);
  take(jb, o.jb);
  take(jc, o.jc);
  take(tmax, o.tmax);
  take(dt, o.dt);
  take(step, o.step);
  take(method, o.method);
  take(out, o.out);
  take(preset, o.preset);
  return *this;
}

RunSettings parse_config_text(std::string_view text) {
  RunSettings settings;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
    }
    try {
      assign(settings, key, value);
    } catch (const ConfigError& ex) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + ex.what());
    }
  }
  return settings;
}

RunSettings load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

ModelConfig to_model_config(const RunSettings& s, ModelConfig base) {
  if (s.nmax) base.n_max = *s.nmax;
  if (s.kappa) base.kappa_over_omega = *s.kappa;
  if (s.alpha2) base.alpha2 = *s.alpha2;
  if (s.e) {
    base.amp_e = *s.e;
    base.amp_f.reset();
  }
  if (s.jb) base.j_b = *s.jb;
  if (s.jc) base.j_c = *s.jc;
  if (s.tmax || s.dt || base.t_grid.empty()) {
    const double tmax = s.tmax.value_or(base.t_grid.empty() ? 30.0 : base.t_grid.back());
    const double dt = s.dt.value_or(0.05);
    base.t_grid = uniform_time_grid(tmax, dt);
  }
  return base;
}

IntegratorConfig to_integrator_config(const RunSettings& s) {
  IntegratorConfig config;
  if (s.step) {
    if (!(*s.step > 0.0)) throw ConfigError("step must be positive");
    config.dt = *s.step;
  }
  return config;
}

}  // namespace tpjcm

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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "tpjcm/config.hpp"
#include "tpjcm/errors.hpp"

using namespace tpjcm;

TEST_CASE("config text parses every key") {
  const RunSettings s = parse_config_text(
      "# comment line\n"
      "nmax = 18\n"
      "kappa=0.01   # trailing comment\n"
      "  alpha2 = 1\n"
      "e = 0.4\n"
      "jb = 3/2\n"
      "jc = 1/2\n"
      "tmax = 12.5\n"
      "dt = 0.1\n"
      "step = 0.001\n"
      "method = pert\n"
      "out = curves.csv\n"
      "preset = fig3\n"
      "\n");
  CHECK(*s.nmax == 18);
  CHECK(*s.kappa == 0.01);
  CHECK(*s.alpha2 == 1.0);
  CHECK(*s.e == 0.4);
  CHECK(s.jb->twice() == 3);
  CHECK(s.jc->twice() == 1);
  CHECK(*s.tmax == 12.5);
  CHECK(*s.dt == 0.1);
  CHECK(*s.step == 0.001);
  CHECK(*s.method == MethodSelector::kPerturbation);
  CHECK(*s.out == "curves.csv");
  CHECK(*s.preset == "fig3");
}

TEST_CASE("config errors name the line") {
  auto message = [](const char* text) {
    try {
      parse_config_text(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("nmax = 4\nbogus = 1\n").find("line 2") != std::string::npos);
  CHECK(message("nmax = 4\nbogus = 1\n").find("bogus") != std::string::npos);
  CHECK(message("kappa = fast\n").find("line 1") != std::string::npos);
  CHECK(message("nmax 4\n").find("key = value") != std::string::npos);
  CHECK(message("nmax = 4.5\n").find("nmax") != std::string::npos);
  CHECK(message("jb = 1/3\n").find("jb") != std::string::npos);
  CHECK(message("method = magic\n").find("magic") != std::string::npos);
  CHECK(message("e =\n").find("empty") != std::string::npos);
}

TEST_CASE("method selector spellings") {
  CHECK(parse_method("closed") == MethodSelector::kClosedForm);
  CHECK(parse_method("closedform") == MethodSelector::kClosedForm);
  CHECK(parse_method("pert") == MethodSelector::kPerturbation);
  CHECK(parse_method("perturbation") == MethodSelector::kPerturbation);
  CHECK(parse_method("lindblad") == MethodSelector::kLindblad);
  CHECK(parse_method("all") == MethodSelector::kAll);
  CHECK_THROWS_AS(parse_method("rk4"), ConfigError);
}

TEST_CASE("flags override file values") {
  RunSettings file = parse_config_text("nmax = 18\nkappa = 0.01\nout = a.csv\n");
  RunSettings flags;
  flags.kappa = 0.04;
  flags.tmax = 5.0;
  file.merge(flags);
  CHECK(*file.nmax == 18);
  CHECK(*file.kappa == 0.04);
  CHECK(*file.tmax == 5.0);
  CHECK(*file.out == "a.csv");
}

TEST_CASE("settings resolve to a model configuration") {
  RunSettings s;
  ModelConfig base;
  base.kappa_over_omega = 0.02;
  ModelConfig c = to_model_config(s, base);
  CHECK(c.kappa_over_omega == 0.02);
  REQUIRE(c.t_grid.size() == 601);
  CHECK(c.t_grid.back() == doctest::Approx(30.0));

  s.tmax = 2.0;
  s.dt = 0.5;
  s.e = 0.4;
  s.nmax = 11;
  s.jb = HalfInt::from_twice(1);
  c = to_model_config(s, base);
  CHECK(c.t_grid == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});
  CHECK(c.amp_e == 0.4);
  CHECK_FALSE(c.amp_f.has_value());
  CHECK(*c.n_max == 11);
  CHECK(c.j_b.twice() == 1);

  s.dt = -1.0;
  CHECK_THROWS_AS(to_model_config(s, base), ConfigError);
}

TEST_CASE("integrator settings") {
  RunSettings s;
  CHECK(to_integrator_config(s).dt == 0.0);
  s.step = 1e-3;
  CHECK(to_integrator_config(s).dt == 1e-3);
  s.step = 0.0;
  CHECK_THROWS_AS(to_integrator_config(s), ConfigError);
}

TEST_CASE("config files load from disk") {
  const auto path = std::filesystem::temp_directory_path() / "tpjcm_test_config.txt";
  {
    std::ofstream out(path);
    out << "alpha2 = 0.5\nmethod = all\n";
  }
  const RunSettings s = load_config_file(path);
  CHECK(*s.alpha2 == 0.5);
  CHECK(*s.method == MethodSelector::kAll);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_config_file(path), ConfigError);
}

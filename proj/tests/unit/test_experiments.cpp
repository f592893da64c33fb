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
#include <sstream>

#include "doctest.h"
#include "tpjcm/errors.hpp"
#include "tpjcm/experiments.hpp"
#include "tpjcm/report.hpp"

using namespace tpjcm;

namespace {

RunSettings short_window() {
  RunSettings s;
  s.tmax = 2.0;
  s.dt = 0.25;
  return s;
}

}  // namespace

TEST_CASE("figure presets carry their parameters") {
  const auto f1 = fig1_specs({});
  REQUIRE(f1.size() == 2);
  CHECK(f1[0].label == "fig1:S_da");
  CHECK(f1[0].model.atom == AtomModel::kDegenerate);
  CHECK(f1[1].model.atom == AtomModel::kTwoLevel);
  CHECK(f1[0].model.kappa_over_omega == 0.02);
  CHECK(f1[0].model.alpha2 == 0.5);
  CHECK(f1[0].subsystem == Subsystem::kAtom);
  CHECK(f1[0].model.t_grid.back() == doctest::Approx(30.0));

  const auto f2a = fig2_specs('a', {});
  REQUIRE(f2a.size() == 2);
  CHECK(f2a[0].model.kappa_over_omega == 0.01);
  CHECK(f2a[0].model.alpha2 == 1.0);
  CHECK(f2a[1].model.alpha2 == 0.5);
  CHECK(f2a[0].subsystem == Subsystem::kSystem);
  const auto f2b = fig2_specs('b', {});
  CHECK(f2b[0].model.kappa_over_omega == 0.02);
  CHECK(f2b[0].subsystem == Subsystem::kAtom);
  CHECK_THROWS_AS(fig2_specs('c', {}), ConfigError);

  const auto f3 = fig3_specs({});
  REQUIRE(f3.size() == 2);
  CHECK(f3[1].model.amp_e == 0.4);
  CHECK(ModelParams(f3[1].model).amp_f() == doctest::Approx(std::sqrt(0.84)).epsilon(1e-15));
  CHECK(ModelParams(f3[0].model).amp_f() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
}

TEST_CASE("flags override presets except the varied parameter") {
  RunSettings s;
  s.kappa = 0.04;
  s.alpha2 = 0.2;
  s.e = 0.9;
  const auto f2 = fig2_specs('a', s);
  CHECK(f2[0].model.kappa_over_omega == 0.04);
  CHECK(f2[0].model.alpha2 == 1.0);
  CHECK(f2[0].model.amp_e == 0.9);
  const auto f3 = fig3_specs(s);
  CHECK(f3[0].model.alpha2 == 0.2);
  CHECK(f3[1].model.amp_e == 0.4);
}

TEST_CASE("curves start from a product state") {
  RunSettings s = short_window();
  s.nmax = 12;
  for (Method m : methods_for(MethodSelector::kAll)) {
    for (const auto& spec : run_specs(s)) {
      const Curve c = compute_curve(ModelParams(spec.model), spec.subsystem, m, {}, "run");
      REQUIRE(c.series.s.size() == 9);
      // 1 - sum |rho_ij|^2 of a pure state, up to rounding.
      CHECK(std::abs(c.series.s.front()) < 1e-12);
      if (spec.subsystem == Subsystem::kSystem) {
        // No damping by default: the joint state stays pure.
        for (double v : c.series.s) CHECK(std::abs(v) < 1e-12);
      } else {
        CHECK(c.series.s.back() > 1e-3);
      }
      CHECK(c.series.method == m);
      CHECK(c.series.preset == "run");
    }
  }
}

TEST_CASE("presets are reproducible and deterministically ordered") {
  RunSettings s = short_window();
  s.nmax = 12;
  s.method = MethodSelector::kAll;
  const ExperimentResult a = run_preset("fig3", s);
  const ExperimentResult b = run_preset("fig3", s);
  REQUIRE(a.curves.size() == 6);
  const Method order[] = {Method::kClosedForm, Method::kPerturbation, Method::kLindblad};
  for (std::size_t k = 0; k < a.curves.size(); ++k) {
    CHECK(a.curves[k].series.preset == (k < 3 ? "fig3:e=0.7071" : "fig3:e=0.4"));
    CHECK(a.curves[k].series.method == order[k % 3]);
    CHECK(a.curves[k].series.s == b.curves[k].series.s);
  }
  std::stringstream ca, cb;
  std::vector<EntropySeries> sa, sb;
  for (const auto& c : a.curves) sa.push_back(c.series);
  for (const auto& c : b.curves) sb.push_back(c.series);
  write_csv(ca, sa);
  write_csv(cb, sb);
  CHECK(ca.str() == cb.str());
  CHECK_FALSE(a.notes.empty());
  CHECK(a.curves[2].report.has_value());
}

TEST_CASE("unknown presets and bad parameters are configuration errors") {
  CHECK_THROWS_AS(run_preset("fig4", short_window()), ConfigError);
  RunSettings s = short_window();
  s.nmax = 2;
  CHECK_THROWS_AS(run_preset("run", s), ConfigError);
}

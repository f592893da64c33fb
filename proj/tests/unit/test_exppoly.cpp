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
#include <complex>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "tpjcm/errors.hpp"
#include "tpjcm/exppoly.hpp"

using namespace tpjcm;

namespace {

constexpr cdouble kI(0.0, 1.0);

cdouble quad(const ExpPolyEntry& f, double t) {
  using boost::math::quadrature::gauss_kronrod;
  const double re = gauss_kronrod<double, 61>::integrate(
      [&](double s) { return f.eval(s).real(); }, 0.0, t, 20, 1e-15);
  const double im = gauss_kronrod<double, 61>::integrate(
      [&](double s) { return f.eval(s).imag(); }, 0.0, t, 20, 1e-15);
  return {re, im};
}

ExpPolyEntry random_entry(std::mt19937& rng, int terms) {
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  std::uniform_real_distribution<double> w(-3.0, 3.0);
  std::uniform_int_distribution<int> p(0, 3);
  std::vector<ExpTerm> v;
  for (int k = 0; k < terms; ++k) v.push_back({{c(rng), c(rng)}, p(rng), k == 0 ? 0.0 : w(rng)});
  return ExpPolyEntry(v);
}

// Sum of |c| t^p: the magnitude floor for cancellation between terms.
double scale(const ExpPolyEntry& f, double t) {
  double s = 0.0;
  for (const auto& term : f.terms()) s += std::abs(term.coeff) * std::pow(t, term.power);
  return s;
}

ModelParams params(int n_max, double alpha2) {
  ModelConfig c;
  c.n_max = n_max;
  c.alpha2 = alpha2;
  c.t_grid = {0.0};
  return ModelParams(c);
}

}  // namespace

TEST_CASE("canonical form merges and drops terms") {
  const ExpPolyEntry e({{1.0, 0, 1.0}, {2.0, 0, 1.0 + 1e-12}, {0.0, 2, 3.0}, {1e-301, 1, 0.0}});
  REQUIRE(e.size() == 1);
  CHECK(e.terms()[0].coeff == cdouble(3.0));
  CHECK(e.terms()[0].power == 0);

  const ExpPolyEntry d({{1.0, 0, 1.0}, {1.0, 1, 1.0}, {1.0, 0, 2.0}});
  CHECK(d.size() == 3);

  // Resonant frequencies snap to exactly zero.
  const ExpPolyEntry r({{1.0, 0, 5e-10}});
  CHECK(r.terms()[0].freq == 0.0);
}

TEST_CASE("eval at zero sums the constant-power terms") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const ExpPolyEntry f = random_entry(rng, 6);
    cdouble sum = 0.0;
    for (const auto& t : f.terms()) {
      if (t.power == 0) sum += t.coeff;
    }
    CHECK(std::abs(f.eval(0.0) - sum) < 1e-15);
  }
}

TEST_CASE("modulate shifts frequencies exactly") {
  const ExpPolyEntry a = modulate(ExpPolyEntry({{1.0, 0, 0.0}}), 2.0);
  REQUIRE(a.size() == 1);
  CHECK(a.terms()[0].freq == 2.0);
  CHECK(a.terms()[0].coeff == cdouble(1.0));

  const ExpPolyEntry b = modulate(ExpPolyEntry({{kI, 1, -1.0}}), 1.0);
  REQUIRE(b.size() == 1);
  CHECK(b.terms()[0].freq == 0.0);
  CHECK(b.terms()[0].power == 1);
  CHECK(b.terms()[0].coeff == kI);

  std::mt19937 rng(11);
  const ExpPolyEntry f = random_entry(rng, 5);
  const ExpPolyEntry g = modulate(modulate(f, 0.7), -0.7);
  for (double t : {0.0, 0.3, 2.0, 9.0}) CHECK(std::abs(g.eval(t) - f.eval(t)) < 1e-15 * scale(f, t));
  for (double t : {0.3, 2.0}) {
    CHECK(std::abs(modulate(f, 0.7).eval(t) - std::exp(kI * 0.7 * t) * f.eval(t)) < 1e-13);
  }
}

TEST_CASE("conjugate is the pointwise complex conjugate") {
  std::mt19937 rng(3);
  const ExpPolyEntry f = random_entry(rng, 5);
  for (double t : {0.0, 1.3, 4.0}) CHECK(std::abs(f.conjugate().eval(t) - std::conj(f.eval(t))) < 1e-14);
}

TEST_CASE("elementary integrals") {
  const double w = 1.7;
  const ExpPolyEntry i0 = integrate_zero_to_t(ExpPolyEntry({{1.0, 0, w}}));
  REQUIRE(i0.size() == 2);
  for (double t : {0.5, 3.0}) {
    CHECK(std::abs(i0.eval(t) - (std::exp(kI * w * t) - 1.0) / (kI * w)) < 1e-14);
  }

  const ExpPolyEntry lin = integrate_zero_to_t(ExpPolyEntry::constant(1.0));
  REQUIRE(lin.size() == 1);
  CHECK(lin.terms()[0].power == 1);
  CHECK(lin.terms()[0].freq == 0.0);
  CHECK(lin.terms()[0].coeff == cdouble(1.0));

  const ExpPolyEntry i1 = integrate_zero_to_t(ExpPolyEntry({{1.0, 1, w}}));
  for (double t : {0.5, 3.0}) {
    const cdouble e = std::exp(kI * w * t);
    const cdouble ref = t * e / (kI * w) - (e - 1.0) / ((kI * w) * (kI * w));
    CHECK(std::abs(i1.eval(t) - ref) < 1e-14);
  }
}

TEST_CASE("t e^{iwt} integral matches quadrature at random points") {
  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> wd(-4.0, 4.0);
  std::uniform_real_distribution<double> td(0.1, 12.0);
  for (int k = 0; k < 20; ++k) {
    const double w = wd(rng);
    const double t = td(rng);
    const ExpPolyEntry f({{1.0, 1, w}});
    CHECK(std::abs(integrate_zero_to_t(f).eval(t) - quad(f, t)) < 1e-10);
  }
}

TEST_CASE("integration of random entries matches quadrature") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> td(0.1, 10.0);
  for (int k = 0; k < 20; ++k) {
    const ExpPolyEntry f = random_entry(rng, 5);
    const double t = td(rng);
    const cdouble ref = quad(f, t);
    CHECK(std::abs(integrate_zero_to_t(f).eval(t) - ref) < 1e-10 * (1.0 + std::abs(ref)));
  }
}

TEST_CASE("integral vanishes at zero and obeys the fundamental theorem") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> td(0.5, 8.0);
  const double h = 1e-5;
  for (int k = 0; k < 10; ++k) {
    const ExpPolyEntry f = random_entry(rng, 6);
    const ExpPolyEntry F = integrate_zero_to_t(f);
    CHECK(std::abs(F.eval(0.0)) < 1e-15 * scale(F, 1.0));
    const double t = td(rng);
    const cdouble derivative = (F.eval(t + h) - F.eval(t - h)) / (2.0 * h);
    CHECK(std::abs(derivative - f.eval(t)) < 1e-6 * (1.0 + std::abs(f.eval(t))));
  }
}

TEST_CASE("integration is linear") {
  std::mt19937 rng(17);
  const ExpPolyEntry f = random_entry(rng, 4);
  const ExpPolyEntry g = random_entry(rng, 4);
  const cdouble a(0.3, -1.2);
  const cdouble b(-2.0, 0.5);
  const ExpPolyEntry lhs = integrate_zero_to_t(a * f + b * g);
  for (double t : {0.7, 3.3, 11.0}) {
    const cdouble rhs = a * integrate_zero_to_t(f).eval(t) + b * integrate_zero_to_t(g).eval(t);
    CHECK(std::abs(lhs.eval(t) - rhs) < 1e-11 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("matrix entries are Hermitian by construction") {
  ExpPolyMatrix m(3, 0);
  std::mt19937 rng(1);
  m.set(0, 1, random_entry(rng, 4));
  m.set(1, 2, random_entry(rng, 4));
  m.set(0, 0, ExpPolyEntry::constant(0.5));
  for (double t : {0.0, 0.9, 6.1}) {
    const Eigen::MatrixXcd v = eval(m, t);
    CHECK((v - v.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(std::abs(v(1, 0) - std::conj(m(0, 1).eval(t))) < 1e-14);
  }
}

TEST_CASE("from_matrix round-trips a constant matrix") {
  const ModelParams p = params(3, 0.001);
  const DensityMatrix rho = initial_density(p);
  const ExpPolyMatrix m = ExpPolyMatrix::from_matrix(rho.rho);
  CHECK((eval(m, 0.0) - rho.rho).cwiseAbs().maxCoeff() < 1e-16);
  CHECK((eval(m, 5.0) - rho.rho).cwiseAbs().maxCoeff() < 1e-16);
}

TEST_CASE("dissipator skeleton") {
  const ModelParams p = params(4, 0.01);
  const Basis basis = build_basis(p);
  const auto dim = static_cast<Eigen::Index>(basis.dim());

  SUBCASE("vacuum is dark") {
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(dim, dim);
    const auto k = static_cast<Eigen::Index>(basis.index({0, Level::kB, HalfInt::from_twice(1)}));
    v(k, k) = 1.0;
    const Eigen::MatrixXcd d = eval(apply_dissipator_skeleton(ExpPolyMatrix::from_matrix(v), basis), 0.0);
    CHECK(d.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("single-photon decay") {
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(dim, dim);
    const HalfInt m = HalfInt::from_twice(-3);
    const auto one = static_cast<Eigen::Index>(basis.index({1, Level::kC, m}));
    const auto zero = static_cast<Eigen::Index>(basis.index({0, Level::kC, m}));
    v(one, one) = 1.0;
    const Eigen::MatrixXcd d = eval(apply_dissipator_skeleton(ExpPolyMatrix::from_matrix(v), basis), 0.0);
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(dim, dim);
    expected(zero, zero) = 2.0;
    expected(one, one) = -2.0;
    CHECK((d - expected).cwiseAbs().maxCoeff() < 1e-15);
  }

  SUBCASE("image is traceless") {
    std::mt19937 rng(23);
    ExpPolyMatrix m(basis.dim(), 0);
    for (std::size_t i = 0; i < basis.dim(); ++i) {
      for (std::size_t j = i; j < basis.dim(); j += 3) {
        ExpPolyEntry e = random_entry(rng, 3);
        if (i == j) e = ExpPolyEntry::constant(e.eval(0.0).real());
        m.set(i, j, e);
      }
    }
    const ExpPolyMatrix d = apply_dissipator_skeleton(m, basis);
    std::uniform_real_distribution<double> td(0.0, 20.0);
    for (int k = 0; k < 5; ++k) CHECK(std::abs(eval(d, td(rng)).trace()) < 1e-12);
  }
}

TEST_CASE("term budget is enforced") {
  ExpPolyMatrix m(2, 1);
  m.set(0, 1, ExpPolyEntry({{1.0, 0, 1.0}, {1.0, 0, 2.0}, {1.0, 0, 3.0}}));
  CHECK(m.total_terms() == 6);
  CHECK_NOTHROW(enforce_term_budget(m, 6));
  CHECK_THROWS_AS(enforce_term_budget(m, 5), NumericalGuardError);
}

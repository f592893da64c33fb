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

// Exponential polynomials: finite sums  sum_k c_k t^{p_k} exp(i w_k t).
//
// With a diagonal Hamiltonian, every order of the damping expansion of the
// density matrix stays inside this class, so the expansion can be carried
// out exactly (no time stepping) and evaluated at any t afterwards.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "tpjcm/model.hpp"

namespace tpjcm {

using cdouble = std::complex<double>;

struct ExpTerm {
  cdouble coeff;
  int power = 0;
  double freq = 0.0;  // units of Omega
};

class ExpPolyEntry {
 public:
  // Two frequencies closer than this are the same frequency; a frequency
  // below it is a resonance (exactly zero).
  static constexpr double kFreqTolerance = 1e-9;
  static constexpr double kZeroCoeff = 1e-300;

  ExpPolyEntry() = default;
  explicit ExpPolyEntry(std::vector<ExpTerm> terms);

  static ExpPolyEntry constant(cdouble c);

  const std::vector<ExpTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  cdouble eval(double t) const;
  // Complex conjugate as a function of real t: c -> conj(c), w -> -w.
  ExpPolyEntry conjugate() const;

  ExpPolyEntry& operator+=(const ExpPolyEntry& other);
  ExpPolyEntry& operator*=(cdouble scale);
  friend ExpPolyEntry operator+(ExpPolyEntry a, const ExpPolyEntry& b) { return a += b; }
  friend ExpPolyEntry operator*(ExpPolyEntry a, cdouble s) { return a *= s; }
  friend ExpPolyEntry operator*(cdouble s, ExpPolyEntry a) { return a *= s; }

 private:
  void canonicalize();
  std::vector<ExpTerm> terms_;
};

// f(t) * exp(i w t).
ExpPolyEntry modulate(const ExpPolyEntry& f, double omega);

// F(t) = int_0^t f(s) ds, exact, F(0) = 0.
ExpPolyEntry integrate_zero_to_t(const ExpPolyEntry& f);

// Square matrix of exponential polynomials, Hermitian as a function of t.
// Writes go through set(), which mirrors the conjugate into (j, i).
class ExpPolyMatrix {
 public:
  ExpPolyMatrix() = default;
  ExpPolyMatrix(std::size_t dim, int order);

  // Constant-in-time matrix from a Hermitian numeric matrix.
  static ExpPolyMatrix from_matrix(const Eigen::MatrixXcd& m, int order = 0);

  std::size_t dim() const { return dim_; }
  int order() const { return order_; }

  const ExpPolyEntry& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * dim_ + j];
  }
  void set(std::size_t i, std::size_t j, ExpPolyEntry value);

  std::size_t total_terms() const;

 private:
  std::size_t dim_ = 0;
  int order_ = 0;
  std::vector<ExpPolyEntry> entries_;
};

Eigen::MatrixXcd eval(const ExpPolyMatrix& m, double t);

// Entry-level image under  2 a M a^dag - {a^dag a, M}  (or {a a^dag, M} for
// Ordering::kAntinormal) on the truncated basis.
ExpPolyMatrix apply_dissipator_skeleton(const ExpPolyMatrix& m, const Basis& basis,
                                        Ordering ordering = Ordering::kNormal);

// Throws NumericalGuardError when the matrix holds more than `budget` terms.
void enforce_term_budget(const ExpPolyMatrix& m, std::size_t budget);

}  // namespace tpjcm

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

// Second-order closed form of the damped density matrix.
//
// Matrix elements are F_n F_n' * (atomic weight) * phase * coefficient, with
// coefficient A (bb, cc blocks) or B (bc block), each a quadratic polynomial
// in kappa/Omega built from the phase integrals F and E. The coefficients are
// kept as written, including terms that disagree with the mechanical
// expansion in perturbation.hpp; compare() in report.hpp lists where.
//
// Every 1/denominator factor is protected: removable singularities are
// evaluated through their series, and the two non-removable ones (the
// level-c 2i t/x term of A and the N^2/((n+3)a^2 + (n'+1)a'^2) prefactor of
// B) are replaced by their principal value 0 when the denominator is below
// kSingularDenominator, and counted.

#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "tpjcm/model.hpp"

namespace tpjcm {

enum class LevelPair { kBB, kCC, kBC };

inline constexpr double kSingularDenominator = 1e-8;

struct CoefficientContext {
  int n = 0;
  int n_prime = 0;
  double alpha2_m = 0.0;        // alpha_m^2
  double alpha2_m_prime = 0.0;  // alpha_{m'}^2
  LevelPair pair = LevelPair::kBB;
  double photons = 0.0;         // N = |alpha|^2
  double kappa_over_omega = 0.0;
  double t = 0.0;               // Omega t
};

// Coefficients of kappa^0, kappa^1, kappa^2.
using CoefficientOrders = std::array<std::complex<double>, 3>;

// (exp(-2i t x) - 1) / x,  x = n a_m^2 - n' a_m'^2.
std::complex<double> coeff_F(const CoefficientContext& ctx);
// (exp(-2i t z) - 1) / z,  z = (n+2) a_m^2 + n' a_m'^2.
std::complex<double> coeff_E(const CoefficientContext& ctx);
// (exp(-2i t d) - 1) / d for an arbitrary denominator d, with the 5-term
// series below kSingularDenominator.
std::complex<double> protected_phase_quotient(double denominator, double t);
std::complex<double> protected_phase_quotient_series(double denominator, double t);

// `regularized` (optional) is incremented per principal-value replacement.
CoefficientOrders coeff_A_orders(const CoefficientContext& ctx, int* regularized = nullptr);
CoefficientOrders coeff_B_orders(const CoefficientContext& ctx, int* regularized = nullptr);
std::complex<double> coeff_A(const CoefficientContext& ctx);
std::complex<double> coeff_B(const CoefficientContext& ctx);

struct ClosedFormOrders {
  std::array<Eigen::MatrixXcd, 3> orders;  // kappa^n coefficient matrices
  int regularized_terms = 0;
};

// Order-by-order closed-form matrices at time t on the given basis.
ClosedFormOrders rho_closed_orders(const ModelParams& params, const Basis& basis, double t);

DensityMatrix rho_closed(const ModelParams& params, double t);
DensityMatrix rho_closed(const ModelParams& params, const Basis& basis, double t);

// Reduced atomic matrix written directly as a sum over the diagonal photon
// index; equals partial_trace_field(rho_closed(...)).
DensityMatrix rho_atom_closed(const ModelParams& params, double t);
DensityMatrix rho_atom_closed(const ModelParams& params, const Basis& basis, double t);

}  // namespace tpjcm

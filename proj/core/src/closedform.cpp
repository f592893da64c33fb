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

#include "tpjcm/closedform.hpp"

#include <cmath>

#include "tpjcm/errors.hpp"
#include "tpjcm/phase_functions.hpp"

namespace tpjcm {

namespace {

using cdouble = std::complex<double>;
constexpr cdouble kI(0.0, 1.0);

// 1/d, or the principal value 0 when d is numerically zero.
double principal_inverse(double d, int* regularized) {
  if (std::abs(d) < kSingularDenominator) {
    if (regularized) ++*regularized;
    return 0.0;
  }
  return 1.0 / d;
}

struct AtomWeights {
  double b;
  double c;
};

AtomWeights atom_weights(const ModelParams& params, const Basis& basis) {
  double count_b = 0.0;
  double count_c = 0.0;
  for (const auto& a : basis.atoms()) (a.level == Level::kB ? count_b : count_c) += 1.0;
  return {params.amp_e() / std::sqrt(count_b), params.amp_f() / std::sqrt(count_c)};
}

// Phase factors as they appear in the closed-form density matrix.
cdouble element_phase(LevelPair pair, int n, int np, double am, double amp, double t) {
  const double nd = n;
  const double npd = np;
  switch (pair) {
    case LevelPair::kBB:
      return std::polar(1.0, -t * ((nd + 1) * (nd + 2) * am - (npd + 1) * (npd + 2) * amp));
    case LevelPair::kCC:
      return std::polar(1.0, t * (nd * (nd - 1) * am - npd * (npd - 1) * amp));
    case LevelPair::kBC:
      return std::polar(1.0, -t * ((nd + 1) * (nd + 2) * am + npd * (npd - 1) * amp));
  }
  return 1.0;
}

void require_unit_coupling(const ModelParams& params) {
  if (params.omega() != 1.0) {
    throw ConfigError("the closed form is defined for the coupled model (omega = 1) only");
  }
}

}  // namespace

cdouble protected_phase_quotient_series(double denominator, double t) {
  // (e^{-2i t d} - 1)/d = -2i t * phi1(-2 t d)
  return -2.0 * kI * t * phase::phi1_series(-2.0 * t * denominator, 5);
}

cdouble protected_phase_quotient(double denominator, double t) {
  if (std::abs(denominator) < kSingularDenominator) {
    return protected_phase_quotient_series(denominator, t);
  }
  return phase::expm1_i(-2.0 * t * denominator) / denominator;
}

cdouble coeff_F(const CoefficientContext& ctx) {
  return protected_phase_quotient(ctx.n * ctx.alpha2_m - ctx.n_prime * ctx.alpha2_m_prime, ctx.t);
}

cdouble coeff_E(const CoefficientContext& ctx) {
  return protected_phase_quotient((ctx.n + 2) * ctx.alpha2_m + ctx.n_prime * ctx.alpha2_m_prime,
                                  ctx.t);
}

CoefficientOrders coeff_A_orders(const CoefficientContext& ctx, int* regularized) {
  if (ctx.pair == LevelPair::kBC) {
    throw std::invalid_argument("coeff_A applies to the bb and cc blocks");
  }
  // + for b, - for c
  const double sign = ctx.pair == LevelPair::kBB ? 1.0 : -1.0;
  const double big_n = ctx.photons;
  const double t = ctx.t;
  const double nsum = ctx.n + ctx.n_prime;
  const double x = ctx.n * ctx.alpha2_m - ctx.n_prime * ctx.alpha2_m_prime;
  const double theta = -2.0 * x * t;
  const cdouble f = coeff_F(ctx);

  const cdouble first = sign * kI * big_n * f - nsum * t;

  // N^2/x [F(t) - F(2t)/2]
  const cdouble gain_squared = big_n * big_n * (-4.0 * t * t) * phase::psi(theta);
  // F/x +- 2i t/x; the + branch is removable, the - branch keeps a bare -4i t/x.
  cdouble ratio_terms = -4.0 * t * t * phase::phi2(theta);
  if (sign < 0.0) ratio_terms += -4.0 * kI * t * principal_inverse(x, regularized);
  const cdouble mixed = -big_n * (ratio_terms + sign * kI * (nsum + 2.0) * f * t);
  const cdouble loss_squared = 0.5 * nsum * nsum * t * t;

  return {1.0, first, 0.5 * (gain_squared + mixed + loss_squared)};
}

CoefficientOrders coeff_B_orders(const CoefficientContext& ctx, int* regularized) {
  if (ctx.pair != LevelPair::kBC) throw std::invalid_argument("coeff_B applies to the bc block");
  const double big_n = ctx.photons;
  const double t = ctx.t;
  const double nsum = ctx.n + ctx.n_prime;
  const double am = ctx.alpha2_m;
  const double amp = ctx.alpha2_m_prime;
  const double z = (ctx.n + 2) * am + ctx.n_prime * amp;
  const double w = (ctx.n + 3) * am + (ctx.n_prime + 1) * amp;
  // E(n + 1/2, n' + 1/2, m, m', 2t)
  const double z_half = (ctx.n + 2.5) * am + (ctx.n_prime + 0.5) * amp;
  const cdouble e = coeff_E(ctx);
  const cdouble e_half = protected_phase_quotient(z_half, 2.0 * t);

  const cdouble first = kI * big_n * e - nsum * t;

  const cdouble gain_squared = big_n * big_n * principal_inverse(w, regularized) * (e - e_half);
  // E/z + 2i t/z is removable.
  const cdouble ratio_terms = -4.0 * t * t * phase::phi2(-2.0 * z * t);
  const cdouble mixed = -big_n * (ratio_terms + (nsum + 2.0) * kI * t * e);
  const cdouble loss_squared = 0.5 * nsum * nsum * t * t;

  return {1.0, first, 0.5 * (gain_squared + mixed + loss_squared)};
}

namespace {

cdouble sum_orders(const CoefficientOrders& c, double kappa) {
  return c[0] + kappa * (c[1] + kappa * c[2]);
}

}  // namespace

cdouble coeff_A(const CoefficientContext& ctx) {
  return sum_orders(coeff_A_orders(ctx), ctx.kappa_over_omega);
}

cdouble coeff_B(const CoefficientContext& ctx) {
  return sum_orders(coeff_B_orders(ctx), ctx.kappa_over_omega);
}

ClosedFormOrders rho_closed_orders(const ModelParams& params, const Basis& basis, double t) {
  require_unit_coupling(params);
  const auto dim = static_cast<Eigen::Index>(basis.dim());
  const std::vector<double> field = coherent_amplitudes(params.alpha2(), basis.n_max());
  const AtomWeights weights = atom_weights(params, basis);

  ClosedFormOrders out;
  for (auto& m : out.orders) m = Eigen::MatrixXcd::Zero(dim, dim);

  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto ki = static_cast<std::size_t>(i);
    const AtomicState& ai = basis.atom(basis.atomic_index(ki));
    const int n = basis.photons(ki);
    for (Eigen::Index j = 0; j < dim; ++j) {
      const auto kj = static_cast<std::size_t>(j);
      const AtomicState& aj = basis.atom(basis.atomic_index(kj));
      // The cb block is filled as the adjoint of bc below.
      if (ai.level == Level::kC && aj.level == Level::kB) continue;
      const int np = basis.photons(kj);

      CoefficientContext ctx;
      ctx.n = n;
      ctx.n_prime = np;
      ctx.alpha2_m = ai.alpha2;
      ctx.alpha2_m_prime = aj.alpha2;
      ctx.photons = params.alpha2();
      ctx.kappa_over_omega = params.kappa_over_omega();
      ctx.t = t;

      double weight = field[static_cast<std::size_t>(n)] * field[static_cast<std::size_t>(np)];
      CoefficientOrders coeffs;
      if (ai.level == Level::kB && aj.level == Level::kB) {
        ctx.pair = LevelPair::kBB;
        weight *= weights.b * weights.b;
        coeffs = coeff_A_orders(ctx, &out.regularized_terms);
      } else if (ai.level == Level::kC && aj.level == Level::kC) {
        ctx.pair = LevelPair::kCC;
        weight *= weights.c * weights.c;
        coeffs = coeff_A_orders(ctx, &out.regularized_terms);
      } else {
        ctx.pair = LevelPair::kBC;
        weight *= weights.b * weights.c;
        coeffs = coeff_B_orders(ctx, &out.regularized_terms);
      }
      if (weight == 0.0) continue;
      const cdouble base = weight * element_phase(ctx.pair, n, np, ai.alpha2, aj.alpha2, t);
      for (std::size_t k = 0; k < 3; ++k) out.orders[k](i, j) = base * coeffs[k];
      if (ctx.pair == LevelPair::kBC) {
        for (std::size_t k = 0; k < 3; ++k) out.orders[k](j, i) = std::conj(out.orders[k](i, j));
      }
    }
  }
  return out;
}

DensityMatrix rho_closed(const ModelParams& params, double t) {
  return rho_closed(params, build_basis(params), t);
}

DensityMatrix rho_closed(const ModelParams& params, const Basis& basis, double t) {
  const ClosedFormOrders o = rho_closed_orders(params, basis, t);
  const double k = params.kappa_over_omega();
  Eigen::MatrixXcd rho = o.orders[0] + k * o.orders[1] + (k * k) * o.orders[2];
  return {std::move(rho), t, Method::kClosedForm};
}

DensityMatrix rho_atom_closed(const ModelParams& params, double t) {
  return rho_atom_closed(params, build_basis(params), t);
}

DensityMatrix rho_atom_closed(const ModelParams& params, const Basis& basis, double t) {
  require_unit_coupling(params);
  const auto adim = static_cast<Eigen::Index>(basis.atomic_dim());
  const std::vector<double> field = coherent_amplitudes(params.alpha2(), basis.n_max());
  const AtomWeights weights = atom_weights(params, basis);
  const double kappa = params.kappa_over_omega();

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(adim, adim);
  for (int n = 0; n <= basis.n_max(); ++n) {
    const double pn = field[static_cast<std::size_t>(n)] * field[static_cast<std::size_t>(n)];
    for (Eigen::Index a = 0; a < adim; ++a) {
      const AtomicState& sa = basis.atom(static_cast<std::size_t>(a));
      for (Eigen::Index b = 0; b < adim; ++b) {
        const AtomicState& sb = basis.atom(static_cast<std::size_t>(b));
        if (sa.level == Level::kC && sb.level == Level::kB) continue;

        CoefficientContext ctx;
        ctx.n = n;
        ctx.n_prime = n;
        ctx.alpha2_m = sa.alpha2;
        ctx.alpha2_m_prime = sb.alpha2;
        ctx.photons = params.alpha2();
        ctx.kappa_over_omega = kappa;
        ctx.t = t;

        double weight = pn;
        cdouble coeff;
        if (sa.level == Level::kB && sb.level == Level::kB) {
          ctx.pair = LevelPair::kBB;
          weight *= weights.b * weights.b;
          coeff = coeff_A(ctx);
        } else if (sa.level == Level::kC && sb.level == Level::kC) {
          ctx.pair = LevelPair::kCC;
          weight *= weights.c * weights.c;
          coeff = coeff_A(ctx);
        } else {
          ctx.pair = LevelPair::kBC;
          weight *= weights.b * weights.c;
          coeff = coeff_B(ctx);
        }
        rho(a, b) += weight * element_phase(ctx.pair, n, n, sa.alpha2, sb.alpha2, t) * coeff;
      }
    }
  }
  for (Eigen::Index a = 0; a < adim; ++a) {
    for (Eigen::Index b = 0; b < adim; ++b) {
      if (basis.atom(static_cast<std::size_t>(a)).level == Level::kC &&
          basis.atom(static_cast<std::size_t>(b)).level == Level::kB) {
        rho(a, b) = std::conj(rho(b, a));
      }
    }
  }
  return {std::move(rho), t, Method::kClosedForm};
}

}  // namespace tpjcm

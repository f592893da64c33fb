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

#include "tpjcm/phase_functions.hpp"

#include <cmath>

namespace tpjcm::phase {

namespace {

// sum_{k<terms} weight(k) (i theta)^k / (k + shift)!
template <typename Weight>
cdouble taylor(double theta, int terms, int shift, Weight weight) {
  const cdouble u(0.0, theta);
  cdouble power = 1.0;
  double fact = 1.0;
  for (int k = 2; k <= shift; ++k) fact *= k;
  cdouble sum = 0.0;
  for (int k = 0; k < terms; ++k) {
    sum += weight(k) * power / fact;
    power *= u;
    fact *= static_cast<double>(k + shift + 1);
  }
  return sum;
}

}  // namespace

cdouble expm1_i(double theta) {
  const double s = std::sin(0.5 * theta);
  return {-2.0 * s * s, std::sin(theta)};
}

cdouble phi1_series(double theta, int terms) {
  return taylor(theta, terms, 1, [](int) { return 1.0; });
}

cdouble phi2_series(double theta, int terms) {
  return taylor(theta, terms, 2, [](int) { return 1.0; });
}

cdouble psi_series(double theta, int terms) {
  return taylor(theta, terms, 2, [](int k) { return 1.0 - std::ldexp(1.0, k + 1); });
}

cdouble phi1(double theta) {
  if (theta == 0.0) return 1.0;
  return expm1_i(theta) / cdouble(0.0, theta);
}

cdouble phi2(double theta) {
  if (std::abs(theta) < kSeriesSwitch) return phi2_series(theta, 8);
  const cdouble u(0.0, theta);
  return (expm1_i(theta) - u) / (u * u);
}

cdouble psi(double theta) {
  if (std::abs(theta) < kSeriesSwitch) return psi_series(theta, 8);
  const cdouble u(0.0, theta);
  // e^u - e^{2u}/2 - 1/2 = (e^u - 1) - (e^{2u} - 1)/2
  return (expm1_i(theta) - 0.5 * expm1_i(2.0 * theta)) / (u * u);
}

}  // namespace tpjcm::phase

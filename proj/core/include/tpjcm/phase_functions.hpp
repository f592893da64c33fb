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

// Phase integrals with removable singularities at zero frequency, evaluated
// without cancellation on either side of the switch point.

#pragma once

#include <complex>

namespace tpjcm::phase {

using cdouble = std::complex<double>;

// Below this |theta| the phi2/psi families switch to their Taylor series.
inline constexpr double kSeriesSwitch = 1e-2;

// exp(i theta) - 1 without cancellation for small theta.
cdouble expm1_i(double theta);

// (exp(i theta) - 1) / (i theta);  -> 1 at theta = 0.
cdouble phi1(double theta);
// (exp(i theta) - 1 - i theta) / (i theta)^2;  -> 1/2 at theta = 0.
cdouble phi2(double theta);
// (exp(i theta) - exp(2 i theta)/2 - 1/2) / (i theta)^2;  -> -1/2 at theta = 0.
cdouble psi(double theta);

// Truncated Taylor series of the above (`terms` terms), exposed so the two
// branches can be compared at the switch point.
cdouble phi1_series(double theta, int terms);
cdouble phi2_series(double theta, int terms);
cdouble psi_series(double theta, int terms);

}  // namespace tpjcm::phase

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

// Hilbert space, couplings and initial state of the two-photon
// Jaynes-Cummings model with Zeeman-degenerate levels b and c.
//
// Units: the Rabi frequency sets the time unit, so every time is Omega*t
// and every rate is kappa/Omega.

#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace tpjcm {

// Angular momentum quantum number or projection, stored as twice its value
// so that 3/2 is exact.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }

  // Accepts "3/2", "-1/2", "2", "1.5".
  static HalfInt parse(std::string_view text);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  std::string str() const;

  constexpr HalfInt operator-() const { return HalfInt(-twice_); }
  constexpr auto operator<=>(const HalfInt&) const = default;

 private:
  constexpr explicit HalfInt(int twice) : twice_(twice) {}
  int twice_ = 0;
};

enum class Level { kB, kC };

// Which form of the level-c photon dependence in the effective Hamiltonian.
//   kQuadratic: -n(n-1) alpha_m^2, the form every closed-form phase uses.
//   kLinear:    -(n-1) alpha_m^2, the Hamiltonian taken at face value.
// kLinear exists for diagnostics only.
enum class CLevelShift { kQuadratic, kLinear };

// Anticommutator in the damping term.
//   kNormal:     a^dag a (trace preserving, default).
//   kAntinormal: a a^dag (loses trace at rate 2 kappa).
enum class Ordering { kNormal, kAntinormal };

enum class AtomModel {
  kDegenerate,  // 2J_b+1 and 2J_c+1 Zeeman sublevels weighted by 3j couplings
  kTwoLevel,    // single sublevel per level, unit coupling
};

enum class Method { kInitial, kClosedForm, kPerturbation, kLindblad };

std::string_view to_string(Method method);
std::string_view to_string(Level level);

// Wigner 3j symbol (j1 j2 j3; m1 m2 m3), arguments given as twice their value.
// Racah's single-sum formula in double precision; zero when selection rules
// fail.
double wigner_3j(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3);

// Signed coupling (-1)^(J_b - m) (J_b 1 J_c; -m 0 m).
// Throws std::domain_error on a triangle-rule violation or |m| > min(J_b, J_c).
double coupling_alpha(HalfInt j_b, HalfInt j_c, HalfInt m);

// Table of the resonant couplings alpha_m for |m| <= min(J_b, J_c).
class ZeemanCouplings {
 public:
  struct Entry {
    HalfInt m;
    double alpha;
  };

  ZeemanCouplings(HalfInt j_b, HalfInt j_c);

  const std::vector<Entry>& entries() const { return entries_; }
  // alpha_m, or 0 when m is outside the shared range (unequal J).
  double alpha(HalfInt m) const;
  double sum_of_squares() const;

 private:
  std::vector<Entry> entries_;
};

struct ModelConfig {
  HalfInt j_b = HalfInt::from_twice(3);
  HalfInt j_c = HalfInt::from_twice(3);
  double amp_e = 0.70710678118654752440;
  std::optional<double> amp_f;  // completed to sqrt(1 - e^2) when absent
  double alpha2 = 0.5;          // mean photon number N = |alpha|^2
  double kappa_over_omega = 0.0;
  std::optional<int> n_max;     // default: see ModelParams
  std::vector<double> t_grid;   // empty: [0, 30] step 0.05
  double omega = 1.0;           // 0 switches the atom-field coupling off
  CLevelShift c_shift = CLevelShift::kQuadratic;
  Ordering ordering = Ordering::kNormal;
  AtomModel atom = AtomModel::kDegenerate;
};

// Validated, immutable model configuration.
class ModelParams {
 public:
  static constexpr double kTailTolerance = 1e-12;

  explicit ModelParams(const ModelConfig& config);

  HalfInt j_b() const { return config_.j_b; }
  HalfInt j_c() const { return config_.j_c; }
  double amp_e() const { return amp_e_; }
  double amp_f() const { return amp_f_; }
  double alpha2() const { return config_.alpha2; }
  double alpha() const { return alpha_; }
  double kappa_over_omega() const { return config_.kappa_over_omega; }
  int n_max() const { return n_max_; }
  const std::vector<double>& t_grid() const { return t_grid_; }
  double omega() const { return config_.omega; }
  CLevelShift c_shift() const { return config_.c_shift; }
  Ordering ordering() const { return config_.ordering; }
  AtomModel atom() const { return config_.atom; }
  const ZeemanCouplings& couplings() const { return couplings_; }

  // A copy of the originating config, e.g. to derive a variant.
  ModelConfig config() const;

  // Stable text summary of every physical and numerical setting.
  std::string fingerprint() const;

 private:
  ModelConfig config_;
  double amp_e_ = 0.0;
  double amp_f_ = 0.0;
  double alpha_ = 0.0;
  int n_max_ = 0;
  std::vector<double> t_grid_;
  ZeemanCouplings couplings_;
};

std::vector<double> uniform_time_grid(double t_max, double step);

// sum_{n > n_max} |F_n|^2 for a coherent state with mean photon number alpha2.
double poisson_tail(double alpha2, int n_max);
// Smallest n_max whose Poisson tail is below `tolerance`.
int minimal_n_max(double alpha2, double tolerance = ModelParams::kTailTolerance);
// max(20, ceil(N + 10 sqrt(N+1))), raised until the tail bound holds.
int default_n_max(double alpha2);
// F_0..F_{n_max}, real, renormalized to unit norm.
std::vector<double> coherent_amplitudes(double alpha2, int n_max);

struct BasisIndex {
  int n = 0;
  Level level = Level::kB;
  HalfInt m;

  bool operator==(const BasisIndex&) const = default;
};

struct AtomicState {
  Level level;
  HalfInt m;
  double alpha2;  // squared coupling entering the Hamiltonian
};

// Diagonal effective-Hamiltonian eigenvalue in units of Omega:
//   level b: (n+1)(n+2) alpha^2,   level c: -n(n-1) alpha^2
// (or -(n-1) alpha^2 with CLevelShift::kLinear).
double h_eff_energy(int n, Level level, double alpha_sq, double omega = 1.0,
                    CLevelShift c_shift = CLevelShift::kQuadratic);
double h_eff_energy(const ModelParams& params, const BasisIndex& index);

// Product basis |n> (x) |level, m>, n outermost, then level b (m = -J_b..J_b)
// followed by level c. Flat index = n * atomic_dim + atomic index.
class Basis {
 public:
  Basis(int n_max, std::vector<AtomicState> atoms, std::vector<double> energies);

  std::size_t dim() const { return energies_.size(); }
  std::size_t atomic_dim() const { return atoms_.size(); }
  std::size_t field_dim() const { return static_cast<std::size_t>(n_max_) + 1; }
  int n_max() const { return n_max_; }

  BasisIndex state(std::size_t k) const;
  // Throws std::out_of_range for tuples outside the basis.
  std::size_t index(const BasisIndex& idx) const;

  int photons(std::size_t k) const { return static_cast<int>(k / atoms_.size()); }
  std::size_t atomic_index(std::size_t k) const { return k % atoms_.size(); }
  const AtomicState& atom(std::size_t a) const { return atoms_[a]; }
  const std::vector<AtomicState>& atoms() const { return atoms_; }
  double energy(std::size_t k) const { return energies_[k]; }
  const std::vector<double>& energies() const { return energies_; }
  // Index of the same atomic state with one more photon, if inside the basis.
  std::optional<std::size_t> raised(std::size_t k) const;

 private:
  int n_max_;
  std::vector<AtomicState> atoms_;
  std::vector<double> energies_;
};

Basis build_basis(const ModelParams& params);

struct DensityMatrix {
  Eigen::MatrixXcd rho;
  double omega_t = 0.0;
  Method method = Method::kInitial;

  double trace_real() const { return rho.trace().real(); }
  // max_ij |rho_ij - conj(rho_ji)|
  double hermiticity_deviation() const;
};

// |Psi(0)><Psi(0)|, Psi(0) = (sum_m e/sqrt(2J_b+1)|b,m> + sum_m f/sqrt(2J_c+1)|c,m>) (x) |alpha>.
DensityMatrix initial_density(const ModelParams& params);
DensityMatrix initial_density(const ModelParams& params, const Basis& basis);

}  // namespace tpjcm

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

#include "tpjcm/model.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "tpjcm/errors.hpp"

namespace tpjcm {

namespace {

constexpr int kMaxFactorial = 170;

const std::array<double, kMaxFactorial + 1>& factorial_table() {
  static const auto table = [] {
    std::array<double, kMaxFactorial + 1> t{};
    t[0] = 1.0;
    for (int i = 1; i <= kMaxFactorial; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  return table;
}

double factorial(int n) {
  if (n < 0 || n > kMaxFactorial) {
    throw std::domain_error("factorial argument out of range: " + std::to_string(n));
  }
  return factorial_table()[n];
}

bool same_parity(int a, int b) { return ((a - b) % 2) == 0; }

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

HalfInt HalfInt::parse(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw ConfigError("empty angular momentum value");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    char* end = nullptr;
    const long p = std::strtol(num.c_str(), &end, 10);
    if (num.empty() || *end != '\0' || den != "2") {
      throw ConfigError("cannot parse half-integer '" + s + "'");
    }
    return from_twice(static_cast<int>(p));
  }

  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (*end != '\0' || !std::isfinite(v)) {
    throw ConfigError("cannot parse half-integer '" + s + "'");
  }
  const double twice = 2.0 * v;
  if (std::abs(twice - std::round(twice)) > 1e-9) {
    throw ConfigError("'" + s + "' is not a multiple of 1/2");
  }
  return from_twice(static_cast<int>(std::lround(twice)));
}

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kInitial: return "initial";
    case Method::kClosedForm: return "closedform";
    case Method::kPerturbation: return "perturbation";
    case Method::kLindblad: return "lindblad";
  }
  return "unknown";
}

std::string_view to_string(Level level) { return level == Level::kB ? "b" : "c"; }

double wigner_3j(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
  if (tm1 + tm2 + tm3 != 0) return 0.0;
  if (tj1 < 0 || tj2 < 0 || tj3 < 0) return 0.0;
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm3) > tj3) return 0.0;
  if (!same_parity(tj1, tm1) || !same_parity(tj2, tm2) || !same_parity(tj3, tm3)) return 0.0;
  if (tj3 < std::abs(tj1 - tj2) || tj3 > tj1 + tj2) return 0.0;
  if ((tj1 + tj2 + tj3) % 2 != 0) return 0.0;

  // All of these are integers once the selection rules hold.
  const int j1_plus_j2_minus_j3 = (tj1 + tj2 - tj3) / 2;
  const int j1_minus_j2_plus_j3 = (tj1 - tj2 + tj3) / 2;
  const int minus_j1_plus_j2_plus_j3 = (-tj1 + tj2 + tj3) / 2;
  const int j_sum = (tj1 + tj2 + tj3) / 2;

  const int a1 = (tj3 - tj2 + tm1) / 2;  // j3 - j2 + m1
  const int a2 = (tj3 - tj1 - tm2) / 2;  // j3 - j1 - m2
  const int b1 = (tj1 - tm1) / 2;        // j1 - m1
  const int b2 = (tj2 + tm2) / 2;        // j2 + m2

  const int k_min = std::max({0, -a1, -a2});
  const int k_max = std::min({j1_plus_j2_minus_j3, b1, b2});
  if (k_min > k_max) return 0.0;

  double sum = 0.0;
  for (int k = k_min; k <= k_max; ++k) {
    const double denom = factorial(k) * factorial(a1 + k) * factorial(a2 + k) *
                         factorial(j1_plus_j2_minus_j3 - k) * factorial(b1 - k) *
                         factorial(b2 - k);
    sum += ((k % 2 == 0) ? 1.0 : -1.0) / denom;
  }

  const double triangle = factorial(j1_plus_j2_minus_j3) * factorial(j1_minus_j2_plus_j3) *
                          factorial(minus_j1_plus_j2_plus_j3) / factorial(j_sum + 1);
  const double projections =
      factorial((tj1 + tm1) / 2) * factorial((tj1 - tm1) / 2) * factorial((tj2 + tm2) / 2) *
      factorial((tj2 - tm2) / 2) * factorial((tj3 + tm3) / 2) * factorial((tj3 - tm3) / 2);

  const int phase = (tj1 - tj2 - tm3) / 2;
  const double sign = (phase % 2 == 0) ? 1.0 : -1.0;
  return sign * std::sqrt(triangle * projections) * sum;
}

double coupling_alpha(HalfInt j_b, HalfInt j_c, HalfInt m) {
  const int tb = j_b.twice();
  const int tc = j_c.twice();
  const int tm = m.twice();
  if (tb < 0 || tc < 0) throw std::domain_error("angular momenta must be nonnegative");
  if (std::abs(tb - tc) > 2 || tb + tc < 2 || !same_parity(tb, tc)) {
    throw std::domain_error("rank-1 triangle rule violated for J_b=" + j_b.str() +
                            ", J_c=" + j_c.str());
  }
  if (!same_parity(tm, tb) || std::abs(tm) > std::min(tb, tc)) {
    throw std::domain_error("projection m=" + m.str() + " not shared by J_b=" + j_b.str() +
                            " and J_c=" + j_c.str());
  }
  const int phase = (tb - tm) / 2;
  const double sign = (phase % 2 == 0) ? 1.0 : -1.0;
  return sign * wigner_3j(tb, 2, tc, -tm, 0, tm);
}

ZeemanCouplings::ZeemanCouplings(HalfInt j_b, HalfInt j_c) {
  const int top = std::min(j_b.twice(), j_c.twice());
  for (int tm = -top; tm <= top; tm += 2) {
    const HalfInt m = HalfInt::from_twice(tm);
    entries_.push_back({m, coupling_alpha(j_b, j_c, m)});
  }
}

double ZeemanCouplings::alpha(HalfInt m) const {
  for (const auto& e : entries_) {
    if (e.m == m) return e.alpha;
  }
  return 0.0;
}

double ZeemanCouplings::sum_of_squares() const {
  double s = 0.0;
  for (const auto& e : entries_) s += e.alpha * e.alpha;
  return s;
}

std::vector<double> uniform_time_grid(double t_max, double step) {
  if (!(step > 0.0) || !(t_max >= 0.0) || !std::isfinite(t_max)) {
    throw ConfigError("time grid needs tmax >= 0 and dt > 0");
  }
  const auto count = static_cast<std::size_t>(std::llround(std::floor(t_max / step + 1e-9)));
  std::vector<double> grid(count + 1);
  for (std::size_t i = 0; i <= count; ++i) grid[i] = static_cast<double>(i) * step;
  return grid;
}

double poisson_tail(double alpha2, int n_max) {
  if (alpha2 <= 0.0) return 0.0;
  const double log_n = std::log(alpha2);
  double tail = 0.0;
  for (int n = n_max + 1;; ++n) {
    const double term = std::exp(-alpha2 + n * log_n - std::lgamma(n + 1.0));
    tail += term;
    if (n > alpha2 && term <= 1e-30 * std::max(tail, 1e-300)) break;
    if (n > n_max + 100000) break;
  }
  return tail;
}

int minimal_n_max(double alpha2, double tolerance) {
  int n = 0;
  while (poisson_tail(alpha2, n) >= tolerance) ++n;
  return n;
}

int default_n_max(double alpha2) {
  const int heuristic =
      static_cast<int>(std::ceil(alpha2 + 10.0 * std::sqrt(alpha2 + 1.0)));
  return std::max({20, heuristic, minimal_n_max(alpha2)});
}

std::vector<double> coherent_amplitudes(double alpha2, int n_max) {
  std::vector<double> f(static_cast<std::size_t>(n_max) + 1, 0.0);
  const double alpha = std::sqrt(alpha2);
  f[0] = std::exp(-0.5 * alpha2);
  for (int n = 1; n <= n_max; ++n) f[n] = f[n - 1] * alpha / std::sqrt(static_cast<double>(n));
  double norm = 0.0;
  for (double x : f) norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : f) x /= norm;
  return f;
}

namespace {

ZeemanCouplings make_couplings(const ModelConfig& config) {
  if (config.atom != AtomModel::kDegenerate) {
    return ZeemanCouplings(HalfInt::from_twice(1), HalfInt::from_twice(1));
  }
  if (config.j_b.twice() < 0 || config.j_c.twice() < 0) {
    throw ConfigError("J_b and J_c must be nonnegative");
  }
  try {
    return ZeemanCouplings(config.j_b, config.j_c);
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

ModelParams::ModelParams(const ModelConfig& config)
    : config_(config), couplings_(make_couplings(config)) {

  if (!std::isfinite(config.amp_e)) throw ConfigError("amplitude e must be finite");
  if (config.amp_f) {
    if (!std::isfinite(*config.amp_f)) throw ConfigError("amplitude f must be finite");
    const double norm = std::hypot(config.amp_e, *config.amp_f);
    if (norm == 0.0) throw ConfigError("amplitudes e and f cannot both vanish");
    amp_e_ = config.amp_e / norm;
    amp_f_ = *config.amp_f / norm;
  } else {
    if (std::abs(config.amp_e) > 1.0) {
      throw ConfigError("|e| must not exceed 1 when f is completed from normalization");
    }
    amp_e_ = config.amp_e;
    amp_f_ = std::sqrt(std::max(0.0, 1.0 - config.amp_e * config.amp_e));
  }

  if (!(config.alpha2 >= 0.0) || !std::isfinite(config.alpha2)) {
    throw ConfigError("mean photon number alpha2 must be finite and nonnegative");
  }
  alpha_ = std::sqrt(config.alpha2);
  if (!(config.kappa_over_omega >= 0.0) || !std::isfinite(config.kappa_over_omega)) {
    throw ConfigError("kappa/Omega must be finite and nonnegative");
  }
  if (!std::isfinite(config.omega)) throw ConfigError("omega must be finite");

  if (config.n_max) {
    if (*config.n_max < 0) throw ConfigError("n_max must be >= 0");
    const double tail = poisson_tail(config.alpha2, *config.n_max);
    if (tail >= kTailTolerance) {
      throw ConfigError("n_max = " + std::to_string(*config.n_max) +
                        " truncates the coherent state (Poisson tail " + format_double(tail) +
                        "); minimal sufficient n_max is " +
                        std::to_string(minimal_n_max(config.alpha2)));
    }
    n_max_ = *config.n_max;
  } else {
    n_max_ = default_n_max(config.alpha2);
  }

  t_grid_ = config.t_grid.empty() ? uniform_time_grid(30.0, 0.05) : config.t_grid;
  for (std::size_t i = 0; i < t_grid_.size(); ++i) {
    if (!std::isfinite(t_grid_[i]) || t_grid_[i] < 0.0) {
      throw ConfigError("time grid values must be finite and nonnegative");
    }
    if (i > 0 && !(t_grid_[i] > t_grid_[i - 1])) {
      throw ConfigError("time grid must be strictly increasing");
    }
  }
}

ModelConfig ModelParams::config() const { return config_; }

std::string ModelParams::fingerprint() const {
  std::ostringstream os;
  os << "atom=" << (atom() == AtomModel::kDegenerate ? "degenerate" : "two_level")
     << ";jb=" << j_b().str() << ";jc=" << j_c().str() << ";e=" << format_double(amp_e_)
     << ";f=" << format_double(amp_f_) << ";alpha2=" << format_double(alpha2())
     << ";kappa=" << format_double(kappa_over_omega()) << ";nmax=" << n_max_
     << ";omega=" << format_double(omega())
     << ";c_shift=" << (c_shift() == CLevelShift::kQuadratic ? "quadratic" : "linear")
     << ";ordering=" << (ordering() == Ordering::kNormal ? "normal" : "antinormal");
  if (!t_grid_.empty()) {
    os << ";t=[" << format_double(t_grid_.front()) << "," << format_double(t_grid_.back())
       << "]x" << t_grid_.size();
  }
  return os.str();
}

double h_eff_energy(int n, Level level, double alpha_sq, double omega, CLevelShift c_shift) {
  const double nd = static_cast<double>(n);
  if (level == Level::kB) return omega * (nd + 1.0) * (nd + 2.0) * alpha_sq;
  if (c_shift == CLevelShift::kLinear) return -omega * (nd - 1.0) * alpha_sq;
  return -omega * nd * (nd - 1.0) * alpha_sq;
}

double h_eff_energy(const ModelParams& params, const BasisIndex& index) {
  double alpha_sq = 1.0;
  if (params.atom() == AtomModel::kDegenerate) {
    const double a = params.couplings().alpha(index.m);
    alpha_sq = a * a;
  }
  return h_eff_energy(index.n, index.level, alpha_sq, params.omega(), params.c_shift());
}

Basis::Basis(int n_max, std::vector<AtomicState> atoms, std::vector<double> energies)
    : n_max_(n_max), atoms_(std::move(atoms)), energies_(std::move(energies)) {
  if (atoms_.empty()) throw std::invalid_argument("basis needs at least one atomic state");
  if (energies_.size() != field_dim() * atoms_.size()) {
    throw std::invalid_argument("energy table does not match basis dimension");
  }
}

BasisIndex Basis::state(std::size_t k) const {
  const AtomicState& a = atoms_[atomic_index(k)];
  return {photons(k), a.level, a.m};
}

std::size_t Basis::index(const BasisIndex& idx) const {
  if (idx.n < 0 || idx.n > n_max_) throw std::out_of_range("photon number outside basis");
  for (std::size_t a = 0; a < atoms_.size(); ++a) {
    if (atoms_[a].level == idx.level && atoms_[a].m == idx.m) {
      return static_cast<std::size_t>(idx.n) * atoms_.size() + a;
    }
  }
  throw std::out_of_range("atomic state outside basis");
}

std::optional<std::size_t> Basis::raised(std::size_t k) const {
  if (photons(k) >= n_max_) return std::nullopt;
  return k + atoms_.size();
}

Basis build_basis(const ModelParams& params) {
  std::vector<AtomicState> atoms;
  if (params.atom() == AtomModel::kTwoLevel) {
    atoms.push_back({Level::kB, HalfInt{}, 1.0});
    atoms.push_back({Level::kC, HalfInt{}, 1.0});
  } else {
    for (Level level : {Level::kB, Level::kC}) {
      const int tj = (level == Level::kB ? params.j_b() : params.j_c()).twice();
      for (int tm = -tj; tm <= tj; tm += 2) {
        const HalfInt m = HalfInt::from_twice(tm);
        const double a = params.couplings().alpha(m);
        atoms.push_back({level, m, a * a});
      }
    }
  }

  std::vector<double> energies;
  energies.reserve(atoms.size() * (static_cast<std::size_t>(params.n_max()) + 1));
  for (int n = 0; n <= params.n_max(); ++n) {
    for (const auto& a : atoms) {
      energies.push_back(h_eff_energy(n, a.level, a.alpha2, params.omega(), params.c_shift()));
    }
  }
  return Basis(params.n_max(), std::move(atoms), std::move(energies));
}

double DensityMatrix::hermiticity_deviation() const {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

DensityMatrix initial_density(const ModelParams& params) {
  return initial_density(params, build_basis(params));
}

DensityMatrix initial_density(const ModelParams& params, const Basis& basis) {
  const std::vector<double> field = coherent_amplitudes(params.alpha2(), params.n_max());

  std::size_t count_b = 0;
  std::size_t count_c = 0;
  for (const auto& a : basis.atoms()) (a.level == Level::kB ? count_b : count_c)++;

  Eigen::VectorXd atom(static_cast<Eigen::Index>(basis.atomic_dim()));
  for (std::size_t a = 0; a < basis.atomic_dim(); ++a) {
    atom[static_cast<Eigen::Index>(a)] =
        basis.atom(a).level == Level::kB
            ? params.amp_e() / std::sqrt(static_cast<double>(count_b))
            : params.amp_f() / std::sqrt(static_cast<double>(count_c));
  }

  Eigen::VectorXcd psi(static_cast<Eigen::Index>(basis.dim()));
  for (std::size_t k = 0; k < basis.dim(); ++k) {
    psi[static_cast<Eigen::Index>(k)] =
        field[static_cast<std::size_t>(basis.photons(k))] *
        atom[static_cast<Eigen::Index>(basis.atomic_index(k))];
  }
  return {psi * psi.adjoint(), 0.0, Method::kInitial};
}

}  // namespace tpjcm

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

#include "tpjcm/exppoly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tpjcm/errors.hpp"
#include "tpjcm/parallel.hpp"

namespace tpjcm {

ExpPolyEntry::ExpPolyEntry(std::vector<ExpTerm> terms) : terms_(std::move(terms)) {
  canonicalize();
}

ExpPolyEntry ExpPolyEntry::constant(cdouble c) { return ExpPolyEntry({{c, 0, 0.0}}); }

void ExpPolyEntry::canonicalize() {
  for (auto& term : terms_) {
    if (std::abs(term.freq) < kFreqTolerance) term.freq = 0.0;
  }
  std::sort(terms_.begin(), terms_.end(), [](const ExpTerm& a, const ExpTerm& b) {
    return a.power != b.power ? a.power < b.power : a.freq < b.freq;
  });

  std::vector<ExpTerm> merged;
  merged.reserve(terms_.size());
  for (const auto& term : terms_) {
    if (!merged.empty() && merged.back().power == term.power &&
        std::abs(merged.back().freq - term.freq) < kFreqTolerance) {
      merged.back().coeff += term.coeff;
    } else {
      merged.push_back(term);
    }
  }
  std::erase_if(merged, [](const ExpTerm& t) { return std::abs(t.coeff) < kZeroCoeff; });
  terms_ = std::move(merged);
}

cdouble ExpPolyEntry::eval(double t) const {
  cdouble sum = 0.0;
  for (const auto& term : terms_) {
    double tp = 1.0;
    for (int k = 0; k < term.power; ++k) tp *= t;
    sum += term.coeff * tp * std::polar(1.0, term.freq * t);
  }
  return sum;
}

ExpPolyEntry ExpPolyEntry::conjugate() const {
  std::vector<ExpTerm> out = terms_;
  for (auto& term : out) {
    term.coeff = std::conj(term.coeff);
    term.freq = -term.freq;
  }
  return ExpPolyEntry(std::move(out));
}

ExpPolyEntry& ExpPolyEntry::operator+=(const ExpPolyEntry& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  canonicalize();
  return *this;
}

ExpPolyEntry& ExpPolyEntry::operator*=(cdouble scale) {
  for (auto& term : terms_) term.coeff *= scale;
  canonicalize();
  return *this;
}

ExpPolyEntry modulate(const ExpPolyEntry& f, double omega) {
  std::vector<ExpTerm> out = f.terms();
  for (auto& term : out) term.freq += omega;
  return ExpPolyEntry(std::move(out));
}

ExpPolyEntry integrate_zero_to_t(const ExpPolyEntry& f) {
  std::vector<ExpTerm> out;
  for (const auto& term : f.terms()) {
    const int p = term.power;
    if (term.freq == 0.0) {
      out.push_back({term.coeff / static_cast<double>(p + 1), p + 1, 0.0});
      continue;
    }
    // int_0^t s^p e^{iws} ds
    //   = e^{iwt} sum_{k=0}^{p} (-1)^{p-k} p!/k! t^k / (iw)^{p-k+1}  -  (-1)^p p! / (iw)^{p+1}
    const cdouble iw(0.0, term.freq);
    const cdouble inv_iw = 1.0 / iw;
    cdouble ratio = term.coeff * inv_iw;
    for (int k = p; k >= 0; --k) {
      out.push_back({ratio, k, term.freq});
      if (k > 0) ratio *= -static_cast<double>(k) * inv_iw;
    }
    out.push_back({-ratio, 0, 0.0});
  }
  return ExpPolyEntry(std::move(out));
}

ExpPolyMatrix::ExpPolyMatrix(std::size_t dim, int order)
    : dim_(dim), order_(order), entries_(dim * dim) {}

ExpPolyMatrix ExpPolyMatrix::from_matrix(const Eigen::MatrixXcd& m, int order) {
  const auto dim = static_cast<std::size_t>(m.rows());
  ExpPolyMatrix out(dim, order);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      const cdouble v = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (v != cdouble(0.0)) out.set(i, j, ExpPolyEntry::constant(v));
    }
  }
  return out;
}

void ExpPolyMatrix::set(std::size_t i, std::size_t j, ExpPolyEntry value) {
  if (i != j) entries_[j * dim_ + i] = value.conjugate();
  entries_[i * dim_ + j] = std::move(value);
}

std::size_t ExpPolyMatrix::total_terms() const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.size();
  return n;
}

Eigen::MatrixXcd eval(const ExpPolyMatrix& m, double t) {
  const auto dim = static_cast<Eigen::Index>(m.dim());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  parallel_for(m.dim(), [&](std::size_t i) {
    for (std::size_t j = i; j < m.dim(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).eval(t);
    }
  });
  for (Eigen::Index i = 0; i < dim; ++i) {
    out(i, i) = out(i, i).real();
    for (Eigen::Index j = i + 1; j < dim; ++j) out(j, i) = std::conj(out(i, j));
  }
  return out;
}

ExpPolyMatrix apply_dissipator_skeleton(const ExpPolyMatrix& m, const Basis& basis,
                                        Ordering ordering) {
  const std::size_t dim = basis.dim();
  const double shift = ordering == Ordering::kNormal ? 0.0 : 2.0;
  ExpPolyMatrix out(dim, m.order());
  parallel_for(dim, [&](std::size_t i) {
    const int ni = basis.photons(i);
    const auto ri = basis.raised(i);
    for (std::size_t j = i; j < dim; ++j) {
      const int nj = basis.photons(j);
      ExpPolyEntry value = m(i, j) * cdouble(-(ni + nj + shift));
      if (const auto rj = basis.raised(j); ri && rj) {
        const double gain = 2.0 * std::sqrt((ni + 1.0) * (nj + 1.0));
        value += m(*ri, *rj) * cdouble(gain);
      }
      // (i, j >= i) and its mirror are owned by row i alone.
      out.set(i, j, std::move(value));
    }
  });
  return out;
}

void enforce_term_budget(const ExpPolyMatrix& m, std::size_t budget) {
  const std::size_t terms = m.total_terms();
  if (terms > budget) {
    throw NumericalGuardError(
        "exponential-polynomial term budget exceeded: " + std::to_string(terms) + " > " +
            std::to_string(budget) + " at order " + std::to_string(m.order()),
        "lower n_max or the expansion order, or raise the term budget");
  }
}

}  // namespace tpjcm

// Copyright 2026 The twistheat Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "twistheat/poly_jet.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace twistheat {
namespace {

// Exponent vectors of total degree `degree` in lexicographically descending
// order, appended to `out`.
void enumerate_degree(int dim, int degree, std::vector<int>& current,
                      std::vector<int>& out) {
  const int pos = static_cast<int>(current.size());
  if (pos == dim - 1) {
    current.push_back(degree);
    out.insert(out.end(), current.begin(), current.end());
    current.pop_back();
    return;
  }
  for (int e = degree; e >= 0; --e) {
    current.push_back(e);
    enumerate_degree(dim, degree - e, current, out);
    current.pop_back();
  }
}

std::uint64_t pack(std::span<const int> exps) {
  std::uint64_t key = 0;
  for (int e : exps) key = key * 64 + static_cast<std::uint64_t>(e);
  return key;
}

}  // namespace

MonomialBasis::MonomialBasis(int dim, int max_degree)
    : dim_(dim), max_degree_(max_degree) {
  prefix_.assign(max_degree + 1, 0);
  std::vector<int> current;
  for (int d = 0; d <= max_degree; ++d) {
    if (dim == 0) {
      if (d == 0) degrees_.push_back(0);
    } else {
      const std::size_t before = exponents_.size();
      enumerate_degree(dim, d, current, exponents_);
      const std::size_t added = (exponents_.size() - before) / dim;
      degrees_.insert(degrees_.end(), added, d);
    }
    prefix_[d] = static_cast<int>(degrees_.size());
  }
  size_all_ = static_cast<int>(degrees_.size());

  std::unordered_map<std::uint64_t, int> lookup;
  lookup.reserve(size_all_);
  for (int i = 0; i < size_all_; ++i) lookup.emplace(pack(exponent(i)), i);

  product_.assign(static_cast<std::size_t>(size_all_) * size_all_, -1);
  std::vector<int> sum(dim);
  for (int a = 0; a < size_all_; ++a) {
    const int room = max_degree - degrees_[a];
    const int nb = prefix_[room];
    const auto ea = exponent(a);
    for (int b = 0; b < nb; ++b) {
      const auto eb = exponent(b);
      for (int v = 0; v < dim; ++v) sum[v] = ea[v] + eb[v];
      product_[static_cast<std::size_t>(a) * size_all_ + b] = lookup.at(pack(sum));
    }
  }

  deriv_target_.assign(static_cast<std::size_t>(dim) * size_all_, -1);
  for (int v = 0; v < dim; ++v) {
    for (int i = 0; i < size_all_; ++i) {
      const auto e = exponent(i);
      if (e[v] == 0) continue;
      std::vector<int> lowered(e.begin(), e.end());
      --lowered[v];
      deriv_target_[static_cast<std::size_t>(v) * size_all_ + i] =
          lookup.at(pack(lowered));
    }
  }
}

const MonomialBasis& MonomialBasis::get(int dim, int degree) {
  static std::mutex mutex;
  static std::map<int, std::vector<std::unique_ptr<MonomialBasis>>> registry;
  if (dim < 0) throw UsageError("MonomialBasis: negative dimension");
  degree = std::max(degree, 0);
  std::lock_guard<std::mutex> lock(mutex);
  auto& bases = registry[dim];
  if (!bases.empty() && bases.back()->max_degree() >= degree)
    return *bases.back();
  // Older bases stay alive: jets created earlier keep pointing at them.
  bases.push_back(std::unique_ptr<MonomialBasis>(new MonomialBasis(dim, degree)));
  return *bases.back();
}

int MonomialBasis::size(int degree) const {
  if (degree < 0) return 0;
  if (degree > max_degree_)
    throw UsageError("MonomialBasis: degree beyond basis range");
  return prefix_[degree];
}

int MonomialBasis::index_of(std::span<const int> exps) const {
  if (static_cast<int>(exps.size()) != dim_)
    throw UsageError("MonomialBasis: exponent length mismatch");
  const int d = std::accumulate(exps.begin(), exps.end(), 0);
  if (d > max_degree_) return -1;
  for (int i = d == 0 ? 0 : prefix_[d - 1]; i < prefix_[d]; ++i) {
    const auto e = exponent(i);
    if (std::equal(e.begin(), e.end(), exps.begin())) return i;
  }
  return -1;
}

PolyJet::PolyJet(const MonomialBasis* basis, int degree)
    : basis_(basis), degree_(degree) {
  coeffs_.resize(degree < 0 ? 0 : basis->size(degree));
}

PolyJet PolyJet::zero(int dim, int degree) {
  return PolyJet(&MonomialBasis::get(dim, degree), degree);
}

PolyJet PolyJet::constant(int dim, int degree, const Rational& c) {
  PolyJet j = zero(dim, degree);
  if (degree >= 0) j.coeffs_[0] = c;
  return j;
}

PolyJet PolyJet::monomial(int dim, int degree, std::span<const int> exps,
                          const Rational& c) {
  PolyJet j = zero(dim, degree);
  const int idx = j.basis_->index_of(exps);
  if (idx >= 0 && idx < static_cast<int>(j.coeffs_.size())) j.coeffs_[idx] = c;
  return j;
}

PolyJet PolyJet::coordinate(int dim, int degree, int var) {
  std::vector<int> e(dim, 0);
  e.at(var) = 1;
  return monomial(dim, degree, e);
}

Rational PolyJet::coeff(std::span<const int> exps) const {
  const int d = std::accumulate(exps.begin(), exps.end(), 0);
  if (d > degree_) throw TruncationError("PolyJet: coefficient beyond precision");
  if (!basis_) return d == 0 ? coeffs_[0] : Rational(0);
  const int idx = basis_->index_of(exps);
  return coeffs_.at(idx);
}

const Rational& PolyJet::value() const {
  if (degree_ < 0)
    throw TruncationError("PolyJet: value requested from an exhausted jet");
  return coeffs_[0];
}

bool PolyJet::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Rational& r) { return r.is_zero(); });
}

void PolyJet::lift_to(const MonomialBasis* basis, int degree) {
  const Rational c = coeffs_[0];
  basis_ = basis;
  degree_ = degree;
  coeffs_.assign(degree < 0 ? 0 : basis->size(degree), Rational(0));
  if (degree >= 0) coeffs_[0] = c;
}

PolyJet PolyJet::truncated(int d) const {
  if (!basis_ || d >= degree_) return *this;
  PolyJet r = *this;
  r.degree_ = d;
  r.coeffs_.resize(d < 0 ? 0 : basis_->size(d));
  return r;
}

PolyJet& PolyJet::operator+=(const PolyJet& o) {
  if (!o.basis_) {
    if (!coeffs_.empty()) coeffs_[0] += o.coeffs_[0];
    return *this;
  }
  if (!basis_) lift_to(o.basis_, o.degree_);
  if (basis_->dim() != o.basis_->dim())
    throw UsageError("PolyJet: dimension mismatch in addition");
  if (o.basis_->max_degree() > basis_->max_degree()) basis_ = o.basis_;
  if (o.degree_ < degree_) {
    degree_ = o.degree_;
    coeffs_.resize(degree_ < 0 ? 0 : basis_->size(degree_));
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

PolyJet& PolyJet::operator-=(const PolyJet& o) { return *this += -o; }

PolyJet& PolyJet::operator*=(const Rational& c) {
  if (c.is_zero()) {
    for (auto& x : coeffs_) x = Rational(0);
    return *this;
  }
  for (auto& x : coeffs_)
    if (!x.is_zero()) x *= c;
  return *this;
}

PolyJet PolyJet::times(const PolyJet& o, int degree) const {
  if (!basis_ && !o.basis_) return PolyJet(coeffs_[0] * o.coeffs_[0]);
  if (!basis_) return (o * coeffs_[0]).truncated(degree);
  if (!o.basis_) return (*this * o.coeffs_[0]).truncated(degree);
  if (basis_->dim() != o.basis_->dim())
    throw UsageError("PolyJet: dimension mismatch in product");
  const MonomialBasis* b =
      basis_->max_degree() >= o.basis_->max_degree() ? basis_ : o.basis_;
  const int d = std::min({degree_, o.degree_, degree});
  PolyJet r(b, d);
  if (d < 0) return r;
  for (int a = 0; a < b->size(d); ++a) {
    const Rational& ca = coeffs_[a];
    if (ca.is_zero()) continue;
    const int nb = b->size(d - b->degree_of(a));
    for (int k = 0; k < nb; ++k) {
      const Rational& cb = o.coeffs_[k];
      if (cb.is_zero()) continue;
      r.coeffs_[b->product_index(a, k)].add_product(ca, cb);
    }
  }
  return r;
}

PolyJet PolyJet::derivative(int var) const {
  if (!basis_) return PolyJet();
  if (var < 0 || var >= basis_->dim())
    throw UsageError("PolyJet: derivative variable out of range");
  PolyJet r(basis_, degree_ - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    const int t = basis_->derivative_target(var, static_cast<int>(i));
    if (t < 0) continue;
    r.coeffs_[t].add_product(coeffs_[i], Rational(basis_->exponent(i)[var]));
  }
  return r;
}

PolyJet PolyJet::derivative(std::span<const int> exps) const {
  PolyJet r = *this;
  for (std::size_t v = 0; v < exps.size(); ++v)
    for (int k = 0; k < exps[v]; ++k) r = r.derivative(static_cast<int>(v));
  return r;
}

PolyJet PolyJet::rescaled(const Rational& c) const {
  if (!basis_) return *this;
  PolyJet r = *this;
  std::vector<Rational> powers{Rational(1)};
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) {
    const int d = basis_->degree_of(static_cast<int>(i));
    while (static_cast<int>(powers.size()) <= d) powers.push_back(powers.back() * c);
    if (!r.coeffs_[i].is_zero()) r.coeffs_[i] *= powers[d];
  }
  return r;
}

PolyJet PolyJet::embedded(int new_dim, int offset) const {
  if (!basis_) return *this;
  if (offset < 0 || offset + basis_->dim() > new_dim)
    throw UsageError("PolyJet: embedding out of range");
  PolyJet r = zero(new_dim, degree_);
  std::vector<int> e(new_dim, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    std::fill(e.begin(), e.end(), 0);
    const auto src = basis_->exponent(static_cast<int>(i));
    std::copy(src.begin(), src.end(), e.begin() + offset);
    r.coeffs_[r.basis_->index_of(e)] = coeffs_[i];
  }
  return r;
}

PolyJet PolyJet::inverse() const {
  const Rational c0 = value();
  if (c0.is_zero()) throw UsageError("PolyJet: inverse of a jet vanishing at 0");
  if (!basis_) return PolyJet(Rational(1) / c0);
  const Rational inv = Rational(1) / c0;
  // 1/f = (1/c0) * sum_k (-u)^k with u = f/c0 - 1, which has no constant term.
  PolyJet minus_u = *this * (-inv);
  minus_u.coeffs_[0] = Rational(0);
  PolyJet sum = constant(dim(), degree_, Rational(1));
  PolyJet term = sum;
  for (int k = 1; k <= degree_; ++k) {
    term = term * minus_u;
    sum += term;
  }
  return sum * inv;
}

PolyJet PolyJet::exp() const {
  if (!value().is_zero())
    throw UsageError("PolyJet: exp needs a vanishing constant term");
  if (!basis_) return PolyJet(1);
  PolyJet sum = constant(dim(), degree_, Rational(1));
  PolyJet term = sum;
  for (int k = 1; k <= degree_; ++k) {
    term = term * *this * Rational(1, k);
    sum += term;
  }
  return sum;
}

bool operator==(const PolyJet& a, const PolyJet& b) {
  if (a.degree_ != b.degree_ || a.dim() != b.dim()) return false;
  return a.coeffs_ == b.coeffs_;
}

std::string PolyJet::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << coeffs_[i];
    if (basis_) {
      const auto e = basis_->exponent(static_cast<int>(i));
      for (std::size_t v = 0; v < e.size(); ++v) {
        if (e[v] == 0) continue;
        os << "*x" << v + 1;
        if (e[v] > 1) os << "^" << e[v];
      }
    }
  }
  if (first) os << "0";
  if (basis_) os << " + O(" << degree_ + 1 << ")";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const PolyJet& j) {
  return os << j.str();
}

}  // namespace twistheat

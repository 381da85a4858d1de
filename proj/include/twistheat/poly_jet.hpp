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

#pragma once

#include <climits>
#include <span>
#include <string>
#include <vector>

#include "twistheat/rational.hpp"

namespace twistheat {

/// Monomials x^a in `dim` variables with total degree <= max_degree, in
/// graded order: all degree-0 monomials, then degree 1, and so on; inside a
/// degree, exponent vectors are sorted lexicographically descending. Index
/// of a monomial does not depend on max_degree, so a basis built for a
/// larger degree extends a smaller one as a prefix.
class MonomialBasis {
 public:
  /// Shared, immutable basis with max_degree() >= degree. Thread safe; the
  /// returned reference stays valid for the life of the program.
  static const MonomialBasis& get(int dim, int degree);

  int dim() const { return dim_; }
  int max_degree() const { return max_degree_; }
  /// Number of monomials of total degree <= degree.
  int size(int degree) const;
  int degree_of(int index) const { return degrees_[index]; }
  std::span<const int> exponent(int index) const {
    return {exponents_.data() + static_cast<std::size_t>(index) * dim_,
            static_cast<std::size_t>(dim_)};
  }
  /// Index of the monomial with the given exponents; -1 if its degree
  /// exceeds max_degree().
  int index_of(std::span<const int> exps) const;
  /// Index of x^a * x^b, or -1 when the degree exceeds max_degree().
  int product_index(int a, int b) const {
    return product_[static_cast<std::size_t>(a) * size_all_ + b];
  }
  /// d/dx_var of monomial `index` is factor * x^target; target = -1 when the
  /// exponent of var is 0.
  int derivative_target(int var, int index) const {
    return deriv_target_[static_cast<std::size_t>(var) * size_all_ + index];
  }

 private:
  MonomialBasis(int dim, int max_degree);

  int dim_;
  int max_degree_;
  int size_all_;
  std::vector<int> exponents_;
  std::vector<int> degrees_;
  std::vector<int> prefix_;  // prefix_[d] = size(d)
  std::vector<int> product_;
  std::vector<int> deriv_target_;
};

/// Multivariate polynomial in x_1..x_m with rational coefficients, known
/// exactly up to total degree `degree()` (the precision); higher-order
/// terms are unknown. Arithmetic tracks precision: a product or sum is only
/// as precise as its least precise operand, a derivative loses one degree.
///
/// A jet without variables is an exact constant (infinite precision); this
/// is what Scalar(0) and Scalar(1) produce inside Eigen.
class PolyJet {
 public:
  static constexpr int kExact = INT_MAX;

  /// Exact zero.
  PolyJet() : coeffs_(1) {}
  /// Exact constant.
  PolyJet(const Rational& c) : coeffs_{c} {}  // NOLINT
  PolyJet(int c) : coeffs_{Rational(c)} {}    // NOLINT

  /// Zero jet in `dim` variables known to total degree `degree`.
  static PolyJet zero(int dim, int degree);
  /// Constant c in `dim` variables, precision `degree`.
  static PolyJet constant(int dim, int degree, const Rational& c);
  /// c * x^exps, precision `degree`. Terms above `degree` are dropped.
  static PolyJet monomial(int dim, int degree, std::span<const int> exps,
                          const Rational& c = Rational(1));
  /// The coordinate function x_{var} (0-based).
  static PolyJet coordinate(int dim, int degree, int var);

  /// Number of variables; 0 for an exact constant.
  int dim() const { return basis_ ? basis_->dim() : 0; }
  /// Precision. kExact for constants; negative means nothing is known.
  int degree() const { return degree_; }
  bool is_exact_constant() const { return basis_ == nullptr; }
  const MonomialBasis* basis() const { return basis_; }

  /// Number of stored coefficients (graded order).
  std::size_t term_count() const { return coeffs_.size(); }
  const Rational& coeff_at(std::size_t index) const { return coeffs_[index]; }
  Rational& coeff_at(std::size_t index) { return coeffs_[index]; }
  /// Coefficient of x^exps. Throws TruncationError beyond the precision.
  Rational coeff(std::span<const int> exps) const;

  /// Value at the origin. Throws TruncationError if degree() < 0.
  const Rational& value() const;
  /// All known coefficients vanish.
  bool is_zero() const;

  /// Lowers the precision to min(degree(), d).
  PolyJet truncated(int d) const;
  /// d/dx_{var} (0-based), precision degree() - 1.
  PolyJet derivative(int var) const;
  /// Mixed partial derivative, exps[i] times in variable i.
  PolyJet derivative(std::span<const int> exps) const;
  /// Substitutes x -> c x, i.e. multiplies the degree-k part by c^k.
  PolyJet rescaled(const Rational& c) const;
  /// Re-expresses the jet in `new_dim` variables, sending variable i to
  /// variable offset + i.
  PolyJet embedded(int new_dim, int offset) const;
  /// Product truncated to at most `degree` (cheaper than truncating after).
  PolyJet times(const PolyJet& o, int degree) const;
  /// 1 / f for f with nonzero constant term.
  PolyJet inverse() const;
  /// exp(f) for f with zero constant term.
  PolyJet exp() const;

  PolyJet& operator+=(const PolyJet& o);
  PolyJet& operator-=(const PolyJet& o);
  PolyJet& operator*=(const PolyJet& o) { return *this = *this * o; }
  PolyJet& operator*=(const Rational& c);

  friend PolyJet operator+(PolyJet a, const PolyJet& b) { return a += b; }
  friend PolyJet operator-(PolyJet a, const PolyJet& b) { return a -= b; }
  friend PolyJet operator-(PolyJet a) {
    a *= Rational(-1);
    return a;
  }
  friend PolyJet operator*(const PolyJet& a, const PolyJet& b) {
    return a.times(b, kExact);
  }
  friend PolyJet operator*(PolyJet a, const Rational& c) { return a *= c; }
  friend PolyJet operator*(const Rational& c, PolyJet a) { return a *= c; }

  /// Same precision and identical coefficients.
  friend bool operator==(const PolyJet& a, const PolyJet& b);

  /// Human-readable sum of terms, e.g. "1 + 1/2*x1^2*x2 + O(4)".
  std::string str() const;

 private:
  PolyJet(const MonomialBasis* basis, int degree);
  void lift_to(const MonomialBasis* basis, int degree);

  const MonomialBasis* basis_ = nullptr;
  int degree_ = kExact;
  std::vector<Rational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const PolyJet& j);

}  // namespace twistheat

namespace Eigen {

template <>
struct NumTraits<twistheat::PolyJet> : GenericNumTraits<twistheat::PolyJet> {
  using Real = twistheat::PolyJet;
  using NonInteger = twistheat::PolyJet;
  using Literal = twistheat::PolyJet;
  using Nested = twistheat::PolyJet;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 100,
    MulCost = 1000
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

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

#include <Eigen/Core>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "twistheat/poly_jet.hpp"
#include "twistheat/rational.hpp"

namespace twistheat {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RationalMatrix = Mat<Rational>;
using JetMatrix = Mat<PolyJet>;

/// Dense rank-r array over {0..dim-1}^r, row-major (last index fastest).
/// Value type is a scalar (Rational, PolyJet) or a matrix of scalars for
/// endomorphism-valued tensors.
template <typename T>
class Tensor {
 public:
  Tensor() = default;
  Tensor(int dim, int rank, const T& fill = T())
      : dim_(dim), rank_(rank), data_(count(dim, rank), fill) {}

  int dim() const { return dim_; }
  int rank() const { return rank_; }
  std::size_t size() const { return data_.size(); }

  std::size_t offset(std::span<const int> idx) const {
    if (static_cast<int>(idx.size()) != rank_)
      throw UsageError("Tensor: index count does not match rank");
    std::size_t off = 0;
    for (int i : idx) {
      if (i < 0 || i >= dim_) throw UsageError("Tensor: index out of range");
      off = off * dim_ + static_cast<std::size_t>(i);
    }
    return off;
  }
  T& at(std::span<const int> idx) { return data_[offset(idx)]; }
  const T& at(std::span<const int> idx) const { return data_[offset(idx)]; }
  T& operator()(std::initializer_list<int> idx) {
    return at(std::span<const int>(idx.begin(), idx.size()));
  }
  const T& operator()(std::initializer_list<int> idx) const {
    return at(std::span<const int>(idx.begin(), idx.size()));
  }
  T& flat(std::size_t i) { return data_[i]; }
  const T& flat(std::size_t i) const { return data_[i]; }

  /// Multi-index of flat position `i`.
  std::vector<int> unflatten(std::size_t i) const {
    std::vector<int> idx(rank_);
    for (int r = rank_ - 1; r >= 0; --r) {
      idx[r] = static_cast<int>(i % dim_);
      i /= dim_;
    }
    return idx;
  }

  static std::size_t count(int dim, int rank) {
    std::size_t n = 1;
    for (int r = 0; r < rank; ++r) n *= static_cast<std::size_t>(dim);
    return n;
  }

 private:
  int dim_ = 0;
  int rank_ = 0;
  std::vector<T> data_;
};

/// Slot symmetry T(idx permuted by `perm`) = sign * T(idx).
struct SlotSymmetry {
  std::vector<int> perm;
  int sign;
};

/// Rational tensor at the evaluation point, with declared symmetries.
struct PointTensor {
  Tensor<Rational> values;
  std::vector<SlotSymmetry> symmetries;

  PointTensor() = default;
  PointTensor(int dim, int rank) : values(dim, rank, Rational(0)) {}

  int dim() const { return values.dim(); }
  int rank() const { return values.rank(); }
  Rational& operator()(std::initializer_list<int> idx) { return values(idx); }
  const Rational& operator()(std::initializer_list<int> idx) const {
    return values(idx);
  }
  const Rational& at(std::span<const int> idx) const { return values.at(idx); }

  /// Checks every declared symmetry on every entry.
  bool symmetries_hold() const;
  bool is_zero() const;
};

/// Evaluates each entry of a jet tensor at the origin.
PointTensor at_origin(const Tensor<PolyJet>& t);
/// Evaluates each matrix of a matrix-valued jet tensor at the origin.
Tensor<RationalMatrix> at_origin(const Tensor<JetMatrix>& t);
RationalMatrix at_origin(const JetMatrix& m);

}  // namespace twistheat

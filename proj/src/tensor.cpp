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

#include "twistheat/tensor.hpp"

#include <algorithm>

namespace twistheat {

bool PointTensor::symmetries_hold() const {
  std::vector<int> moved(rank());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto idx = values.unflatten(i);
    for (const auto& s : symmetries) {
      for (int r = 0; r < rank(); ++r) moved[r] = idx[s.perm[r]];
      const Rational& a = values.flat(i);
      const Rational& b = values.at(moved);
      if (s.sign > 0 ? !(a == b) : !(a == -b)) return false;
    }
  }
  return true;
}

bool PointTensor::is_zero() const {
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!values.flat(i).is_zero()) return false;
  return true;
}

PointTensor at_origin(const Tensor<PolyJet>& t) {
  PointTensor p(t.dim(), t.rank());
  for (std::size_t i = 0; i < t.size(); ++i) p.values.flat(i) = t.flat(i).value();
  return p;
}

RationalMatrix at_origin(const JetMatrix& m) {
  RationalMatrix r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).value();
  return r;
}

Tensor<RationalMatrix> at_origin(const Tensor<JetMatrix>& t) {
  Tensor<RationalMatrix> r(t.dim(), t.rank());
  for (std::size_t i = 0; i < t.size(); ++i) r.flat(i) = at_origin(t.flat(i));
  return r;
}

}  // namespace twistheat

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

#include "twistheat/jet_matrix.hpp"

#include <algorithm>

#include "twistheat/eps.hpp"

namespace twistheat {

JetMatrix multiply(const JetMatrix& a, const JetMatrix& b, int cap) {
  if (a.cols() != b.rows()) throw UsageError("multiply: shape mismatch");
  JetMatrix r = JetMatrix::Constant(a.rows(), b.cols(), PolyJet());
  for (Eigen::Index k = 0; k < a.cols(); ++k) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const PolyJet& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        const PolyJet& bkj = b(k, j);
        if (bkj.is_zero()) continue;
        r(i, j) += aik.times(bkj, cap);
      }
    }
  }
  return r;
}

JetMatrix commutator(const JetMatrix& a, const JetMatrix& b, int cap) {
  JetMatrix r = multiply(a, b, cap);
  r -= multiply(b, a, cap);
  return r;
}

JetMatrix scale(const PolyJet& s, const JetMatrix& a, int cap) {
  JetMatrix r(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      r(i, j) = a(i, j).is_zero() ? PolyJet() : s.times(a(i, j), cap);
  return r;
}

JetMatrix derivative(const JetMatrix& a, int var) {
  JetMatrix r(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.size(); ++i) r(i) = a(i).derivative(var);
  return r;
}

JetMatrix truncated(const JetMatrix& a, int degree) {
  JetMatrix r(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.size(); ++i) r(i) = a(i).truncated(degree);
  return r;
}

JetMatrix identity(Eigen::Index n) {
  JetMatrix r = JetMatrix::Constant(n, n, PolyJet());
  for (Eigen::Index i = 0; i < n; ++i) r(i, i) = PolyJet(1);
  return r;
}

int min_degree(const JetMatrix& a) {
  int d = PolyJet::kExact;
  for (Eigen::Index i = 0; i < a.size(); ++i) d = std::min(d, a(i).degree());
  return d;
}

bool is_zero(const JetMatrix& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!a(i).is_zero()) return false;
  return true;
}

JetMatrix inverse_near_identity(const JetMatrix& a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw UsageError("inverse_near_identity: not square");
  JetMatrix h = a - identity(n);
  for (Eigen::Index i = 0; i < h.size(); ++i)
    if (!h(i).value().is_zero())
      throw UsageError("inverse_near_identity: matrix is not the identity at 0");
  const int degree = min_degree(a);
  // (I + h)^{-1} = sum_k (-h)^k; h vanishes at 0 so the series stops.
  JetMatrix minus_h = -h;
  JetMatrix sum = identity(n);
  JetMatrix term = identity(n);
  for (int k = 1; k <= degree; ++k) {
    term = multiply(term, minus_h, degree);
    if (is_zero(term)) break;
    sum += term;
  }
  return truncated(sum, degree);
}

PolyJet determinant(const JetMatrix& a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw UsageError("determinant: not square");
  PolyJet det;
  for (const auto& p : permutations(static_cast<int>(n))) {
    PolyJet term(p.sign);
    for (Eigen::Index i = 0; i < n; ++i) {
      const PolyJet& e = a(i, p.image[i]);
      if (e.is_zero()) {
        term = PolyJet();
        break;
      }
      term = term * e;
    }
    det += term;
  }
  return det.truncated(min_degree(a));
}

JetMatrix to_matrix(const Tensor<PolyJet>& t) {
  if (t.rank() != 2) throw UsageError("to_matrix: rank must be 2");
  JetMatrix r(t.dim(), t.dim());
  for (int i = 0; i < t.dim(); ++i)
    for (int j = 0; j < t.dim(); ++j) r(i, j) = t({i, j});
  return r;
}

Tensor<PolyJet> to_tensor(const JetMatrix& a) {
  Tensor<PolyJet> t(static_cast<int>(a.rows()), 2);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t({i, j}) = a(i, j);
  return t;
}

}  // namespace twistheat

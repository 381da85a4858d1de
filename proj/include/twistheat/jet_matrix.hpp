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

// Free functions on matrices of jets. Products take an explicit degree cap
// so callers only pay for the precision they will use.

#pragma once

#include "twistheat/tensor.hpp"

namespace twistheat {

/// A * B with every entry truncated to at most `cap`.
JetMatrix multiply(const JetMatrix& a, const JetMatrix& b,
                   int cap = PolyJet::kExact);
/// A * B - B * A, truncated to `cap`.
JetMatrix commutator(const JetMatrix& a, const JetMatrix& b,
                     int cap = PolyJet::kExact);
/// s * A, truncated to `cap`.
JetMatrix scale(const PolyJet& s, const JetMatrix& a, int cap = PolyJet::kExact);
JetMatrix derivative(const JetMatrix& a, int var);
JetMatrix truncated(const JetMatrix& a, int degree);
/// Identity matrix with exact constant entries.
JetMatrix identity(Eigen::Index n);
/// Smallest entry precision.
int min_degree(const JetMatrix& a);
bool is_zero(const JetMatrix& a);

/// Inverse of a jet matrix equal to the identity at the origin, by the
/// Neumann series.
JetMatrix inverse_near_identity(const JetMatrix& a);
/// Determinant by permutation expansion (dimension <= 8).
PolyJet determinant(const JetMatrix& a);

JetMatrix to_matrix(const Tensor<PolyJet>& rank2);
Tensor<PolyJet> to_tensor(const JetMatrix& a);

}  // namespace twistheat

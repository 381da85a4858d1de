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

// Metric and dilaton jets in normal gauge, the Levi-Civita connection,
// curvature, and the example manifolds.
//
// Sign conventions: R_{ijkl} = g(R(e_i, e_j) e_k, e_l) with
// R(x, y) = [nabla_x, nabla_y] - nabla_[x,y], so R_{1221} = +1 on the unit
// sphere; rho_{ij} = R_{ikkj}, tau = rho_{jj}. Covariant derivative indices
// are appended on the right: T_{...;k} = (nabla_k T)_{...}, and phi_{;ij}
// applies nabla_j after nabla_i.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "twistheat/jet_matrix.hpp"
#include "twistheat/tensor.hpp"

namespace twistheat {

/// The pair (g_{ij}(x), phi(x)) near the origin.
struct MetricDilatonJet {
  int dim = 0;
  int degree = 0;
  Tensor<PolyJet> g;  // rank 2, symmetric
  PolyJet phi;

  /// Throws UsageError unless g is symmetric, g(0) = delta and dg(0) = 0.
  void validate() const;
};

/// Levi-Civita data of a jet as jet fields.
struct LeviCivita {
  int dim = 0;
  Tensor<PolyJet> metric;          // g_{ij}
  Tensor<PolyJet> inverse;         // g^{ij}
  Tensor<PolyJet> christoffel;     // Gamma^k_{ij} stored at (k, i, j)
  PolyJet inverse_volume;          // 1 / det g

  explicit LeviCivita(const MetricDilatonJet& jet);
  const PolyJet& gamma(int k, int i, int j) const { return christoffel({k, i, j}); }
};

/// Christoffel symbols Gamma^k_{ij} at (k, i, j).
Tensor<PolyJet> christoffel(const MetricDilatonJet& jet);

/// Riemann tensor R_{ijkl} as a jet field.
Tensor<PolyJet> riemann_field(const LeviCivita& lc);

/// nabla of a scalar-valued tensor field; the new index is appended last.
Tensor<PolyJet> covariant_derivative(const Tensor<PolyJet>& field,
                                     const LeviCivita& lc);

/// nabla of an endomorphism-valued tensor field with bundle connection
/// one-form `omega` (omega[k] acts on sections as d_k + omega_k). Pass an
/// empty `omega` for the Levi-Civita part alone.
Tensor<JetMatrix> covariant_derivative(const Tensor<JetMatrix>& field,
                                       const LeviCivita& lc,
                                       const std::vector<JetMatrix>& omega);

/// g^{ab} T_{..a b} contraction of the last two slots, as a field.
Tensor<PolyJet> trace_last_two(const Tensor<PolyJet>& field, const LeviCivita& lc);
Tensor<JetMatrix> trace_last_two(const Tensor<JetMatrix>& field,
                                 const LeviCivita& lc);

struct CurvatureOrders {
  int riemann = 2;  // covariant derivatives of R
  int phi = 3;      // highest phi_{;beta} order
  int tau = 0;      // covariant derivatives of tau
};

/// Curvature and dilaton data at the origin.
struct CurvaturePackage {
  int dim = 0;
  std::vector<PointTensor> riemann;  // [r] = nabla^r R, rank 4 + r
  std::vector<PointTensor> phi;      // [r] = phi_{;beta}, |beta| = r; [0] = phi
  std::vector<PointTensor> tau;      // [r] = nabla^r tau
  PointTensor rho;
  Rational scalar;                   // tau at the origin

  const PointTensor& R() const { return riemann.at(0); }
  const PointTensor& dR() const { return riemann.at(1); }
  const PointTensor& d2R() const { return riemann.at(2); }
};

/// Throws TruncationError if the jet degree is below what `orders` needs.
CurvaturePackage curvature(const MetricDilatonJet& jet,
                           const CurvatureOrders& orders = {});

/// Ricci tensor R_{ikkj} and scalar curvature from a point Riemann tensor.
PointTensor ricci_from(const PointTensor& R);
Rational scalar_from(const PointTensor& rho);

// Example manifolds. All are in normal gauge.

MetricDilatonJet make_flat(int dim, int degree);
/// The circle with metric d theta^2 and a caller-supplied dilaton (dim 1).
MetricDilatonJet make_circle_with_dilaton(const PolyJet& phi);
/// Unit round sphere, conformal chart g = delta (1 + |x|^2 / 4)^{-2}.
MetricDilatonJet make_sphere(int dim, int degree);
/// Random symmetric g with g(0) = delta, dg(0) = 0 and random phi; numerators
/// in [-3, 3], denominators in {1, 2, 3}. Deterministic in `seed` on every
/// platform.
MetricDilatonJet make_random(int dim, int degree, std::uint64_t seed,
                             bool with_dilaton = true);

/// Block-diagonal metric and summed dilaton on disjoint coordinate blocks.
MetricDilatonJet product(const MetricDilatonJet& a, const MetricDilatonJet& b);
/// (N x S^1, phi_N, g_N + d theta^2).
MetricDilatonJet extend_by_circle(const MetricDilatonJet& jet);
/// The jet of (phi, c^{-2} g) in rescaled coordinates y = x / c.
MetricDilatonJet rescale(const MetricDilatonJet& jet, const Rational& c);
/// phi -> phi + shift (shift a jet or a constant).
MetricDilatonJet with_dilaton(const MetricDilatonJet& jet, const PolyJet& phi);
/// Lower precision to `degree`.
MetricDilatonJet truncate(const MetricDilatonJet& jet, int degree);

}  // namespace twistheat

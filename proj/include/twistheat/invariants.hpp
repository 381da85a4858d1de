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

// Alternating-symbol invariants of (phi, g), normalized like the heat
// coefficients: every density below is (4 pi)^{m/2} times the local
// formula, i.e. carries the factor 1 / (2^mbar mbar!) with mbar = floor(m/2).
//
// One-form invariants are evaluated as jet fields near the origin so that
// divergences can be taken afterwards; divergence means g^{ab} V_{a;b},
// which is -delta on one-forms.

#pragma once

#include <string>
#include <vector>

#include "twistheat/derham.hpp"
#include "twistheat/eps.hpp"
#include "twistheat/heatcoeff.hpp"

namespace twistheat {

/// A one-form field (a FormField of degree 1).
using OneFormInvariantField = FormField;

/// 1 / (2^mbar mbar!).
Rational eps_normalization(int m);

/// eps R_{J,1}^{I,m} / (2^mbar mbar!) at the origin; m even.
Rational pfaffian_density(const MetricDilatonJet& jet);
/// 2 eps phi_{;i1 j1} R_{J,2}^{I,m} / (2^mbar mbar!) at the origin; m odd.
Rational odd_divergence_density(const MetricDilatonJet& jet);

/// The three divergence pieces of the even-dimensional formula, before
/// normalization: div Xi^1, Laplacian of eps R_{J,1}^{I,m}, div Xi^3.
struct EvenDivergenceTerms {
  Rational div_xi1;
  Rational laplace_pfaffian;
  Rational div_xi3;
};
EvenDivergenceTerms even_divergence_terms(const MetricDilatonJet& jet);
/// (4 mbar div Xi^1 + 1/12 Lap(eps R) + mbar/6 div Xi^3) / (2^mbar mbar!);
/// m even, jet degree >= 4.
Rational even_divergence_density(const MetricDilatonJet& jet);

/// Names "Xi1".."Xi5", "Theta1".."Theta4".
const std::vector<std::string>& one_form_invariant_names();
/// The eps-contraction pattern behind a named one-form invariant.
const std::string& one_form_invariant_pattern(const std::string& name);
/// phi^ell times the named invariant, as a field. Requires m even and the
/// parity of ell that keeps the invariant even in phi.
OneFormInvariantField xi_theta_eval(const std::string& name, int ell,
                                    const MetricDilatonJet& jet);
/// Same contraction for an arbitrary pattern (no parity check).
OneFormInvariantField eval_one_form_pattern(const std::string& pattern, int ell,
                                            const MetricDilatonJet& jet);
/// Scalar eps contraction evaluated as a field.
PolyJet eval_scalar_pattern(const std::string& pattern, const MetricDilatonJet& jet);

struct IdentityResidual {
  std::string identity;
  OneFormInvariantField residual;
  bool vanishes() const;
};
/// The five contraction identities among Xi and Theta; each residual
/// must vanish as a field. `ell_odd` is used for the four identities
/// with an odd power of phi and `ell_even` for the last one.
std::vector<IdentityResidual> lemma34_identities(const MetricDilatonJet& jet, int ell_odd = 1,
                                                 int ell_even = 0);

/// delta of a one-form field, evaluated at the origin.
Rational codifferential_of_field(const OneFormInvariantField& field, const MetricDilatonJet& jet);

struct RestrictionReport {
  int dim = 0;  // dimension after extension
  Rational supertrace;
  Rational even_divergence;
  bool vanishes() const { return supertrace.is_zero() && even_divergence.is_zero(); }
};
/// Extends `jet` by a flat circle and evaluates a_hat_{m+2} and the even
/// divergence density of the extension (m = jet.dim + 1, even).
RestrictionReport restriction_kernel_check(const MetricDilatonJet& jet,
                                           const SupertraceOptions& options = {});

}  // namespace twistheat

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

// Local heat-trace coefficients of Laplace-type operators at the origin.
//
// Every value here is normalized: a_hat(n, m) = (4 pi)^{m/2} a(n, m), which is
// an exact rational. The coefficient formulas are data: each a_n is a list
// of (rational coefficient, term pattern) pairs, where a pattern is a
// product of atoms such as "R[ijkl;n] R[ijkl;n]" or "rho[jk] E[;jk]".
// Atoms: R, rho, tau (curvature, times Id), E, Omega (bundle endomorphisms).
// Letters after ';' are covariant derivative indices. Every letter occurs
// exactly twice and is summed; bundle atoms multiply as matrices in the
// written order and the product is traced. The empty pattern is Tr Id.

#pragma once

#include <string>
#include <vector>

#include "twistheat/derham.hpp"

namespace twistheat {

struct CoefficientTerm {
  Rational coefficient;
  std::string pattern;
};

/// The term list of a_n, n in {0, 2, 4, 6}.
const std::vector<CoefficientTerm>& coefficient_terms(int n);
/// Weight of a pattern: 2 per atom plus one per derivative letter.
int pattern_weight(const std::string& pattern);
/// True if the pattern contains no bundle atom (a multiple of Id).
bool is_identity_term(const std::string& pattern);

/// Curvature data needed by the coefficient formulas, with derivatives of
/// rho obtained by contracting those of R.
struct CurvatureAtoms {
  CurvaturePackage cp;
  std::vector<PointTensor> rho;  // [r] = nabla^r rho
};

CurvatureAtoms curvature_atoms(const MetricDilatonJet& jet, int n);
/// Derivative orders of E and Omega that a_n consumes.
BundleOrders bundle_orders_for(int n);

struct CoefficientOptions {
  /// Skip every term proportional to Id (used to confirm they cancel in
  /// the supertrace).
  bool drop_identity_terms = false;
};

/// a_hat_n of one bundle. Throws UsageError if n is unsupported or data
/// for a needed derivative order is missing.
Rational a_n(int n, const BundleData& bd, const CurvatureAtoms& atoms,
             const CoefficientOptions& options = {});
/// Evaluates a single pattern (no coefficient).
Rational evaluate_pattern(const std::string& pattern, const BundleData& bd,
                          const CurvatureAtoms& atoms);

struct SupertraceOptions {
  CoefficientOptions coefficients;
  /// Worker threads across form degrees; 1 runs inline.
  int workers = 1;
};

/// a_hat_n of Delta_phi on p-forms.
Rational heat_coefficient(int n, const MetricDilatonJet& jet, int p,
                          const SupertraceOptions& options = {});
/// sum_p (-1)^p a_hat_n(Delta_phi^p). Needs jet degree >= n; reports the
/// required degree otherwise.
Rational supertrace(int n, const MetricDilatonJet& jet, const SupertraceOptions& options = {});

struct ProductCheck {
  Rational lhs;  // supertrace of the product
  Rational rhs;  // convolution of the factors' supertraces
  bool equal() const { return lhs == rhs; }
};

/// Compares supertrace(n, A x B) with sum over even n1 + n2 = n,
/// n1 >= dim A, n2 >= dim B, of supertrace(n1, A) supertrace(n2, B).
ProductCheck product_check(const MetricDilatonJet& a, const MetricDilatonJet& b, int n,
                           const SupertraceOptions& options = {});

}  // namespace twistheat

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

// Named verification suites comparing independent pipelines exactly, and
// their line-delimited report format.
//
// Each suite expands into a deterministic list of cases (dimension, trial,
// seed = base seed + trial). Cases may run on several workers; records are
// always emitted in case order.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistheat/geometry.hpp"

namespace twistheat {

struct CaseRecord {
  int id = 0;
  std::uint64_t seed = 0;
  int dim = 0;
  int n = 0;
  std::string quantity;  // what lhs and rhs measure
  Rational lhs, rhs;
  long elapsed_ms = 0;

  bool equal() const { return lhs == rhs; }
};

struct VerificationReport {
  std::string suite;
  std::vector<CaseRecord> cases;

  bool pass() const;
  int failures() const;
};

struct SuiteOptions {
  int trials = 3;
  std::uint64_t seed = 1;
  std::vector<int> dims;  // empty: the suite's default dimensions
  int degree = 0;         // jet degree override; 0 picks what the suite needs
  int parallel = 1;       // workers over cases and form degrees
  /// Replaces the random jets: every case uses this jet (or, for suites
  /// on extensions and products, this jet as the first factor).
  std::optional<MetricDilatonJet> jet;
};

/// thm1-1-vanishing, thm1-1-pfaffian, thm1-1-odd, thm1-2, lemma2-3-product,
/// lemma3-1-kernel, lemma3-4-identities, euler-sphere.
const std::vector<std::string>& suite_names();

/// Throws UsageError for an unknown suite or unsupported dimension, and
/// TruncationError if a degree override is too low.
VerificationReport run_suite(const std::string& name, const SuiteOptions& options = {});

/// "num/den", with den = 1 written out.
std::string rational_record(const Rational& r);

/// One JSON object per case followed by a summary object, newline
/// separated. With `timing` false elapsed times are written as 0 so that
/// reports are byte-identical across runs.
std::string report_lines(const VerificationReport& report, bool timing = true);

}  // namespace twistheat

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

// JSON form of a MetricDilatonJet:
//
//   {"dim": 2, "degree": 4,
//    "metric": [{"i": 0, "j": 0, "terms": [[[2, 0], "-1", "2"], ...]}, ...],
//    "dilaton": [[[1, 1], "3", "1"], ...]}
//
// Each term is [exponent tuple, numerator, denominator]; integers are
// decimal strings so no precision is lost. Metric entries list i <= j only.
// Terms absent from the document are zero. Writing is canonical: graded
// monomial order, zero terms omitted, so write(read(write(j))) == write(j).

#pragma once

#include <string>

#include "twistheat/geometry.hpp"

namespace twistheat {

class JetFormatError : public UsageError {
 public:
  using UsageError::UsageError;
};

std::string jet_to_json(const MetricDilatonJet& jet);
/// Throws JetFormatError on malformed input; validates the normal gauge.
MetricDilatonJet jet_from_json(const std::string& text);

MetricDilatonJet read_jet_file(const std::string& path);
void write_jet_file(const std::string& path, const MetricDilatonJet& jet);

}  // namespace twistheat

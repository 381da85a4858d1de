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

#include "twistheat/eps.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace twistheat {

const std::vector<Permutation>& permutations(int m) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<std::vector<Permutation>>> cache;
  if (m < 0 || m > 8) throw UsageError("permutations: unsupported size");
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[m];
  if (!slot) {
    slot = std::make_unique<std::vector<Permutation>>();
    std::vector<int> p(m);
    std::iota(p.begin(), p.end(), 0);
    do {
      int inversions = 0;
      for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
          if (p[a] > p[b]) ++inversions;
      slot->push_back({p, inversions % 2 == 0 ? 1 : -1});
    } while (std::next_permutation(p.begin(), p.end()));
  }
  return *slot;
}

Rational eps_sign(std::span<const int> I, std::span<const int> J, int m) {
  if (I.size() != J.size()) throw UsageError("eps_sign: tuple lengths differ");
  for (int v : I)
    if (v < 1 || v > m) throw UsageError("eps_sign: index out of range");
  for (int v : J)
    if (v < 1 || v > m) throw UsageError("eps_sign: index out of range");
  const std::size_t n = I.size();
  // Position of each I entry inside J; repeated or missing entries give 0.
  std::vector<int> where(n, -1);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b)
      if (I[a] == I[b] || J[a] == J[b]) return Rational(0);
    for (std::size_t b = 0; b < n; ++b)
      if (J[b] == I[a]) where[a] = static_cast<int>(b);
    if (where[a] < 0) return Rational(0);
  }
  int inversions = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (where[a] > where[b]) ++inversions;
  return Rational(inversions % 2 == 0 ? 1 : -1);
}

namespace {

IndexRef parse_index(const std::string& tok, const std::string& text) {
  if (tok.empty()) throw UsageError("pattern: empty index in '" + text + "'");
  if ((tok[0] == 'i' || tok[0] == 'j') && tok.size() > 1) {
    for (std::size_t k = 1; k < tok.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(tok[k])))
        throw UsageError("pattern: bad index '" + tok + "'");
    const int pos = std::stoi(tok.substr(1));
    if (pos < 1) throw UsageError("pattern: bad position '" + tok + "'");
    return {tok[0] == 'i' ? IndexRef::Kind::kI : IndexRef::Kind::kJ, pos, 0};
  }
  if (tok.size() == 1 && std::islower(static_cast<unsigned char>(tok[0])) &&
      tok[0] != 'i' && tok[0] != 'j')
    return {IndexRef::Kind::kLetter, 0, tok[0]};
  throw UsageError("pattern: bad index '" + tok + "' in '" + text + "'");
}

}  // namespace

ContractionPattern ContractionPattern::parse(std::string_view text_view) {
  ContractionPattern p;
  p.text = std::string(text_view);
  std::istringstream in(p.text);
  std::string word;
  while (in >> word) {
    const auto open = word.find('[');
    if (open == std::string::npos || word.back() != ']')
      throw UsageError("pattern: expected name[...] in '" + p.text + "'");
    const std::string name = word.substr(0, open);
    const std::string body = word.substr(open + 1, word.size() - open - 2);
    std::vector<std::string> toks;
    std::stringstream ss(body);
    std::string t;
    while (std::getline(ss, t, ',')) toks.push_back(t);
    if (name == "chain") {
      if (toks.size() != 1) throw UsageError("pattern: chain takes one start");
      p.chain_start = std::stoi(toks[0]);
      if (p.chain_start < 1) throw UsageError("pattern: chain start must be >= 1");
    } else if (name == "e") {
      if (toks.size() != 1 || p.free_index)
        throw UsageError("pattern: exactly one free index e[...] allowed");
      p.free_index = parse_index(toks[0], p.text);
    } else {
      FactorSpec f{name, {}};
      for (const auto& tok : toks) f.slots.push_back(parse_index(tok, p.text));
      p.factors.push_back(std::move(f));
    }
  }
  if (p.free_index && p.free_index->kind != IndexRef::Kind::kLetter) {
    for (const auto& f : p.factors)
      for (const auto& s : f.slots)
        if (s == *p.free_index)
          throw UsageError("pattern: free alternated slot reused in a factor");
  }
  return p;
}

Rational eps_contract_point(const ContractionPattern& pattern,
                            const TensorMap<Rational>& tensors, int m) {
  if (pattern.is_one_form())
    throw UsageError("eps_contract_point: pattern is one-form valued");
  return eps_contract(pattern, tensors, ContractionMetric<Rational>::frame(m))[0];
}

}  // namespace twistheat

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

// Alternating-symbol contractions.
//
// Frame indices inside tensors are 0-based. The notation-level helpers
// eps_sign and curly_r take 1-based index tuples and 1-based chain
// positions so they read like the formulas they evaluate.

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "twistheat/tensor.hpp"

namespace twistheat {

struct Permutation {
  std::vector<int> image;  // 0-based
  int sign;
};

/// All m! permutations of {0..m-1} with their signs, lexicographic order.
const std::vector<Permutation>& permutations(int m);

/// Sign of the permutation carrying I to J (1-based entries in 1..m);
/// 0 if either tuple repeats an index or J is not a rearrangement of I.
Rational eps_sign(std::span<const int> I, std::span<const int> J, int m);

/// Chained curvature product
///   R(i_s, i_{s+1}, j_{s+1}, j_s) * ... * R(i_{t-1}, i_t, j_t, j_{t-1})
/// with 1-based positions s, t into the 1-based tuples I, J. Equals 1 when
/// t < s; an odd-length window is a malformed contraction.
template <typename Scalar>
Scalar curly_r(std::span<const int> I, std::span<const int> J, int s, int t,
               const Tensor<Scalar>& R) {
  if (t < s) return Scalar(1);
  if ((t - s + 1) % 2 != 0)
    throw UsageError("curly_r: window length must be even");
  if (s < 1 || t > static_cast<int>(I.size()) || t > static_cast<int>(J.size()))
    throw UsageError("curly_r: window outside the index tuples");
  Scalar prod(1);
  for (int b = s; b < t; b += 2) {
    const int idx[4] = {I[b - 1] - 1, I[b] - 1, J[b] - 1, J[b - 1] - 1};
    prod = prod * R.at(idx);
  }
  return prod;
}

/// One index slot of a contraction pattern: an alternated position i_p or
/// j_p (1-based p), or a named letter contracted in pairs (or left free).
struct IndexRef {
  enum class Kind { kI, kJ, kLetter };
  Kind kind;
  int pos = 0;
  char letter = 0;
  friend bool operator==(const IndexRef&, const IndexRef&) = default;
};

struct FactorSpec {
  std::string tensor;
  std::vector<IndexRef> slots;
};

/// Declarative eps-contraction. Text form, whitespace separated:
///
///   phi2[i1,j1] phi1[i2] chain[3] e[j2]
///
/// `name[...]` is a tensor factor, `chain[s]` the curvature chain from
/// position s to m, `e[x]` the free one-form index (an alternated slot or a
/// letter). Letters other than i/j occurring twice are contracted with the
/// inverse metric. A pattern with no `e[...]` is scalar valued.
struct ContractionPattern {
  std::vector<FactorSpec> factors;
  int chain_start = 0;  // 0: no chain factor
  std::optional<IndexRef> free_index;
  std::string text;

  static ContractionPattern parse(std::string_view text);
  bool is_one_form() const { return free_index.has_value(); }
};

/// Metric data for a contraction. At the evaluation point in normal gauge the
/// frame is orthonormal and only `dim` is used; for jet fields the inverse
/// metric, metric and 1/det g enter.
template <typename Scalar>
struct ContractionMetric {
  int dim = 0;
  bool orthonormal = true;
  Tensor<Scalar> inverse;
  Tensor<Scalar> metric;
  Scalar inverse_volume = Scalar(1);

  static ContractionMetric frame(int m) {
    ContractionMetric c;
    c.dim = m;
    return c;
  }
};

template <typename Scalar>
using TensorMap = std::map<std::string, const Tensor<Scalar>*>;

namespace detail {

inline bool is_zero_value(const Rational& r) { return r.is_zero(); }
inline bool is_zero_value(const PolyJet& j) { return j.is_zero(); }

struct ResolvedSlot {
  IndexRef::Kind kind;
  int pos;     // 0-based position for i/j
  int letter;  // letter id for kLetter
};

}  // namespace detail

/// Sums eps_J^I * (product of factors) over all permutation pairs (I, J)
/// and contracted letters. Returns one entry for a scalar pattern and `dim`
/// covector components for a one-form pattern. Slots referring to positions
/// beyond m make the whole pattern vanish.
template <typename Scalar>
std::vector<Scalar> eps_contract(const ContractionPattern& pattern,
                                 const TensorMap<Scalar>& tensors,
                                 const ContractionMetric<Scalar>& metric) {
  using detail::ResolvedSlot;
  const int m = metric.dim;
  const bool one_form = pattern.is_one_form();
  std::vector<Scalar> out(one_form ? m : 1, Scalar(0));

  // Letters: count occurrences, assign ids.
  std::map<char, int> letter_count;
  for (const auto& f : pattern.factors)
    for (const auto& s : f.slots)
      if (s.kind == IndexRef::Kind::kLetter) ++letter_count[s.letter];
  std::optional<char> free_letter;
  if (one_form && pattern.free_index->kind == IndexRef::Kind::kLetter)
    free_letter = pattern.free_index->letter;
  std::map<char, int> letter_id;
  std::vector<char> pair_letters;
  for (const auto& [letter, n] : letter_count) {
    if (free_letter && letter == *free_letter) {
      if (n != 1)
        throw UsageError("eps_contract: free letter must occur once: " +
                         pattern.text);
    } else if (n != 2) {
      throw UsageError("eps_contract: letter must occur twice: " + pattern.text);
    } else {
      pair_letters.push_back(letter);
    }
    letter_id.emplace(letter, static_cast<int>(letter_id.size()));
  }
  if (free_letter && !letter_count.count(*free_letter))
    throw UsageError("eps_contract: free letter unused: " + pattern.text);

  struct Factor {
    const Tensor<Scalar>* tensor;
    std::vector<ResolvedSlot> slots;
  };
  std::vector<Factor> factors;
  for (const auto& f : pattern.factors) {
    auto it = tensors.find(f.tensor);
    if (it == tensors.end() || it->second == nullptr)
      throw UsageError("eps_contract: missing tensor '" + f.tensor + "'");
    if (it->second->rank() != static_cast<int>(f.slots.size()))
      throw UsageError("eps_contract: slot count of '" + f.tensor +
                       "' does not match its rank");
    if (it->second->dim() != m)
      throw UsageError("eps_contract: tensor dimension mismatch");
    Factor rf{it->second, {}};
    for (const auto& s : f.slots) {
      if (s.kind != IndexRef::Kind::kLetter && s.pos > m) return out;
      rf.slots.push_back({s.kind, s.pos - 1,
                          s.kind == IndexRef::Kind::kLetter ? letter_id.at(s.letter)
                                                            : -1});
    }
    factors.push_back(std::move(rf));
  }
  if (one_form && pattern.free_index->kind != IndexRef::Kind::kLetter &&
      pattern.free_index->pos > m)
    return out;
  const Tensor<Scalar>* chain_r = nullptr;
  if (pattern.chain_start > 0 && pattern.chain_start <= m) {
    auto it = tensors.find("R");
    if (it == tensors.end()) throw UsageError("eps_contract: chain needs 'R'");
    chain_r = it->second;
    if ((m - pattern.chain_start + 1) % 2 != 0)
      throw UsageError("eps_contract: chain window of odd length");
  }

  // Letter value slots: first occurrence uses value a, second uses b, and
  // the term is weighted by g^{ab} (delta in an orthonormal frame).
  const int n_letters = static_cast<int>(letter_id.size());
  std::vector<int> first_value(n_letters), second_value(n_letters);
  std::vector<int> seen(n_letters);

  // Chain values depend only on (I, J) restricted to the chain window.
  std::unordered_map<std::uint64_t, Scalar> chain_cache;
  auto chain_value = [&](const std::vector<int>& I,
                         const std::vector<int>& J) -> const Scalar& {
    std::uint64_t key = 0;
    for (int p = pattern.chain_start - 1; p < m; ++p)
      key = (key * m + I[p]) * m + J[p];
    auto it = chain_cache.find(key);
    if (it != chain_cache.end()) return it->second;
    Scalar prod(1);
    for (int b = pattern.chain_start - 1; b + 1 < m; b += 2) {
      const int idx[4] = {I[b], I[b + 1], J[b + 1], J[b]};
      const Scalar& r = chain_r->at(idx);
      if (detail::is_zero_value(r)) {
        prod = Scalar(0);
        break;
      }
      prod = prod * r;
    }
    return chain_cache.emplace(key, std::move(prod)).first->second;
  };

  std::vector<int> idx_buf;
  const auto& perms = permutations(m);
  const int n_pairs = static_cast<int>(pair_letters.size());
  const int free_id = free_letter ? letter_id.at(*free_letter) : -1;

  for (const auto& pi : perms) {
    for (const auto& pj : perms) {
      const int sign = pi.sign * pj.sign;
      Scalar base(1);
      if (chain_r) {
        const Scalar& c = chain_value(pi.image, pj.image);
        if (detail::is_zero_value(c)) continue;
        base = c;
      }
      int out_index = 0;
      if (one_form && !free_letter) {
        const auto& fi = *pattern.free_index;
        out_index = (fi.kind == IndexRef::Kind::kI ? pi.image : pj.image)[fi.pos - 1];
      }
      // Enumerate letter values: each pair letter takes (a, b), a == b in an
      // orthonormal frame; the free letter takes a single value.
      const int per_pair = metric.orthonormal ? m : m * m;
      std::size_t combos = 1;
      for (int p = 0; p < n_pairs; ++p) combos *= per_pair;
      if (free_letter) combos *= m;
      for (std::size_t combo = 0; combo < combos; ++combo) {
        std::size_t rest = combo;
        Scalar weight(sign);
        for (int p = 0; p < n_pairs; ++p) {
          const int id = letter_id.at(pair_letters[p]);
          const int v = static_cast<int>(rest % per_pair);
          rest /= per_pair;
          if (metric.orthonormal) {
            first_value[id] = second_value[id] = v;
          } else {
            first_value[id] = v / m;
            second_value[id] = v % m;
            const int gi[2] = {first_value[id], second_value[id]};
            weight = weight * metric.inverse.at(gi);
          }
        }
        if (free_letter) {
          first_value[free_id] = static_cast<int>(rest % m);
          out_index = first_value[free_id];
        }
        if (detail::is_zero_value(weight)) continue;
        Scalar term = weight * base;
        std::fill(seen.begin(), seen.end(), 0);
        bool zero = false;
        for (const auto& f : factors) {
          idx_buf.clear();
          for (const auto& s : f.slots) {
            switch (s.kind) {
              case IndexRef::Kind::kI:
                idx_buf.push_back(pi.image[s.pos]);
                break;
              case IndexRef::Kind::kJ:
                idx_buf.push_back(pj.image[s.pos]);
                break;
              case IndexRef::Kind::kLetter:
                idx_buf.push_back(seen[s.letter]++ == 0 ? first_value[s.letter]
                                                        : second_value[s.letter]);
                break;
            }
          }
          const Scalar& v = f.tensor->at(idx_buf);
          if (detail::is_zero_value(v)) {
            zero = true;
            break;
          }
          term = term * v;
        }
        if (!zero) out[out_index] += term;
      }
    }
  }

  if (!metric.orthonormal) {
    if (one_form && !free_letter) {
      std::vector<Scalar> lowered(m, Scalar(0));
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          const int gi[2] = {c, d};
          lowered[c] += metric.metric.at(gi) * out[d];
        }
      out = std::move(lowered);
    }
    for (auto& v : out) v = v * metric.inverse_volume;
  }
  return out;
}

/// Scalar convenience wrapper at the evaluation point (orthonormal frame).
Rational eps_contract_point(const ContractionPattern& pattern,
                            const TensorMap<Rational>& tensors, int m);

}  // namespace twistheat

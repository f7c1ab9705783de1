/*
 * Copyright 2026 the fspc authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "fspc/errors.hpp"
#include "fspc/rational.hpp"
#include "fspc/rng.hpp"
#include "fspc/threshold.hpp"

namespace fspc {

/// The true member set a computed cluster is judged against.
struct GroundTruth {
  std::set<std::string> case_ids;
};

struct Metrics {
  Rational recall;
  Rational precision;
  Rational f1;
};

/// Draws a uniformly random k-subset of P as the training ids. Deterministic
/// per (P, k, seed): ids are put in sorted order before the draw, so set
/// iteration quirks cannot change the result.
inline SampleSet split_sample(const std::set<std::string>& P, std::size_t k, std::uint64_t seed) {
  if (k < 1 || k > P.size()) {
    throw DataError("training size k must be in [1, " + std::to_string(P.size()) + "], got " +
                    std::to_string(k));
  }
  std::vector<std::string> ids(P.begin(), P.end());
  SplitMix64 rng(seed);
  // Partial Fisher-Yates: the first k slots end up a uniform k-subset.
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(ids.size() - i));
    std::swap(ids[i], ids[j]);
  }
  SampleSet sample;
  sample.all_ids = P;
  sample.train_ids.insert(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k));
  return sample;
}

/// Recall, precision, and F1 of a computed cluster against the truth, as
/// exact rationals. Precision of an empty cluster is 0, and F1 is 0 whenever
/// precision + recall is 0.
inline Metrics metrics(const std::set<std::string>& C, const GroundTruth& truth) {
  if (truth.case_ids.empty()) throw DataError("ground truth is empty");
  std::int64_t hit = 0;
  for (const auto& id : C) hit += truth.case_ids.count(id);

  Metrics m;
  m.recall = Rational(hit, static_cast<std::int64_t>(truth.case_ids.size()));
  m.precision = C.empty() ? Rational(0) : Rational(hit, static_cast<std::int64_t>(C.size()));
  const Rational sum = m.precision + m.recall;
  m.f1 = sum == Rational(0) ? Rational(0) : Rational(2) * m.precision * m.recall / sum;
  return m;
}

inline nlohmann::json metrics_report(const Metrics& m, std::size_t cluster_size,
                                     std::size_t truth_size, std::size_t intersection) {
  nlohmann::json j;
  j["recall"] = to_double(m.recall);
  j["precision"] = to_double(m.precision);
  j["f1"] = to_double(m.f1);
  j["cluster_size"] = cluster_size;
  j["truth_size"] = truth_size;
  j["intersection"] = intersection;
  return j;
}

}  // namespace fspc

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

#include <string>
#include <vector>

#include "fspc/event_log.hpp"
#include "fspc/rng.hpp"

namespace fixtures {

// Three training traces over {A..F} sharing exactly the subsequences
// <A,C,D,F> and <A,E,F>: E sits before, between, and after C/D in turn, so
// no longer pattern involving E is common to all three. At a 0.8 minimum
// support over 3 traces, frequent means present in all 3, which yields
// 5 singletons, 8 pairs, and exactly those two closed patterns.
inline std::vector<fspc::LabelSequence> worked_training() {
  return {
      {"s1", {"A", "E", "C", "D", "F"}},
      {"s2", {"A", "C", "E", "D", "F"}},
      {"s3", {"A", "C", "D", "E", "F"}},
  };
}

// A probe trace outside the training set: carries <A,C,D,F> (plus a label
// the bundle does not know) but no E, so it matches 4 singletons, the 6
// pairs within <A,C,D,F>, and 1 closed pattern.
inline fspc::LabelSequence worked_probe() {
  return {"s4", {"A", "B", "C", "D", "F"}};
}

// Small random label collections for property tests and oracle comparison.
inline std::vector<fspc::LabelSequence> random_collection(fspc::SplitMix64& rng,
                                                          std::size_t max_traces = 8,
                                                          std::size_t max_alphabet = 6,
                                                          std::size_t max_len = 8) {
  const std::size_t n_traces = 1 + rng.below(max_traces);
  const std::size_t alphabet = 1 + rng.below(max_alphabet);
  std::vector<fspc::LabelSequence> collection;
  for (std::size_t t = 0; t < n_traces; ++t) {
    fspc::LabelSequence seq;
    seq.case_id = "t" + std::to_string(t);
    const std::size_t len = rng.below(max_len + 1);
    for (std::size_t i = 0; i < len; ++i) {
      seq.labels.push_back(std::string(1, static_cast<char>('a' + rng.below(alphabet))));
    }
    collection.push_back(std::move(seq));
  }
  return collection;
}

}  // namespace fixtures

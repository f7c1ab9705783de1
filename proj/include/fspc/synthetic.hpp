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
#include <cstdio>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fspc/errors.hpp"
#include "fspc/evaluate.hpp"
#include "fspc/event_log.hpp"
#include "fspc/rng.hpp"

namespace fspc {

/// Recipe for a planted-cluster benchmark log: background traces are uniform
/// noise; cluster members additionally carry a few signature patterns that a
/// miner should be able to recover from a small sample.
struct SyntheticSpec {
  std::int64_t n_cases = 10000;
  std::int32_t alphabet_size = 200;
  std::pair<std::int32_t, std::int32_t> trace_len_range{20, 60};
  std::int64_t cluster_size = 300;
  std::int32_t n_signature_patterns = 5;
  std::pair<std::int32_t, std::int32_t> signature_len_range{3, 5};
  double embed_prob = 0.9;       // chance each signature is planted in a member trace
  double noise_label_rate = 0.3; // chance a member-trace position is a random label
  std::uint64_t seed = 0;
};

struct SyntheticResult {
  EventLog log;
  GroundTruth truth;
  std::vector<std::vector<std::string>> signatures;  // as labels under the default labeler
};

namespace detail {

// Alphabet symbol -> (activity, diagnosis code). Ten diagnosis codes are
// cycled so composite labels genuinely need both parts to be distinct.
inline std::string synthetic_activity(std::int32_t symbol) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "act%03d", symbol / 10);
  return buf;
}

inline std::string synthetic_diag(std::int32_t symbol) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "dgc%d", symbol % 10);
  return buf;
}

inline std::string synthetic_case_id(std::int64_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "c%08lld", static_cast<long long>(index));
  return buf;
}

// Uniformly random interleaving of the chosen signatures, each kept in its
// own order.
inline std::vector<std::int32_t> merge_signatures(
    const std::vector<const std::vector<std::int32_t>*>& chosen, SplitMix64& rng) {
  std::vector<std::int32_t> merged;
  std::vector<std::size_t> taken(chosen.size(), 0);
  std::size_t remaining = 0;
  for (const auto* sig : chosen) remaining += sig->size();
  merged.reserve(remaining);
  while (remaining > 0) {
    std::uint64_t pick = rng.below(remaining);
    for (std::size_t s = 0; s < chosen.size(); ++s) {
      const std::size_t left = chosen[s]->size() - taken[s];
      if (pick < left) {
        merged.push_back((*chosen[s])[taken[s]++]);
        break;
      }
      pick -= left;
    }
    --remaining;
  }
  return merged;
}

}  // namespace detail

/// Generates the benchmark log, its ground truth, and the planted signatures.
/// Every trace draws from its own substream of the seed, so the output is
/// bit-identical across runs and platforms regardless of generation order.
///
/// Member traces are emitted position by position: with probability
/// noise_label_rate the position gets a uniformly random label, otherwise the
/// next symbol of the (randomly interleaved) planted payload; once enough
/// tail positions remain only payload is emitted, so chosen signatures are
/// always fully embedded. Background traces are all noise.
inline SyntheticResult generate_synthetic(const SyntheticSpec& spec) {
  if (spec.n_cases < 1) throw DataError("n_cases must be >= 1");
  if (spec.alphabet_size < 1) throw DataError("alphabet_size must be >= 1");
  if (spec.cluster_size < 0 || spec.cluster_size > spec.n_cases) {
    throw DataError("cluster_size must be in [0, n_cases]");
  }
  if (spec.embed_prob <= 0.0 || spec.embed_prob > 1.0) {
    throw DataError("embed_prob must be in (0, 1]");
  }
  if (spec.noise_label_rate < 0.0 || spec.noise_label_rate >= 1.0) {
    throw DataError("noise_label_rate must be in [0, 1)");
  }
  if (spec.trace_len_range.first < 1 || spec.trace_len_range.first > spec.trace_len_range.second) {
    throw DataError("bad trace length range");
  }
  if (spec.signature_len_range.first < 1 ||
      spec.signature_len_range.first > spec.signature_len_range.second) {
    throw DataError("bad signature length range");
  }
  if (spec.n_signature_patterns > 0 &&
      spec.signature_len_range.second > spec.trace_len_range.second) {
    throw DataError("signatures cannot be longer than the longest trace");
  }
  if (spec.signature_len_range.second > spec.alphabet_size) {
    throw DataError("signatures cannot be longer than the alphabet");
  }

  const Labeler labeler;

  // Stream 0: signatures. Symbols are distinct within one signature.
  std::vector<std::vector<std::int32_t>> signatures;
  {
    SplitMix64 rng = substream(spec.seed, 0);
    for (std::int32_t s = 0; s < spec.n_signature_patterns; ++s) {
      const auto len = static_cast<std::size_t>(
          rng.between(spec.signature_len_range.first, spec.signature_len_range.second));
      std::vector<std::int32_t> sig;
      while (sig.size() < len) {
        const auto symbol = static_cast<std::int32_t>(rng.below(spec.alphabet_size));
        if (std::find(sig.begin(), sig.end(), symbol) == sig.end()) sig.push_back(symbol);
      }
      signatures.push_back(std::move(sig));
    }
  }

  // Stream 1: which cases are cluster members.
  std::vector<bool> is_member(spec.n_cases, false);
  {
    std::vector<std::int64_t> order(spec.n_cases);
    for (std::int64_t i = 0; i < spec.n_cases; ++i) order[i] = i;
    SplitMix64 rng = substream(spec.seed, 1);
    rng.shuffle(order);
    for (std::int64_t i = 0; i < spec.cluster_size; ++i) is_member[order[i]] = true;
  }

  // Streams 2+i: trace i.
  SyntheticResult result;
  std::vector<Event> events;
  std::int64_t event_counter = 0;
  constexpr std::int64_t kBaseMs = 1546300800000;  // 2019-01-01
  for (std::int64_t i = 0; i < spec.n_cases; ++i) {
    SplitMix64 rng = substream(spec.seed, static_cast<std::uint64_t>(2 + i));
    auto length = rng.between(spec.trace_len_range.first, spec.trace_len_range.second);

    std::vector<std::int32_t> payload;
    if (is_member[i]) {
      std::vector<const std::vector<std::int32_t>*> chosen;
      for (const auto& sig : signatures) {
        if (rng.bernoulli(spec.embed_prob)) chosen.push_back(&sig);
      }
      payload = detail::merge_signatures(chosen, rng);
      length = std::max(length, static_cast<std::int64_t>(payload.size()));
    }

    const std::string case_id = detail::synthetic_case_id(i);
    if (is_member[i]) result.truth.case_ids.insert(case_id);

    std::size_t consumed = 0;
    for (std::int64_t pos = 0; pos < length; ++pos) {
      const std::int64_t slack = length - pos - static_cast<std::int64_t>(payload.size() - consumed);
      std::int32_t symbol;
      if (consumed < payload.size() && (slack <= 0 || !rng.bernoulli(spec.noise_label_rate))) {
        symbol = payload[consumed++];
      } else {
        symbol = static_cast<std::int32_t>(rng.below(spec.alphabet_size));
      }
      Event e;
      e.event_id = "e" + std::to_string(event_counter++);
      e.case_id = case_id;
      e.activity = detail::synthetic_activity(symbol);
      e.diag_code = detail::synthetic_diag(symbol);
      e.timestamp_ms = kBaseMs + i * 86400000LL + pos * 60000LL;
      events.push_back(std::move(e));
    }
  }

  result.log = build_traces(std::move(events), labeler);
  for (const auto& sig : signatures) {
    std::vector<std::string> labels;
    labels.reserve(sig.size());
    for (const std::int32_t symbol : sig) {
      Event probe;
      probe.activity = detail::synthetic_activity(symbol);
      probe.diag_code = detail::synthetic_diag(symbol);
      labels.push_back(labeler(probe));
    }
    result.signatures.push_back(std::move(labels));
  }
  return result;
}

/// Uniform sample of `size` ids from the truth, for driving the pipeline on a
/// generated benchmark the way an expert-provided sample would.
inline std::set<std::string> sample_from_truth(const GroundTruth& truth, std::size_t size,
                                               std::uint64_t seed) {
  if (size < 1 || size > truth.case_ids.size()) {
    throw DataError("sample size must be in [1, " + std::to_string(truth.case_ids.size()) + "]");
  }
  std::vector<std::string> ids(truth.case_ids.begin(), truth.case_ids.end());
  SplitMix64 rng = substream(seed, 0x5a4d504cULL);  // distinct from the generator's streams
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(ids.size() - i));
    std::swap(ids[i], ids[j]);
  }
  return std::set<std::string>(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(size));
}

}  // namespace fspc

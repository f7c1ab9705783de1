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
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fspc/errors.hpp"
#include "fspc/event_log.hpp"
#include "fspc/matcher.hpp"
#include "fspc/pattern.hpp"
#include "fspc/rational.hpp"

namespace fspc {

/// Caps on the mining search. max_frontier bounds the number of frequent
/// patterns the search may emit; hitting it is an error unless truncation is
/// explicitly allowed, because a silently incomplete pattern set corrupts
/// everything downstream (closedness in particular).
struct MiningLimits {
  std::optional<std::size_t> max_pattern_length;
  std::size_t max_frontier = 100000;
  bool allow_truncation = false;
};

/// Fraction of traces in the collection that match the pattern. Each trace
/// counts at most once no matter how many embeddings it contains.
inline Rational support(std::span<const std::string> pattern,
                        const std::vector<LabelSequence>& collection) {
  if (collection.empty()) throw DataError("support is undefined over an empty collection");
  std::int64_t matches = 0;
  for (const auto& seq : collection) {
    if (is_subsequence(pattern, seq)) ++matches;
  }
  return Rational(matches, static_cast<std::int64_t>(collection.size()));
}

namespace detail {

// Vertical layout: per label, per trace, the sorted positions where the label
// occurs. Pattern growth then never rescans traces; it only intersects a
// pattern's occurrence list with a label's position lists.
struct VerticalIndex {
  // label id -> list of (trace index, positions), trace indices ascending
  std::vector<std::vector<std::pair<std::int32_t, std::vector<std::int32_t>>>> postings;
  std::vector<std::string> labels;  // id -> label, ids in lexicographic label order
};

inline VerticalIndex build_vertical_index(const std::vector<LabelSequence>& collection) {
  VerticalIndex index;
  std::map<std::string, std::int32_t> ids;
  for (const auto& seq : collection) {
    for (const auto& label : seq.labels) ids.emplace(label, 0);
  }
  index.labels.reserve(ids.size());
  for (auto& [label, id] : ids) {
    id = static_cast<std::int32_t>(index.labels.size());
    index.labels.push_back(label);
  }
  index.postings.resize(index.labels.size());
  for (std::size_t t = 0; t < collection.size(); ++t) {
    const auto& labels = collection[t].labels;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      auto& posting = index.postings[ids.find(labels[i])->second];
      if (posting.empty() || posting.back().first != static_cast<std::int32_t>(t)) {
        posting.emplace_back(static_cast<std::int32_t>(t), std::vector<std::int32_t>{});
      }
      posting.back().second.push_back(static_cast<std::int32_t>(i));
    }
  }
  return index;
}

// (trace, position of the earliest embedding's last element). A pattern
// matches a trace iff the trace appears here; extending greedily from the
// earliest end position is complete, since any later embedding of the next
// label works for the earlier end too.
using OccurrenceList = std::vector<std::pair<std::int32_t, std::int32_t>>;

inline OccurrenceList extend(const OccurrenceList& occ,
                             const std::vector<std::pair<std::int32_t, std::vector<std::int32_t>>>& posting) {
  OccurrenceList out;
  out.reserve(std::min(occ.size(), posting.size()));
  auto pi = posting.begin();
  for (const auto& [trace, pos] : occ) {
    while (pi != posting.end() && pi->first < trace) ++pi;
    if (pi == posting.end()) break;
    if (pi->first != trace) continue;
    const auto& positions = pi->second;
    const auto it = std::upper_bound(positions.begin(), positions.end(), pos);
    if (it != positions.end()) out.emplace_back(trace, *it);
  }
  return out;
}

struct MiningState {
  const VerticalIndex* index = nullptr;
  const MinSupport* min_support = nullptr;
  std::int64_t collection_size = 0;
  std::vector<std::int32_t> frequent_labels;  // candidate extensions, ascending
  MiningLimits limits;
  std::vector<SequencePattern>* out = nullptr;
  bool truncated = false;
  bool stopped = false;

  bool frequent(std::int64_t count) const { return min_support->met_by(count, collection_size); }

  void emit(const std::vector<std::int32_t>& stack, std::int64_t count) {
    if (out->size() >= limits.max_frontier) {
      if (!limits.allow_truncation) {
        throw ResourceLimitError("frequent pattern count exceeds max_frontier (" +
                                 std::to_string(limits.max_frontier) + ")");
      }
      truncated = true;
      stopped = true;
      return;
    }
    SequencePattern p;
    p.labels.reserve(stack.size());
    for (const std::int32_t id : stack) p.labels.push_back(index->labels[id]);
    p.match_count = count;
    p.support = Rational(count, collection_size);
    out->push_back(std::move(p));
  }
};

inline void grow(MiningState& state, std::vector<std::int32_t>& stack, const OccurrenceList& occ) {
  if (state.stopped) return;
  const bool at_length_cap =
      state.limits.max_pattern_length && stack.size() >= *state.limits.max_pattern_length;
  for (const std::int32_t label : state.frequent_labels) {
    if (state.stopped) return;
    const OccurrenceList next = extend(occ, state.index->postings[label]);
    const auto count = static_cast<std::int64_t>(next.size());
    if (!state.frequent(count)) continue;
    if (at_length_cap) {
      // A frequent extension exists beyond the cap, so the result is a
      // proper subset of the frequent set.
      state.truncated = true;
      return;
    }
    stack.push_back(label);
    state.emit(stack, count);
    grow(state, stack, next);
    stack.pop_back();
  }
}

}  // namespace detail

/// Mines every sequence pattern whose support in the collection is at least
/// phi_s, by depth-first pattern growth over the vertical index. With
/// unbounded limits the result is exactly the frequent set; a finite limit
/// may cut it short, which the result records. Output is canonically ordered
/// (length, then lexicographic), independent of input trace order.
inline PatternSet mine_frequent(const std::vector<LabelSequence>& collection, MinSupport phi_s,
                                MiningLimits limits = {}) {
  if (collection.empty()) throw DataError("cannot mine an empty collection");
  if (limits.max_pattern_length && *limits.max_pattern_length == 0) {
    throw std::invalid_argument("max_pattern_length must be >= 1");
  }

  PatternSet result;
  result.phi_s = phi_s.value();
  result.source_size = static_cast<std::int64_t>(collection.size());

  const detail::VerticalIndex index = detail::build_vertical_index(collection);

  detail::MiningState state;
  state.index = &index;
  state.min_support = &phi_s;
  state.collection_size = result.source_size;
  state.limits = limits;
  state.out = &result.patterns;

  for (std::int32_t id = 0; id < static_cast<std::int32_t>(index.labels.size()); ++id) {
    if (state.frequent(static_cast<std::int64_t>(index.postings[id].size()))) {
      state.frequent_labels.push_back(id);
    }
  }

  // Root occurrence list: every trace with a virtual end position before 0.
  detail::OccurrenceList root;
  root.reserve(collection.size());
  for (std::int32_t t = 0; t < static_cast<std::int32_t>(collection.size()); ++t) {
    root.emplace_back(t, -1);
  }
  std::vector<std::int32_t> stack;
  detail::grow(state, stack, root);

  result.truncated = state.truncated;
  std::sort(result.patterns.begin(), result.patterns.end(),
            [](const SequencePattern& a, const SequencePattern& b) { return canonical_less(a, b); });
  return result;
}

/// The closed members of a complete frequent set: patterns with no proper
/// frequent supersequence of equal support. Support can only drop when a
/// pattern grows, so only equal-support groups need pairwise checks.
inline std::vector<SequencePattern> extract_closed(const PatternSet& ps) {
  if (ps.truncated) {
    throw DataError("closedness cannot be certified on a truncated pattern set");
  }
  std::unordered_map<std::int64_t, std::vector<const SequencePattern*>> by_count;
  for (const auto& p : ps.patterns) by_count[p.match_count].push_back(&p);

  std::vector<SequencePattern> closed;
  for (auto& [count, group] : by_count) {
    std::sort(group.begin(), group.end(), [](const SequencePattern* a, const SequencePattern* b) {
      return a->labels.size() < b->labels.size();
    });
    for (std::size_t i = 0; i < group.size(); ++i) {
      bool absorbed = false;
      for (std::size_t j = group.size(); j-- > i + 1;) {
        if (group[j]->labels.size() == group[i]->labels.size()) break;
        if (is_subsequence(group[i]->labels, std::span<const std::string>(group[j]->labels))) {
          absorbed = true;
          break;
        }
      }
      if (!absorbed) closed.push_back(*group[i]);
    }
  }
  std::sort(closed.begin(), closed.end(),
            [](const SequencePattern& a, const SequencePattern& b) { return canonical_less(a, b); });
  return closed;
}

/// Selects the three criteria sets from a complete frequent set: lengths 1
/// and 2, and the closed patterns. The sets may overlap.
inline PatternBundle select_bundle(const PatternSet& ps) {
  if (ps.truncated) throw DataError("cannot select a bundle from a truncated pattern set");
  PatternBundle bundle;
  bundle.phi_s = ps.phi_s;
  for (const auto& p : ps.patterns) {
    if (p.labels.size() == 1) bundle.sp1.push_back(p);
    if (p.labels.size() == 2) bundle.sp2.push_back(p);
  }
  bundle.sp_clo = extract_closed(ps);
  return bundle;
}

}  // namespace fspc

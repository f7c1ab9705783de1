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
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fspc {

// Separator between activity and diagnosis code in composite labels. Chosen
// so it cannot collide with activity names in realistic data and survives a
// round trip through the export formats.
inline constexpr const char* kDefaultSeparator = "‖";  // ‖

/// One recorded event of one case. A missing diagnosis code is represented as
/// an empty optional, never as an empty string.
struct Event {
  std::string event_id;
  std::string case_id;
  std::string activity;
  std::int64_t timestamp_ms = 0;  // epoch milliseconds
  std::optional<std::string> diag_code;
  std::vector<std::pair<std::string, std::string>> extras;
};

/// Time-ordered events of one case.
struct Trace {
  std::string case_id;
  std::vector<Event> events;
};

/// Maps an event to its label: either the activity alone or the activity
/// joined with the diagnosis code. Deterministic by construction. An event
/// without a diagnosis code gets its activity as the label in both modes, so
/// no placeholder token ever enters the pattern alphabet.
struct Labeler {
  enum class Mode { kActivityOnly, kActivityDiag };

  Mode mode = Mode::kActivityDiag;
  std::string separator = kDefaultSeparator;

  std::string operator()(const Event& e) const {
    if (mode == Mode::kActivityOnly || !e.diag_code.has_value()) return e.activity;
    return e.activity + separator + *e.diag_code;
  }
};

/// The label sequence of one trace, in event order.
struct LabelSequence {
  std::string case_id;
  std::vector<std::string> labels;
};

/// One trace per case id, traces sorted by case id. Immutable after
/// construction and safe to share across threads read-only.
struct EventLog {
  std::vector<Trace> traces;
  Labeler labeler;
  std::set<std::string> label_alphabet;  // exactly the labels labeler yields over all events

  std::size_t event_count() const {
    std::size_t n = 0;
    for (const auto& t : traces) n += t.events.size();
    return n;
  }

  const Trace* find(const std::string& case_id) const {
    auto it = std::lower_bound(traces.begin(), traces.end(), case_id,
                               [](const Trace& t, const std::string& id) { return t.case_id < id; });
    if (it == traces.end() || it->case_id != case_id) return nullptr;
    return &*it;
  }
};

inline LabelSequence simplify(const Trace& trace, const Labeler& labeler) {
  LabelSequence seq;
  seq.case_id = trace.case_id;
  seq.labels.reserve(trace.events.size());
  for (const auto& e : trace.events) seq.labels.push_back(labeler(e));
  return seq;
}

/// Groups events by case id and orders each group by timestamp. The sort is
/// stable: events with equal timestamps keep their input order. Every input
/// event ends up in exactly one trace.
inline EventLog build_traces(std::vector<Event> events, Labeler labeler = {}) {
  EventLog log;
  log.labeler = labeler;

  std::unordered_map<std::string, std::size_t> index;
  index.reserve(events.size() / 4 + 1);
  for (auto& e : events) {
    log.label_alphabet.insert(labeler(e));
    auto [it, inserted] = index.try_emplace(e.case_id, log.traces.size());
    if (inserted) {
      log.traces.push_back(Trace{e.case_id, {}});
    }
    log.traces[it->second].events.push_back(std::move(e));
  }
  for (auto& t : log.traces) {
    std::stable_sort(t.events.begin(), t.events.end(),
                     [](const Event& a, const Event& b) { return a.timestamp_ms < b.timestamp_ms; });
  }
  std::sort(log.traces.begin(), log.traces.end(),
            [](const Trace& a, const Trace& b) { return a.case_id < b.case_id; });
  return log;
}

inline std::vector<LabelSequence> simplify_log(const EventLog& log) {
  std::vector<LabelSequence> out;
  out.reserve(log.traces.size());
  for (const auto& t : log.traces) out.push_back(simplify(t, log.labeler));
  return out;
}

/// Drops events failing the predicate, then drops traces left empty and
/// recomputes the label alphabet.
inline EventLog filter_log(const EventLog& log, const std::function<bool(const Event&)>& keep) {
  EventLog out;
  out.labeler = log.labeler;
  for (const auto& t : log.traces) {
    Trace kept;
    kept.case_id = t.case_id;
    for (const auto& e : t.events) {
      if (keep(e)) {
        out.label_alphabet.insert(log.labeler(e));
        kept.events.push_back(e);
      }
    }
    if (!kept.events.empty()) out.traces.push_back(std::move(kept));
  }
  return out;
}

}  // namespace fspc

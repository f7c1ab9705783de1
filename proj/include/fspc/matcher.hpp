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

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "fspc/csv.hpp"
#include "fspc/errors.hpp"
#include "fspc/event_log.hpp"
#include "fspc/pattern.hpp"

namespace fspc {

/// Per-case counts of matched patterns in sp1, sp2, and sp_clo.
struct ScoreTriple {
  std::string case_id;
  std::int32_t s1 = 0;
  std::int32_t s2 = 0;
  std::int32_t s_clo = 0;

  friend bool operator==(const ScoreTriple& a, const ScoreTriple& b) {
    return a.case_id == b.case_id && a.s1 == b.s1 && a.s2 == b.s2 && a.s_clo == b.s_clo;
  }
};

/// True iff the pattern embeds into the labels at strictly increasing
/// positions. A single greedy left-to-right scan decides this. Matching is
/// per-trace boolean; how many embeddings exist never matters.
inline bool is_subsequence(std::span<const std::string> pattern,
                           std::span<const std::string> labels) {
  if (pattern.empty()) throw std::invalid_argument("empty pattern");
  std::size_t next = 0;
  for (const auto& label : labels) {
    if (label == pattern[next] && ++next == pattern.size()) return true;
  }
  return false;
}

inline bool is_subsequence(std::span<const std::string> pattern, const LabelSequence& seq) {
  return is_subsequence(pattern, std::span<const std::string>(seq.labels));
}

/// Compiled form of a bundle for scoring many traces. Labels are interned
/// once; a trace touching none of the bundle's labels short-circuits to
/// (0, 0, 0) without any pattern scan, which is the common case when the
/// cluster is a small fraction of the log.
class BundleMatcher {
 public:
  explicit BundleMatcher(const PatternBundle& bundle) {
    add_set(bundle.sp1, 0);
    add_set(bundle.sp2, 1);
    add_set(bundle.sp_clo, 2);
  }

  std::size_t alphabet_size() const { return label_ids_.size(); }

  ScoreTriple score(const LabelSequence& seq) const {
    ScoreTriple t;
    t.case_id = seq.case_id;
    if (patterns_.empty()) return t;

    // Intern the trace and count label multiplicities; a pattern can only
    // match if the trace carries each of its labels at least as often.
    std::vector<std::int32_t> trace(seq.labels.size());
    std::vector<std::int32_t> counts(label_ids_.size(), 0);
    bool any_known = false;
    for (std::size_t i = 0; i < seq.labels.size(); ++i) {
      const auto it = label_ids_.find(seq.labels[i]);
      if (it == label_ids_.end()) {
        trace[i] = -1;
      } else {
        trace[i] = it->second;
        ++counts[it->second];
        any_known = true;
      }
    }
    if (!any_known) return t;

    for (const auto& p : patterns_) {
      bool plausible = true;
      for (const auto& [id, need] : p.need) {
        if (counts[id] < need) {
          plausible = false;
          break;
        }
      }
      if (!plausible) continue;
      std::size_t next = 0;
      for (const std::int32_t id : trace) {
        if (id == p.labels[next] && ++next == p.labels.size()) break;
      }
      if (next != p.labels.size()) continue;
      t.s1 += p.in_sp1;
      t.s2 += p.in_sp2;
      t.s_clo += p.in_clo;
    }
    return t;
  }

 private:
  struct Compiled {
    std::vector<std::int32_t> labels;
    std::vector<std::pair<std::int32_t, std::int32_t>> need;  // label id -> multiplicity
    std::int8_t in_sp1 = 0, in_sp2 = 0, in_clo = 0;
  };

  void add_set(const std::vector<SequencePattern>& set, int which) {
    for (const auto& p : set) {
      if (p.labels.empty()) throw std::invalid_argument("empty pattern in bundle");
      std::vector<std::int32_t> ids;
      ids.reserve(p.labels.size());
      for (const auto& label : p.labels) {
        const auto [it, _] = label_ids_.try_emplace(label, static_cast<std::int32_t>(label_ids_.size()));
        ids.push_back(it->second);
      }
      auto [idx_it, inserted] = pattern_index_.try_emplace(ids, patterns_.size());
      if (inserted) {
        Compiled c;
        c.labels = ids;
        std::map<std::int32_t, std::int32_t> mult;
        for (const std::int32_t id : ids) ++mult[id];
        c.need.assign(mult.begin(), mult.end());
        patterns_.push_back(std::move(c));
      }
      Compiled& c = patterns_[idx_it->second];
      if (which == 0) c.in_sp1 = 1;
      if (which == 1) c.in_sp2 = 1;
      if (which == 2) c.in_clo = 1;
    }
  }

  struct VecHash {
    std::size_t operator()(const std::vector<std::int32_t>& v) const {
      std::size_t h = v.size();
      for (const std::int32_t x : v) h = h * 1000003u + static_cast<std::uint32_t>(x);
      return h;
    }
  };

  std::unordered_map<std::string, std::int32_t> label_ids_;
  std::unordered_map<std::vector<std::int32_t>, std::size_t, VecHash> pattern_index_;
  std::vector<Compiled> patterns_;
};

/// One-shot scoring of a single trace.
inline ScoreTriple score_trace(const LabelSequence& seq, const PatternBundle& bundle) {
  return BundleMatcher(bundle).score(seq);
}

/// Scores every trace of the log against the bundle. Traces are independent,
/// so the work is split across threads; the result is identical for any
/// thread count.
inline std::map<std::string, ScoreTriple> score_log(const EventLog& log, const Labeler& labeler,
                                                    const PatternBundle& bundle,
                                                    unsigned threads = 0) {
  const BundleMatcher matcher(bundle);
  const std::size_t n = log.traces.size();
  std::vector<ScoreTriple> triples(n);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));

  const auto worker = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      triples[i] = matcher.score(simplify(log.traces[i], labeler));
    }
  };
  if (threads <= 1 || n < 64) {
    worker(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk;
      if (begin >= n) break;
      pool.emplace_back(worker, begin, std::min(begin + chunk, n));
    }
    for (auto& th : pool) th.join();
  }

  std::map<std::string, ScoreTriple> scores;
  for (auto& t : triples) {
    std::string key = t.case_id;
    scores.emplace(std::move(key), std::move(t));
  }
  return scores;
}

// Score dump: "case_id,s1,s2,s_clo", one row per case, sorted by case id.

inline void write_scores(std::ostream& out, const std::map<std::string, ScoreTriple>& scores) {
  out << "case_id,s1,s2,s_clo\n";
  for (const auto& [id, t] : scores) {
    detail::write_csv_field(out, id, ',');
    out << ',' << t.s1 << ',' << t.s2 << ',' << t.s_clo << "\n";
  }
}

inline std::map<std::string, ScoreTriple> read_scores(std::istream& in) {
  std::map<std::string, ScoreTriple> scores;
  std::vector<std::string> fields;
  std::size_t line = 0;
  std::string err;
  if (!detail::read_csv_record(in, ',', fields, line, &err)) {
    throw SchemaError("empty score dump");
  }
  while (detail::read_csv_record(in, ',', fields, line, &err)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != 4) {
      throw SchemaError("score dump line " + std::to_string(line) + ": expected 4 fields");
    }
    ScoreTriple t;
    t.case_id = fields[0];
    try {
      t.s1 = std::stoi(fields[1]);
      t.s2 = std::stoi(fields[2]);
      t.s_clo = std::stoi(fields[3]);
    } catch (const std::exception&) {
      throw SchemaError("score dump line " + std::to_string(line) + ": bad score value");
    }
    scores[t.case_id] = std::move(t);
  }
  return scores;
}

}  // namespace fspc

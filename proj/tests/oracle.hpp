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

// Reference implementations the tests check the library against. Everything
// here is deliberately brute force and shares no code with the library paths
// it certifies.

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fspc/event_log.hpp"
#include "fspc/matcher.hpp"
#include "fspc/pattern.hpp"
#include "fspc/threshold.hpp"

namespace oracle {

// Exhaustive embedding search: tries every strictly increasing position
// assignment instead of scanning greedily.
inline bool embeds_from(const std::vector<std::string>& pattern, std::size_t pi,
                        const std::vector<std::string>& seq, std::size_t si) {
  if (pi == pattern.size()) return true;
  for (std::size_t i = si; i < seq.size(); ++i) {
    if (seq[i] == pattern[pi] && embeds_from(pattern, pi + 1, seq, i + 1)) return true;
  }
  return false;
}

inline bool embeds(const std::vector<std::string>& pattern, const std::vector<std::string>& seq) {
  return embeds_from(pattern, 0, seq, 0);
}

inline std::int64_t count_matches(const std::vector<std::string>& pattern,
                                  const std::vector<fspc::LabelSequence>& collection) {
  std::int64_t count = 0;
  for (const auto& seq : collection) count += embeds(pattern, seq.labels) ? 1 : 0;
  return count;
}

// Every frequent pattern with its match count, found by enumerating all
// distinct subsequences of all traces. Traces must be short (< 24 labels).
inline std::map<std::vector<std::string>, std::int64_t> enumerate_frequent(
    const std::vector<fspc::LabelSequence>& collection, std::int64_t phi_num,
    std::int64_t phi_den) {
  std::set<std::vector<std::string>> candidates;
  for (const auto& seq : collection) {
    const std::size_t n = seq.labels.size();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<std::string> sub;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) sub.push_back(seq.labels[i]);
      }
      candidates.insert(std::move(sub));
    }
  }
  std::map<std::vector<std::string>, std::int64_t> frequent;
  const auto size = static_cast<std::int64_t>(collection.size());
  for (const auto& cand : candidates) {
    const std::int64_t count = count_matches(cand, collection);
    if (count * phi_den >= phi_num * size) frequent[cand] = count;
  }
  return frequent;
}

// Closed = no distinct frequent supersequence with the same match count,
// decided by checking every pair.
inline std::set<std::vector<std::string>> closed_patterns(
    const std::map<std::vector<std::string>, std::int64_t>& frequent) {
  std::set<std::vector<std::string>> closed;
  for (const auto& [p, p_count] : frequent) {
    bool is_closed = true;
    for (const auto& [q, q_count] : frequent) {
      if (q == p || q_count != p_count) continue;
      if (embeds(p, q)) {
        is_closed = false;
        break;
      }
    }
    if (is_closed) closed.insert(p);
  }
  return closed;
}

// Counts matched bundle members directly, one exhaustive embedding check per
// pattern.
inline fspc::ScoreTriple naive_score(const fspc::LabelSequence& seq,
                                     const fspc::PatternBundle& bundle) {
  fspc::ScoreTriple t;
  t.case_id = seq.case_id;
  for (const auto& p : bundle.sp1) t.s1 += embeds(p.labels, seq.labels) ? 1 : 0;
  for (const auto& p : bundle.sp2) t.s2 += embeds(p.labels, seq.labels) ? 1 : 0;
  for (const auto& p : bundle.sp_clo) t.s_clo += embeds(p.labels, seq.labels) ? 1 : 0;
  return t;
}

struct GridBest {
  bool found = false;
  fspc::Thresholds thresholds;
  std::int64_t hit = 0;   // |C ∩ P|
  std::int64_t size = 0;  // |C|
};

// Full scan of the threshold grid, re-filtering the score table at every
// point. Same objective and tie-break as the library: recall^2/|C|
// maximized, ties to the lexicographically largest triple.
inline GridBest grid_search(const std::map<std::string, fspc::ScoreTriple>& scores,
                            const std::set<std::string>& P, std::int64_t floor_num,
                            std::int64_t floor_den) {
  struct Row {
    std::int32_t s1, s2, s3;
    bool in_p;
  };
  std::vector<Row> rows;
  std::int32_t max1 = 0, max2 = 0, max3 = 0;
  for (const auto& [id, s] : scores) {
    rows.push_back({s.s1, s.s2, s.s_clo, P.count(id) == 1});
    max1 = std::max(max1, s.s1);
    max2 = std::max(max2, s.s2);
    max3 = std::max(max3, s.s_clo);
  }
  const auto p_size = static_cast<std::int64_t>(P.size());
  GridBest best;
  for (std::int32_t phi1 = max1 + 1; phi1 >= 1; --phi1) {
    for (std::int32_t phi2 = max2 + 1; phi2 >= 0; --phi2) {
      for (std::int32_t phi3 = max3 + 1; phi3 >= 0; --phi3) {
        std::int64_t size = 0, hit = 0;
        for (const Row& r : rows) {
          if (r.s1 >= phi1 && r.s2 >= phi2 && r.s3 >= phi3) {
            ++size;
            hit += r.in_p ? 1 : 0;
          }
        }
        if (size < 1) continue;
        if (hit * floor_den < floor_num * p_size) continue;
        using W = __int128;
        if (!best.found ||
            static_cast<W>(hit) * hit * best.size > static_cast<W>(best.hit) * best.hit * size) {
          best.found = true;
          best.thresholds = fspc::Thresholds{phi1, phi2, phi3};
          best.hit = hit;
          best.size = size;
        }
      }
    }
  }
  return best;
}

// Minimal DOT reader for round-trip checks: collects node ids and edges from
// statements of the form "a"; and "a" -> "b";, with optional [..] attributes.
struct DotGraph {
  std::string name;
  std::set<std::string> nodes;
  std::set<std::pair<std::string, std::string>> edges;
  bool ok = false;
};

inline DotGraph parse_dot(const std::string& text) {
  DotGraph g;
  std::size_t i = 0;
  const auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\n' || text[i] == '\t')) ++i;
  };
  const auto read_word = [&] {
    std::string w;
    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
      w.push_back(text[i++]);
    }
    return w;
  };
  const auto read_quoted = [&](std::string& out) {
    if (i >= text.size() || text[i] != '"') return false;
    ++i;
    out.clear();
    while (i < text.size() && text[i] != '"') {
      if (text[i] == '\\' && i + 1 < text.size()) ++i;
      out.push_back(text[i++]);
    }
    if (i >= text.size()) return false;
    ++i;  // closing quote
    return true;
  };

  skip_ws();
  if (read_word() != "digraph") return g;
  skip_ws();
  g.name = read_word();
  skip_ws();
  if (i >= text.size() || text[i] != '{') return g;
  ++i;
  for (;;) {
    skip_ws();
    if (i >= text.size()) return g;  // unterminated
    if (text[i] == '}') {
      g.ok = true;
      return g;
    }
    std::string from;
    if (!read_quoted(from)) return g;
    g.nodes.insert(from);
    skip_ws();
    if (i + 1 < text.size() && text[i] == '-' && text[i + 1] == '>') {
      i += 2;
      skip_ws();
      std::string to;
      if (!read_quoted(to)) return g;
      g.nodes.insert(to);
      g.edges.emplace(from, to);
      skip_ws();
    }
    if (i < text.size() && text[i] == '[') {
      while (i < text.size() && text[i] != ']') {
        if (text[i] == '"') {
          std::string ignored;
          if (!read_quoted(ignored)) return g;
        } else {
          ++i;
        }
      }
      if (i < text.size()) ++i;  // ']'
      skip_ws();
    }
    if (i < text.size() && text[i] == ';') ++i;
  }
}

}  // namespace oracle

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

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fspc/pattern.hpp"
#include "fspc/rational.hpp"

namespace fspc {

/// A directed graph of labels: an edge a -> b says "a is eventually followed
/// by b" appears in the closed patterns, i.e. that relation is frequent.
/// Cycles are allowed; two patterns may order the same labels both ways.
struct ProcessMap {
  struct Node {
    Rational support;     // max support over patterns containing the label
    int in_patterns = 0;  // how many patterns contain the label
  };
  struct Edge {
    Rational weight;  // max support over patterns contributing the pair
    int count = 0;    // how many patterns contribute the pair
  };

  std::map<std::string, Node> nodes;
  std::map<std::pair<std::string, std::string>, Edge> edges;
};

struct BuildMapOptions {
  // Consecutive pattern positions always produce edges. Optionally also add
  // an edge for every non-adjacent ordered pair within a pattern.
  bool transitive_edges = false;
};

/// Builds the map from a closed-pattern set. No frequency filtering happens
/// here: every label and every consecutive pair of every pattern is kept.
/// Supports aggregate by max across patterns; trace fractions over the same
/// collection are not additive.
inline ProcessMap build_map(const std::vector<SequencePattern>& sp_clo,
                            BuildMapOptions opts = {}) {
  ProcessMap map;
  for (const auto& p : sp_clo) {
    std::set<std::string> seen_labels;
    std::set<std::pair<std::string, std::string>> seen_pairs;
    for (const auto& label : p.labels) {
      auto& node = map.nodes[label];
      if (seen_labels.insert(label).second) {
        node.in_patterns += 1;
        node.support = std::max(node.support, p.support);
      }
    }
    const auto add_edge = [&](const std::string& from, const std::string& to) {
      if (!seen_pairs.emplace(from, to).second) return;  // once per pattern
      auto& edge = map.edges[{from, to}];
      edge.count += 1;
      edge.weight = std::max(edge.weight, p.support);
    };
    for (std::size_t i = 0; i + 1 < p.labels.size(); ++i) {
      if (opts.transitive_edges) {
        for (std::size_t j = i + 1; j < p.labels.size(); ++j) add_edge(p.labels[i], p.labels[j]);
      } else {
        add_edge(p.labels[i], p.labels[i + 1]);
      }
    }
  }
  return map;
}

struct DotOptions {
  bool label_supports = true;
};

namespace detail {
inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}
}  // namespace detail

/// Renders the map as a DOT digraph. Nodes and edges are emitted in sorted
/// order and supports are exact fractions, so identical maps produce
/// identical bytes.
inline std::string to_dot(const ProcessMap& map, DotOptions opts = {}) {
  std::ostringstream out;
  out << "digraph map {\n";
  for (const auto& [label, node] : map.nodes) {
    out << "  " << detail::dot_quote(label);
    if (opts.label_supports) {
      out << " [label=" << detail::dot_quote(label + " (" + to_string(node.support) + ")") << "]";
    }
    out << ";\n";
  }
  for (const auto& [pair, edge] : map.edges) {
    out << "  " << detail::dot_quote(pair.first) << " -> " << detail::dot_quote(pair.second);
    if (opts.label_supports) {
      out << " [label=" << detail::dot_quote(to_string(edge.weight)) << "]";
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

inline nlohmann::json to_json(const ProcessMap& map) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& [label, node] : map.nodes) {
    nodes.push_back({{"label", label},
                     {"support", to_string(node.support)},
                     {"in_patterns", node.in_patterns}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [pair, edge] : map.edges) {
    edges.push_back({{"from", pair.first},
                     {"to", pair.second},
                     {"weight", to_string(edge.weight)},
                     {"count", edge.count}});
  }
  return nlohmann::json{{"nodes", nodes}, {"edges", edges}};
}

}  // namespace fspc

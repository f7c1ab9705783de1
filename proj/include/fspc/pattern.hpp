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
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fspc/errors.hpp"
#include "fspc/rational.hpp"

namespace fspc {

/// An ordered list of labels matched as a subsequence of a trace's label
/// sequence, with the fraction of traces it matched in the mined collection.
struct SequencePattern {
  std::vector<std::string> labels;  // never empty
  Rational support;                 // match_count / collection size, exact
  std::int64_t match_count = 0;

  friend bool operator==(const SequencePattern& a, const SequencePattern& b) {
    return a.labels == b.labels && a.support == b.support && a.match_count == b.match_count;
  }
};

/// Canonical pattern order: shorter first, then lexicographic by labels.
/// Export files and mining output both use it, so results are comparable
/// byte-for-byte regardless of input trace order or internal parallelism.
inline bool canonical_less(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

inline bool canonical_less(const SequencePattern& a, const SequencePattern& b) {
  return canonical_less(a.labels, b.labels);
}

/// Minimum support threshold in (0, 1]. Frequency is decided on counts, so
/// the boundary case is exact at any collection size.
class MinSupport {
 public:
  explicit MinSupport(Rational phi) : phi_(phi) {
    if (phi <= Rational(0) || phi > Rational(1)) {
      throw std::invalid_argument("minimum support must be in (0, 1], got " + to_string(phi));
    }
  }

  const Rational& value() const { return phi_; }

  /// match_count / collection_size >= phi, evaluated without division.
  bool met_by(std::int64_t match_count, std::int64_t collection_size) const {
    using W = __int128;
    return static_cast<W>(match_count) * phi_.denominator() >=
           static_cast<W>(phi_.numerator()) * collection_size;
  }

 private:
  Rational phi_;
};

/// The frequent patterns of one collection, canonically ordered. `truncated`
/// marks results cut short by a mining limit; such a set is a subset of the
/// true frequent set and cannot certify closedness.
struct PatternSet {
  std::vector<SequencePattern> patterns;
  Rational phi_s;
  std::int64_t source_size = 0;
  bool truncated = false;
};

/// The three criteria sets: frequent patterns of length 1, of length 2, and
/// the closed ones. The sets may overlap.
struct PatternBundle {
  std::vector<SequencePattern> sp1;
  std::vector<SequencePattern> sp2;
  std::vector<SequencePattern> sp_clo;
  Rational phi_s;
};

// ---------------------------------------------------------------------------
// Pattern files: one JSON object per line, canonical order.
// {"labels": [...], "support": "num/den", "count": N}
// ---------------------------------------------------------------------------

inline void write_patterns(std::ostream& out, const std::vector<SequencePattern>& patterns) {
  for (const auto& p : patterns) {
    nlohmann::json j;
    j["labels"] = p.labels;
    j["support"] = to_string(p.support);
    j["count"] = p.match_count;
    out << j.dump() << "\n";
  }
}

inline std::vector<SequencePattern> read_patterns(std::istream& in) {
  std::vector<SequencePattern> patterns;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("labels") || !j.contains("support") || !j.contains("count")) {
      throw SchemaError("pattern file line " + std::to_string(lineno) + ": not a pattern object");
    }
    SequencePattern p;
    p.labels = j["labels"].get<std::vector<std::string>>();
    if (p.labels.empty()) {
      throw SchemaError("pattern file line " + std::to_string(lineno) + ": empty pattern");
    }
    p.support = parse_fraction(j["support"].get<std::string>());
    p.match_count = j["count"].get<std::int64_t>();
    patterns.push_back(std::move(p));
  }
  return patterns;
}

inline void write_patterns_file(const std::filesystem::path& path,
                                const std::vector<SequencePattern>& patterns) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  write_patterns(out, patterns);
}

inline std::vector<SequencePattern> read_patterns_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return read_patterns(in);
}

// A bundle on disk is three pattern files plus a small meta file recording
// the support threshold and the size of the mined collection.

inline void save_bundle(const std::filesystem::path& dir, const PatternBundle& bundle,
                        std::int64_t source_size) {
  std::filesystem::create_directories(dir);
  write_patterns_file(dir / "sp1.jsonl", bundle.sp1);
  write_patterns_file(dir / "sp2.jsonl", bundle.sp2);
  write_patterns_file(dir / "sp_clo.jsonl", bundle.sp_clo);
  nlohmann::json meta;
  meta["phi_s"] = to_string(bundle.phi_s);
  meta["source_size"] = source_size;
  meta["sp1"] = bundle.sp1.size();
  meta["sp2"] = bundle.sp2.size();
  meta["sp_clo"] = bundle.sp_clo.size();
  std::ofstream out(dir / "bundle.json", std::ios::binary);
  if (!out) throw DataError("cannot write " + (dir / "bundle.json").string());
  out << meta.dump(2) << "\n";
}

inline PatternBundle load_bundle(const std::filesystem::path& dir) {
  std::ifstream meta_in(dir / "bundle.json", std::ios::binary);
  if (!meta_in) throw DataError("cannot open " + (dir / "bundle.json").string());
  nlohmann::json meta = nlohmann::json::parse(meta_in, nullptr, false);
  if (meta.is_discarded() || !meta.contains("phi_s")) {
    throw SchemaError((dir / "bundle.json").string() + ": not a bundle meta file");
  }
  PatternBundle bundle;
  bundle.phi_s = parse_fraction(meta["phi_s"].get<std::string>());
  bundle.sp1 = read_patterns_file(dir / "sp1.jsonl");
  bundle.sp2 = read_patterns_file(dir / "sp2.jsonl");
  bundle.sp_clo = read_patterns_file(dir / "sp_clo.jsonl");
  return bundle;
}

}  // namespace fspc

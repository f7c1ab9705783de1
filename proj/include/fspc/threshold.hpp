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
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fspc/errors.hpp"
#include "fspc/matcher.hpp"
#include "fspc/rational.hpp"

namespace fspc {

/// The expert-provided sample: all known member case ids (P) and the subset
/// used for mining (P_tr). Recall is always estimated against the whole P,
/// training ids included.
struct SampleSet {
  std::set<std::string> all_ids;
  std::set<std::string> train_ids;
};

/// Score cuts: a case belongs to the cluster iff all three of its scores
/// reach these. phi1 starts at 1, the other two may be 0.
struct Thresholds {
  std::int32_t phi1 = 1;
  std::int32_t phi2 = 0;
  std::int32_t phi_clo = 0;

  friend bool operator==(const Thresholds& a, const Thresholds& b) {
    return a.phi1 == b.phi1 && a.phi2 == b.phi2 && a.phi_clo == b.phi_clo;
  }
};

struct Cluster {
  std::set<std::string> case_ids;
  Thresholds thresholds;
  Rational est_recall;
};

/// Raised when no threshold triple reaches the recall floor with a non-empty
/// cluster. Carries the closest point found, for diagnostics.
class InfeasibleThresholdsError : public Error {
 public:
  InfeasibleThresholdsError(std::string msg, Thresholds best_point, Rational best_recall,
                            std::size_t best_cluster_size)
      : Error(std::move(msg)),
        best(best_point),
        best_recall(best_recall),
        best_cluster_size(best_cluster_size) {}

  Thresholds best;
  Rational best_recall;
  std::size_t best_cluster_size;
};

/// Cases whose score triple dominates the thresholds componentwise.
inline std::set<std::string> apply_thresholds(const std::map<std::string, ScoreTriple>& scores,
                                              const Thresholds& t) {
  std::set<std::string> cluster;
  for (const auto& [id, s] : scores) {
    if (s.s1 >= t.phi1 && s.s2 >= t.phi2 && s.s_clo >= t.phi_clo) cluster.insert(id);
  }
  return cluster;
}

/// |cluster ∩ P| / |P|, exact.
inline Rational estimate_recall(const std::set<std::string>& cluster, const SampleSet& sample) {
  if (sample.all_ids.empty()) throw DataError("cannot estimate recall against an empty sample");
  std::int64_t hit = 0;
  for (const auto& id : sample.all_ids) hit += cluster.count(id);
  return Rational(hit, static_cast<std::int64_t>(sample.all_ids.size()));
}

namespace detail {

// recall^2 / |C| compared across grid points. The sample size cancels, so
// comparing hitP^2 / sizeC as integer cross products is exact.
inline bool objective_greater(std::int64_t hit_a, std::int64_t size_a, std::int64_t hit_b,
                              std::int64_t size_b) {
  using W = __int128;
  return static_cast<W>(hit_a) * hit_a * size_b > static_cast<W>(hit_b) * hit_b * size_a;
}

}  // namespace detail

/// Exhaustively evaluates the whole threshold grid
///   phi1 in [1, 1+max s1], phi2 in [0, 1+max s2], phi_clo in [0, 1+max s_clo]
/// and returns the point maximizing estimated-recall^2 / |C| among points
/// with recall >= recall_floor and a non-empty cluster. Ties go to the most
/// selective thresholds (lexicographically largest triple).
///
/// The grid is swept one phi1 slice at a time: cases enter a 2D histogram
/// over (s2, s_clo) as phi1 descends, and a suffix sum over that plane gives
/// |C| and |C ∩ P| for every (phi2, phi_clo) at once. This evaluates every
/// grid point exactly, in O(grid) time and O(plane) memory.
inline std::pair<Thresholds, Cluster> search_thresholds(
    const std::map<std::string, ScoreTriple>& scores, const SampleSet& sample,
    Rational recall_floor = Rational(4, 5)) {
  if (sample.all_ids.empty()) throw DataError("cannot search thresholds with an empty sample");
  const auto sample_size = static_cast<std::int64_t>(sample.all_ids.size());

  std::int32_t max1 = 0, max2 = 0, max3 = 0;
  for (const auto& [id, s] : scores) {
    max1 = std::max(max1, s.s1);
    max2 = std::max(max2, s.s2);
    max3 = std::max(max3, s.s_clo);
  }
  const std::int32_t d2 = max2 + 2, d3 = max3 + 2;

  // Cases bucketed by s1 so the sweep can add one slice at a time.
  std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> all_by_s1(max1 + 2);
  std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> sample_by_s1(max1 + 2);
  for (const auto& [id, s] : scores) {
    all_by_s1[s.s1].emplace_back(s.s2, s.s_clo);
    if (sample.all_ids.count(id)) sample_by_s1[s.s1].emplace_back(s.s2, s.s_clo);
  }

  std::vector<std::int64_t> plane_all(static_cast<std::size_t>(d2) * d3, 0);
  std::vector<std::int64_t> plane_sample(plane_all.size(), 0);
  std::vector<std::int64_t> cum_all(plane_all.size());
  std::vector<std::int64_t> cum_sample(plane_all.size());
  const auto at = [&](std::int32_t b, std::int32_t c) { return static_cast<std::size_t>(b) * d3 + c; };

  const auto meets_floor = [&](std::int64_t hit) {
    using W = __int128;
    return static_cast<W>(hit) * recall_floor.denominator() >=
           static_cast<W>(recall_floor.numerator()) * sample_size;
  };

  bool found = false;
  Thresholds best;
  std::int64_t best_hit = 0, best_size = 0;

  Thresholds diag;
  std::int64_t diag_hit = -1, diag_size = 0;

  for (std::int32_t phi1 = max1 + 1; phi1 >= 1; --phi1) {
    if (phi1 <= max1) {
      for (const auto& [s2, s3] : all_by_s1[phi1]) ++plane_all[at(s2, s3)];
      for (const auto& [s2, s3] : sample_by_s1[phi1]) ++plane_sample[at(s2, s3)];
    }
    // Suffix sums over the plane: cum[b][c] = #cases with s2 >= b, s_clo >= c.
    for (std::int32_t b = d2 - 1; b >= 0; --b) {
      std::int64_t row_all = 0, row_sample = 0;
      for (std::int32_t c = d3 - 1; c >= 0; --c) {
        row_all += plane_all[at(b, c)];
        row_sample += plane_sample[at(b, c)];
        cum_all[at(b, c)] = row_all + (b + 1 < d2 ? cum_all[at(b + 1, c)] : 0);
        cum_sample[at(b, c)] = row_sample + (b + 1 < d2 ? cum_sample[at(b + 1, c)] : 0);
      }
    }
    // Descending scan keeps the lexicographically largest point on ties.
    for (std::int32_t phi2 = d2 - 1; phi2 >= 0; --phi2) {
      for (std::int32_t phi_clo = d3 - 1; phi_clo >= 0; --phi_clo) {
        const std::int64_t size_c = cum_all[at(phi2, phi_clo)];
        const std::int64_t hit_p = cum_sample[at(phi2, phi_clo)];
        // Diagnostic candidate: the scan visits points in descending order,
        // so replacing on >= leaves the most inclusive point of max recall.
        if (hit_p >= diag_hit) {
          diag = Thresholds{phi1, phi2, phi_clo};
          diag_hit = hit_p;
          diag_size = size_c;
        }
        if (size_c < 1 || !meets_floor(hit_p)) continue;
        if (!found || detail::objective_greater(hit_p, size_c, best_hit, best_size)) {
          found = true;
          best = Thresholds{phi1, phi2, phi_clo};
          best_hit = hit_p;
          best_size = size_c;
        }
      }
    }
  }

  if (!found) {
    throw InfeasibleThresholdsError(
        "no thresholds reach recall floor " + to_string(recall_floor) + " with a non-empty cluster; " +
            "closest: (" + std::to_string(diag.phi1) + ", " + std::to_string(diag.phi2) + ", " +
            std::to_string(diag.phi_clo) + ") with recall " +
            to_string(Rational(std::max<std::int64_t>(diag_hit, 0), sample_size)) + " and " +
            std::to_string(diag_size) + " cases",
        diag, Rational(std::max<std::int64_t>(diag_hit, 0), sample_size),
        static_cast<std::size_t>(diag_size));
  }

  Cluster cluster;
  cluster.thresholds = best;
  cluster.case_ids = apply_thresholds(scores, best);
  cluster.est_recall = Rational(best_hit, sample_size);
  return {best, cluster};
}

// Cluster file: a one-line JSON header followed by one case id per line.

inline void write_cluster(std::ostream& out, const Cluster& cluster) {
  nlohmann::json header;
  header["phi1"] = cluster.thresholds.phi1;
  header["phi2"] = cluster.thresholds.phi2;
  header["phi_clo"] = cluster.thresholds.phi_clo;
  header["est_recall"] = to_string(cluster.est_recall);
  header["cluster_size"] = cluster.case_ids.size();
  out << header.dump() << "\n";
  for (const auto& id : cluster.case_ids) out << id << "\n";
}

/// Reads a newline-delimited id list; a leading JSON header line is skipped,
/// so cluster files and plain id lists both work.
inline std::set<std::string> read_id_list(std::istream& in) {
  std::set<std::string> ids;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first && !line.empty() && line.front() == '{') {
      first = false;
      continue;
    }
    first = false;
    if (!line.empty()) ids.insert(line);
  }
  return ids;
}

}  // namespace fspc

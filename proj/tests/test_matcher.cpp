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

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "fixtures.hpp"
#include "fspc/matcher.hpp"
#include "fspc/mining.hpp"
#include "oracle.hpp"

using namespace fspc;

namespace {

PatternBundle worked_bundle() {
  return select_bundle(mine_frequent(fixtures::worked_training(), MinSupport(Rational(4, 5))));
}

EventLog toy_log() {
  std::vector<Event> events;
  std::int64_t id = 0;
  const auto add_trace = [&](const std::string& case_id, const std::vector<std::string>& acts) {
    for (std::size_t i = 0; i < acts.size(); ++i) {
      Event e;
      e.event_id = std::to_string(id++);
      e.case_id = case_id;
      e.activity = acts[i];
      e.timestamp_ms = static_cast<std::int64_t>(i);
      events.push_back(std::move(e));
    }
  };
  add_trace("t1", {"A", "B", "C"});
  add_trace("t2", {"A", "C"});
  add_trace("t3", {"B", "C"});
  return build_traces(std::move(events));
}

}  // namespace

TEST_CASE("subsequence containment respects order", "[matcher]") {
  const LabelSequence abc{"x", {"A", "B", "C"}};
  CHECK(is_subsequence(std::vector<std::string>{"A", "C"}, abc));
  CHECK_FALSE(is_subsequence(std::vector<std::string>{"C", "A"}, abc));
  CHECK(is_subsequence(std::vector<std::string>{"A", "B", "C"}, abc));
  CHECK_FALSE(is_subsequence(std::vector<std::string>{"A", "B", "C", "C"}, abc));
}

TEST_CASE("empty patterns are a precondition violation", "[matcher]") {
  const LabelSequence seq{"x", {"A"}};
  CHECK_THROWS_AS(is_subsequence(std::vector<std::string>{}, seq), std::invalid_argument);
}

TEST_CASE("the long worked-example pattern matches a consistent probe", "[matcher]") {
  const std::vector<std::string> pattern = {"A", "C", "D", "F"};
  const LabelSequence with_leading_e{"s4", {"E", "A", "C", "D", "F"}};
  CHECK(is_subsequence(pattern, with_leading_e));
  CHECK(is_subsequence(pattern, fixtures::worked_probe()));
}

TEST_CASE("worked example probe scores (4, 6, 1)", "[matcher]") {
  const ScoreTriple t = score_trace(fixtures::worked_probe(), worked_bundle());
  CHECK(t.s1 == 4);
  CHECK(t.s2 == 6);
  CHECK(t.s_clo == 1);
}

TEST_CASE("an empty sequence scores zero everywhere", "[matcher]") {
  const ScoreTriple t = score_trace(LabelSequence{"x", {}}, worked_bundle());
  CHECK(t.s1 == 0);
  CHECK(t.s2 == 0);
  CHECK(t.s_clo == 0);
}

TEST_CASE("a training trace matches a full-support bundle completely", "[matcher]") {
  const auto training = fixtures::worked_training();
  const PatternBundle bundle = select_bundle(mine_frequent(training, MinSupport(Rational(1))));
  for (const auto& seq : training) {
    const ScoreTriple t = score_trace(seq, bundle);
    CHECK(t.s1 == static_cast<std::int32_t>(bundle.sp1.size()));
    CHECK(t.s2 == static_cast<std::int32_t>(bundle.sp2.size()));
    CHECK(t.s_clo == static_cast<std::int32_t>(bundle.sp_clo.size()));
  }
}

TEST_CASE("score_log covers every case", "[matcher]") {
  const EventLog log = toy_log();
  const PatternBundle bundle =
      select_bundle(mine_frequent(simplify_log(log), MinSupport(Rational(3, 5))));
  const auto scores = score_log(log, log.labeler, bundle);
  REQUIRE(scores.size() == 3);
  CHECK(scores.at("t1") == ScoreTriple{"t1", 3, 2, 3});
  CHECK(scores.at("t2") == ScoreTriple{"t2", 2, 1, 2});
  CHECK(scores.at("t3") == ScoreTriple{"t3", 2, 1, 2});
}

TEST_CASE("a log of one empty trace scores (0,0,0)", "[matcher]") {
  Event e;
  e.event_id = "0";
  e.case_id = "only";
  e.activity = "Z";
  EventLog log = build_traces({e});
  log.traces[0].events.clear();  // degenerate trace
  const auto scores = score_log(log, log.labeler, worked_bundle());
  REQUIRE(scores.size() == 1);
  CHECK(scores.at("only") == ScoreTriple{"only", 0, 0, 0});
}

TEST_CASE("scoring ignores log order and cross-trace state", "[matcher]") {
  const EventLog log = toy_log();
  const PatternBundle bundle =
      select_bundle(mine_frequent(simplify_log(log), MinSupport(Rational(3, 5))));
  const auto batch = score_log(log, log.labeler, bundle);
  for (const auto& trace : log.traces) {
    const ScoreTriple solo = score_trace(simplify(trace, log.labeler), bundle);
    CHECK(batch.at(trace.case_id) == solo);
  }
}

TEST_CASE("compiled matcher agrees with exhaustive matching", "[matcher]") {
  SplitMix64 rng(31);
  for (int round = 0; round < 40; ++round) {
    const auto collection = fixtures::random_collection(rng);
    PatternSet mined;
    try {
      mined = mine_frequent(collection, MinSupport(Rational(1, 2)));
    } catch (const DataError&) {
      continue;  // empty collection draw
    }
    const PatternBundle bundle = select_bundle(mined);
    const BundleMatcher matcher(bundle);
    for (const auto& seq : collection) {
      const ScoreTriple fast = matcher.score(seq);
      const ScoreTriple slow = oracle::naive_score(seq, bundle);
      CHECK(fast == slow);
    }
    // Also probe traces that were not mined over.
    const auto probes = fixtures::random_collection(rng);
    for (const auto& seq : probes) {
      CHECK(matcher.score(seq) == oracle::naive_score(seq, bundle));
    }
  }
}

TEST_CASE("appending events never lowers a score", "[matcher]") {
  SplitMix64 rng(37);
  const PatternBundle bundle = worked_bundle();
  for (int round = 0; round < 50; ++round) {
    LabelSequence seq{"x", {}};
    ScoreTriple prev = score_trace(seq, bundle);
    for (int step = 0; step < 8; ++step) {
      seq.labels.push_back(std::string(1, static_cast<char>('A' + rng.below(6))));
      const ScoreTriple next = score_trace(seq, bundle);
      CHECK(next.s1 >= prev.s1);
      CHECK(next.s2 >= prev.s2);
      CHECK(next.s_clo >= prev.s_clo);
      prev = next;
    }
  }
}

TEST_CASE("score dump round-trips including awkward case ids", "[matcher]") {
  std::map<std::string, ScoreTriple> scores;
  scores["plain"] = ScoreTriple{"plain", 1, 2, 3};
  scores["with,comma"] = ScoreTriple{"with,comma", 4, 5, 6};
  scores["with\"quote"] = ScoreTriple{"with\"quote", 7, 8, 9};
  std::ostringstream out;
  write_scores(out, scores);
  std::istringstream in(out.str());
  const auto back = read_scores(in);
  CHECK(back == scores);
}

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

// Command-line pipeline: synth -> mine -> cluster -> eval / map. Each stage
// reads and writes plain files, so any stage can be re-run or audited on its
// own. Exit codes: 0 ok, 2 bad invocation/config, 3 bad data, 4 no feasible
// thresholds, 5 resource limit hit.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fspc/fspc.hpp"

namespace fs = std::filesystem;

namespace {

int verbosity() {
  static const int level = [] {
    const char* v = std::getenv("FSPC_LOG");
    if (!v) return 1;
    const std::string s(v);
    if (s == "quiet" || s == "0") return 0;
    if (s == "debug" || s == "2") return 2;
    return 1;
  }();
  return level;
}

void info(const std::string& msg) {
  if (verbosity() >= 1) std::cerr << "[fspc] " << msg << "\n";
}

void debug(const std::string& msg) {
  if (verbosity() >= 2) std::cerr << "[fspc] " << msg << "\n";
}

struct IngestOptions {
  std::string log_path;
  std::string sample_path;
  std::string delimiter = ",";
  std::string col_event_id = "event_id";
  std::string col_case_id = "case_id";
  std::string col_activity = "activity";
  std::string col_timestamp = "timestamp";
  std::string col_diag = "diag_code";
  std::string labeler_mode = "activity+diag";
  std::string separator = fspc::kDefaultSeparator;
  int year = 0;  // 0 = no year filter
};

struct MineOptions {
  IngestOptions ingest;
  std::string out_dir;
  std::string phi_s = "0.8";
  std::size_t k = 10;
  std::uint64_t seed = 1;
  std::size_t max_frontier = 100000;
  std::size_t max_pattern_length = 0;  // 0 = unbounded
  bool allow_truncation = false;
};

struct ClusterOptions {
  MineOptions mine;
  std::string recall_floor = "0.8";
  unsigned threads = 0;
};

fspc::Labeler make_labeler(const IngestOptions& opts) {
  fspc::Labeler labeler;
  labeler.mode = opts.labeler_mode == "activity" ? fspc::Labeler::Mode::kActivityOnly
                                                 : fspc::Labeler::Mode::kActivityDiag;
  labeler.separator = opts.separator;
  return labeler;
}

fspc::CsvSchema make_schema(const IngestOptions& opts) {
  fspc::CsvSchema schema;
  schema.event_id = opts.col_event_id;
  schema.case_id = opts.col_case_id;
  schema.activity = opts.col_activity;
  schema.timestamp = opts.col_timestamp;
  schema.diag_code = opts.col_diag;
  if (opts.delimiter.size() != 1) throw fspc::DataError("delimiter must be a single character");
  schema.delimiter = opts.delimiter[0];
  return schema;
}

fspc::EventLog load_log(const IngestOptions& opts, const fs::path& report_path) {
  auto parsed = fspc::parse_event_csv_file(opts.log_path, make_schema(opts));
  if (!parsed.errors.empty()) {
    std::ofstream report(report_path, std::ios::binary);
    fspc::write_error_report(report, parsed.errors);
    info(std::to_string(parsed.errors.size()) + " rows rejected, see " + report_path.string());
  }
  fspc::EventLog log = fspc::build_traces(std::move(parsed.events), make_labeler(opts));
  if (opts.year != 0) {
    const int year = opts.year;
    log = fspc::filter_log(
        log, [year](const fspc::Event& e) { return fspc::timestamp_year(e.timestamp_ms) == year; });
    info("year filter " + std::to_string(year) + " keeps " + std::to_string(log.traces.size()) +
         " traces / " + std::to_string(log.event_count()) + " events");
  }
  info("loaded " + std::to_string(log.traces.size()) + " traces, " +
       std::to_string(log.event_count()) + " events, " +
       std::to_string(log.label_alphabet.size()) + " distinct labels");
  return log;
}

std::set<std::string> load_ids(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fspc::DataError("cannot open " + path);
  return fspc::read_id_list(in);
}

std::set<std::string> load_sample_checked(const std::string& path, const fspc::EventLog& log) {
  const std::set<std::string> sample = load_ids(path);
  if (sample.empty()) throw fspc::DataError("sample file " + path + " contains no case ids");
  std::vector<std::string> missing;
  for (const auto& id : sample) {
    if (log.find(id) == nullptr) missing.push_back(id);
  }
  if (!missing.empty()) {
    std::string msg = "sample ids not present in the log:";
    for (const auto& id : missing) msg += " " + id;
    throw fspc::DataError(msg);
  }
  return sample;
}

fspc::MiningLimits make_limits(const MineOptions& opts) {
  fspc::MiningLimits limits;
  limits.max_frontier = opts.max_frontier;
  limits.allow_truncation = opts.allow_truncation;
  if (opts.max_pattern_length > 0) limits.max_pattern_length = opts.max_pattern_length;
  return limits;
}

struct MineResult {
  fspc::EventLog log;
  fspc::SampleSet sample;
  fspc::PatternBundle bundle;
};

MineResult run_mine(const MineOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  MineResult r;
  fs::create_directories(opts.out_dir);
  r.log = load_log(opts.ingest, fs::path(opts.out_dir) / "ingest_report.txt");
  const auto sample_ids = load_sample_checked(opts.ingest.sample_path, r.log);
  r.sample = fspc::split_sample(sample_ids, opts.k, opts.seed);

  std::vector<fspc::LabelSequence> training;
  for (const auto& id : r.sample.train_ids) {
    training.push_back(fspc::simplify(*r.log.find(id), r.log.labeler));
  }
  const fspc::MinSupport phi_s{fspc::parse_decimal(opts.phi_s)};
  const fspc::PatternSet mined = fspc::mine_frequent(training, phi_s, make_limits(opts));
  r.bundle = fspc::select_bundle(mined);
  fspc::save_bundle(opts.out_dir, r.bundle, mined.source_size);

  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
  nlohmann::json report;
  report["phi_s"] = fspc::to_string(phi_s.value());
  report["k"] = opts.k;
  report["seed"] = opts.seed;
  report["sample_size"] = sample_ids.size();
  report["frequent_patterns"] = mined.patterns.size();
  report["sp1"] = r.bundle.sp1.size();
  report["sp2"] = r.bundle.sp2.size();
  report["sp_clo"] = r.bundle.sp_clo.size();
  report["truncated"] = mined.truncated;
  report["elapsed_ms"] = elapsed.count();
  std::ofstream out(fs::path(opts.out_dir) / "mine_report.json", std::ios::binary);
  out << report.dump(2) << "\n";

  info("mined " + std::to_string(mined.patterns.size()) + " patterns (sp1 " +
       std::to_string(r.bundle.sp1.size()) + ", sp2 " + std::to_string(r.bundle.sp2.size()) +
       ", sp_clo " + std::to_string(r.bundle.sp_clo.size()) + ") in " +
       std::to_string(elapsed.count()) + " ms");
  return r;
}

int run_cluster(const ClusterOptions& opts) {
  const fs::path out_dir(opts.mine.out_dir);
  MineResult mined;
  if (fs::exists(out_dir / "bundle.json")) {
    info("reusing bundle from " + out_dir.string());
    mined.bundle = fspc::load_bundle(out_dir);
    mined.log = load_log(opts.mine.ingest, out_dir / "ingest_report.txt");
    const auto sample_ids = load_sample_checked(opts.mine.ingest.sample_path, mined.log);
    mined.sample = fspc::split_sample(sample_ids, opts.mine.k, opts.mine.seed);
  } else {
    mined = run_mine(opts.mine);
  }

  const auto scores = fspc::score_log(mined.log, mined.log.labeler, mined.bundle, opts.threads);
  {
    std::ofstream out(out_dir / "scores.csv", std::ios::binary);
    fspc::write_scores(out, scores);
  }
  debug("scored " + std::to_string(scores.size()) + " cases");

  const fspc::Rational floor = fspc::parse_decimal(opts.recall_floor);
  auto [thresholds, cluster] = fspc::search_thresholds(scores, mined.sample, floor);

  nlohmann::json tj;
  tj["phi1"] = thresholds.phi1;
  tj["phi2"] = thresholds.phi2;
  tj["phi_clo"] = thresholds.phi_clo;
  tj["est_recall"] = fspc::to_string(cluster.est_recall);
  tj["cluster_size"] = cluster.case_ids.size();
  {
    std::ofstream out(out_dir / "thresholds.json", std::ios::binary);
    out << tj.dump(2) << "\n";
  }
  {
    std::ofstream out(out_dir / "cluster.txt", std::ios::binary);
    fspc::write_cluster(out, cluster);
  }
  info("thresholds (" + std::to_string(thresholds.phi1) + ", " + std::to_string(thresholds.phi2) +
       ", " + std::to_string(thresholds.phi_clo) + "), cluster size " +
       std::to_string(cluster.case_ids.size()) + ", estimated recall " +
       fspc::to_string(cluster.est_recall));
  return 0;
}

int run_eval(const std::string& cluster_path, const std::string& truth_path,
             const std::string& out_path) {
  const auto cluster = load_ids(cluster_path);
  const fspc::GroundTruth truth{load_ids(truth_path)};
  const fspc::Metrics m = fspc::metrics(cluster, truth);
  std::int64_t hit = 0;
  for (const auto& id : cluster) hit += truth.case_ids.count(id);
  const nlohmann::json report = fspc::metrics_report(m, cluster.size(), truth.case_ids.size(),
                                                     static_cast<std::size_t>(hit));
  std::cout << report.dump(2) << "\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    out << report.dump(2) << "\n";
  }
  return 0;
}

int run_map(const std::string& bundle_dir, const std::string& out_path,
            const std::string& json_path, bool plain, bool transitive) {
  const auto sp_clo = fspc::read_patterns_file(fs::path(bundle_dir) / "sp_clo.jsonl");
  fspc::BuildMapOptions build_opts;
  build_opts.transitive_edges = transitive;
  const fspc::ProcessMap map = fspc::build_map(sp_clo, build_opts);
  fspc::DotOptions dot_opts;
  dot_opts.label_supports = !plain;
  {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw fspc::DataError("cannot write " + out_path);
    out << fspc::to_dot(map, dot_opts);
  }
  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary);
    out << fspc::to_json(map).dump(2) << "\n";
  }
  info(std::to_string(map.nodes.size()) + " nodes, " + std::to_string(map.edges.size()) +
       " edges -> " + out_path);
  return 0;
}

struct SynthOptions {
  fspc::SyntheticSpec spec;
  std::string out_dir;
  std::size_t sample_size = 0;
};

int run_synth(const SynthOptions& opts) {
  const auto result = fspc::generate_synthetic(opts.spec);
  fs::create_directories(opts.out_dir);
  const fs::path dir(opts.out_dir);
  {
    std::ofstream out(dir / "log.csv", std::ios::binary);
    fspc::write_event_csv(out, result.log);
  }
  {
    std::ofstream out(dir / "truth.txt", std::ios::binary);
    for (const auto& id : result.truth.case_ids) out << id << "\n";
  }
  {
    std::ofstream out(dir / "signatures.jsonl", std::ios::binary);
    for (const auto& sig : result.signatures) {
      out << nlohmann::json{{"labels", sig}}.dump() << "\n";
    }
  }
  if (opts.sample_size > 0) {
    const auto sample = fspc::sample_from_truth(result.truth, opts.sample_size, opts.spec.seed);
    std::ofstream out(dir / "sample.txt", std::ios::binary);
    for (const auto& id : sample) out << id << "\n";
  }
  info("wrote " + std::to_string(result.log.traces.size()) + " traces / " +
       std::to_string(result.log.event_count()) + " events to " + dir.string());
  return 0;
}

void add_ingest_options(CLI::App* cmd, IngestOptions& opts, bool need_sample) {
  cmd->add_option("--log", opts.log_path, "Event log CSV")->required();
  auto* sample = cmd->add_option("--sample", opts.sample_path, "Sample case ids, one per line");
  if (need_sample) sample->required();
  cmd->add_option("--delimiter", opts.delimiter, "CSV field delimiter (default ,)");
  cmd->add_option("--col-event-id", opts.col_event_id, "Column holding the event id");
  cmd->add_option("--col-case-id", opts.col_case_id, "Column holding the case id");
  cmd->add_option("--col-activity", opts.col_activity, "Column holding the activity");
  cmd->add_option("--col-timestamp", opts.col_timestamp, "Column holding the timestamp");
  cmd->add_option("--col-diag", opts.col_diag, "Column holding the diagnosis code");
  cmd->add_option("--labeler", opts.labeler_mode, "Label mode: activity+diag or activity")
      ->check(CLI::IsMember({"activity+diag", "activity"}));
  cmd->add_option("--separator", opts.separator, "Separator for composite labels");
  cmd->add_option("--year", opts.year, "Keep only events of this calendar year");
}

CLI::Validator decimal_validator(bool zero_allowed) {
  return CLI::Validator(
      [zero_allowed](std::string& value) -> std::string {
        try {
          const fspc::Rational r = fspc::parse_decimal(value);
          if (r > fspc::Rational(1) || r < fspc::Rational(0) ||
              (!zero_allowed && r == fspc::Rational(0))) {
            return "value " + value + " is out of range";
          }
        } catch (const std::exception&) {
          return "value " + value + " is not a decimal";
        }
        return {};
      },
      "DECIMAL");
}

void add_mine_options(CLI::App* cmd, MineOptions& opts) {
  add_ingest_options(cmd, opts.ingest, true);
  cmd->add_option("--out", opts.out_dir, "Output directory")->required();
  cmd->add_option("--phi-s", opts.phi_s, "Minimum support in (0, 1]")
      ->check(decimal_validator(false));
  cmd->add_option("--k", opts.k, "Training subset size")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opts.seed, "Seed for the train/test split");
  cmd->add_option("--max-frontier", opts.max_frontier, "Cap on mined patterns");
  cmd->add_option("--max-pattern-length", opts.max_pattern_length,
                  "Cap on pattern length (0 = unbounded)");
  cmd->add_flag("--allow-truncation", opts.allow_truncation,
                "Return a truncated pattern set instead of failing at the frontier cap");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial trace clustering from expert samples via frequent sequence patterns"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key = value config file");

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a planted-cluster benchmark log");
  synth_cmd->add_option("--out", synth.out_dir, "Output directory")->required();
  synth_cmd->add_option("--n-cases", synth.spec.n_cases)->check(CLI::PositiveNumber);
  synth_cmd->add_option("--alphabet", synth.spec.alphabet_size)->check(CLI::PositiveNumber);
  synth_cmd->add_option("--len-min", synth.spec.trace_len_range.first);
  synth_cmd->add_option("--len-max", synth.spec.trace_len_range.second);
  synth_cmd->add_option("--cluster-size", synth.spec.cluster_size);
  synth_cmd->add_option("--signatures", synth.spec.n_signature_patterns);
  synth_cmd->add_option("--sig-len-min", synth.spec.signature_len_range.first);
  synth_cmd->add_option("--sig-len-max", synth.spec.signature_len_range.second);
  synth_cmd->add_option("--embed-prob", synth.spec.embed_prob);
  synth_cmd->add_option("--noise", synth.spec.noise_label_rate);
  synth_cmd->add_option("--seed", synth.spec.seed);
  synth_cmd->add_option("--sample-size", synth.sample_size,
                        "Also draw a sample of this many cluster ids");

  MineOptions mine;
  auto* mine_cmd = app.add_subcommand("mine", "Mine the criteria bundle from a training sample");
  add_mine_options(mine_cmd, mine);

  ClusterOptions cluster;
  auto* cluster_cmd =
      app.add_subcommand("cluster", "Score all traces and auto-tune the cluster thresholds");
  add_mine_options(cluster_cmd, cluster.mine);
  cluster_cmd->add_option("--recall-floor", cluster.recall_floor,
                          "Minimum estimated recall for a feasible cut")
      ->check(decimal_validator(true));
  cluster_cmd->add_option("--threads", cluster.threads, "Scoring threads (0 = all cores)");

  std::string eval_cluster, eval_truth, eval_out;
  auto* eval_cmd = app.add_subcommand("eval", "Compare a cluster file against ground truth");
  eval_cmd->add_option("--cluster", eval_cluster, "Computed cluster id list")->required();
  eval_cmd->add_option("--truth", eval_truth, "Ground truth id list")->required();
  eval_cmd->add_option("--out", eval_out, "Also write the metrics JSON here");

  std::string map_bundle, map_out, map_json;
  bool map_plain = false, map_transitive = false;
  auto* map_cmd = app.add_subcommand("map", "Render the closed patterns as a process map");
  map_cmd->add_option("--bundle", map_bundle, "Bundle directory (from mine)")->required();
  map_cmd->add_option("--out", map_out, "DOT output file")->required();
  map_cmd->add_option("--json", map_json, "Also write the map as JSON here");
  map_cmd->add_flag("--plain", map_plain, "Omit support annotations");
  map_cmd->add_flag("--transitive", map_transitive,
                    "Add edges for non-adjacent pattern positions too");

  try {
    app.parse(argc, argv);
    if (synth_cmd->parsed()) return run_synth(synth);
    if (mine_cmd->parsed()) {
      run_mine(mine);
      return 0;
    }
    if (cluster_cmd->parsed()) return run_cluster(cluster);
    if (eval_cmd->parsed()) return run_eval(eval_cluster, eval_truth, eval_out);
    if (map_cmd->parsed()) return run_map(map_bundle, map_out, map_json, map_plain, map_transitive);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const fspc::InfeasibleThresholdsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const fspc::ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

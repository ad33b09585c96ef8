// Command-line front end: wires datasets, configuration, training, evaluation,
// baselines, ablations, and the dimension/level sweeps into reproducible runs
// with machine-readable JSON outputs.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ciliagraph/baselines.hpp"
#include "ciliagraph/classify.hpp"
#include "ciliagraph/dataset.hpp"
#include "ciliagraph/errors.hpp"
#include "ciliagraph/model_io.hpp"
#include "ciliagraph/version.hpp"

namespace {

using nlohmann::json;
using namespace ciliagraph;

constexpr int kDefaultDim = 120;
constexpr int kDefaultLevels = 8;
constexpr int kDefaultSeeds = 10;
constexpr double kDefaultTestFraction = 0.1;
constexpr int kBaselineDefaultDim = 10000;

struct RunConfig {
  std::string data_dir;
  std::string dataset;
  int dim = kDefaultDim;
  int levels = kDefaultLevels;
  std::uint64_t seed = 0;
  int seeds = kDefaultSeeds;
  double test_fraction = kDefaultTestFraction;
  int folds = 0;  // 0 = holdout
  bool stratified = true;
  std::string variant = "full";
  std::string hw_mode = "entrywise";
  std::string out_path;
  std::string manifest_path;

  [[nodiscard]] SplitSpec split_spec(std::uint64_t run_seed) const {
    SplitSpec spec;
    spec.mode = folds > 0 ? SplitSpec::Mode::kfold : SplitSpec::Mode::holdout;
    spec.test_fraction = test_fraction;
    spec.fold_count = folds;
    spec.seed = run_seed;
    spec.stratified = stratified;
    return spec;
  }

  [[nodiscard]] PipelineConfig pipeline(std::uint64_t run_seed) const {
    PipelineConfig cfg;
    cfg.dim = dim;
    cfg.levels = levels;
    cfg.seed = run_seed;
    cfg.variant = variant_from_string(variant);
    cfg.hw_mode = hw_mode == "matmul" ? HyperWeightMode::matmul : HyperWeightMode::entrywise;
    return cfg;
  }

  [[nodiscard]] json to_json() const {
    return json{{"data", data_dir},
                {"dataset", dataset},
                {"dim", dim},
                {"levels", levels},
                {"seed", seed},
                {"seeds", seeds},
                {"test_fraction", test_fraction},
                {"folds", folds},
                {"stratified", stratified},
                {"variant", variant},
                {"hw_mode", hw_mode}};
  }
};

// Flag wiring shared by the dataset-driven subcommands. Precedence is
// flags > config file > CILIAGRAPH_SEED (seed only) > built-in defaults,
// resolved after parsing via CLI11's count() bookkeeping.
struct CommonOptions {
  RunConfig cfg;
  std::string config_file;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* dim_opt = nullptr;
  CLI::Option* variant_opt = nullptr;

  void attach(CLI::App* cmd, bool needs_dataset, bool own_variant_flag = false) {
    auto* data = cmd->add_option("--data", cfg.data_dir, "Dataset directory (TUDataset layout)");
    auto* name = cmd->add_option("--dataset", cfg.dataset, "Dataset name (file prefix)");
    if (needs_dataset) {
      data->required();
      name->required();
    }
    dim_opt = cmd->add_option("--dim", cfg.dim, "Hypervector dimension D");
    cmd->add_option("--levels", cfg.levels, "Quantization levels m (must exceed 2)");
    seed_opt = cmd->add_option("--seed", cfg.seed, "Base seed");
    cmd->add_option("--seeds", cfg.seeds, "Seed repetitions for protocol runs");
    cmd->add_option("--test-fraction", cfg.test_fraction, "Holdout test fraction");
    cmd->add_option("--folds", cfg.folds, "Use stratified k-fold with this fold count");
    cmd->add_flag("--no-stratify", [this](std::int64_t) { cfg.stratified = false; },
                  "Disable stratified splitting");
    cmd->add_option("--hyper-weight-mode", cfg.hw_mode, "entrywise (default) or matmul")
        ->check(CLI::IsMember({"entrywise", "matmul"}));
    if (!own_variant_flag) {
      variant_opt =
          cmd->add_option("--variant", cfg.variant, "full|p1|p2|p3|uniform-quant")
              ->check(CLI::IsMember({"full", "p1", "p2", "p3", "uniform-quant"}));
    }
    cmd->add_option("--out", cfg.out_path, "Output path");
    cmd->add_option("--manifest", cfg.manifest_path, "Manifest path");
    cmd->add_option("--config", config_file, "JSON config file (lower precedence than flags)");
  }

  void resolve() {
    json file_cfg;
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) throw InputError("cannot read config file: " + config_file);
      try {
        in >> file_cfg;
      } catch (const json::exception& e) {
        throw InputError("config file is not valid JSON: " + std::string(e.what()));
      }
      auto merge = [&](const char* key, auto& target, const CLI::Option* opt) {
        if (file_cfg.contains(key) && (opt == nullptr || opt->count() == 0)) {
          file_cfg.at(key).get_to(target);
        }
      };
      merge("data", cfg.data_dir, nullptr);
      merge("dataset", cfg.dataset, nullptr);
      merge("dim", cfg.dim, dim_opt);
      merge("levels", cfg.levels, nullptr);
      merge("seed", cfg.seed, seed_opt);
      merge("seeds", cfg.seeds, nullptr);
      merge("test_fraction", cfg.test_fraction, nullptr);
      merge("folds", cfg.folds, nullptr);
      merge("stratified", cfg.stratified, nullptr);
      merge("variant", cfg.variant, variant_opt);
      merge("hw_mode", cfg.hw_mode, nullptr);
    }
    if (seed_opt->count() == 0 && !(file_cfg.contains("seed"))) {
      if (const char* env = std::getenv("CILIAGRAPH_SEED")) {
        cfg.seed = std::strtoull(env, nullptr, 10);
      }
    }
  }
};

void write_json_file(const std::string& path, const json& doc) {
  namespace fs = std::filesystem;
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InputError("cannot write output file: " + path);
  out << doc.dump(2) << "\n";
}

void write_manifest(const std::string& command, const RunConfig& cfg, const json& outputs,
                    const json& results, double total_s) {
  std::string path = cfg.manifest_path;
  if (path.empty()) {
    path = cfg.out_path.empty() ? command + ".manifest.json" : cfg.out_path + ".manifest.json";
  }
  json doc{{"schema", "ciliagraph/run-manifest/v1"},
           {"command", command},
           {"version", kVersion},
           {"config", cfg.to_json()},
           {"outputs", outputs},
           {"results", results},
           {"timings", json{{"total_s", total_s}}}};
  write_json_file(path, doc);
}

json report_to_json(const EvalReport& report) { return json::parse(report.to_json()); }

struct RunResult {
  std::uint64_t seed = 0;
  int fold = -1;
  EvalReport report;
};

json runs_to_json(const std::vector<RunResult>& runs) {
  json arr = json::array();
  for (const auto& r : runs) {
    json entry{{"seed", r.seed}, {"report", report_to_json(r.report)}};
    if (r.fold >= 0) entry["fold"] = r.fold;
    arr.push_back(entry);
  }
  return arr;
}

double mean_accuracy(const std::vector<RunResult>& runs) {
  double sum = 0.0;
  for (const auto& r : runs) sum += r.report.accuracy;
  return runs.empty() ? 0.0 : sum / static_cast<double>(runs.size());
}

double std_accuracy(const std::vector<RunResult>& runs) {
  if (runs.size() < 2) return 0.0;
  const double mean = mean_accuracy(runs);
  double ss = 0.0;
  for (const auto& r : runs) {
    ss += (r.report.accuracy - mean) * (r.report.accuracy - mean);
  }
  return std::sqrt(ss / static_cast<double>(runs.size() - 1));
}

// One train+eval per (seed, fold) pair of the configured protocol.
std::vector<RunResult> run_protocol(const GraphDataset& dataset, const RunConfig& cfg,
                                    int override_dim = 0) {
  std::vector<RunResult> runs;
  for (int i = 0; i < cfg.seeds; ++i) {
    const std::uint64_t run_seed = cfg.seed + static_cast<std::uint64_t>(i);
    PipelineConfig pipeline = cfg.pipeline(run_seed);
    if (override_dim > 0) pipeline.dim = override_dim;
    const SplitSpec spec = cfg.split_spec(run_seed);
    if (cfg.folds > 0) {
      const auto folds = split_kfold(dataset, spec);
      for (std::size_t f = 0; f < folds.size(); ++f) {
        const TrainedModel model = train(folds[f].first, pipeline);
        runs.push_back({run_seed, static_cast<int>(f), evaluate(model, folds[f].second)});
      }
    } else {
      const auto [train_set, test_set] = split_holdout(dataset, spec);
      const TrainedModel model = train(train_set, pipeline);
      runs.push_back({run_seed, -1, evaluate(model, test_set)});
    }
  }
  return runs;
}

std::vector<RunResult> run_baseline_protocol(const GraphDataset& dataset, const RunConfig& cfg,
                                             int dim) {
  std::vector<RunResult> runs;
  const Variant variant = variant_from_string(cfg.variant);
  for (int i = 0; i < cfg.seeds; ++i) {
    const std::uint64_t run_seed = cfg.seed + static_cast<std::uint64_t>(i);
    const SplitSpec spec = cfg.split_spec(run_seed);
    if (variant == Variant::graphhd) {
      runs.push_back({run_seed, -1, graphhd_train_eval(dataset, spec, dim, run_seed)});
    } else {
      const auto [train_set, test_set] = split_holdout(dataset, spec);
      PipelineConfig pipeline = cfg.pipeline(run_seed);
      pipeline.dim = dim;
      const RecordModel model = record_train(train_set, pipeline);
      runs.push_back({run_seed, -1, record_evaluate(model, test_set)});
    }
  }
  return runs;
}

double elapsed_s(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int cmd_train(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const Variant variant = variant_from_string(cfg.variant);
  if (variant == Variant::graphhd || variant == Variant::record) {
    throw InputError("train persists level-bank models only; run '" + cfg.variant +
                     "' via the baseline subcommand");
  }
  const GraphDataset dataset = parse_tudataset(cfg.data_dir, cfg.dataset, &std::cerr);
  const auto [train_set, test_set] = split_holdout(dataset, cfg.split_spec(cfg.seed));
  const TrainedModel model = train(train_set, cfg.pipeline(cfg.seed), &std::cerr);
  const EvalReport holdout = evaluate(model, test_set);

  const std::string out = cfg.out_path.empty() ? cfg.dataset + ".chd" : cfg.out_path;
  save_model(model, out);

  RunConfig manifest_cfg = cfg;
  manifest_cfg.out_path = out;
  write_manifest("train", manifest_cfg, json{{"model", out}},
                 json{{"holdout_accuracy", holdout.accuracy},
                      {"train_time_s", model.train_time_s},
                      {"graphs_embedded", model.graphs_embedded}},
                 elapsed_s(start));
  std::cout << "trained " << cfg.dataset << ": holdout accuracy " << holdout.accuracy
            << " (model " << out << ")\n";
  return 0;
}

int cmd_eval(const RunConfig& cfg, const std::string& model_path) {
  const auto start = std::chrono::steady_clock::now();
  const GraphDataset dataset = parse_tudataset(cfg.data_dir, cfg.dataset, &std::cerr);

  if (!model_path.empty()) {
    const TrainedModel model = load_model(model_path);
    if (model.attr_count != dataset.attr_count) {
      throw CompatError("model expects " + std::to_string(model.attr_count) +
                        " attributes, dataset has " + std::to_string(dataset.attr_count));
    }
    const auto [train_set, test_set] = split_holdout(dataset, cfg.split_spec(cfg.seed));
    const EvalReport report = evaluate(model, test_set);
    const std::string out = cfg.out_path.empty() ? model_path + ".eval.json" : cfg.out_path;
    write_json_file(out, report_to_json(report));
    RunConfig manifest_cfg = cfg;
    manifest_cfg.out_path = out;
    write_manifest("eval", manifest_cfg, json{{"report", out}, {"model", model_path}},
                   json{{"accuracy", report.accuracy}}, elapsed_s(start));
    std::cout << "accuracy " << report.accuracy << " on " << cfg.dataset << " ("
              << test_set.size() << " test graphs)\n";
    return 0;
  }

  const auto runs = run_protocol(dataset, cfg);
  const double mean = mean_accuracy(runs);
  const double stdev = std_accuracy(runs);
  json doc{{"schema", "ciliagraph/protocol-report/v1"},
           {"dataset", cfg.dataset},
           {"variant", cfg.variant},
           {"mean_accuracy", mean},
           {"std_accuracy", stdev},
           {"runs", runs_to_json(runs)}};
  const std::string out =
      cfg.out_path.empty() ? cfg.dataset + "_protocol.json" : cfg.out_path;
  write_json_file(out, doc);
  RunConfig manifest_cfg = cfg;
  manifest_cfg.out_path = out;
  write_manifest("eval", manifest_cfg, json{{"report", out}},
                 json{{"mean_accuracy", mean}, {"std_accuracy", stdev}}, elapsed_s(start));
  std::cout << cfg.dataset << " (" << cfg.variant << "): accuracy " << mean << " +/- " << stdev
            << " over " << runs.size() << " runs\n";
  return 0;
}

int cmd_sweep_dim(const RunConfig& cfg, const std::vector<int>& dims) {
  const auto start = std::chrono::steady_clock::now();
  if (dims.empty()) throw InputError("sweep-dim: provide at least one dimension");
  const GraphDataset dataset = parse_tudataset(cfg.data_dir, cfg.dataset, &std::cerr);
  const int d_min = minimum_dimension(cfg.levels, dataset.attr_count);

  json rows = json::array();
  for (const int d : dims) {
    const auto runs = run_protocol(dataset, cfg, d);
    rows.push_back(json{{"dim", d},
                        {"d_min", d_min},
                        {"mean_accuracy", mean_accuracy(runs)},
                        {"std_accuracy", std_accuracy(runs)},
                        {"runs", runs_to_json(runs)}});
    std::cout << "D=" << d << ": accuracy " << mean_accuracy(runs) << " +/- "
              << std_accuracy(runs) << "\n";
  }
  json doc{{"schema", "ciliagraph/sweep-table/v1"},
           {"dataset", cfg.dataset},
           {"swept", "dim"},
           {"levels", cfg.levels},
           {"d_min", d_min},
           {"rows", rows}};
  const std::string out =
      cfg.out_path.empty() ? cfg.dataset + "_sweep_dim.json" : cfg.out_path;
  write_json_file(out, doc);
  RunConfig manifest_cfg = cfg;
  manifest_cfg.out_path = out;
  write_manifest("sweep-dim", manifest_cfg, json{{"report", out}}, json{{"d_min", d_min}},
                 elapsed_s(start));
  return 0;
}

int cmd_sweep_levels(const RunConfig& cfg, const std::vector<int>& levels_list,
                     bool uniform_quant) {
  const auto start = std::chrono::steady_clock::now();
  if (levels_list.empty()) throw InputError("sweep-levels: provide at least one level count");
  for (const int m : levels_list) {
    if (m <= 2) {
      throw InputError("sweep-levels: m=" + std::to_string(m) +
                       " rejected; quantization requires m > 2 clusters");
    }
  }
  const GraphDataset dataset = parse_tudataset(cfg.data_dir, cfg.dataset, &std::cerr);

  json rows = json::array();
  for (const int m : levels_list) {
    RunConfig level_cfg = cfg;
    level_cfg.levels = m;
    level_cfg.variant = uniform_quant ? "uniform-quant" : cfg.variant;
    const auto runs = run_protocol(dataset, level_cfg);
    rows.push_back(json{{"levels", m},
                        {"d_min", minimum_dimension(m, dataset.attr_count)},
                        {"mean_accuracy", mean_accuracy(runs)},
                        {"std_accuracy", std_accuracy(runs)},
                        {"runs", runs_to_json(runs)}});
    std::cout << "m=" << m << ": accuracy " << mean_accuracy(runs) << " +/- "
              << std_accuracy(runs) << "\n";
  }
  json doc{{"schema", "ciliagraph/sweep-table/v1"},
           {"dataset", cfg.dataset},
           {"swept", "levels"},
           {"uniform_quant", uniform_quant},
           {"rows", rows}};
  const std::string out =
      cfg.out_path.empty() ? cfg.dataset + "_sweep_levels.json" : cfg.out_path;
  write_json_file(out, doc);
  RunConfig manifest_cfg = cfg;
  manifest_cfg.out_path = out;
  write_manifest("sweep-levels", manifest_cfg, json{{"report", out}}, json::object(),
                 elapsed_s(start));
  return 0;
}

int cmd_ablate(const RunConfig& cfg, const std::string& dump_path) {
  const auto start = std::chrono::steady_clock::now();
  const Variant variant = variant_from_string(cfg.variant);
  if (variant != Variant::p1 && variant != Variant::p2 && variant != Variant::p3) {
    throw InputError("ablate: variant must be one of p1|p2|p3");
  }
  const GraphDataset dataset = parse_tudataset(cfg.data_dir, cfg.dataset, &std::cerr);

  if (!dump_path.empty()) {
    // Debug dump: P and T of the first graph under this variant.
    const auto [train_set, test_set] = split_holdout(dataset, cfg.split_spec(cfg.seed));
    const TrainedModel model = train(train_set, cfg.pipeline(cfg.seed));
    const GraphInstance& g = dataset.graphs.front();
    const auto node_hvs = encode_graph_nodes(g, model.banks);
    const auto p = ablation_hyper_weight(g, node_hvs, variant == Variant::p1
                                                          ? WeightVariant::p1
                                                          : variant == Variant::p2
                                                                ? WeightVariant::p2
                                                                : WeightVariant::p3);
    const auto t = transition_matrix(g);
    auto dense = [](const SparseRows& s) {
      json rows = json::array();
      for (int r = 0; r < s.node_count; ++r) {
        json row = json::array();
        for (int c = 0; c < s.node_count; ++c) row.push_back(s.at(r, c));
        rows.push_back(row);
      }
      return rows;
    };
    write_json_file(dump_path, json{{"variant", cfg.variant},
                                    {"graph_index", 0},
                                    {"P", dense(p.m)},
                                    {"T", dense(t.m)}});
  }

  const auto runs = run_protocol(dataset, cfg);
  const double mean = mean_accuracy(runs);
  json doc{{"schema", "ciliagraph/protocol-report/v1"},
           {"dataset", cfg.dataset},
           {"variant", cfg.variant},
           {"mean_accuracy", mean},
           {"std_accuracy", std_accuracy(runs)},
           {"runs", runs_to_json(runs)}};
  const std::string out =
      cfg.out_path.empty() ? cfg.dataset + "_" + cfg.variant + ".json" : cfg.out_path;
  write_json_file(out, doc);
  RunConfig manifest_cfg = cfg;
  manifest_cfg.out_path = out;
  write_manifest("ablate", manifest_cfg, json{{"report", out}},
                 json{{"mean_accuracy", mean}, {"variant", cfg.variant}}, elapsed_s(start));
  std::cout << cfg.dataset << " (" << cfg.variant << "): accuracy " << mean << " +/- "
            << std_accuracy(runs) << "\n";
  return 0;
}

int cmd_baseline(const RunConfig& cfg, bool dim_given) {
  const auto start = std::chrono::steady_clock::now();
  const Variant variant = variant_from_string(cfg.variant);
  if (variant != Variant::graphhd && variant != Variant::record) {
    throw InputError("baseline: variant must be graphhd or record");
  }
  const GraphDataset dataset = parse_tudataset(cfg.data_dir, cfg.dataset, &std::cerr);
  const int dim = dim_given ? cfg.dim : kBaselineDefaultDim;

  const auto runs = run_baseline_protocol(dataset, cfg, dim);
  const double mean = mean_accuracy(runs);
  json doc{{"schema", "ciliagraph/protocol-report/v1"},
           {"dataset", cfg.dataset},
           {"variant", cfg.variant},
           {"dim", dim},
           {"mean_accuracy", mean},
           {"std_accuracy", std_accuracy(runs)},
           {"runs", runs_to_json(runs)}};
  const std::string out =
      cfg.out_path.empty() ? cfg.dataset + "_" + cfg.variant + ".json" : cfg.out_path;
  write_json_file(out, doc);
  RunConfig manifest_cfg = cfg;
  manifest_cfg.out_path = out;
  manifest_cfg.dim = dim;
  write_manifest("baseline", manifest_cfg, json{{"report", out}},
                 json{{"mean_accuracy", mean}, {"variant", cfg.variant}, {"dim", dim}},
                 elapsed_s(start));
  std::cout << cfg.dataset << " (" << cfg.variant << ", D=" << dim << "): accuracy " << mean
            << " +/- " << std_accuracy(runs) << "\n";
  return 0;
}

int cmd_stats(const RunConfig& cfg) {
  const GraphDataset dataset = parse_tudataset(cfg.data_dir, cfg.dataset, &std::cerr);
  const DatasetStats s = stats(dataset);
  json doc{{"schema", "ciliagraph/dataset-stats/v1"},
           {"name", dataset.name},
           {"graph_count", s.graph_count},
           {"class_histogram", s.class_histogram},
           {"attr_count", s.attr_count},
           {"mean_nodes", s.mean_nodes},
           {"max_nodes", s.max_nodes},
           {"mean_edges", s.mean_edges},
           {"max_edges", s.max_edges}};
  if (!cfg.out_path.empty()) write_json_file(cfg.out_path, doc);
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int cmd_dims(int levels, int attrs, const std::string& out_path) {
  const int d_min = minimum_dimension(levels, attrs);
  const double eps = epsilon_threshold(levels);
  json doc{{"schema", "ciliagraph/dims/v1"},
           {"levels", levels},
           {"attrs", attrs},
           {"minimum_dimension", d_min},
           {"epsilon", eps},
           {"epsilon_valid", eps < 1.0}};
  if (eps >= 1.0) {
    doc["warning"] = "epsilon = 2/(m-1) leaves the admissible range [0,1) at m <= 3";
  }
  if (!out_path.empty()) write_json_file(out_path, doc);
  std::cout << doc.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-shot hyperdimensional graph classifier"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  CommonOptions train_opts;
  auto* train_cmd = app.add_subcommand("train", "Train a model and write it to disk");
  train_opts.attach(train_cmd, true);

  CommonOptions eval_opts;
  std::string eval_model_path;
  auto* eval_cmd =
      app.add_subcommand("eval", "Evaluate a saved model or run the seeded split protocol");
  eval_opts.attach(eval_cmd, true);
  eval_cmd->add_option("--model", eval_model_path, "Model file (single evaluation)");

  CommonOptions sweep_dim_opts;
  std::vector<int> sweep_dims;
  auto* sweep_dim_cmd = app.add_subcommand("sweep-dim", "Accuracy vs hypervector dimension");
  sweep_dim_opts.attach(sweep_dim_cmd, true);
  sweep_dim_cmd->add_option("--dims", sweep_dims, "Dimensions to sweep")
      ->required()
      ->delimiter(',');

  CommonOptions sweep_levels_opts;
  std::vector<int> sweep_levels;
  bool uniform_quant = false;
  auto* sweep_levels_cmd =
      app.add_subcommand("sweep-levels", "Accuracy vs quantization level count");
  sweep_levels_opts.attach(sweep_levels_cmd, true);
  sweep_levels_cmd->add_option("--levels-list", sweep_levels, "Level counts to sweep")
      ->required()
      ->delimiter(',');
  sweep_levels_cmd->add_flag("--uniform-quant", uniform_quant,
                             "Use uniform instead of k-means quantization");

  CommonOptions ablate_opts;
  std::string dump_path;
  auto* ablate_cmd = app.add_subcommand("ablate", "Run a hyper-weight ablation (p1|p2|p3)");
  ablate_opts.attach(ablate_cmd, true, /*own_variant_flag=*/true);
  ablate_opts.variant_opt =
      ablate_cmd->add_option("--variant", ablate_opts.cfg.variant, "p1, p2 or p3")->required();
  ablate_cmd->add_option("--dump-hyper-weight", dump_path,
                         "Write P and T of the first graph to this JSON file");

  CommonOptions baseline_opts;
  auto* baseline_cmd = app.add_subcommand("baseline", "Run a baseline (graphhd|record)");
  baseline_opts.attach(baseline_cmd, true, /*own_variant_flag=*/true);
  baseline_opts.variant_opt =
      baseline_cmd->add_option("--variant", baseline_opts.cfg.variant, "graphhd or record")
          ->required();

  CommonOptions stats_opts;
  auto* stats_cmd = app.add_subcommand("stats", "Print dataset summary");
  stats_opts.attach(stats_cmd, true);

  int dims_levels = kDefaultLevels;
  int dims_attrs = 1;
  std::string dims_out;
  auto* dims_cmd =
      app.add_subcommand("dims", "Print minimum dimension and epsilon for (m, n)");
  dims_cmd->add_option("--levels", dims_levels, "Quantization levels m");
  dims_cmd->add_option("--attrs", dims_attrs, "Attribute count n")->required();
  dims_cmd->add_option("--out", dims_out, "Optional JSON output path");

  try {
    app.parse(argc, argv);

    if (train_cmd->parsed()) {
      train_opts.resolve();
      return cmd_train(train_opts.cfg);
    }
    if (eval_cmd->parsed()) {
      eval_opts.resolve();
      return cmd_eval(eval_opts.cfg, eval_model_path);
    }
    if (sweep_dim_cmd->parsed()) {
      sweep_dim_opts.resolve();
      return cmd_sweep_dim(sweep_dim_opts.cfg, sweep_dims);
    }
    if (sweep_levels_cmd->parsed()) {
      sweep_levels_opts.resolve();
      return cmd_sweep_levels(sweep_levels_opts.cfg, sweep_levels, uniform_quant);
    }
    if (ablate_cmd->parsed()) {
      ablate_opts.resolve();
      return cmd_ablate(ablate_opts.cfg, dump_path);
    }
    if (baseline_cmd->parsed()) {
      baseline_opts.resolve();
      return cmd_baseline(baseline_opts.cfg, baseline_opts.dim_opt->count() > 0);
    }
    if (stats_cmd->parsed()) {
      stats_opts.resolve();
      return cmd_stats(stats_opts.cfg);
    }
    if (dims_cmd->parsed()) {
      return cmd_dims(dims_levels, dims_attrs, dims_out);
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion") {
      return app.exit(e);
    }
    std::cerr << nlohmann::json{{"error", e.what()}, {"exit_code", 2}}.dump() << "\n";
    return 2;
  } catch (const Error& e) {
    const int code = static_cast<int>(e.code());
    std::cerr << nlohmann::json{{"error", e.what()}, {"exit_code", code}}.dump() << "\n";
    return code;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", e.what()}, {"exit_code", 5}}.dump() << "\n";
    return 5;
  }
}

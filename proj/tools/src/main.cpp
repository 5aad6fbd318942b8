// morbdd: one binary driving the whole pipeline, from instance generation
// to the aggregate evaluation table.  Exit codes: 0 success, 2 invalid
// input or usage, 3 budget exceeded, 4 I/O failure, 1 anything else.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "morbdd/errors.hpp"
#include "morbdd/features.hpp"
#include "morbdd/metrics.hpp"
#include "morbdd/oracle.hpp"
#include "morbdd/rng.hpp"
#include "morbdd/sparsifier.hpp"
#include "morbdd/stitch.hpp"
#include "pipeline.hpp"

namespace fs = std::filesystem;
using namespace morbdd;
using morbdd::tools::json;
using morbdd::tools::SizeSpec;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::string instance_stem(const fs::path& path) {
  return path.stem().string();
}

// ---------------------------------------------------------------- generate

struct GenerateOptions {
  std::vector<std::string> sizes;
  std::string counts = "100,20,20";
  bool paper = false;
  std::uint64_t seed = 0;
  std::string data;
};

constexpr const char* kSplitNames[3] = {"train", "valid", "test"};

std::array<int, 3> parse_counts(const std::string& text) {
  std::array<int, 3> counts{};
  int parsed = std::sscanf(text.c_str(), "%d,%d,%d", &counts[0], &counts[1],
                           &counts[2]);
  if (parsed != 3 || counts[0] < 0 || counts[1] < 0 || counts[2] < 0)
    throw ValidationError("--counts expects train,valid,test, got '" + text +
                          "'");
  return counts;
}

int cmd_generate(const GenerateOptions& opt) {
  const fs::path root = tools::resolve_data_root(opt.data);
  const std::array<int, 3> counts =
      opt.paper ? std::array<int, 3>{1000, 100, 100} : parse_counts(opt.counts);
  json manifest = tools::load_manifest(root);
  for (const std::string& size_text : opt.sizes) {
    const SizeSpec size = tools::parse_size(size_text);
    const std::string key = tools::size_key(size);
    const std::uint64_t size_seed = derive_seed(
        opt.seed, static_cast<std::uint64_t>(size.num_objectives) * 1000 +
                      static_cast<std::uint64_t>(size.num_items));
    json splits = json::object();
    int total = 0;
    for (int s = 0; s < 3; ++s) {
      const fs::path dir = root / key / kSplitNames[s];
      fs::create_directories(dir);
      json files = json::array();
      for (int i = 0; i < counts[s]; ++i) {
        const std::uint64_t inst_seed = derive_seed(
            size_seed, static_cast<std::uint64_t>(s) * 1'000'000 +
                           static_cast<std::uint64_t>(i));
        const Instance inst = generate_instance(size.num_objectives,
                                                size.num_items, inst_seed);
        const fs::path path = dir / ("inst_" + std::to_string(i) + ".txt");
        write_instance(inst, path);
        files.push_back(fs::relative(path, root).generic_string());
      }
      splits[kSplitNames[s]] = {{"count", counts[s]}, {"files", files}};
      total += counts[s];
    }
    manifest["sizes"][key] = {{"num_objectives", size.num_objectives},
                              {"num_items", size.num_items},
                              {"seed", opt.seed},
                              {"splits", splits}};
    std::printf("generate: wrote %d instances under %s\n", total,
                (root / key).string().c_str());
  }
  tools::save_manifest(root, manifest);
  return 0;
}

// ------------------------------------------------- frontier / oracle / label

struct FrontierOptions {
  std::string instance;
  std::string method = "exact";
  int beta = 100;
  std::string model;
  double tau = 0.5;
  std::string stitcher = "mr";
  int alpha = 2;
  std::int64_t budget_nodes = kDefaultStitchBudget;
  std::string out = ".";
};

json stats_json(std::int64_t nodes, std::int64_t comparisons,
                std::size_t frontier_size) {
  return {{"nodes", nodes},
          {"comparisons", comparisons},
          {"frontier_size", frontier_size}};
}

int cmd_frontier(const FrontierOptions& opt) {
  const fs::path in_path = opt.instance;
  const Instance inst = read_instance(in_path);
  const std::string hash = instance_hash_hex(inst);
  const fs::path out_dir = opt.out;
  fs::create_directories(out_dir);

  json config = {{"command", "frontier"},       {"method", opt.method},
                 {"instance", in_path.string()}, {"instance_hash", hash}};
  std::string tag = opt.method;
  Frontier frontier;
  json result;
  json timing;

  const auto start = std::chrono::steady_clock::now();
  if (opt.method == "exact") {
    const Bdd bdd = compile_exact(inst);
    EnumerationResult res = enumerate_frontier(bdd);
    frontier = std::move(res.frontier);
    result = stats_json(static_cast<std::int64_t>(bdd.node_count()),
                        frontier.comparison_count, frontier.size());
    timing["time_s"] = seconds_since(start);
  } else if (opt.method == "rbdd") {
    config["beta"] = opt.beta;
    tag += std::to_string(opt.beta);
    const Bdd bdd = compile_restricted_width(inst, opt.beta);
    EnumerationResult res = enumerate_frontier(bdd);
    frontier = std::move(res.frontier);
    result = stats_json(static_cast<std::int64_t>(bdd.node_count()),
                        frontier.comparison_count, frontier.size());
    timing["time_s"] = seconds_since(start);
  } else if (opt.method == "morbdd") {
    if (opt.model.empty())
      throw ValidationError("frontier --method morbdd requires --model");
    config["model"] = opt.model;
    config["tau"] = opt.tau;
    config["stitcher"] = opt.stitcher;
    config["alpha"] = opt.alpha;
    config["budget_nodes"] = opt.budget_nodes;
    tag += "-" + opt.stitcher;
    const SparsifierModel model = read_model(fs::path(opt.model));
    DeployConfig deploy_config;
    deploy_config.tau = opt.tau;
    deploy_config.stitcher = stitcher_from_string(opt.stitcher);
    deploy_config.alpha = opt.alpha;
    deploy_config.mip_node_budget = opt.budget_nodes;
    DeployResult run = deploy(inst, model, deploy_config);
    frontier = std::move(run.frontier);
    result = stats_json(run.report.rnc, run.report.comp, frontier.size());
    result["inc"] = run.report.inc;
    result["stitch_iterations"] = run.report.stitch_iterations;
    result["connected"] = run.report.connected;
    if (!run.report.connected)
      result["last_connected_layer"] = run.report.last_connected_layer;
    timing["time_s"] = run.report.time_ms / 1000.0;
  } else {
    throw ValidationError("unknown method '" + opt.method +
                          "' (expected exact, rbdd, or morbdd)");
  }

  const std::string stem = instance_stem(in_path);
  const fs::path csv_path = out_dir / (stem + "." + tag + ".csv");
  write_frontier_csv(frontier, csv_path,
                     "method=" + tag + " instance=" + stem + " hash=" + hash);
  tools::write_report(out_dir / (stem + "." + tag + ".json"),
                      {{"config", config},
                       {"result", result},
                       {"timing", timing}});
  std::printf("frontier: %zu points -> %s\n", frontier.size(),
              csv_path.string().c_str());
  return 0;
}

struct PathOptions {
  std::string instance;
  std::string out = ".";
};

int cmd_oracle(const PathOptions& opt) {
  const fs::path in_path = opt.instance;
  const Instance inst = read_instance(in_path);
  const Frontier frontier = brute_force_frontier(inst);
  const fs::path out_dir = opt.out;
  fs::create_directories(out_dir);
  const std::string stem = instance_stem(in_path);
  const fs::path csv_path = out_dir / (stem + ".oracle.csv");
  write_frontier_csv(frontier, csv_path,
                     "method=oracle instance=" + stem +
                         " hash=" + instance_hash_hex(inst));
  std::printf("oracle: %zu points -> %s\n", frontier.size(),
              csv_path.string().c_str());
  return 0;
}

int cmd_label(const PathOptions& opt) {
  const fs::path in_path = opt.instance;
  const Instance inst = read_instance(in_path);
  const auto start = std::chrono::steady_clock::now();
  const Bdd bdd = compile_exact(inst);
  const EnumerationResult res = enumerate_frontier(bdd);
  const KeepSet marks = mark_pareto_nodes(bdd, res.labels, res.frontier);
  const double elapsed = seconds_since(start);

  const fs::path out_dir = opt.out;
  fs::create_directories(out_dir);
  const std::string stem = instance_stem(in_path);
  const fs::path labels_path = out_dir / (stem + ".labels.txt");
  {
    std::ofstream out(labels_path);
    if (!out) throw IoError("cannot write " + labels_path.string());
    out << "marked " << marks.size() << ' ' << bdd.node_count() << '\n';
    for (NodeId id : marks.sorted_ids()) out << id << '\n';
    if (!out) throw IoError("short write to " + labels_path.string());
  }
  tools::write_report(
      out_dir / (stem + ".labels.json"),
      {{"config",
        {{"command", "label"},
         {"instance", in_path.string()},
         {"instance_hash", instance_hash_hex(inst)}}},
       {"result",
        {{"marked", marks.size()},
         {"nodes", bdd.node_count()},
         {"frontier_size", res.frontier.size()}}},
       {"timing", {{"time_s", elapsed}}}});
  std::printf("label: marked %zu/%zu nodes (%.1f%%) -> %s\n", marks.size(),
              bdd.node_count(), 100.0 * pareto_node_fraction(bdd, marks),
              labels_path.string().c_str());
  return 0;
}

// ----------------------------------------------------------------- dataset

struct DatasetOptions {
  std::string size;
  std::string split = "train";
  std::uint64_t seed = 0;
  std::string data;
  int workers = 1;
  std::string out;
};

int cmd_dataset(const DatasetOptions& opt) {
  const SizeSpec size = tools::parse_size(opt.size);
  const fs::path root = tools::resolve_data_root(opt.data);
  const auto files = tools::manifest_files(root, size, opt.split);
  if (files.empty())
    throw ValidationError("split " + opt.split + " of size " +
                          tools::size_key(size) + " is empty");

  const auto start = std::chrono::steady_clock::now();
  std::vector<Instance> instances(files.size());
  std::vector<std::unique_ptr<Bdd>> bdds(files.size());
  std::vector<KeepSet> marks(files.size());
  std::vector<std::vector<double>> paths(files.size());
  tools::run_parallel(files.size(), opt.workers, [&](std::size_t i) {
    instances[i] = read_instance(files[i]);
    bdds[i] = std::make_unique<Bdd>(compile_exact(instances[i]));
    const EnumerationResult res = enumerate_frontier(*bdds[i]);
    marks[i] = mark_pareto_nodes(*bdds[i], res.labels, res.frontier);
    paths[i] = count_pareto_paths(*bdds[i], res.labels, res.frontier);
  });
  std::vector<LabeledInstance> sources;
  sources.reserve(files.size());
  for (std::size_t i = 0; i < files.size(); ++i)
    sources.push_back({&instances[i], bdds[i].get(), &marks[i], &paths[i],
                       instance_stem(files[i])});
  const Dataset dataset =
      build_dataset({sources.data(), sources.size()}, opt.seed);

  const fs::path out_dir =
      opt.out.empty() ? root / tools::size_key(size) : fs::path(opt.out);
  fs::create_directories(out_dir);
  const fs::path csv_path = out_dir / (opt.split + ".dataset.csv");
  write_dataset_csv(dataset, csv_path);
  std::size_t positives = 0;
  for (const auto& row : dataset.rows) positives += row.label;
  for (const auto& warning : dataset.warnings)
    std::fprintf(stderr, "warning: %s\n", warning.c_str());
  tools::write_report(out_dir / (opt.split + ".dataset.json"),
                      {{"config",
                        {{"command", "dataset"},
                         {"size", tools::size_key(size)},
                         {"split", opt.split},
                         {"seed", opt.seed},
                         {"instances", files.size()}}},
                       {"result",
                        {{"rows", dataset.rows.size()},
                         {"positives", positives},
                         {"negatives", dataset.rows.size() - positives},
                         {"warnings", dataset.warnings}}},
                       {"timing", {{"time_s", seconds_since(start)}}}});
  std::printf("dataset: %zu rows (%zu positive) from %zu instances -> %s\n",
              dataset.rows.size(), positives, files.size(),
              csv_path.string().c_str());
  return 0;
}

// ------------------------------------------------------------------- train

struct TrainOptions {
  std::string data;
  std::string valid;
  std::string family = "gbdt";
  int rounds = 200;
  int depth = 6;
  double learning_rate = 0.1;
  double reg_lambda = 0.0;
  bool grid = false;
  std::uint64_t seed = 0;
  std::string out = "model.txt";
};

int cmd_train(const TrainOptions& opt) {
  const Dataset train_data = read_dataset_csv(fs::path(opt.data));
  std::optional<Dataset> valid_data;
  if (!opt.valid.empty()) valid_data = read_dataset_csv(fs::path(opt.valid));

  Hyperparams params;
  params.family = model_family_from_string(opt.family);
  params.rounds = opt.rounds;
  params.max_depth = opt.depth;
  params.learning_rate = opt.learning_rate;
  params.reg_lambda = opt.reg_lambda;

  const auto start = std::chrono::steady_clock::now();
  SparsifierModel model;
  if (opt.grid) {
    if (!valid_data)
      throw ValidationError("train --grid requires --valid");
    std::vector<Hyperparams> grid;
    for (int depth : {4, 6, 8})
      for (int rounds : {100, 200, 400}) {
        Hyperparams p = params;
        p.max_depth = depth;
        p.rounds = rounds;
        grid.push_back(p);
      }
    model = grid_search(train_data, *valid_data,
                        {grid.data(), grid.size()}, opt.seed);
  } else {
    model = train(train_data, params, opt.seed,
                  valid_data ? &*valid_data : nullptr);
  }
  const double elapsed = seconds_since(start);

  const fs::path model_path = opt.out;
  if (model_path.has_parent_path())
    fs::create_directories(model_path.parent_path());
  write_model(model, model_path);
  json result = {{"family", to_string(model.family)},
                 {"rounds", model.hyperparams.rounds},
                 {"max_depth", model.hyperparams.max_depth},
                 {"train_loss", model.train_loss},
                 {"train_accuracy", model.train_accuracy},
                 {"training_curve", model.training_curve}};
  if (valid_data) {
    result["valid_loss"] = model.valid_loss;
    result["valid_accuracy"] = model.valid_accuracy;
  }
  tools::write_report(model_path.string() + ".json",
                      {{"config",
                        {{"command", "train"},
                         {"data", opt.data},
                         {"valid", opt.valid},
                         {"grid", opt.grid},
                         {"seed", opt.seed}}},
                       {"result", result},
                       {"timing", {{"time_s", elapsed}}}});
  if (valid_data)
    std::printf(
        "train: %s depth=%d rounds=%d train acc=%.3f valid acc=%.3f -> %s\n",
        to_string(model.family).c_str(), model.hyperparams.max_depth,
        model.hyperparams.rounds, model.train_accuracy, model.valid_accuracy,
        model_path.string().c_str());
  else
    std::printf("train: %s depth=%d rounds=%d train acc=%.3f -> %s\n",
                to_string(model.family).c_str(), model.hyperparams.max_depth,
                model.hyperparams.rounds, model.train_accuracy,
                model_path.string().c_str());
  return 0;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateOptions {
  std::string size;
  std::string split = "test";
  std::string model;
  std::string methods = "exact,morbdd:mr";
  double tau = 0.5;
  int alpha = 2;
  std::int64_t budget_nodes = kDefaultStitchBudget;
  std::string data;
  int workers = 1;
  std::string out;
};

struct MethodSpec {
  std::string name;     // table label
  std::string kind;     // exact | rbdd | morbdd
  int beta = 100;
  Stitcher stitcher = Stitcher::min_resistance;
};

std::vector<MethodSpec> parse_methods(const std::string& text) {
  std::vector<MethodSpec> methods;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find(',', begin);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(begin, end - begin);
    begin = end + 1;
    if (item.empty()) continue;
    MethodSpec spec;
    const auto colon = item.find(':');
    spec.kind = item.substr(0, colon);
    const std::string arg =
        colon == std::string::npos ? "" : item.substr(colon + 1);
    if (spec.kind == "exact") {
      spec.name = "exact";
    } else if (spec.kind == "rbdd") {
      if (arg.empty())
        throw ValidationError("method rbdd needs a width, e.g. rbdd:50");
      spec.beta = std::stoi(arg);
      spec.name = "rbdd(" + arg + ")";
    } else if (spec.kind == "morbdd") {
      spec.stitcher = stitcher_from_string(arg.empty() ? "mr" : arg);
      spec.name = "morbdd+" + to_string(spec.stitcher);
    } else {
      throw ValidationError("unknown method '" + item + "'");
    }
    methods.push_back(std::move(spec));
  }
  if (methods.empty()) throw ValidationError("--methods is empty");
  return methods;
}

int cmd_evaluate(const EvaluateOptions& opt) {
  const SizeSpec size = tools::parse_size(opt.size);
  const fs::path root = tools::resolve_data_root(opt.data);
  const auto files = tools::manifest_files(root, size, opt.split);
  const auto methods = parse_methods(opt.methods);
  const bool needs_model = std::any_of(
      methods.begin(), methods.end(),
      [](const MethodSpec& m) { return m.kind == "morbdd"; });
  std::optional<SparsifierModel> model;
  if (needs_model) {
    if (opt.model.empty())
      throw ValidationError("--methods includes morbdd, so --model is required");
    model = read_model(fs::path(opt.model));
  }

  const ObjectiveVector reference(
      static_cast<std::size_t>(size.num_objectives), 0);
  std::vector<std::vector<EvalReport>> reports(
      methods.size(), std::vector<EvalReport>(files.size()));
  std::mutex log_mutex;

  const auto start = std::chrono::steady_clock::now();
  tools::run_parallel(files.size(), opt.workers, [&](std::size_t i) {
    const Instance inst = read_instance(files[i]);
    const auto exact_start = std::chrono::steady_clock::now();
    const Bdd exact_bdd = compile_exact(inst);
    EnumerationResult exact_res = enumerate_frontier(exact_bdd);
    MethodRun exact_run;
    exact_run.frontier = &exact_res.frontier;
    exact_run.stats.inc = static_cast<std::int64_t>(exact_bdd.node_count());
    exact_run.stats.rnc = exact_run.stats.inc;
    exact_run.stats.comp = exact_res.frontier.comparison_count;
    exact_run.stats.time_s = seconds_since(exact_start);

    for (std::size_t m = 0; m < methods.size(); ++m) {
      const MethodSpec& spec = methods[m];
      if (spec.kind == "exact") {
        reports[m][i] = evaluate_run(exact_run, exact_run, reference);
        continue;
      }
      Frontier frontier;
      MethodRun run;
      if (spec.kind == "rbdd") {
        const auto method_start = std::chrono::steady_clock::now();
        const Bdd bdd = compile_restricted_width(inst, spec.beta);
        EnumerationResult res = enumerate_frontier(bdd);
        frontier = std::move(res.frontier);
        run.stats.inc = exact_run.stats.inc;
        run.stats.rnc = static_cast<std::int64_t>(bdd.node_count());
        run.stats.comp = frontier.comparison_count;
        run.stats.time_s = seconds_since(method_start);
      } else {
        DeployConfig config;
        config.tau = opt.tau;
        config.stitcher = spec.stitcher;
        config.alpha = opt.alpha;
        config.mip_node_budget = opt.budget_nodes;
        DeployResult deployed = deploy(inst, *model, config);
        frontier = std::move(deployed.frontier);
        run.stats.inc = deployed.report.inc;
        run.stats.rnc = deployed.report.rnc;
        run.stats.comp = deployed.report.comp;
        run.stats.time_s = deployed.report.time_ms / 1000.0;
      }
      run.frontier = &frontier;
      reports[m][i] = evaluate_run(exact_run, run, reference);
    }
    std::lock_guard<std::mutex> lock(log_mutex);
    std::printf("evaluate: %s done (frontier %zu)\n",
                instance_stem(files[i]).c_str(), exact_res.frontier.size());
    std::fflush(stdout);
  });

  std::vector<std::pair<std::string, Aggregate>> rows;
  rows.reserve(methods.size());
  for (std::size_t m = 0; m < methods.size(); ++m)
    rows.emplace_back(methods[m].name,
                      aggregate_reports({reports[m].data(), files.size()}));
  const std::string table =
      format_aggregate_table({rows.data(), rows.size()});
  std::fputs(table.c_str(), stdout);

  const fs::path out_dir =
      opt.out.empty() ? root / tools::size_key(size) : fs::path(opt.out);
  fs::create_directories(out_dir);
  {
    const fs::path table_path = out_dir / ("evaluate." + opt.split + ".txt");
    std::ofstream out(table_path);
    if (!out) throw IoError("cannot write " + table_path.string());
    out << table;
  }
  const fs::path csv_path = out_dir / ("evaluate." + opt.split + ".csv");
  {
    std::ofstream out(csv_path);
    if (!out) throw IoError("cannot write " + csv_path.string());
    out << "method,instances,inc_pct,rnc_pct,comp_pct,time_s,exact_time_s,"
           "cardinality_pct,hv,exact_hv,hv_count\n";
    char line[256];
    for (const auto& [name, agg] : rows) {
      std::snprintf(line, sizeof(line),
                    "%s,%zu,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%zu\n",
                    name.c_str(), agg.instances, agg.inc_pct, agg.rnc_pct,
                    agg.comp_pct, agg.time_s, agg.exact_time_s,
                    agg.cardinality_pct, agg.hv, agg.exact_hv, agg.hv_count);
      out << line;
    }
  }
  json method_rows = json::array();
  for (const auto& [name, agg] : rows)
    method_rows.push_back({{"method", name},
                           {"instances", agg.instances},
                           {"inc_pct", agg.inc_pct},
                           {"rnc_pct", agg.rnc_pct},
                           {"comp_pct", agg.comp_pct},
                           {"cardinality_pct", agg.cardinality_pct},
                           {"hv", agg.hv},
                           {"exact_hv", agg.exact_hv},
                           {"hv_count", agg.hv_count}});
  tools::write_report(out_dir / ("evaluate." + opt.split + ".json"),
                      {{"config",
                        {{"command", "evaluate"},
                         {"size", tools::size_key(size)},
                         {"split", opt.split},
                         {"model", opt.model},
                         {"methods", opt.methods},
                         {"tau", opt.tau},
                         {"alpha", opt.alpha},
                         {"budget_nodes", opt.budget_nodes},
                         {"instances", files.size()}}},
                       {"result", method_rows},
                       {"timing",
                        {{"time_s", seconds_since(start)},
                         {"method_time_s", json::object()}}}});
  std::printf("evaluate: table -> %s\n", csv_path.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiobjective knapsack BDD sparsification pipeline"};
  app.require_subcommand(1);

  GenerateOptions generate_opt;
  CLI::App* generate = app.add_subcommand(
      "generate", "write seeded instance files and a manifest");
  generate->add_option("--size", generate_opt.sizes, "problem size K,N")
      ->required()
      ->expected(-1);
  generate->add_option("--counts", generate_opt.counts,
                       "instances per split: train,valid,test");
  generate->add_flag("--paper", generate_opt.paper,
                     "paper-scale counts (1000,100,100)");
  generate->add_option("--seed", generate_opt.seed, "master seed");
  generate->add_option("--data", generate_opt.data,
                       "data root (default $MORBDD_DATA_DIR or ./data)");

  FrontierOptions frontier_opt;
  CLI::App* frontier = app.add_subcommand(
      "frontier", "enumerate one instance's Pareto frontier");
  frontier->add_option("instance", frontier_opt.instance, "instance file")
      ->required();
  frontier->add_option("--method", frontier_opt.method,
                       "exact, rbdd, or morbdd");
  frontier->add_option("--beta", frontier_opt.beta,
                       "rbdd width percentage (1-100)");
  frontier->add_option("--model", frontier_opt.model, "sparsifier model file");
  frontier->add_option("--tau", frontier_opt.tau, "keep threshold");
  frontier->add_option("--stitcher", frontier_opt.stitcher,
                       "mip, mr, or none");
  frontier->add_option("--alpha", frontier_opt.alpha, "mr lookahead layers");
  frontier->add_option("--budget-nodes", frontier_opt.budget_nodes,
                       "exact stitch solver node budget");
  frontier->add_option("--out", frontier_opt.out, "output directory");

  PathOptions oracle_opt;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "brute-force frontier (N <= 20) for cross-checks");
  oracle->add_option("instance", oracle_opt.instance, "instance file")
      ->required();
  oracle->add_option("--out", oracle_opt.out, "output directory");

  PathOptions label_opt;
  CLI::App* label = app.add_subcommand(
      "label", "mark the Pareto-optimal nodes of the exact BDD");
  label->add_option("instance", label_opt.instance, "instance file")
      ->required();
  label->add_option("--out", label_opt.out, "output directory");

  DatasetOptions dataset_opt;
  CLI::App* dataset = app.add_subcommand(
      "dataset", "build a training dataset from one size/split");
  dataset->add_option("--size", dataset_opt.size, "problem size K,N")
      ->required();
  dataset->add_option("--split", dataset_opt.split, "train, valid, or test");
  dataset->add_option("--seed", dataset_opt.seed, "negative-sampling seed");
  dataset->add_option("--data", dataset_opt.data, "data root");
  dataset->add_option("--workers", dataset_opt.workers,
                      "instances labeled concurrently");
  dataset->add_option("--out", dataset_opt.out, "output directory");

  TrainOptions train_opt;
  CLI::App* train = app.add_subcommand("train", "fit a sparsifier model");
  train->add_option("--data", train_opt.data, "training dataset csv")
      ->required();
  train->add_option("--valid", train_opt.valid, "validation dataset csv");
  train->add_option("--family", train_opt.family, "gbdt or logistic");
  train->add_option("--rounds", train_opt.rounds, "boosting rounds");
  train->add_option("--depth", train_opt.depth, "tree depth limit");
  train->add_option("--learning-rate", train_opt.learning_rate,
                    "shrinkage per round");
  train->add_option("--lambda", train_opt.reg_lambda, "leaf L2 penalty");
  train->add_flag("--grid", train_opt.grid,
                  "grid-search depth x rounds on validation loss");
  train->add_option("--seed", train_opt.seed, "training seed");
  train->add_option("--out", train_opt.out, "model output path");

  EvaluateOptions evaluate_opt;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "aggregate method comparison over one size/split");
  evaluate->add_option("--size", evaluate_opt.size, "problem size K,N")
      ->required();
  evaluate->add_option("--split", evaluate_opt.split,
                       "train, valid, or test");
  evaluate->add_option("--model", evaluate_opt.model, "sparsifier model file");
  evaluate->add_option("--methods", evaluate_opt.methods,
                       "comma list: exact, rbdd:B, morbdd:{mr,mip,none}");
  evaluate->add_option("--tau", evaluate_opt.tau, "keep threshold");
  evaluate->add_option("--alpha", evaluate_opt.alpha, "mr lookahead layers");
  evaluate->add_option("--budget-nodes", evaluate_opt.budget_nodes,
                       "exact stitch solver node budget");
  evaluate->add_option("--data", evaluate_opt.data, "data root");
  evaluate->add_option("--workers", evaluate_opt.workers,
                       "instances evaluated concurrently");
  evaluate->add_option("--out", evaluate_opt.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (generate->parsed()) return cmd_generate(generate_opt);
    if (frontier->parsed()) return cmd_frontier(frontier_opt);
    if (oracle->parsed()) return cmd_oracle(oracle_opt);
    if (label->parsed()) return cmd_label(label_opt);
    if (dataset->parsed()) return cmd_dataset(dataset_opt);
    if (train->parsed()) return cmd_train(train_opt);
    if (evaluate->parsed()) return cmd_evaluate(evaluate_opt);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ContractViolation& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ResourceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

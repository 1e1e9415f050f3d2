// Command-line driver: dataset ingestion -> clustering models -> fairness
// measures -> report artifacts. Exit codes: 0 success, 2 usage error, 3 data
// error, 4 infeasible fairness target.

#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "facroc/common.hpp"
#include "facroc/evaluate.hpp"
#include "facroc/oracles.hpp"
#include "facroc/selection.hpp"
#include "facroc/synth.hpp"

namespace fs = std::filesystem;
using namespace facroc;

namespace {

constexpr int kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitData = 3,
              kExitInfeasible = 4;

int classify(const std::exception& e) {
  if (dynamic_cast<const usage_error*>(&e)) return kExitUsage;
  if (dynamic_cast<const data_error*>(&e)) return kExitData;
  if (dynamic_cast<const infeasible_fairness_error*>(&e)) return kExitInfeasible;
  return kExitData;
}

void print_diagnostic(const std::exception& e) {
  std::cerr << "facroc: error: " << e.what() << "\n";
}

struct EvaluateArgs {
  std::string dataset;
  std::string model = "all";
  std::string k = "2";
  std::uint64_t seed = 42;
  std::string out = "facroc_out";
  double balance_target = 0.4;
  std::size_t pair_sample = 2'000'000;
  bool any_endpoint = false;
};

struct SelectKArgs {
  std::string dataset;
  std::string model = "kmeans";
  std::string range = "2..10";
  std::uint64_t seed = 42;
  std::string out = "facroc_out";
};

struct OracleArgs {
  std::string suite = "all";
  std::uint64_t seed = 42;
};

struct SynthArgs {
  std::string name;
  std::string out;
  std::uint64_t seed = 42;
};

void print_warnings(const FeatureMatrix& X) {
  for (const auto& w : X.warnings) std::cerr << "facroc: note: " << w << "\n";
}

std::string summary_line(const EvaluationReport& r) {
  return r.model + " k=" + std::to_string(r.k) +
         " silhouette=" + format_fixed(r.silhouette, 4) +
         " aucc=" + format_fixed(r.aucc, 4) +
         " balance=" + format_fixed(r.balance, 4) +
         " proportionality=" + format_fixed(r.proportionality, 4) +
         " facroc=" + format_fixed(r.facroc, 4);
}

int cmd_evaluate(const EvaluateArgs& args) {
  EvaluateOptions opt;
  opt.seed = args.seed;
  opt.balance_target = args.balance_target;
  opt.pair_sample_size = args.pair_sample;
  opt.any_endpoint_slices = args.any_endpoint;
  if (args.k == "auto") {
    opt.k_auto = true;
  } else {
    try {
      opt.k = std::stoi(args.k);
    } catch (const std::exception&) {
      throw usage_error("--k expects an integer or 'auto', got: " + args.k);
    }
    if (opt.k < 1) throw usage_error("--k must be at least 1");
  }

  std::vector<std::string> models;
  if (args.model == "all") {
    models = model_names();
  } else {
    bool known = false;
    for (const auto& m : model_names()) known = known || m == args.model;
    if (!known) throw usage_error("unknown model: " + args.model);
    models.push_back(args.model);
  }

  DatasetSchema schema = resolve_schema(args.dataset);
  FeatureMatrix X = load_dataset(schema);
  print_warnings(X);
  fs::create_directories(args.out);

  std::vector<EvaluationReport> done;
  std::optional<int> failure_code;
  for (const auto& model : models) {
    try {
      EvaluationReport r = evaluate_model(X, schema.name, model, opt);
      const std::string stem =
          (fs::path(args.out) / (schema.name + "_" + model)).string();
      atomic_write(stem + ".json", report_to_json(r));
      atomic_write(stem + ".svg", render_slice_plot(r));
      std::cout << summary_line(r) << "\n";
      done.push_back(std::move(r));
    } catch (const std::exception& e) {
      std::cerr << "facroc: error: model " << model << ": " << e.what() << "\n";
      if (!failure_code) failure_code = classify(e);
    }
  }
  if (!done.empty()) {
    const std::string stem =
        (fs::path(args.out) / (schema.name + "_table")).string();
    atomic_write(stem + ".csv", emit_table(done, TableFormat::csv));
    atomic_write(stem + ".json", emit_table(done, TableFormat::json));
  }
  return failure_code.value_or(kExitOk);
}

int cmd_select_k(const SelectKArgs& args) {
  const auto dots = args.range.find("..");
  if (dots == std::string::npos)
    throw usage_error("--range expects the form a..b, got: " + args.range);
  int k_min = 0, k_max = 0;
  try {
    k_min = std::stoi(args.range.substr(0, dots));
    k_max = std::stoi(args.range.substr(dots + 2));
  } catch (const std::exception&) {
    throw usage_error("--range expects the form a..b, got: " + args.range);
  }

  DatasetSchema schema = resolve_schema(args.dataset);
  FeatureMatrix X = load_dataset(schema);
  print_warnings(X);
  SelectKResult sel = select_k(X, args.model, k_min, k_max, args.seed);

  std::string csv = "k,aucc,failed\n";
  for (const auto& pt : sel.curve) {
    csv += std::to_string(pt.k) + ",";
    csv += pt.failed ? "nan" : format_fixed(pt.aucc, 6);
    csv += pt.failed ? ",1\n" : ",0\n";
  }
  fs::create_directories(args.out);
  const std::string path =
      (fs::path(args.out) / (schema.name + "_selectk.csv")).string();
  atomic_write(path, csv);
  std::cout << "k_star=" << sel.k_star << "\n";
  return kExitOk;
}

int cmd_oracle(const OracleArgs& args) {
  bool known = false;
  for (const auto& n : oracle::suite_names()) known = known || n == args.suite;
  if (!known) throw usage_error("unknown oracle suite: " + args.suite);
  oracle::SuiteResult res = oracle::run_suite(args.suite, args.seed);
  std::cout << "suite " << res.suite << ": " << res.passed << " passed, "
            << res.failed << " failed\n";
  for (const auto& f : res.failures) std::cerr << "facroc: check: " << f << "\n";
  return res.ok() ? kExitOk : kExitCheckFailed;
}

int cmd_synth(const SynthArgs& args) {
  if (!is_standin_name(args.name))
    throw usage_error("unknown stand-in dataset: " + args.name);
  fs::path parent = fs::path(args.out).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  write_standin_dataset(args.name, args.out, args.seed);
  std::cout << "wrote " << args.out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "facroc: fairness measures (FACROC, balance, proportionality) and "
      "(fair) clustering models over tabular datasets"};
  app.require_subcommand(1);

  EvaluateArgs ev;
  auto* evaluate = app.add_subcommand(
      "evaluate", "Run clustering models and write measure reports");
  evaluate->add_option("--dataset", ev.dataset,
                       "Schema name (see schemas/) or path to a schema JSON")
      ->required();
  evaluate->add_option("--model", ev.model,
                       "kmeans|hierarchical|fairlet|scalable|proportional|all");
  evaluate->add_option("--k", ev.k, "Cluster count, or 'auto' for an AUCC sweep");
  evaluate->add_option("--seed", ev.seed, "Random seed (default 42)");
  evaluate->add_option("--out", ev.out, "Output directory");
  evaluate->add_option("--balance-target", ev.balance_target,
                       "Fairlet balance target t (default 0.4)");
  evaluate->add_option("--pair-sample", ev.pair_sample,
                       "Pair sample size for large datasets");
  evaluate->add_flag("--any-endpoint", ev.any_endpoint,
                     "Slice pairs by either endpoint's group instead of both");

  SelectKArgs sk;
  auto* select_cmd =
      app.add_subcommand("select-k", "Sweep k and report the AUCC-optimal value");
  select_cmd->add_option("--dataset", sk.dataset, "Schema name or path")
      ->required();
  select_cmd->add_option("--model", sk.model, "Model used for the sweep");
  select_cmd->add_option("--range", sk.range, "k range as a..b (default 2..10)");
  select_cmd->add_option("--seed", sk.seed, "Random seed (default 42)");
  select_cmd->add_option("--out", sk.out, "Output directory");

  OracleArgs orc;
  auto* oracle_cmd =
      app.add_subcommand("oracle", "Run brute-force verification suites");
  oracle_cmd->add_option("--suite", orc.suite,
                         "auc|facroc|audit|balance|fairlet|silhouette|selectk|all");
  oracle_cmd->add_option("--seed", orc.seed, "Random seed (default 42)");

  SynthArgs syn;
  auto* synth_cmd =
      app.add_subcommand("synth", "Write a deterministic stand-in dataset CSV");
  synth_cmd->add_option("--name", syn.name, "Stand-in dataset name")->required();
  synth_cmd->add_option("--out", syn.out, "Output CSV path")->required();
  synth_cmd->add_option("--seed", syn.seed, "Random seed (default 42)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "facroc: usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (evaluate->parsed()) return cmd_evaluate(ev);
    if (select_cmd->parsed()) return cmd_select_k(sk);
    if (oracle_cmd->parsed()) return cmd_oracle(orc);
    if (synth_cmd->parsed()) return cmd_synth(syn);
    throw usage_error("no subcommand given");
  } catch (const std::exception& e) {
    print_diagnostic(e);
    return classify(e);
  }
}

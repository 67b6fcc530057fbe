#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "stlopt/error.hpp"
#include "stlopt/harness/experiment.hpp"
#include "stlopt/harness/property_suite.hpp"
#include "stlopt/metrics/robustness.hpp"
#include "stlopt/stl/parser.hpp"
#include "stlopt/stl/semantics.hpp"
#include "stlopt/task/task_config.hpp"

namespace {

using nlohmann::json;
using namespace stlopt;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitEvaluation = 2;
constexpr int kExitProperties = 3;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::Syntax:
    case ErrorCode::InvalidInterval:
    case ErrorCode::InvalidArgument:
    case ErrorCode::MissingAgmScale:
    case ErrorCode::Io:
      return kExitUsage;
    default:
      return kExitEvaluation;
  }
}

// Arguments that may be given inline or as a path to a file holding them.
std::string inline_or_file(const std::string& arg) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(arg, ec)) return arg;
  std::ifstream in(arg);
  if (!in) throw Error(ErrorCode::Io, "cannot read '" + arg + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::map<std::string, double> parse_scales(const std::string& arg) {
  json j;
  try {
    j = json::parse(inline_or_file(arg));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("--agm-scales: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "--agm-scales must be a JSON object of channel -> scale");
  std::map<std::string, double> scales;
  for (const auto& [channel, value] : j.items()) {
    if (!value.is_number()) throw Error(ErrorCode::InvalidArgument, "--agm-scales: scale for '" + channel + "' is not a number");
    scales[channel] = value.get<double>();
  }
  return scales;
}

std::vector<std::uint64_t> parse_seeds(const std::string& arg) {
  std::vector<std::uint64_t> seeds;
  const auto number = [&arg](const std::string& s) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || s.front() == '-') {
      throw Error(ErrorCode::InvalidArgument, "--seeds: expected a count or a comma-separated list, got '" + arg + "'");
    }
    return static_cast<std::uint64_t>(v);
  };
  if (arg.find(',') == std::string::npos) {
    const std::uint64_t n = number(arg);
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "--seeds: count must be >= 1");
    for (std::uint64_t s = 1; s <= n; ++s) seeds.push_back(s);
    return seeds;
  }
  std::stringstream in(arg);
  std::string item;
  while (std::getline(in, item, ',')) seeds.push_back(number(item));
  return seeds;
}

void print_summary(const harness::ExperimentResult& r) {
  std::cout << "method=" << optim::to_string(r.config.method) << " metric=" << metrics::to_string(r.config.metric.kind)
            << " budget=" << r.config.budget << "\n";
  for (const auto& s : r.seeds) {
    std::cout << "seed " << s.seed << ": SR=" << stl::format_number(s.success_rate) << "% TS="
              << (s.task_satisfaction ? std::to_string(*s.task_satisfaction) : "Fail")
              << " best=" << stl::format_number(s.records.back().best_so_far) << "\n";
  }
  std::cout << "mean SR=" << stl::format_number(r.mean_success_rate) << "% median TS="
            << (r.median_task_satisfaction ? stl::format_number(*r.median_task_satisfaction) : "Fail") << "\n";
}

struct EvalArgs {
  std::string formula;
  std::string trace;
  std::string metric = "space";
  double time = 0.0;
  std::optional<double> k;
  std::optional<double> nu;
  std::string agm_scales;
};

int run_eval(const EvalArgs& a) {
  metrics::MetricConfig cfg;
  cfg.kind = metrics::parse_metric_kind(a.metric);
  if (a.k) cfg.k = *a.k;
  if (a.nu) cfg.nu = *a.nu;
  if (!a.agm_scales.empty()) cfg.agm_scales = parse_scales(a.agm_scales);
  cfg.validate();
  const stl::Formula f = stl::parse_formula(inline_or_file(a.formula));
  const stl::Trace x = stl::read_trace_csv_file(a.trace);

  json out{{"formula", stl::format_formula(f)}, {"metric", metrics::to_string(cfg.kind)}, {"time", a.time}};
  if (cfg.kind == metrics::MetricKind::Time) {
    const auto tr = metrics::time_robustness_plus(f, x, a.time);
    out["value"] = tr.value;
    out["sign"] = tr.sign;
    out["truncated"] = tr.truncated;
  } else {
    out["value"] = metrics::evaluate(cfg, f, x, a.time).value;
  }
  out["satisfied"] = stl::satisfies(f, x, a.time);
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_optimize(const std::string& config_path, const std::string& out_dir) {
  harness::ExperimentConfig cfg = harness::load_config_file(config_path);
  if (!out_dir.empty()) cfg.output_directory = out_dir;
  const task::TaskSpec spec = task::resolve_task(cfg.task);
  const auto result = harness::run_experiment(cfg, spec);
  print_summary(result);
  if (!cfg.output_directory.empty()) harness::emit_results(result, cfg.output_directory);
  return kExitOk;
}

struct BenchArgs {
  std::string task = "eq2";
  std::string method = "bo";
  std::string metric = "space";
  std::size_t budget = 60;
  std::string seeds = "1";
  std::string out;
  bool dump_task = false;
  std::optional<double> k;
  std::optional<double> nu;
  std::string agm_scales;
};

int run_bench(const BenchArgs& a) {
  const task::TaskSpec spec = task::resolve_task(a.task);
  if (a.dump_task) {
    std::cout << task::task_to_json(spec).dump(2) << "\n";
    return kExitOk;
  }
  harness::ExperimentConfig cfg;
  cfg.method = optim::parse_method(a.method);
  cfg.metric.kind = metrics::parse_metric_kind(a.metric);
  if (a.k) cfg.metric.k = *a.k;
  if (a.nu) cfg.metric.nu = *a.nu;
  if (!a.agm_scales.empty()) cfg.metric.agm_scales = parse_scales(a.agm_scales);
  cfg.budget = a.budget;
  cfg.seeds = parse_seeds(a.seeds);
  cfg.task = a.task;
  cfg.output_directory = a.out;
  const auto result = harness::run_experiment(cfg, spec);
  print_summary(result);
  if (!a.out.empty()) harness::emit_results(result, a.out);
  return kExitOk;
}

int run_check_properties(std::size_t samples, std::uint64_t seed) {
  const auto report = harness::run_property_suite(samples, seed);
  std::cout << report.to_text();
  return report.ok() ? kExitOk : kExitProperties;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"STL robustness evaluation and trajectory optimization"};
  app.require_subcommand(1);

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a formula on a trace");
  eval_cmd->add_option("--formula", eval.formula, "Formula text or file")->required();
  eval_cmd->add_option("--trace", eval.trace, "Trace CSV (time,channel...)")->required();
  eval_cmd->add_option("--metric", eval.metric, "space|time|lse|smooth|agm|avg|new")->capture_default_str();
  eval_cmd->add_option("--time", eval.time, "Evaluation time in seconds")->capture_default_str();
  eval_cmd->add_option("--k", eval.k, "LSE / smooth scale");
  eval_cmd->add_option("--nu", eval.nu, "NEW scale");
  eval_cmd->add_option("--agm-scales", eval.agm_scales, "JSON object channel -> half-range, inline or file");

  std::string config_path;
  std::string out_dir;
  auto* optimize_cmd = app.add_subcommand("optimize", "Run an experiment from a JSON config");
  optimize_cmd->add_option("--config", config_path, "Experiment config JSON")->required();
  optimize_cmd->add_option("--out", out_dir, "Output directory (overrides the config)");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run the built-in benchmark");
  bench_cmd->add_option("task", bench.task, "Built-in task name or task file")->capture_default_str();
  bench_cmd->add_option("--method", bench.method, "bo|cmaes|random")->capture_default_str();
  bench_cmd->add_option("--metric", bench.metric, "space|lse|smooth|agm|avg|new")->capture_default_str();
  bench_cmd->add_option("--budget", bench.budget, "Evaluations per seed")->capture_default_str()->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seeds", bench.seeds, "Count n (seeds 1..n) or comma-separated list")->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "Output directory");
  bench_cmd->add_flag("--dump-task", bench.dump_task, "Print the task definition as JSON and exit");
  bench_cmd->add_option("--k", bench.k, "LSE / smooth scale");
  bench_cmd->add_option("--nu", bench.nu, "NEW scale");
  bench_cmd->add_option("--agm-scales", bench.agm_scales, "JSON object channel -> half-range, inline or file");

  std::size_t samples = 500;
  std::uint64_t seed = 42;
  auto* props_cmd = app.add_subcommand("check-properties", "Run the robustness property suite");
  props_cmd->add_option("--samples", samples, "Random instances per property")->capture_default_str()->check(CLI::PositiveNumber);
  props_cmd->add_option("--seed", seed, "Generator seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*eval_cmd) return run_eval(eval);
    if (*optimize_cmd) return run_optimize(config_path, out_dir);
    if (*bench_cmd) return run_bench(bench);
    if (*props_cmd) return run_check_properties(samples, seed);
  } catch (const Error& e) {
    std::cerr << "stlopt: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "stlopt: " << e.what() << "\n";
    return kExitEvaluation;
  }
  return kExitUsage;
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stlopt/metrics/robustness.hpp"
#include "stlopt/optim/optimizer.hpp"
#include "stlopt/task/planar_task.hpp"

namespace stlopt::harness {

struct ExperimentConfig {
  optim::Method method = optim::Method::Bo;
  metrics::MetricConfig metric;
  std::size_t budget = 60;
  std::vector<std::uint64_t> seeds{1};
  std::string task = "eq2";  // built-in name or task file path
  std::string output_directory;

  /// Throws InvalidArgument naming the offending field.
  void validate() const;
};

/// Field names: method, metric {kind, k, nu, agm_scales}, budget, seeds,
/// task, output_directory. Unknown fields are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig load_config_file(const std::string& path);

struct RunRecord {
  std::size_t index;  // 1-based evaluation number
  optim::Point params;
  double robustness;
  bool satisfied;     // Boolean oracle, independent of the metric's sign
  double best_so_far;
};

struct SeedResult {
  std::uint64_t seed;
  std::vector<RunRecord> records;
  double success_rate;                       // percent of evaluations satisfied
  std::optional<std::size_t> task_satisfaction;  // first satisfied index; empty = Fail
};

struct ExperimentResult {
  ExperimentConfig config;
  task::TaskSpec task;
  std::vector<SeedResult> seeds;
  double mean_success_rate;
  std::optional<double> median_task_satisfaction;  // over satisfying seeds; empty = Fail
};

double success_rate(const std::vector<RunRecord>& records);
std::optional<std::size_t> task_satisfaction(const std::vector<RunRecord>& records);

/// Seeds run concurrently with isolated optimizer states; results come
/// back in seed order and are identical to a sequential run.
ExperimentResult run_experiment(const ExperimentConfig& cfg);
ExperimentResult run_experiment(const ExperimentConfig& cfg, const task::TaskSpec& task);

/// Writes runs.csv, summary.json and trace_best.csv into `dir` (created if
/// missing). Throws ErrorCode::Io with the failing path.
void emit_results(const ExperimentResult& result, const std::string& dir);

nlohmann::json summary_json(const ExperimentResult& result);

}  // namespace stlopt::harness

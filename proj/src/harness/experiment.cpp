#include "stlopt/harness/experiment.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "stlopt/error.hpp"
#include "stlopt/stl/parser.hpp"
#include "stlopt/task/task_config.hpp"

namespace stlopt::harness {

using nlohmann::json;

void ExperimentConfig::validate() const {
  if (budget < 1) throw Error(ErrorCode::InvalidArgument, "config field 'budget' must be >= 1");
  if (seeds.empty()) throw Error(ErrorCode::InvalidArgument, "config field 'seeds' must not be empty");
  if (task.empty()) throw Error(ErrorCode::InvalidArgument, "config field 'task' must not be empty");
  try {
    metric.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("config field 'metric': ") + e.what());
  }
}

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::InvalidArgument, "config field '" + field + "': " + why);
}

metrics::MetricConfig metric_from_json(const json& j) {
  if (j.is_string()) {
    metrics::MetricConfig m;
    m.kind = metrics::parse_metric_kind(j.get<std::string>());
    return m;
  }
  if (!j.is_object()) bad_field("metric", "expected an object or a metric name");
  metrics::MetricConfig m;
  for (const auto& [key, value] : j.items()) {
    if (key == "kind") {
      if (!value.is_string()) bad_field("metric.kind", "expected a string");
      try {
        m.kind = metrics::parse_metric_kind(value.get<std::string>());
      } catch (const Error& e) {
        bad_field("metric.kind", e.what());
      }
    } else if (key == "k" || key == "nu") {
      if (!value.is_number()) bad_field("metric." + key, "expected a number");
      (key == "k" ? m.k : m.nu) = value.get<double>();
    } else if (key == "agm_scales") {
      if (!value.is_object()) bad_field("metric.agm_scales", "expected an object of channel -> scale");
      for (const auto& [channel, scale] : value.items()) {
        if (!scale.is_number()) bad_field("metric.agm_scales." + channel, "expected a number");
        m.agm_scales[channel] = scale.get<double>();
      }
    } else {
      bad_field("metric." + key, "unknown field");
    }
  }
  return m;
}

std::vector<RunRecord> attach_oracle(const task::TaskSpec& spec, const std::vector<optim::Evaluation>& history) {
  std::vector<RunRecord> records;
  records.reserve(history.size());
  for (const auto& e : history) {
    records.push_back({e.index, e.params, e.value, task::satisfied(spec, e.params), e.best_so_far});
  }
  return records;
}

SeedResult run_seed(const ExperimentConfig& cfg, const task::TaskSpec& spec, std::uint64_t seed) {
  metrics::MetricConfig metric = cfg.metric;
  if (metric.kind == metrics::MetricKind::Agm && metric.agm_scales.empty()) {
    metric.agm_scales = spec.default_agm_scales();
  }
  auto objective = [&](const optim::Point& p) { return task::objective(spec, metric, p); };
  const auto history = optim::optimize(objective, spec.bounds, cfg.budget, cfg.method, seed);
  SeedResult out{seed, attach_oracle(spec, history), 0.0, std::nullopt};
  out.success_rate = success_rate(out.records);
  out.task_satisfaction = task_satisfaction(out.records);
  return out;
}

std::string csv_number(double v) { return stl::format_number(v); }

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "failed writing '" + path.string() + "'");
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "experiment config must be a JSON object");
  ExperimentConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "method") {
      if (!value.is_string()) bad_field("method", "expected a string");
      try {
        cfg.method = optim::parse_method(value.get<std::string>());
      } catch (const Error& e) {
        bad_field("method", e.what());
      }
    } else if (key == "metric") {
      cfg.metric = metric_from_json(value);
    } else if (key == "budget") {
      if (!value.is_number_integer() || value.get<long long>() < 1) bad_field("budget", "expected an integer >= 1");
      cfg.budget = value.get<std::size_t>();
    } else if (key == "seeds") {
      if (!value.is_array() || value.empty()) bad_field("seeds", "expected a non-empty array of integers");
      cfg.seeds.clear();
      for (const auto& s : value) {
        if (!s.is_number_unsigned()) bad_field("seeds", "expected non-negative integers");
        cfg.seeds.push_back(s.get<std::uint64_t>());
      }
    } else if (key == "task") {
      if (!value.is_string()) bad_field("task", "expected a built-in name or a file path");
      cfg.task = value.get<std::string>();
    } else if (key == "output_directory") {
      if (!value.is_string()) bad_field("output_directory", "expected a path");
      cfg.output_directory = value.get<std::string>();
    } else {
      bad_field(key, "unknown field");
    }
  }
  cfg.validate();
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  json scales = json::object();
  for (const auto& [channel, scale] : cfg.metric.agm_scales) scales[channel] = scale;
  return {{"method", optim::to_string(cfg.method)},
          {"metric",
           {{"kind", metrics::to_string(cfg.metric.kind)},
            {"k", cfg.metric.k},
            {"nu", cfg.metric.nu},
            {"agm_scales", scales}}},
          {"budget", cfg.budget},
          {"seeds", cfg.seeds},
          {"task", cfg.task},
          {"output_directory", cfg.output_directory}};
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, "config file '" + path + "': " + e.what());
  }
  return config_from_json(j);
}

double success_rate(const std::vector<RunRecord>& records) {
  if (records.empty()) return 0.0;
  const auto hits = std::count_if(records.begin(), records.end(), [](const RunRecord& r) { return r.satisfied; });
  return 100.0 * static_cast<double>(hits) / static_cast<double>(records.size());
}

std::optional<std::size_t> task_satisfaction(const std::vector<RunRecord>& records) {
  for (const auto& r : records) {
    if (r.satisfied) return r.index;
  }
  return std::nullopt;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  return run_experiment(cfg, task::resolve_task(cfg.task));
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const task::TaskSpec& spec) {
  cfg.validate();
  spec.validate();
  std::vector<std::future<SeedResult>> jobs;
  jobs.reserve(cfg.seeds.size());
  for (std::uint64_t seed : cfg.seeds) {
    jobs.push_back(std::async(std::launch::async, [&cfg, &spec, seed] { return run_seed(cfg, spec, seed); }));
  }
  ExperimentResult result{cfg, spec, {}, 0.0, std::nullopt};
  for (auto& job : jobs) result.seeds.push_back(job.get());

  double sr_sum = 0.0;
  std::vector<double> ts;
  for (const auto& s : result.seeds) {
    sr_sum += s.success_rate;
    if (s.task_satisfaction) ts.push_back(static_cast<double>(*s.task_satisfaction));
  }
  result.mean_success_rate = sr_sum / static_cast<double>(result.seeds.size());
  if (!ts.empty()) {
    std::sort(ts.begin(), ts.end());
    const std::size_t mid = ts.size() / 2;
    result.median_task_satisfaction = ts.size() % 2 == 1 ? ts[mid] : 0.5 * (ts[mid - 1] + ts[mid]);
  }
  return result;
}

json summary_json(const ExperimentResult& result) {
  json seeds = json::array();
  for (const auto& s : result.seeds) {
    seeds.push_back({{"seed", s.seed},
                     {"sr", s.success_rate},
                     {"ts", s.task_satisfaction ? json(*s.task_satisfaction) : json("Fail")},
                     {"best_robustness", s.records.empty() ? 0.0 : s.records.back().best_so_far}});
  }
  return {{"config", config_to_json(result.config)},
          {"task", task::task_to_json(result.task)},
          {"seeds", seeds},
          {"aggregate",
           {{"mean_sr", result.mean_success_rate},
            {"median_ts", result.median_task_satisfaction ? json(*result.median_task_satisfaction) : json("Fail")}}}};
}

void emit_results(const ExperimentResult& result, const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create output directory '" + dir + "': " + ec.message());

  std::string runs = "seed,eval,d1,d2,d3,x1,y1,x2,y2,x3,y3,robustness,satisfied,best_so_far\n";
  const RunRecord* best = nullptr;
  for (const auto& s : result.seeds) {
    for (const auto& r : s.records) {
      runs += std::to_string(s.seed) + "," + std::to_string(r.index);
      for (double p : r.params) runs += "," + csv_number(p);
      runs += "," + csv_number(r.robustness) + "," + (r.satisfied ? "1" : "0") + "," + csv_number(r.best_so_far) + "\n";
      if (!best || r.robustness > best->robustness) {
        best = &r;
      }
    }
  }
  write_file(root / "runs.csv", runs);
  write_file(root / "summary.json", summary_json(result).dump(2) + "\n");

  std::ostringstream trace_csv;
  if (best) {
    stl::write_trace_csv(trace_csv, task::trajectory_for(result.task, best->params));
  }
  write_file(root / "trace_best.csv", trace_csv.str());
}

}  // namespace stlopt::harness

#include "stlopt/task/task_config.hpp"

#include <fstream>

#include "stlopt/error.hpp"
#include "stlopt/stl/parser.hpp"

namespace stlopt::task {

using nlohmann::json;

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::InvalidArgument, "task field '" + field + "': " + why);
}

std::vector<double> numbers(const json& j, const std::string& field, std::size_t expected) {
  if (!j.is_array() || j.size() != expected) {
    bad_field(field, "expected an array of " + std::to_string(expected) + " numbers");
  }
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) bad_field(field, "expected numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

TaskSpec task_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "task config must be a JSON object");
  TaskSpec spec = benchmark_eq2();
  spec.name = j.value("name", std::string("custom"));

  if (j.contains("regions")) {
    const json& regions = j.at("regions");
    if (!regions.is_array() || regions.empty()) bad_field("regions", "expected a non-empty array");
    spec.regions.clear();
    for (const auto& r : regions) {
      if (!r.is_object() || !r.contains("box") || !r.contains("window")) {
        bad_field("regions", "each region needs \"box\" and \"window\"");
      }
      const auto box = numbers(r.at("box"), "regions.box", 4);
      const auto window = numbers(r.at("window"), "regions.window", 2);
      try {
        spec.regions.push_back({r.value("name", std::string()), box[0], box[1], box[2], box[3],
                                stl::Interval(window[0], window[1])});
      } catch (const Error& e) {
        bad_field("regions.window", e.what());
      }
    }
    spec.formula = reach_formula(spec.regions);
  }
  if (j.contains("home")) {
    const auto home = numbers(j.at("home"), "home", 2);
    spec.home = {home[0], home[1]};
  }
  if (j.contains("bounds")) {
    const json& b = j.at("bounds");
    if (!b.is_object() || !b.contains("lower") || !b.contains("upper")) {
      bad_field("bounds", "expected {\"lower\": [...], \"upper\": [...]}");
    }
    try {
      spec.bounds = optim::Bounds(numbers(b.at("lower"), "bounds.lower", 9), numbers(b.at("upper"), "bounds.upper", 9));
    } catch (const Error& e) {
      bad_field("bounds", e.what());
    }
  }
  if (j.contains("sample_rate")) {
    if (!j.at("sample_rate").is_number()) bad_field("sample_rate", "expected a number");
    spec.sample_rate = j.at("sample_rate").get<double>();
  }
  if (j.contains("formula") && !j.at("formula").is_null()) {
    if (!j.at("formula").is_string()) bad_field("formula", "expected grammar text");
    spec.formula = stl::parse_formula(j.at("formula").get<std::string>());
  }
  spec.validate();
  return spec;
}

json task_to_json(const TaskSpec& spec) {
  json regions = json::array();
  for (const Region& r : spec.regions) {
    regions.push_back({{"name", r.name},
                       {"box", {r.x_lb, r.x_ub, r.y_lb, r.y_ub}},
                       {"window", {r.window.lower(), r.window.upper()}}});
  }
  return {{"name", spec.name},
          {"formula", stl::format_formula(spec.formula)},
          {"regions", regions},
          {"home", {spec.home.x, spec.home.y}},
          {"bounds", {{"lower", spec.bounds.lower()}, {"upper", spec.bounds.upper()}}},
          {"sample_rate", spec.sample_rate}};
}

TaskSpec load_task_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open task file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, "task file '" + path + "': " + e.what());
  }
  return task_from_json(j);
}

TaskSpec resolve_task(const std::string& name_or_path) {
  if (name_or_path == "eq2") return benchmark_eq2();
  return load_task_file(name_or_path);
}

}  // namespace stlopt::task

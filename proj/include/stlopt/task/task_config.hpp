#pragma once

#include <string>

#include <json.hpp>

#include "stlopt/task/planar_task.hpp"

namespace stlopt::task {

// Task file layout:
//   {
//     "name": "eq2",
//     "regions": [{"name": "A", "box": [x_lb, x_ub, y_lb, y_ub], "window": [a, b]}, ...],
//     "home": [x, y],
//     "bounds": {"lower": [9 values], "upper": [9 values]},
//     "sample_rate": 10,
//     "formula": "optional grammar text overriding the regions"
//   }
// Omitted fields fall back to the built-in eq2 benchmark.

TaskSpec task_from_json(const nlohmann::json& j);
nlohmann::json task_to_json(const TaskSpec& spec);

TaskSpec load_task_file(const std::string& path);

/// "eq2" or a path to a task file.
TaskSpec resolve_task(const std::string& name_or_path);

}  // namespace stlopt::task

#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "stlopt/metrics/robustness.hpp"
#include "stlopt/optim/bounds.hpp"
#include "stlopt/stl/formula.hpp"
#include "stlopt/stl/trace.hpp"

namespace stlopt::task {

struct Waypoint {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Waypoint&, const Waypoint&) = default;
};

/// Admissible durations and workspace for trajectory parameters.
struct TrajectoryLimits {
  double d_min = 1.0;
  double d_max = 10.0;
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
};

/// Three straight constant-speed segments: home -> w1 -> w2 -> w3.
struct TrajectoryParams {
  std::array<double, 3> durations{};
  std::array<Waypoint, 3> waypoints{};

  static constexpr std::size_t kSize = 9;

  /// Layout (d1, d2, d3, x1, y1, x2, y2, x3, y3).
  static TrajectoryParams from_vector(std::span<const double> v);
  optim::Point to_vector() const;

  double total_duration() const noexcept { return durations[0] + durations[1] + durations[2]; }

  /// Throws InvalidArgument when a duration or waypoint leaves `limits`.
  void validate(const TrajectoryLimits& limits) const;
};

/// Channels "x", "y"; dt = 1 / sample_rate; round(T * sample_rate) + 1
/// samples. Sample k sits at the path position at min(k dt, T); the final
/// sample is the last waypoint.
stl::Trace build_trajectory(const TrajectoryParams& p, double sample_rate, Waypoint home,
                            const TrajectoryLimits& limits = {});

struct Region {
  std::string name;
  double x_lb;
  double x_ub;
  double y_lb;
  double y_ub;
  stl::Interval window;
};

/// F[window](x > x_lb & x < x_ub & y > y_lb & y < y_ub), conjoined over regions.
stl::Formula reach_formula(const std::vector<Region>& regions);

struct TaskSpec {
  std::string name;
  stl::Formula formula;
  optim::Bounds bounds;
  std::vector<Region> regions;
  Waypoint home;
  double sample_rate;

  TrajectoryLimits limits() const;
  /// Half-range of the workspace per channel, the AGM normalization default.
  std::map<std::string, double> default_agm_scales() const;
  /// Throws InvalidArgument when the invariants do not hold.
  void validate() const;
};

/// Visit A, B, C within [3,4], [8,10], [13,15] seconds.
TaskSpec benchmark_eq2();

/// The three-region formula as grammar text.
std::string eq2_formula_text();

/// Reward for parameter vector `p` at t = 0 (larger is better). When the
/// durations cannot cover the formula horizon H the reward is the penalty
/// -(H - sum d) - 1 instead of an error. An AGM config without scales uses
/// the task defaults.
double objective(const TaskSpec& spec, const metrics::MetricConfig& cfg, std::span<const double> p);

/// Boolean-oracle verdict for `p`; false whenever objective() would apply the penalty.
bool satisfied(const TaskSpec& spec, std::span<const double> p);

stl::Trace trajectory_for(const TaskSpec& spec, std::span<const double> p);

}  // namespace stlopt::task

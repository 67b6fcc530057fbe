#include "stlopt/task/planar_task.hpp"

#include <algorithm>
#include <cmath>

#include "stlopt/error.hpp"
#include "stlopt/stl/parser.hpp"
#include "stlopt/stl/semantics.hpp"

namespace stlopt::task {

TrajectoryParams TrajectoryParams::from_vector(std::span<const double> v) {
  if (v.size() != kSize) {
    throw Error(ErrorCode::InvalidArgument, "trajectory parameters need 9 values, got " + std::to_string(v.size()));
  }
  TrajectoryParams p;
  for (std::size_t i = 0; i < 3; ++i) {
    p.durations[i] = v[i];
    p.waypoints[i] = {v[3 + 2 * i], v[4 + 2 * i]};
  }
  return p;
}

optim::Point TrajectoryParams::to_vector() const {
  optim::Point v(kSize);
  for (std::size_t i = 0; i < 3; ++i) {
    v[i] = durations[i];
    v[3 + 2 * i] = waypoints[i].x;
    v[4 + 2 * i] = waypoints[i].y;
  }
  return v;
}

void TrajectoryParams::validate(const TrajectoryLimits& limits) const {
  for (std::size_t i = 0; i < 3; ++i) {
    const double d = durations[i];
    if (!(d >= limits.d_min)) {
      throw Error(ErrorCode::InvalidArgument, "duration d" + std::to_string(i + 1) + " = " +
                                                  stl::format_number(d) + " is below the minimum " +
                                                  stl::format_number(limits.d_min));
    }
    if (!(d <= limits.d_max)) {
      throw Error(ErrorCode::InvalidArgument, "duration d" + std::to_string(i + 1) + " = " +
                                                  stl::format_number(d) + " exceeds the maximum " +
                                                  stl::format_number(limits.d_max));
    }
    const Waypoint& w = waypoints[i];
    if (!(w.x >= limits.x_min && w.x <= limits.x_max && w.y >= limits.y_min && w.y <= limits.y_max)) {
      throw Error(ErrorCode::InvalidArgument, "waypoint " + std::to_string(i + 1) + " lies outside the workspace");
    }
  }
}

stl::Trace build_trajectory(const TrajectoryParams& p, double sample_rate, Waypoint home,
                            const TrajectoryLimits& limits) {
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) {
    throw Error(ErrorCode::InvalidArgument, "sample rate must be > 0");
  }
  p.validate(limits);
  const double total = p.total_duration();
  const double dt = 1.0 / sample_rate;
  const auto count = static_cast<std::size_t>(std::llround(total * sample_rate)) + 1;

  std::array<Waypoint, 4> knots{home, p.waypoints[0], p.waypoints[1], p.waypoints[2]};
  auto position = [&](double s) {
    for (std::size_t i = 0; i < 3; ++i) {
      if (s <= p.durations[i] || i == 2) {
        const double frac = std::clamp(s / p.durations[i], 0.0, 1.0);
        return Waypoint{knots[i].x + frac * (knots[i + 1].x - knots[i].x),
                        knots[i].y + frac * (knots[i + 1].y - knots[i].y)};
      }
      s -= p.durations[i];
    }
    return knots[3];
  };

  std::vector<double> samples;
  samples.reserve(2 * count);
  for (std::size_t k = 0; k < count; ++k) {
    const Waypoint w = k + 1 == count ? knots[3] : position(std::min(static_cast<double>(k) * dt, total));
    samples.push_back(w.x);
    samples.push_back(w.y);
  }
  return stl::Trace({"x", "y"}, 0.0, dt, std::move(samples));
}

stl::Formula reach_formula(const std::vector<Region>& regions) {
  if (regions.empty()) throw Error(ErrorCode::InvalidArgument, "task needs at least one region");
  using stl::Comparison;
  using stl::Formula;
  std::vector<Formula> visits;
  for (const Region& r : regions) {
    Formula inside = Formula::conjunction({
        Formula::predicate("x", Comparison::Greater, r.x_lb),
        Formula::predicate("x", Comparison::Less, r.x_ub),
        Formula::predicate("y", Comparison::Greater, r.y_lb),
        Formula::predicate("y", Comparison::Less, r.y_ub),
    });
    visits.push_back(Formula::eventually(r.window, std::move(inside)));
  }
  return visits.size() == 1 ? visits.front() : Formula::conjunction(std::move(visits));
}

TrajectoryLimits TaskSpec::limits() const {
  const auto& lo = bounds.lower();
  const auto& hi = bounds.upper();
  return {std::min({lo[0], lo[1], lo[2]}), std::max({hi[0], hi[1], hi[2]}),
          std::min({lo[3], lo[5], lo[7]}), std::max({hi[3], hi[5], hi[7]}),
          std::min({lo[4], lo[6], lo[8]}), std::max({hi[4], hi[6], hi[8]})};
}

std::map<std::string, double> TaskSpec::default_agm_scales() const {
  const TrajectoryLimits l = limits();
  return {{"x", 0.5 * (l.x_max - l.x_min)}, {"y", 0.5 * (l.y_max - l.y_min)}};
}

void TaskSpec::validate() const {
  if (bounds.dim() != TrajectoryParams::kSize) {
    throw Error(ErrorCode::InvalidArgument, "task bounds must have 9 dimensions");
  }
  if (!(bounds.lower()[0] > 0.0 && bounds.lower()[1] > 0.0 && bounds.lower()[2] > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "task duration lower bounds must be > 0");
  }
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) {
    throw Error(ErrorCode::InvalidArgument, "task sample_rate must be > 0");
  }
  for (const Region& r : regions) {
    if (!(r.x_ub > r.x_lb) || !(r.y_ub > r.y_lb)) {
      throw Error(ErrorCode::InvalidArgument, "region '" + r.name + "' box is degenerate");
    }
  }
  const double h = stl::horizon(formula);
  const double reachable = bounds.upper()[0] + bounds.upper()[1] + bounds.upper()[2];
  if (h > reachable + stl::kTimeTolerance) {
    throw Error(ErrorCode::InvalidArgument, "formula horizon " + stl::format_number(h) +
                                                " s exceeds the longest trajectory " +
                                                stl::format_number(reachable) + " s");
  }
}

std::string eq2_formula_text() { return stl::format_formula(benchmark_eq2().formula); }

TaskSpec benchmark_eq2() {
  std::vector<Region> regions{
      {"A", 0.20, 0.30, 0.60, 0.70, stl::Interval(3, 4)},
      {"B", 0.55, 0.65, 0.55, 0.65, stl::Interval(8, 10)},
      {"C", 0.70, 0.80, 0.15, 0.25, stl::Interval(13, 15)},
  };
  stl::Formula formula = reach_formula(regions);
  TaskSpec spec{"eq2",
                std::move(formula),
                optim::Bounds({1, 1, 1, 0, 0, 0, 0, 0, 0}, {10, 10, 10, 1, 1, 1, 1, 1, 1}),
                std::move(regions),
                {0.1, 0.1},
                10.0};
  return spec;
}

stl::Trace trajectory_for(const TaskSpec& spec, std::span<const double> p) {
  return build_trajectory(TrajectoryParams::from_vector(p), spec.sample_rate, spec.home, spec.limits());
}

double objective(const TaskSpec& spec, const metrics::MetricConfig& cfg, std::span<const double> p) {
  const TrajectoryParams params = TrajectoryParams::from_vector(p);
  params.validate(spec.limits());
  const double h = stl::horizon(spec.formula);
  const double total = params.total_duration();
  if (total < h) return -(h - total) - 1.0;

  const stl::Trace trace = build_trajectory(params, spec.sample_rate, spec.home, spec.limits());
  if (trace.last_time() + stl::kTimeTolerance < h) return -(h - trace.last_time()) - 1.0;

  if (cfg.kind == metrics::MetricKind::Agm && cfg.agm_scales.empty()) {
    metrics::MetricConfig with_scales = cfg;
    with_scales.agm_scales = spec.default_agm_scales();
    return metrics::evaluate_at(with_scales, spec.formula, trace, 0).value;
  }
  return metrics::evaluate_at(cfg, spec.formula, trace, 0).value;
}

bool satisfied(const TaskSpec& spec, std::span<const double> p) {
  // Same feasibility rule as objective(): a run shorter than the horizon
  // never counts, even if rounding stretches its last sample that far.
  const double h = stl::horizon(spec.formula);
  if (TrajectoryParams::from_vector(p).total_duration() < h) return false;
  const stl::Trace trace = trajectory_for(spec, p);
  if (trace.last_time() + stl::kTimeTolerance < h) return false;
  return stl::satisfies_at(spec.formula, trace, 0);
}

}  // namespace stlopt::task

#include <doctest.h>

#include <cmath>

#include "stlopt/error.hpp"
#include "stlopt/metrics/robustness.hpp"
#include "stlopt/optim/rng.hpp"
#include "stlopt/stl/parser.hpp"
#include "stlopt/stl/semantics.hpp"
#include "stlopt/task/planar_task.hpp"
#include "stlopt/task/task_config.hpp"

using namespace stlopt;
using namespace stlopt::task;

namespace {

metrics::MetricConfig config(metrics::MetricKind kind) {
  metrics::MetricConfig c;
  c.kind = kind;
  return c;
}

// Waypoints at the three region centres, arriving at 3.5 s, 9.0 s and 15.0 s.
const std::vector<double> kCentres{3.5, 5.5, 6.0, 0.25, 0.65, 0.6, 0.6, 0.75, 0.2};

optim::Point random_params(optim::Rng& rng, const optim::Bounds& b) {
  optim::Point u(b.dim());
  for (double& v : u) v = rng.uniform();
  return b.from_unit(u);
}

}  // namespace

TEST_CASE("single segment interpolation") {
  TrajectoryParams p;
  p.durations = {1.0, 1.0, 1.0};
  p.waypoints = {Waypoint{1, 0}, Waypoint{1, 0}, Waypoint{1, 0}};
  const stl::Trace t = build_trajectory(p, 10, Waypoint{0, 0});
  REQUIRE(t.size() == 31);
  CHECK(t.channels() == std::vector<std::string>{"x", "y"});
  CHECK(t.dt() == doctest::Approx(0.1));
  for (std::size_t k = 0; k <= 10; ++k) CHECK(t.at(k, 0) == doctest::Approx(0.1 * static_cast<double>(k)).epsilon(1e-12));
  for (std::size_t k = 10; k < t.size(); ++k) CHECK(t.at(k, 0) == doctest::Approx(1.0));
}

TEST_CASE("trajectory facts") {
  TrajectoryParams still;
  still.durations = {2, 2, 2};
  still.waypoints = {Waypoint{0.3, 0.4}, Waypoint{0.3, 0.4}, Waypoint{0.3, 0.4}};
  const auto t = build_trajectory(still, 10, Waypoint{0.3, 0.4});
  for (std::size_t k = 0; k < t.size(); ++k) {
    CHECK(t.at(k, 0) == 0.3);
    CHECK(t.at(k, 1) == 0.4);
  }

  const auto p = TrajectoryParams::from_vector(std::vector<double>{3, 5, 5, 0.2, 0.3, 0.5, 0.5, 0.9, 0.1});
  const auto t2 = build_trajectory(p, 10, Waypoint{0.1, 0.1});
  CHECK(t2.size() == 131);
  CHECK(t2.last_time() == doctest::Approx(13.0));
  CHECK(std::abs(t2.at(130, 0) - 0.9) <= 1e-9);
  CHECK(std::abs(t2.at(130, 1) - 0.1) <= 1e-9);
  CHECK(p.to_vector() == std::vector<double>{3, 5, 5, 0.2, 0.3, 0.5, 0.5, 0.9, 0.1});

  CHECK_THROWS_AS(TrajectoryParams::from_vector(std::vector<double>{1, 2}), Error);
  auto bad = p;
  bad.durations[1] = 0.5;
  CHECK_THROWS_AS(build_trajectory(bad, 10, Waypoint{0, 0}), Error);
  bad = p;
  bad.waypoints[2].x = 1.5;
  CHECK_THROWS_AS(build_trajectory(bad, 10, Waypoint{0, 0}), Error);
  CHECK_THROWS_AS(build_trajectory(p, 0, Waypoint{0, 0}), Error);
}

TEST_CASE("continuity and reset over random parameters") {
  const TaskSpec spec = benchmark_eq2();
  optim::Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    const auto v = random_params(rng, spec.bounds);
    const auto p = TrajectoryParams::from_vector(v);
    const auto t = build_trajectory(p, spec.sample_rate, spec.home);
    CHECK(t.at(0, 0) == spec.home.x);
    CHECK(t.at(0, 1) == spec.home.y);
    CHECK(t.size() == static_cast<std::size_t>(std::llround(p.total_duration() * spec.sample_rate)) + 1);
    double max_speed = 0.0;
    Waypoint prev = spec.home;
    for (std::size_t s = 0; s < 3; ++s) {
      const auto w = p.waypoints[s];
      max_speed = std::max(max_speed, std::hypot(w.x - prev.x, w.y - prev.y) / p.durations[s]);
      prev = w;
    }
    const double dt = t.dt();
    for (std::size_t k = 1; k < t.size(); ++k) {
      const double step = std::hypot(t.at(k, 0) - t.at(k - 1, 0), t.at(k, 1) - t.at(k - 1, 1));
      // The final sample is snapped to the last waypoint; when the total
      // duration rounds down it covers up to T - (N - 2) dt of motion.
      const double span = k + 1 == t.size() ? p.total_duration() - static_cast<double>(k - 1) * dt : dt;
      CHECK(step <= max_speed * std::max(span, dt) + 1e-9);
    }
  }
}

TEST_CASE("eq2 benchmark") {
  const TaskSpec spec = benchmark_eq2();
  CHECK(stl::horizon(spec.formula) == 15.0);
  CHECK(stl::parse_formula(eq2_formula_text()) == spec.formula);
  CHECK(stl::parse_formula(stl::format_formula(spec.formula)) == spec.formula);
  CHECK(spec.bounds.dim() == 9);
  CHECK(spec.home == Waypoint{0.1, 0.1});
  CHECK(spec.sample_rate == 10.0);
  REQUIRE(spec.regions.size() == 3);
  CHECK(spec.regions[1].x_lb == 0.55);
  CHECK(spec.regions[2].window == stl::Interval(13, 15));
  CHECK_NOTHROW(spec.validate());

  const auto space = config(metrics::MetricKind::Space);
  const double v = objective(spec, space, kCentres);
  CHECK(v > 0.0);
  CHECK(satisfied(spec, kCentres));
  CHECK(v == objective(spec, space, kCentres));
  CHECK(v == metrics::space_robustness(spec.formula, trajectory_for(spec, kCentres), 0));
}

TEST_CASE("short-horizon penalty") {
  const TaskSpec spec = benchmark_eq2();
  const auto space = config(metrics::MetricKind::Space);
  CHECK(objective(spec, space, std::vector<double>{1, 1, 1, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5}) == -13.0);
  // Arrival times 3.5, 9.0, 13.5 leave the last window short of its 15 s end.
  const std::vector<double> short_centres{3.5, 5.5, 4.5, 0.25, 0.65, 0.6, 0.6, 0.75, 0.2};
  CHECK(objective(spec, space, short_centres) == doctest::Approx(-2.5));
  CHECK_FALSE(satisfied(spec, short_centres));
  CHECK(objective(spec, config(metrics::MetricKind::New), short_centres) == doctest::Approx(-2.5));
}

TEST_CASE("space objective sign agrees with the oracle") {
  const TaskSpec spec = benchmark_eq2();
  const auto space = config(metrics::MetricKind::Space);
  optim::Rng rng(23);
  int checked = 0;
  for (int i = 0; checked < 200; ++i) {
    auto v = random_params(rng, spec.bounds);
    // Bias half the draws toward the region centres so both verdicts occur.
    if (i % 2 == 0) {
      for (std::size_t j = 0; j < 9; ++j) v[j] = std::clamp(kCentres[j] + rng.uniform(-0.15, 0.15) * (j < 3 ? 3 : 0.3), spec.bounds.lower()[j], spec.bounds.upper()[j]);
    }
    const double r = objective(spec, space, v);
    if (std::abs(r) <= 1e-9) continue;
    ++checked;
    CHECK((r > 0) == satisfied(spec, v));
  }
}

TEST_CASE("agm objective uses workspace half-range by default") {
  const TaskSpec spec = benchmark_eq2();
  const auto scales = spec.default_agm_scales();
  CHECK(scales.at("x") == 0.5);
  CHECK(scales.at("y") == 0.5);
  auto agm = config(metrics::MetricKind::Agm);
  const double v = objective(spec, agm, kCentres);
  agm.agm_scales = scales;
  CHECK(v == objective(spec, agm, kCentres));
  CHECK(v > 0.0);
  CHECK(std::isfinite(objective(spec, config(metrics::MetricKind::Avg), kCentres)));
}

TEST_CASE("task json round trip and overrides") {
  const TaskSpec spec = benchmark_eq2();
  const TaskSpec back = task_from_json(task_to_json(spec));
  CHECK(back.formula == spec.formula);
  CHECK(back.home == spec.home);
  CHECK(back.bounds.lower() == spec.bounds.lower());
  CHECK(back.sample_rate == spec.sample_rate);

  const auto custom = task_from_json(nlohmann::json::parse(R"j({"sample_rate": 20, "home": [0.5, 0.5],
      "regions": [{"name": "Z", "box": [0.4, 0.6, 0.4, 0.6], "window": [1, 2]}]})j"));
  CHECK(custom.sample_rate == 20);
  CHECK(stl::horizon(custom.formula) == 2.0);
  const auto with_formula = task_from_json(nlohmann::json::parse(R"j({"formula": "G[0,5](x > 0.05)"})j"));
  CHECK(stl::horizon(with_formula.formula) == 5.0);

  const auto rejects = [](const char* text) {
    CHECK_THROWS_AS(task_from_json(nlohmann::json::parse(text)), Error);
  };
  rejects(R"j({"regions": [{"name": "Z", "box": [0.6, 0.4, 0.4, 0.6], "window": [1, 2]}]})j");
  rejects(R"j({"formula": "G[0,50](x > 0)"})j");
  rejects(R"j({"sample_rate": -1})j");
  rejects(R"j({"home": [0.5]})j");
  CHECK_THROWS_AS(resolve_task("/nonexistent/task.json"), Error);
  CHECK(resolve_task("eq2").formula == spec.formula);
}

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stlopt/optim/bounds.hpp"
#include "stlopt/optim/gaussian_process.hpp"
#include "stlopt/optim/rng.hpp"

namespace stlopt::optim {

struct BayesOptions {
  std::size_t initial_design = 10;
  std::size_t random_probes = 2048;
  std::size_t local_probes = 256;  // per radius
  // Half-widths of the boxes around the incumbent, as fractions of the box width.
  std::vector<double> local_radii{0.01, 0.03, 0.1, 0.3};
  // Values below this quantile of the history are raised to it before the
  // GP fit, so a few very bad points (e.g. penalties) do not flatten the
  // standardized surface near the top. Negative disables it.
  double floor_quantile = 0.5;
};

/// Values with everything below the q-quantile (linear interpolation) raised to it.
std::vector<double> floor_at_quantile(const std::vector<double>& values, double q);

/// GP / expected-improvement maximizer, one point per ask.
class BayesOpt {
 public:
  BayesOpt(Bounds bounds, std::uint64_t seed, BayesOptions options = {});

  /// The first `initial_design` calls walk a Latin-hypercube design; later
  /// calls maximize EI over random probes plus probes around the incumbent.
  std::vector<Point> ask();
  void tell(const std::vector<Point>& points, const std::vector<double>& values);

  const Bounds& bounds() const noexcept { return bounds_; }
  const std::vector<Point>& history_points() const noexcept { return points_; }
  const std::vector<double>& history_values() const noexcept { return values_; }
  const GpHyper& hyper() const noexcept { return hyper_; }
  /// Surrogate over unit-box inputs; empty until the first tell.
  const std::optional<GpModel>& model() const noexcept { return model_; }

 private:
  Point acquire();

  Bounds bounds_;
  BayesOptions options_;
  Rng rng_;
  std::vector<Point> design_;  // unit-box coordinates
  std::size_t asked_ = 0;
  std::vector<Point> points_;       // original coordinates
  std::vector<Point> unit_points_;  // unit-box coordinates
  std::vector<double> values_;
  GpHyper hyper_;
  std::optional<GpModel> model_;
};

/// Uniform sampling baseline.
class RandomSearch {
 public:
  RandomSearch(Bounds bounds, std::uint64_t seed) : bounds_(std::move(bounds)), rng_(seed) {}

  std::vector<Point> ask();
  void tell(const std::vector<Point>& points, const std::vector<double>& values);

  const Bounds& bounds() const noexcept { return bounds_; }
  std::size_t told() const noexcept { return told_; }

 private:
  Bounds bounds_;
  Rng rng_;
  std::size_t told_ = 0;
};

}  // namespace stlopt::optim

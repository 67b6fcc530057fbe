#include "stlopt/optim/bayes_opt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stlopt/error.hpp"

namespace stlopt::optim {
namespace {

void check_tell(const Bounds& bounds, const std::vector<Point>& points, const std::vector<double>& values) {
  if (points.size() != values.size()) {
    throw Error(ErrorCode::InvalidArgument, "tell: " + std::to_string(points.size()) + " points but " +
                                                std::to_string(values.size()) + " values");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(values[i])) throw Error(ErrorCode::NonFinite, "tell: non-finite objective value");
    if (!bounds.contains(points[i], 1e-12)) throw Error(ErrorCode::InvalidArgument, "tell: point outside bounds");
  }
}

}  // namespace

std::vector<double> floor_at_quantile(const std::vector<double>& values, double q) {
  if (values.empty()) return values;
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double floor = sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
  std::vector<double> out = values;
  for (double& v : out) v = std::max(v, floor);
  return out;
}

BayesOpt::BayesOpt(Bounds bounds, std::uint64_t seed, BayesOptions options)
    : bounds_(std::move(bounds)), options_(options), rng_(seed) {
  // Latin hypercube: one point per stratum in every coordinate.
  const std::size_t m = options_.initial_design;
  const std::size_t n = bounds_.dim();
  design_.assign(m, Point(n));
  std::vector<std::size_t> strata(m);
  for (std::size_t d = 0; d < n; ++d) {
    std::iota(strata.begin(), strata.end(), 0);
    for (std::size_t i = m; i > 1; --i) std::swap(strata[i - 1], strata[rng_.below(i)]);
    for (std::size_t i = 0; i < m; ++i) {
      design_[i][d] = (static_cast<double>(strata[i]) + rng_.uniform()) / static_cast<double>(m);
    }
  }
}

std::vector<Point> BayesOpt::ask() {
  Point unit;
  if (asked_ < design_.size()) {
    unit = design_[asked_];
  } else if (!model_) {
    unit.resize(bounds_.dim());
    for (double& u : unit) u = rng_.uniform();
  } else {
    unit = acquire();
  }
  ++asked_;
  return {bounds_.from_unit(unit)};
}

Point BayesOpt::acquire() {
  const GpModel& gp = *model_;
  const double best = gp.best_standardized();
  const std::size_t n = bounds_.dim();
  const auto incumbent_it = std::max_element(values_.begin(), values_.end());
  const Point& incumbent = unit_points_[static_cast<std::size_t>(incumbent_it - values_.begin())];

  Point best_probe;
  double best_ei = -1.0;
  Point probe(n);
  auto consider = [&] {
    const GpPrediction p = gp.predict_standardized(probe);
    const double ei = expected_improvement(p.mean, p.variance, best);
    if (ei > best_ei) {
      best_ei = ei;
      best_probe = probe;
    }
  };
  for (std::size_t i = 0; i < options_.random_probes; ++i) {
    for (double& u : probe) u = rng_.uniform();
    consider();
  }
  for (double radius : options_.local_radii) {
    for (std::size_t i = 0; i < options_.local_probes; ++i) {
      for (std::size_t d = 0; d < n; ++d) {
        probe[d] = std::clamp(incumbent[d] + radius * rng_.uniform(-1.0, 1.0), 0.0, 1.0);
      }
      consider();
    }
  }
  return best_probe;
}

void BayesOpt::tell(const std::vector<Point>& points, const std::vector<double>& values) {
  check_tell(bounds_, points, values);
  for (std::size_t i = 0; i < points.size(); ++i) {
    points_.push_back(points[i]);
    Point unit = bounds_.to_unit(points[i]);
    for (double& u : unit) u = std::clamp(u, 0.0, 1.0);
    unit_points_.push_back(std::move(unit));
    values_.push_back(values[i]);
  }
  if (values_.empty()) return;
  const std::vector<double> targets =
      options_.floor_quantile >= 0.0 ? floor_at_quantile(values_, options_.floor_quantile) : values_;
  hyper_ = fit_hyperparameters(unit_points_, targets);
  model_ = GpModel::fit(unit_points_, targets, hyper_);
  hyper_ = model_->hyper();
}

std::vector<Point> RandomSearch::ask() {
  Point u(bounds_.dim());
  for (double& v : u) v = rng_.uniform();
  return {bounds_.from_unit(u)};
}

void RandomSearch::tell(const std::vector<Point>& points, const std::vector<double>& values) {
  check_tell(bounds_, points, values);
  told_ += points.size();
}

}  // namespace stlopt::optim

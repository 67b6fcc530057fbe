#include "stlopt/metrics/aggregators.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "stlopt/error.hpp"

namespace stlopt::metrics {
namespace {

void require_non_empty(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "aggregation over an empty list");
}

std::vector<double> negated(std::span<const double> values) {
  std::vector<double> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(), [](double v) { return -v; });
  return out;
}

// sum_i v_i w_i / sum_i w_i with w_i = exp(e_i), shifted by max(e).
double exp_weighted_mean(std::span<const double> values, std::span<const double> exponents) {
  const double top = *std::max_element(exponents.begin(), exponents.end());
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double w = std::exp(exponents[i] - top);
    num += values[i] * w;
    den += w;
  }
  return num / den;
}

}  // namespace

double softmax_lse(std::span<const double> values, double k) {
  require_non_empty(values);
  const double top = *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += std::exp(k * (v - top));
  return top + std::log(sum) / k;
}

double softmin_lse(std::span<const double> values, double k) {
  require_non_empty(values);
  const double bottom = *std::min_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += std::exp(-k * (v - bottom));
  return bottom - std::log(sum) / k;
}

double smooth_min(std::span<const double> values, double k) { return softmin_lse(values, k); }

double smooth_max(std::span<const double> values, double k) {
  require_non_empty(values);
  std::vector<double> exponents(values.size());
  std::transform(values.begin(), values.end(), exponents.begin(), [k](double v) { return k * v; });
  const double mean = exp_weighted_mean(values, exponents);
  // The weighted mean cannot exceed max(v); clamp the last-ulp rounding excess.
  return std::min(mean, *std::max_element(values.begin(), values.end()));
}

MinMaxPair smooth_aggregators(std::span<const double> values, double k) {
  return {smooth_min(values, k), smooth_max(values, k)};
}

double agm_and(std::span<const double> values) {
  require_non_empty(values);
  bool all_positive = true;
  for (double v : values) {
    if (!(std::abs(v) <= 1.0 + 1e-9)) {
      throw Error(ErrorCode::AgmDomain, "agm input out of [-1,1]");
    }
    all_positive = all_positive && v > 0.0;
  }
  const auto m = static_cast<double>(values.size());
  if (all_positive) {
    double log_sum = 0.0;
    for (double v : values) log_sum += std::log1p(std::min(v, 1.0));
    return std::expm1(log_sum / m);
  }
  double sum = 0.0;
  for (double v : values) sum += std::min(0.0, std::max(v, -1.0));
  return sum / m;
}

double agm_or(std::span<const double> values) {
  const auto flipped = negated(values);
  return -agm_and(flipped);
}

AndOrPair agm_aggregators(std::span<const double> values) { return {agm_and(values), agm_or(values)}; }

double new_and(std::span<const double> values, double nu) {
  require_non_empty(values);
  const double r_min = *std::min_element(values.begin(), values.end());
  if (r_min == 0.0) return 0.0;
  const double gain = r_min < 0.0 ? 1.0 + nu : -nu;
  std::vector<double> exponents(values.size());
  std::transform(values.begin(), values.end(), exponents.begin(),
                 [&](double v) { return gain * (v / r_min); });
  return exp_weighted_mean(values, exponents);
}

double new_or(std::span<const double> values, double nu) {
  const auto flipped = negated(values);
  return -new_and(flipped, nu);
}

AndOrPair new_aggregators(std::span<const double> values, double nu) {
  return {new_and(values, nu), new_or(values, nu)};
}

double avg_eventually(std::span<const double> values) {
  require_non_empty(values);
  double sum = 0.0;
  std::size_t count = 0;
  for (double v : values) {
    if (v > 0.0) {
      sum += v;
      ++count;
    }
  }
  if (count == 0) return *std::max_element(values.begin(), values.end());
  return sum / static_cast<double>(count);
}

double avg_globally(std::span<const double> values) {
  require_non_empty(values);
  double sum = 0.0;
  std::size_t count = 0;
  for (double v : values) {
    if (v <= 0.0) {
      sum += v;
      ++count;
    }
  }
  if (count == 0) return *std::min_element(values.begin(), values.end());
  return sum / static_cast<double>(count);
}

}  // namespace stlopt::metrics

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "stlopt/stl/formula.hpp"
#include "stlopt/stl/trace.hpp"

namespace stlopt::metrics {

enum class MetricKind { Space, Time, Lse, Smooth, Agm, Avg, New };

const char* to_string(MetricKind kind);
/// Accepts the lower-case names used on the command line; throws InvalidArgument.
MetricKind parse_metric_kind(std::string_view name);

struct MetricConfig {
  MetricKind kind = MetricKind::Space;
  double k = 10.0;   // lse / smooth sharpness
  double nu = 2.0;   // NEW sharpness
  std::map<std::string, double> agm_scales;  // channel -> half-range

  /// Throws InvalidArgument unless k > 0, nu > 0 and every scale > 0.
  void validate() const;
};

struct RobustnessValue {
  double value = 0.0;
  std::optional<bool> satisfied_hint;
};

struct TimeRobustness {
  double value = 0.0;   // sign * largest persistent shift, seconds
  int sign = 1;         // +1 satisfied at t, -1 violated
  bool truncated = false;  // the verdict held up to the last evaluable shift
};

/// Dispatches to the semantics selected by cfg.kind.
RobustnessValue evaluate(const MetricConfig& cfg, const stl::Formula& f, const stl::Trace& x, double t);
RobustnessValue evaluate_at(const MetricConfig& cfg, const stl::Formula& f, const stl::Trace& x,
                            std::size_t k);

double space_robustness(const stl::Formula& f, const stl::Trace& x, double t);
double lse_robustness(const stl::Formula& f, const stl::Trace& x, double t, double k);
double smooth_robustness(const stl::Formula& f, const stl::Trace& x, double t, double k);
double agm_robustness(const stl::Formula& f, const stl::Trace& x, double t,
                      const std::map<std::string, double>& scales);
double avg_robustness(const stl::Formula& f, const stl::Trace& x, double t);
double new_robustness(const stl::Formula& f, const stl::Trace& x, double t, double nu);
TimeRobustness time_robustness_plus(const stl::Formula& f, const stl::Trace& x, double t);

}  // namespace stlopt::metrics

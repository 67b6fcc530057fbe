#include "stlopt/metrics/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "stlopt/error.hpp"
#include "stlopt/metrics/aggregators.hpp"
#include "stlopt/stl/semantics.hpp"

namespace stlopt::metrics {

using stl::Formula;
using stl::FormulaNode;
using stl::Trace;

const char* to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::Space: return "space";
    case MetricKind::Time: return "time";
    case MetricKind::Lse: return "lse";
    case MetricKind::Smooth: return "smooth";
    case MetricKind::Agm: return "agm";
    case MetricKind::Avg: return "avg";
    case MetricKind::New: return "new";
  }
  return "?";
}

MetricKind parse_metric_kind(std::string_view name) {
  for (auto kind : {MetricKind::Space, MetricKind::Time, MetricKind::Lse, MetricKind::Smooth,
                    MetricKind::Agm, MetricKind::Avg, MetricKind::New}) {
    if (name == to_string(kind)) return kind;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown metric '" + std::string(name) + "'");
}

void MetricConfig::validate() const {
  if (!(k > 0.0) || !std::isfinite(k)) throw Error(ErrorCode::InvalidArgument, "metric k must be > 0");
  if (!(nu > 0.0) || !std::isfinite(nu)) throw Error(ErrorCode::InvalidArgument, "metric nu must be > 0");
  for (const auto& [channel, scale] : agm_scales) {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
      throw Error(ErrorCode::InvalidArgument, "agm scale for channel '" + channel + "' must be > 0");
    }
  }
}

namespace {

using Aggregate = std::function<double(std::span<const double>)>;
using Leaf = std::function<double(const stl::Predicate&, double)>;

// Recursive evaluator shared by every min/max-shaped semantics. Negation is
// pushed towards the predicates (polarity flag) so a semantics whose
// disjunction is not the exact dual of its conjunction still gets the
// De Morgan reading; for dual pairs this equals plain sign flipping.
class Evaluator {
 public:
  Evaluator(const Trace& x, Leaf leaf, Aggregate conj, Aggregate disj)
      : x_(x), leaf_(std::move(leaf)), conj_(std::move(conj)), disj_(std::move(disj)) {}

  double eval(const Formula& f, std::size_t k, bool negated) const {
    return std::visit(
        [&](const auto& n) -> double {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, stl::Predicate>) {
            const double v = leaf_(n, x_.at(k, x_.channel_index(n.channel)));
            return negated ? -v : v;
          } else if constexpr (std::is_same_v<T, stl::Negation>) {
            return eval(n.arg, k, !negated);
          } else if constexpr (std::is_same_v<T, stl::Conjunction> || std::is_same_v<T, stl::Disjunction>) {
            std::vector<double> vals;
            vals.reserve(n.args.size());
            for (const auto& g : n.args) vals.push_back(eval(g, k, negated));
            const bool is_and = std::is_same_v<T, stl::Conjunction> != negated;
            return is_and ? conj_(vals) : disj_(vals);
          } else if constexpr (std::is_same_v<T, stl::Until>) {
            return until(n, k, negated);
          } else {
            const stl::IndexRange w = stl::window_indices_at(x_, k, n.interval);
            std::vector<double> vals;
            vals.reserve(w.size());
            for (std::size_t j = w.first; j <= w.last; ++j) vals.push_back(eval(n.arg, j, negated));
            const bool is_and = std::is_same_v<T, stl::Globally> != negated;
            return is_and ? conj_(vals) : disj_(vals);
          }
        },
        static_cast<const FormulaNode::variant&>(f.node()));
  }

 private:
  // max over j of min(rhs(j), min over [k, j] of lhs); negated form is the dual.
  double until(const stl::Until& n, std::size_t k, bool negated) const {
    const stl::IndexRange w = stl::window_indices_at(x_, k, n.interval);
    std::vector<double> lhs;
    lhs.reserve(w.last - k + 1);
    for (std::size_t j = k; j <= w.last; ++j) lhs.push_back(eval(n.lhs, j, negated));
    const Aggregate& inner = negated ? disj_ : conj_;
    const Aggregate& outer = negated ? conj_ : disj_;
    std::vector<double> candidates;
    candidates.reserve(w.size());
    for (std::size_t j = w.first; j <= w.last; ++j) {
      const double prefix = inner(std::span<const double>(lhs.data(), j - k + 1));
      const double pair[2] = {eval(n.rhs, j, negated), prefix};
      candidates.push_back(inner(pair));
    }
    return outer(candidates);
  }

  const Trace& x_;
  Leaf leaf_;
  Aggregate conj_;
  Aggregate disj_;
};

double plain_margin(const stl::Predicate& p, double v) { return p.margin(v); }

double min_of(std::span<const double> v) { return *std::min_element(v.begin(), v.end()); }
double max_of(std::span<const double> v) { return *std::max_element(v.begin(), v.end()); }

double checked(double value) {
  if (!std::isfinite(value)) throw Error(ErrorCode::NonFinite, "robustness evaluated to a non-finite value");
  return value;
}

double run(const Evaluator& ev, const Formula& f, const Trace& x, std::size_t k) {
  stl::require_horizon(f, x, k);
  return checked(ev.eval(f, k, false));
}

double space_at(const Formula& f, const Trace& x, std::size_t k) {
  return run(Evaluator(x, plain_margin, min_of, max_of), f, x, k);
}

double lse_at(const Formula& f, const Trace& x, std::size_t k, double sharpness) {
  Evaluator ev(
      x, plain_margin, [sharpness](std::span<const double> v) { return softmin_lse(v, sharpness); },
      [sharpness](std::span<const double> v) { return softmax_lse(v, sharpness); });
  return run(ev, f, x, k);
}

double smooth_at(const Formula& f, const Trace& x, std::size_t k, double sharpness) {
  Evaluator ev(
      x, plain_margin, [sharpness](std::span<const double> v) { return smooth_min(v, sharpness); },
      [sharpness](std::span<const double> v) { return smooth_max(v, sharpness); });
  return run(ev, f, x, k);
}

double agm_at(const Formula& f, const Trace& x, std::size_t k, const std::map<std::string, double>& scales) {
  for (const auto& channel : stl::channels(f)) {
    if (!scales.count(channel)) {
      throw Error(ErrorCode::MissingAgmScale, "missing agm scale for channel '" + channel + "'");
    }
  }
  auto leaf = [&scales](const stl::Predicate& p, double v) {
    return std::clamp(p.margin(v) / scales.at(p.channel), -1.0, 1.0);
  };
  Evaluator ev(
      x, leaf, [](std::span<const double> v) { return agm_and(v); },
      [](std::span<const double> v) { return agm_or(v); });
  return run(ev, f, x, k);
}

double new_at(const Formula& f, const Trace& x, std::size_t k, double nu) {
  Evaluator ev(
      x, plain_margin, [nu](std::span<const double> v) { return new_and(v, nu); },
      [nu](std::span<const double> v) { return new_or(v, nu); });
  return run(ev, f, x, k);
}

bool contains_until(const Formula& f) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, stl::Predicate>) {
          return false;
        } else if constexpr (std::is_same_v<T, stl::Until>) {
          return true;
        } else if constexpr (std::is_same_v<T, stl::Conjunction> || std::is_same_v<T, stl::Disjunction>) {
          return std::any_of(n.args.begin(), n.args.end(), contains_until);
        } else {
          return contains_until(n.arg);
        }
      },
      static_cast<const FormulaNode::variant&>(f.node()));
}

// Boolean skeleton evaluated with space semantics; temporal operators (which
// only wrap Boolean combinations here) average over their window.
double avg_eval(const Formula& f, const Trace& x, std::size_t k, bool negated) {
  return std::visit(
      [&](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, stl::Predicate>) {
          const double v = n.margin(x.at(k, x.channel_index(n.channel)));
          return negated ? -v : v;
        } else if constexpr (std::is_same_v<T, stl::Negation>) {
          return avg_eval(n.arg, x, k, !negated);
        } else if constexpr (std::is_same_v<T, stl::Conjunction> || std::is_same_v<T, stl::Disjunction>) {
          std::vector<double> vals;
          for (const auto& g : n.args) vals.push_back(avg_eval(g, x, k, negated));
          const bool is_and = std::is_same_v<T, stl::Conjunction> != negated;
          return is_and ? min_of(vals) : max_of(vals);
        } else if constexpr (std::is_same_v<T, stl::Until>) {
          throw Error(ErrorCode::UntilAvg, "until unsupported by avg semantics");
        } else {
          const stl::IndexRange w = stl::window_indices_at(x, k, n.interval);
          std::vector<double> vals;
          for (std::size_t j = w.first; j <= w.last; ++j) vals.push_back(avg_eval(n.arg, x, j, negated));
          const bool is_globally = std::is_same_v<T, stl::Globally> != negated;
          return is_globally ? avg_globally(vals) : avg_eventually(vals);
        }
      },
      static_cast<const FormulaNode::variant&>(f.node()));
}

double avg_at(const Formula& f, const Trace& x, std::size_t k) {
  if (stl::has_nested_temporal(f)) {
    throw Error(ErrorCode::NestedTemporalAvg, "nested temporal unsupported by avg semantics");
  }
  if (contains_until(f)) throw Error(ErrorCode::UntilAvg, "until unsupported by avg semantics");
  stl::require_horizon(f, x, k);
  return checked(avg_eval(f, x, k, false));
}

TimeRobustness time_at(const Formula& f, const Trace& x, std::size_t k) {
  const bool verdict = stl::satisfies_at(f, x, k);
  const double h = stl::horizon(f);
  std::size_t shift = 0;
  bool truncated = true;
  for (std::size_t j = k + 1; j < x.size() && x.time(j) + h <= x.last_time() + stl::kTimeTolerance; ++j) {
    if (stl::satisfies_at(f, x, j) != verdict) {
      truncated = false;
      break;
    }
    shift = j - k;
  }
  TimeRobustness out;
  out.sign = verdict ? 1 : -1;
  out.value = shift == 0 ? 0.0 : out.sign * static_cast<double>(shift) * x.dt();
  out.truncated = truncated;
  return out;
}

}  // namespace

RobustnessValue evaluate_at(const MetricConfig& cfg, const Formula& f, const Trace& x, std::size_t k) {
  cfg.validate();
  switch (cfg.kind) {
    case MetricKind::Space: return {space_at(f, x, k), std::nullopt};
    case MetricKind::Time: return {time_at(f, x, k).value, std::nullopt};
    case MetricKind::Lse: return {lse_at(f, x, k, cfg.k), std::nullopt};
    case MetricKind::Smooth: return {smooth_at(f, x, k, cfg.k), std::nullopt};
    case MetricKind::Agm: return {agm_at(f, x, k, cfg.agm_scales), std::nullopt};
    case MetricKind::Avg: return {avg_at(f, x, k), std::nullopt};
    case MetricKind::New: return {new_at(f, x, k, cfg.nu), std::nullopt};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown metric kind");
}

RobustnessValue evaluate(const MetricConfig& cfg, const Formula& f, const Trace& x, double t) {
  return evaluate_at(cfg, f, x, x.index_of(t));
}

double space_robustness(const Formula& f, const Trace& x, double t) { return space_at(f, x, x.index_of(t)); }

double lse_robustness(const Formula& f, const Trace& x, double t, double k) {
  return lse_at(f, x, x.index_of(t), k);
}

double smooth_robustness(const Formula& f, const Trace& x, double t, double k) {
  return smooth_at(f, x, x.index_of(t), k);
}

double agm_robustness(const Formula& f, const Trace& x, double t, const std::map<std::string, double>& scales) {
  return agm_at(f, x, x.index_of(t), scales);
}

double avg_robustness(const Formula& f, const Trace& x, double t) { return avg_at(f, x, x.index_of(t)); }

double new_robustness(const Formula& f, const Trace& x, double t, double nu) {
  return new_at(f, x, x.index_of(t), nu);
}

TimeRobustness time_robustness_plus(const Formula& f, const Trace& x, double t) {
  return time_at(f, x, x.index_of(t));
}

}  // namespace stlopt::metrics

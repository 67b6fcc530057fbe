#include "stlopt/harness/generators.hpp"

#include <cmath>

#include "stlopt/stl/semantics.hpp"

namespace stlopt::harness {

using stl::Formula;

namespace {

stl::Interval random_interval(optim::Rng& rng, const FormulaShape& shape) {
  const auto offset = static_cast<double>(rng.below(static_cast<std::uint64_t>(shape.max_offset) + 1));
  const auto width = 1.0 + static_cast<double>(rng.below(static_cast<std::uint64_t>(shape.max_width)));
  return stl::Interval(offset * shape.dt, (offset + width) * shape.dt);
}

Formula random_predicate(optim::Rng& rng, const FormulaShape& shape) {
  const auto& channel = shape.channels[rng.below(shape.channels.size())];
  const auto cmp = static_cast<stl::Comparison>(rng.below(4));
  double threshold = rng.uniform(-0.6, 0.6);
  if (shape.grid_thresholds) threshold = std::round(threshold * 8.0) / 8.0;
  return Formula::predicate(channel, cmp, threshold);
}

Formula build(optim::Rng& rng, const FormulaShape& shape, int depth, bool under_temporal) {
  if (depth <= 1 || rng.below(4) == 0) return random_predicate(rng, shape);
  const bool temporal_ok = shape.nested_temporal || !under_temporal;
  for (;;) {
    switch (rng.below(7)) {
      case 0: return Formula::negation(build(rng, shape, depth - 1, under_temporal));
      case 1:
      case 2: {
        std::vector<Formula> args;
        const std::size_t count = 2 + rng.below(shape.max_args - 1);
        for (std::size_t i = 0; i < count; ++i) args.push_back(build(rng, shape, depth - 1, under_temporal));
        return rng.below(2) == 0 ? Formula::conjunction(std::move(args)) : Formula::disjunction(std::move(args));
      }
      case 3:
      case 4: {
        if (!temporal_ok) continue;
        // Draw in a fixed order; argument evaluation order is unspecified.
        const bool always = rng.below(2) == 0;
        stl::Interval interval = random_interval(rng, shape);
        Formula arg = build(rng, shape, depth - 1, true);
        return always ? Formula::globally(interval, std::move(arg)) : Formula::eventually(interval, std::move(arg));
      }
      case 5:
        if (!temporal_ok || !shape.until) continue;
        {
          stl::Interval interval = random_interval(rng, shape);
          Formula lhs = build(rng, shape, depth - 1, true);
          Formula rhs = build(rng, shape, depth - 1, true);
          return Formula::until(interval, std::move(lhs), std::move(rhs));
        }
      default: return random_predicate(rng, shape);
    }
  }
}

}  // namespace

Formula random_formula(optim::Rng& rng, const FormulaShape& shape) {
  return build(rng, shape, shape.max_depth, false);
}

stl::Trace random_trace(optim::Rng& rng, const std::vector<std::string>& channels, double dt, std::size_t samples) {
  std::vector<double> values(samples * channels.size());
  for (double& v : values) v = rng.uniform(-1.0, 1.0);
  return stl::Trace(channels, 0.0, dt, std::move(values));
}

Instance random_instance(optim::Rng& rng, const FormulaShape& shape) {
  Formula f = random_formula(rng, shape);
  const auto steps = static_cast<std::size_t>(std::llround(stl::horizon(f) / shape.dt));
  const std::size_t samples = steps + 1 + rng.below(4);
  return {f, random_trace(rng, shape.channels, shape.dt, samples)};
}

}  // namespace stlopt::harness

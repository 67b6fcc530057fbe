#pragma once

#include <string>
#include <vector>

#include "stlopt/optim/rng.hpp"
#include "stlopt/stl/formula.hpp"
#include "stlopt/stl/trace.hpp"

namespace stlopt::harness {

struct FormulaShape {
  int max_depth = 3;
  bool nested_temporal = true;  // temporal operators may appear under temporal operators
  bool until = true;
  std::size_t max_args = 3;     // for & and |
  std::vector<std::string> channels{"x", "y"};
  double dt = 1.0;              // interval endpoints are multiples of dt
  int max_offset = 2;           // interval lower bound <= max_offset * dt
  int max_width = 3;            // interval width <= max_width * dt
  bool grid_thresholds = false; // round thresholds to 1/8 (for printable round trips)
};

stl::Formula random_formula(optim::Rng& rng, const FormulaShape& shape);

/// Values uniform in [-1, 1].
stl::Trace random_trace(optim::Rng& rng, const std::vector<std::string>& channels, double dt, std::size_t samples);

struct Instance {
  stl::Formula formula;
  stl::Trace trace;
};

/// A formula with a trace long enough to evaluate it at t = 0 (plus up to
/// three spare samples).
Instance random_instance(optim::Rng& rng, const FormulaShape& shape);

}  // namespace stlopt::harness

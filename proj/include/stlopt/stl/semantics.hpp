#pragma once

#include <cstddef>

#include "stlopt/stl/formula.hpp"
#include "stlopt/stl/trace.hpp"

namespace stlopt::stl {

/// Inclusive sample index range [first, last].
struct IndexRange {
  std::size_t first;
  std::size_t last;

  std::size_t size() const noexcept { return last - first + 1; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Look-ahead in seconds needed to evaluate `f` at any time t.
double horizon(const Formula& f);

/// Samples whose time lies in [t + a, t + b] (with kTimeTolerance slack).
/// Throws EmptyWindow when no grid point falls inside, InsufficientHorizon
/// when the window runs past the end of the trace.
IndexRange window_indices(const Trace& x, double t, const Interval& interval);
IndexRange window_indices_at(const Trace& x, std::size_t k, const Interval& interval);

/// Throws InsufficientHorizon if f cannot be evaluated at sample k.
void require_horizon(const Formula& f, const Trace& x, std::size_t k);

/// Classical Boolean satisfaction on the discrete time grid.
bool satisfies(const Formula& f, const Trace& x, double t);
bool satisfies_at(const Formula& f, const Trace& x, std::size_t k);

}  // namespace stlopt::stl

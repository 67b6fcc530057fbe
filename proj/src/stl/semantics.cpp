#include "stlopt/stl/semantics.hpp"

#include <algorithm>
#include <cmath>

#include "stlopt/error.hpp"
#include "stlopt/stl/parser.hpp"

namespace stlopt::stl {

double horizon(const Formula& f) {
  return std::visit(
      [](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Predicate>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, Negation>) {
          return horizon(n.arg);
        } else if constexpr (std::is_same_v<T, Conjunction> || std::is_same_v<T, Disjunction>) {
          double h = 0.0;
          for (const auto& g : n.args) h = std::max(h, horizon(g));
          return h;
        } else if constexpr (std::is_same_v<T, Until>) {
          return n.interval.upper() + std::max(horizon(n.lhs), horizon(n.rhs));
        } else {
          return n.interval.upper() + horizon(n.arg);
        }
      },
      static_cast<const FormulaNode::variant&>(f.node()));
}

IndexRange window_indices_at(const Trace& x, std::size_t k, const Interval& interval) {
  const double t = x.time(k);
  const double lo = t + interval.lower() - kTimeTolerance;
  const double hi = t + interval.upper() + kTimeTolerance;
  const double dt = x.dt();

  // Start from the rounded estimate and step to the exact boundary.
  auto first = static_cast<long long>(std::ceil((lo - x.t0()) / dt));
  while (first > 0 && x.t0() + static_cast<double>(first - 1) * dt >= lo) --first;
  while (x.t0() + static_cast<double>(first) * dt < lo) ++first;
  auto last = static_cast<long long>(std::floor((hi - x.t0()) / dt));
  while (x.t0() + static_cast<double>(last + 1) * dt <= hi) ++last;
  while (last >= first && x.t0() + static_cast<double>(last) * dt > hi) --last;

  if (last < first) {
    throw Error(ErrorCode::EmptyWindow,
                "empty window: no sample in [" + format_number(t + interval.lower()) + ", " +
                    format_number(t + interval.upper()) + "] at sample period " + format_number(dt));
  }
  if (last >= static_cast<long long>(x.size())) {
    throw Error(ErrorCode::InsufficientHorizon,
                "insufficient horizon: window ends at " + format_number(t + interval.upper()) +
                    " but the trace ends at " + format_number(x.last_time()));
  }
  return {static_cast<std::size_t>(first), static_cast<std::size_t>(last)};
}

IndexRange window_indices(const Trace& x, double t, const Interval& interval) {
  return window_indices_at(x, x.index_of(t), interval);
}

void require_horizon(const Formula& f, const Trace& x, std::size_t k) {
  const double needed = x.time(k) + horizon(f);
  if (needed > x.last_time() + kTimeTolerance) {
    throw Error(ErrorCode::InsufficientHorizon,
                "insufficient horizon: formula needs samples up to " + format_number(needed) +
                    " but the trace ends at " + format_number(x.last_time()));
  }
}

namespace {

bool sat(const Formula& f, const Trace& x, std::size_t k) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Predicate>) {
          return n.holds(x.at(k, x.channel_index(n.channel)));
        } else if constexpr (std::is_same_v<T, Negation>) {
          return !sat(n.arg, x, k);
        } else if constexpr (std::is_same_v<T, Conjunction>) {
          return std::all_of(n.args.begin(), n.args.end(), [&](const Formula& g) { return sat(g, x, k); });
        } else if constexpr (std::is_same_v<T, Disjunction>) {
          return std::any_of(n.args.begin(), n.args.end(), [&](const Formula& g) { return sat(g, x, k); });
        } else if constexpr (std::is_same_v<T, Globally>) {
          const IndexRange w = window_indices_at(x, k, n.interval);
          for (std::size_t j = w.first; j <= w.last; ++j) {
            if (!sat(n.arg, x, j)) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, Eventually>) {
          const IndexRange w = window_indices_at(x, k, n.interval);
          for (std::size_t j = w.first; j <= w.last; ++j) {
            if (sat(n.arg, x, j)) return true;
          }
          return false;
        } else {
          const IndexRange w = window_indices_at(x, k, n.interval);
          // lhs must hold on [k, j] for a witness j; scan prefixes incrementally.
          std::size_t j = k;
          for (; j < w.first; ++j) {
            if (!sat(n.lhs, x, j)) return false;
          }
          for (; j <= w.last; ++j) {
            if (!sat(n.lhs, x, j)) return false;
            if (sat(n.rhs, x, j)) return true;
          }
          return false;
        }
      },
      static_cast<const FormulaNode::variant&>(f.node()));
}

}  // namespace

bool satisfies_at(const Formula& f, const Trace& x, std::size_t k) {
  require_horizon(f, x, k);
  return sat(f, x, k);
}

bool satisfies(const Formula& f, const Trace& x, double t) { return satisfies_at(f, x, x.index_of(t)); }

}  // namespace stlopt::stl

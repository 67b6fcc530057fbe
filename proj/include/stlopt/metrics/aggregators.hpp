#pragma once

#include <span>

// Min/max replacements used by the quantitative semantics. Every function
// takes a non-empty list; the exponential ones shift exponents by their
// maximum so |v| up to 1e6 with scales up to 1e3 stays finite.

namespace stlopt::metrics {

/// (1/k) ln sum exp(k v_i). Over-approximates max by at most ln(m)/k.
double softmax_lse(std::span<const double> values, double k);
/// -softmax_lse(-v, k).
double softmin_lse(std::span<const double> values, double k);

struct MinMaxPair {
  double min;
  double max;
};

/// min: softmin_lse. max: Boltzmann-weighted mean sum v e^{kv} / sum e^{kv}.
/// Both under-approximate their exact counterparts.
MinMaxPair smooth_aggregators(std::span<const double> values, double k);
double smooth_min(std::span<const double> values, double k);
double smooth_max(std::span<const double> values, double k);

struct AndOrPair {
  double conj;
  double disj;
};

/// Arithmetic/geometric-mean conjunction over inputs in [-1, 1]:
/// prod(1+v)^(1/m) - 1 when every v > 0, else mean of min(0, v).
/// Disjunction is the dual -agm_and(-v). Throws AgmDomain outside [-1, 1].
AndOrPair agm_aggregators(std::span<const double> values);
double agm_and(std::span<const double> values);
double agm_or(std::span<const double> values);

/// Scale-invariant weighted mean. With r = min(v) and q_i = v_i / r the
/// weights are exp((1+nu) q_i) when r < 0 and exp(-nu q_i) when r > 0;
/// r == 0 gives 0. Tends to min(v) as nu grows.
AndOrPair new_aggregators(std::span<const double> values, double nu);
double new_and(std::span<const double> values, double nu);
double new_or(std::span<const double> values, double nu);

/// Averaged eventually: mean of the strictly positive entries, or max if none.
double avg_eventually(std::span<const double> values);
/// Averaged globally: mean of the non-positive entries, or min if none.
double avg_globally(std::span<const double> values);

}  // namespace stlopt::metrics

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stlopt::harness {

enum class PropertyStatus {
  Pass,
  Fail,
  ExpectedFail,  // negative control: a counterexample was found, as it should be
};

const char* to_string(PropertyStatus status);

struct PropertyRow {
  std::string property;
  std::string subject;
  PropertyStatus status = PropertyStatus::Pass;
  std::size_t cases = 0;
  std::string witness;  // counterexample for Fail and ExpectedFail rows
};

struct PropertyReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::vector<PropertyRow> rows;

  bool ok() const;
  /// One line per row; byte-identical for identical (samples, seed).
  std::string to_text() const;
};

/// Checks the quantitative-semantics invariants on `samples` random
/// (formula, trace) instances and on random aggregator inputs.
PropertyReport run_property_suite(std::size_t samples, std::uint64_t seed);

}  // namespace stlopt::harness

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stlopt::optim {

using Point = std::vector<double>;

/// Axis-aligned box; every dimension has upper > lower.
class Bounds {
 public:
  Bounds(std::vector<double> lower, std::vector<double> upper);

  std::size_t dim() const noexcept { return lower_.size(); }
  const std::vector<double>& lower() const noexcept { return lower_; }
  const std::vector<double>& upper() const noexcept { return upper_; }
  double width(std::size_t i) const noexcept { return upper_[i] - lower_[i]; }

  bool contains(std::span<const double> x, double tolerance = 0.0) const;
  Point clamp(std::span<const double> x) const;

  /// Affine maps between the box and the unit cube [0, 1]^n.
  Point to_unit(std::span<const double> x) const;
  Point from_unit(std::span<const double> u) const;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

}  // namespace stlopt::optim

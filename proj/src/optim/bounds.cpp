#include "stlopt/optim/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "stlopt/error.hpp"

namespace stlopt::optim {

Bounds::Bounds(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty() || lower_.size() != upper_.size()) {
    throw Error(ErrorCode::InvalidArgument, "bounds need matching non-empty lower/upper vectors");
  }
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]) || !(upper_[i] > lower_[i])) {
      throw Error(ErrorCode::InvalidArgument,
                  "bounds dimension " + std::to_string(i) + ": upper must exceed lower");
    }
  }
}

bool Bounds::contains(std::span<const double> x, double tolerance) const {
  if (x.size() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!(x[i] >= lower_[i] - tolerance && x[i] <= upper_[i] + tolerance)) return false;
  }
  return true;
}

Point Bounds::clamp(std::span<const double> x) const {
  Point out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = std::clamp(x[i], lower_[i], upper_[i]);
  return out;
}

Point Bounds::to_unit(std::span<const double> x) const {
  Point out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = (x[i] - lower_[i]) / width(i);
  return out;
}

Point Bounds::from_unit(std::span<const double> u) const {
  Point out(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    out[i] = std::clamp(lower_[i] + u[i] * width(i), lower_[i], upper_[i]);
  }
  return out;
}

}  // namespace stlopt::optim

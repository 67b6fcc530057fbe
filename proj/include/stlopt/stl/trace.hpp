#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace stlopt::stl {

/// Absolute tolerance used to match times to the sample grid.
inline constexpr double kTimeTolerance = 1e-9;

/// Uniformly sampled multi-channel signal. Sample k sits at t0 + k*dt.
class Trace {
 public:
  /// `samples` is row-major: one row per time step, one column per channel.
  Trace(std::vector<std::string> channels, double t0, double dt, std::vector<double> samples);

  std::size_t size() const noexcept { return samples_.size() / channels_.size(); }
  std::size_t width() const noexcept { return channels_.size(); }
  double t0() const noexcept { return t0_; }
  double dt() const noexcept { return dt_; }
  double time(std::size_t k) const noexcept { return t0_ + static_cast<double>(k) * dt_; }
  double last_time() const noexcept { return time(size() - 1); }

  const std::vector<std::string>& channels() const noexcept { return channels_; }

  /// Column index of `name`; throws ErrorCode::UnknownChannel.
  std::size_t channel_index(const std::string& name) const;

  double at(std::size_t k, std::size_t channel) const noexcept {
    return samples_[k * channels_.size() + channel];
  }
  std::span<const double> row(std::size_t k) const noexcept {
    return {samples_.data() + k * channels_.size(), channels_.size()};
  }

  /// Sample index at time t; throws UnalignedTime off-grid and
  /// InsufficientHorizon past either end.
  std::size_t index_of(double t) const;

 private:
  std::vector<std::string> channels_;
  double t0_;
  double dt_;
  std::vector<double> samples_;
};

/// Reads "time,<ch1>,<ch2>,..." CSV. Rejects non-uniform time columns
/// (relative tolerance 1e-6 on the sample period).
Trace read_trace_csv(std::istream& in);
Trace read_trace_csv_file(const std::string& path);

/// Writes the same format `read_trace_csv` accepts.
void write_trace_csv(std::ostream& out, const Trace& trace);

}  // namespace stlopt::stl

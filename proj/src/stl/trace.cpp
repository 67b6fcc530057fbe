#include "stlopt/stl/trace.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "stlopt/error.hpp"
#include "stlopt/stl/parser.hpp"

namespace stlopt::stl {

Trace::Trace(std::vector<std::string> channels, double t0, double dt, std::vector<double> samples)
    : channels_(std::move(channels)), t0_(t0), dt_(dt), samples_(std::move(samples)) {
  if (channels_.empty()) throw Error(ErrorCode::InvalidArgument, "trace needs at least one channel");
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) throw Error(ErrorCode::InvalidArgument, "trace sample period must be > 0");
  if (!std::isfinite(t0_)) throw Error(ErrorCode::NonFinite, "trace start time is not finite");
  if (samples_.empty() || samples_.size() % channels_.size() != 0) {
    throw Error(ErrorCode::InvalidArgument, "trace needs at least one sample and rows of equal width");
  }
  for (double v : samples_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "trace contains a non-finite sample");
  }
}

std::size_t Trace::channel_index(const std::string& name) const {
  for (std::size_t i = 0; i < channels_.size(); ++i) {
    if (channels_[i] == name) return i;
  }
  throw Error(ErrorCode::UnknownChannel, "unknown channel '" + name + "'");
}

std::size_t Trace::index_of(double t) const {
  const double pos = std::round((t - t0_) / dt_);
  if (std::abs(t0_ + pos * dt_ - t) > kTimeTolerance) {
    throw Error(ErrorCode::UnalignedTime, "time " + format_number(t) + " is not on the sample grid");
  }
  if (pos < 0.0 || pos >= static_cast<double>(size())) {
    throw Error(ErrorCode::InsufficientHorizon, "time " + format_number(t) + " lies outside the trace");
  }
  return static_cast<std::size_t>(pos);
}

namespace {

std::vector<std::string_view> split_row(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    std::string_view cell = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
    while (!cell.empty() && std::isspace(static_cast<unsigned char>(cell.front()))) cell.remove_prefix(1);
    while (!cell.empty() && std::isspace(static_cast<unsigned char>(cell.back()))) cell.remove_suffix(1);
    cells.push_back(cell);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

double parse_cell(std::string_view cell, std::size_t line_no) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidArgument,
                "trace line " + std::to_string(line_no) + ": bad number '" + std::string(cell) + "'");
  }
  return v;
}

}  // namespace

Trace read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::InvalidArgument, "trace file is empty");
  auto header = split_row(line);
  if (header.size() < 2 || header.front() != "time") {
    throw Error(ErrorCode::InvalidArgument, "trace header must be \"time,<ch1>,...\"");
  }
  std::vector<std::string> channels(header.begin() + 1, header.end());

  std::vector<double> times;
  std::vector<double> samples;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split_row(line);
    if (cells.size() != header.size()) {
      throw Error(ErrorCode::InvalidArgument,
                  "trace line " + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " columns");
    }
    times.push_back(parse_cell(cells[0], line_no));
    for (std::size_t c = 1; c < cells.size(); ++c) samples.push_back(parse_cell(cells[c], line_no));
  }
  if (times.empty()) throw Error(ErrorCode::InvalidArgument, "trace has no samples");

  double dt = 1.0;
  if (times.size() > 1) {
    dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "trace times must be strictly increasing");
    for (std::size_t k = 1; k < times.size(); ++k) {
      const double step = times[k] - times[k - 1];
      if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "trace times must be strictly increasing");
      if (std::abs(step - dt) > 1e-6 * dt) {
        throw Error(ErrorCode::InvalidArgument,
                    "trace sampling is not uniform near time " + format_number(times[k]));
      }
    }
  }
  return Trace(std::move(channels), times.front(), dt, std::move(samples));
}

Trace read_trace_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open trace file '" + path + "'");
  return read_trace_csv(in);
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << "time";
  for (const auto& c : trace.channels()) out << ',' << c;
  out << '\n';
  for (std::size_t k = 0; k < trace.size(); ++k) {
    out << format_number(trace.time(k));
    for (double v : trace.row(k)) out << ',' << format_number(v);
    out << '\n';
  }
}

}  // namespace stlopt::stl

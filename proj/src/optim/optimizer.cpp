#include "stlopt/optim/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "stlopt/error.hpp"
#include "stlopt/stl/parser.hpp"

namespace stlopt::optim {

const char* to_string(Method method) {
  switch (method) {
    case Method::Cmaes: return "cmaes";
    case Method::Bo: return "bo";
    case Method::Random: return "random";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (auto m : {Method::Cmaes, Method::Bo, Method::Random}) {
    if (name == to_string(m)) return m;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + std::string(name) + "'");
}

namespace {

std::variant<CmaEs, BayesOpt, RandomSearch> make_state(Method method, Bounds bounds, std::uint64_t seed,
                                                       const OptimizerOptions& options) {
  switch (method) {
    case Method::Cmaes: return CmaEs(std::move(bounds), options.cmaes_sigma0, options.cmaes_lambda, seed);
    case Method::Bo: return BayesOpt(std::move(bounds), seed, options.bayes);
    case Method::Random: return RandomSearch(std::move(bounds), seed);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown method");
}

std::string describe(const Point& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) out += ", ";
    out += stl::format_number(p[i]);
  }
  return out + "]";
}

}  // namespace

Optimizer::Optimizer(Method method, Bounds bounds, std::uint64_t seed, const OptimizerOptions& options)
    : state_(make_state(method, std::move(bounds), seed, options)) {}

std::vector<Point> Optimizer::ask() {
  return std::visit([](auto& s) { return s.ask(); }, state_);
}

void Optimizer::tell(const std::vector<Point>& points, const std::vector<double>& values) {
  std::visit([&](auto& s) { s.tell(points, values); }, state_);
}

Method Optimizer::method() const noexcept {
  switch (state_.index()) {
    case 0: return Method::Cmaes;
    case 1: return Method::Bo;
    default: return Method::Random;
  }
}

std::vector<Evaluation> optimize(const Objective& objective, const Bounds& bounds, std::size_t budget,
                                 Method method, std::uint64_t seed, const OptimizerOptions& options) {
  if (budget < 1) throw Error(ErrorCode::InvalidArgument, "budget must be >= 1");
  Optimizer opt(method, bounds, seed, options);
  std::vector<Evaluation> history;
  history.reserve(budget);
  double best = -std::numeric_limits<double>::infinity();
  while (history.size() < budget) {
    std::vector<Point> points = opt.ask();
    if (points.size() > budget - history.size()) points.resize(budget - history.size());
    std::vector<double> values;
    values.reserve(points.size());
    for (const Point& p : points) {
      const double v = objective(p);
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::NonFinite, "objective returned a non-finite value at " + describe(p));
      }
      values.push_back(v);
      best = std::max(best, v);
      history.push_back({history.size() + 1, p, v, best});
    }
    opt.tell(points, values);
  }
  return history;
}

}  // namespace stlopt::optim

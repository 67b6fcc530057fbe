#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "stlopt/optim/bayes_opt.hpp"
#include "stlopt/optim/bounds.hpp"
#include "stlopt/optim/cmaes.hpp"

namespace stlopt::optim {

enum class Method { Cmaes, Bo, Random };

const char* to_string(Method method);
Method parse_method(std::string_view name);

struct OptimizerOptions {
  double cmaes_sigma0 = 0.3;  // fraction of the box width
  std::optional<std::size_t> cmaes_lambda;
  BayesOptions bayes;
};

/// Ask/tell front end over the three maximizers.
class Optimizer {
 public:
  Optimizer(Method method, Bounds bounds, std::uint64_t seed, const OptimizerOptions& options = {});

  std::vector<Point> ask();
  void tell(const std::vector<Point>& points, const std::vector<double>& values);

  Method method() const noexcept;
  const std::variant<CmaEs, BayesOpt, RandomSearch>& state() const noexcept { return state_; }

 private:
  std::variant<CmaEs, BayesOpt, RandomSearch> state_;
};

struct Evaluation {
  std::size_t index;  // 1-based
  Point params;
  double value;
  double best_so_far;
};

using Objective = std::function<double(const Point&)>;

/// Runs ask/tell until exactly `budget` objective calls have been made; the
/// trailing partial CMA-ES generation is evaluated and told. Throws
/// ErrorCode::NonFinite naming the parameter vector if the objective
/// returns NaN or an infinity.
std::vector<Evaluation> optimize(const Objective& objective, const Bounds& bounds, std::size_t budget,
                                 Method method, std::uint64_t seed, const OptimizerOptions& options = {});

}  // namespace stlopt::optim

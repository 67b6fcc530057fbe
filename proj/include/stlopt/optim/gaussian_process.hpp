#pragma once

#include <vector>

#include <Eigen/Dense>

#include "stlopt/optim/bounds.hpp"

namespace stlopt::optim {

struct GpHyper {
  double lengthscale = 0.3;
  double signal_variance = 1.0;  // in standardized output units
  double noise_variance = 1e-6;
};

struct GpPrediction {
  double mean;
  double variance;
};

/// GP regression with a squared-exponential kernel
/// k(a, b) = sf2 * exp(-|a - b|^2 / (2 l^2)) on unit-box inputs and
/// standardized outputs.
class GpModel {
 public:
  /// Factorizes K + sn2 I. A failed Cholesky escalates sn2 by x10 up to
  /// 1e-2 before giving up (ErrorCode::InvalidArgument).
  static GpModel fit(const std::vector<Point>& inputs, const std::vector<double>& targets, GpHyper hyper);

  /// Posterior in original output units.
  GpPrediction predict(const Point& x) const;
  /// Posterior in standardized units (mean 0 / unit variance of the targets).
  GpPrediction predict_standardized(const Point& x) const;

  const GpHyper& hyper() const noexcept { return hyper_; }
  double output_mean() const noexcept { return y_mean_; }
  double output_scale() const noexcept { return y_scale_; }
  std::size_t size() const noexcept { return inputs_.size(); }
  /// Largest standardized training target.
  double best_standardized() const noexcept { return best_; }

 private:
  GpModel() = default;

  std::vector<Point> inputs_;
  Eigen::VectorXd alpha_;
  Eigen::LLT<Eigen::MatrixXd> chol_;
  GpHyper hyper_;
  double y_mean_ = 0.0;
  double y_scale_ = 1.0;
  double best_ = 0.0;
};

/// Maximizes the log marginal likelihood over a 10 x 10 x 10 logarithmic
/// grid: l in [0.01, 10], sf2 in [0.01, 100], sn2 in [1e-8, 1e-2]
/// (output units standardized). Ties keep the first grid point.
GpHyper fit_hyperparameters(const std::vector<Point>& inputs, const std::vector<double>& targets);

/// Log marginal likelihood of standardized targets under `hyper`.
double log_marginal_likelihood(const std::vector<Point>& inputs, const std::vector<double>& targets,
                               const GpHyper& hyper);

double normal_pdf(double z);
/// Standard normal CDF through std::erfc.
double normal_cdf(double z);

/// EI for maximization: (mu - best) Phi(z) + sigma phi(z), z = (mu - best) / sigma;
/// max(0, mu - best) when the variance is zero.
double expected_improvement(double mean, double variance, double best_so_far);

}  // namespace stlopt::optim

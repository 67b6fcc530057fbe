#include "stlopt/optim/gaussian_process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "stlopt/error.hpp"

namespace stlopt::optim {
namespace {

double squared_distance(const Point& a, const Point& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
  return d;
}

struct Standardized {
  Eigen::VectorXd y;
  double mean;
  double scale;
};

Standardized standardize(const std::vector<double>& targets) {
  const auto n = static_cast<Eigen::Index>(targets.size());
  Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(targets.data(), n);
  const double mean = y.mean();
  double scale = std::sqrt((y.array() - mean).square().mean());
  if (!(scale > 1e-12)) scale = 1.0;
  return {(y.array() - mean) / scale, mean, scale};
}

Eigen::MatrixXd correlation(const std::vector<Point>& inputs, double lengthscale) {
  const auto n = static_cast<Eigen::Index>(inputs.size());
  Eigen::MatrixXd r(n, n);
  const double inv = 1.0 / (2.0 * lengthscale * lengthscale);
  for (Eigen::Index i = 0; i < n; ++i) {
    r(i, i) = 1.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      r(i, j) = r(j, i) = std::exp(-squared_distance(inputs[static_cast<std::size_t>(i)],
                                                     inputs[static_cast<std::size_t>(j)]) * inv);
    }
  }
  return r;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = std::pow(10.0, a + (b - a) * i / (count - 1));
  return out;
}

void require_training_set(const std::vector<Point>& inputs, const std::vector<double>& targets) {
  if (inputs.empty() || inputs.size() != targets.size()) {
    throw Error(ErrorCode::InvalidArgument, "GP needs >= 1 training point and one target per input");
  }
}

}  // namespace

GpModel GpModel::fit(const std::vector<Point>& inputs, const std::vector<double>& targets, GpHyper hyper) {
  require_training_set(inputs, targets);
  GpModel model;
  model.inputs_ = inputs;
  const Standardized s = standardize(targets);
  model.y_mean_ = s.mean;
  model.y_scale_ = s.scale;
  model.best_ = s.y.maxCoeff();

  const Eigen::MatrixXd base = hyper.signal_variance * correlation(inputs, hyper.lengthscale);
  const auto n = base.rows();
  while (true) {
    model.chol_.compute(base + hyper.noise_variance * Eigen::MatrixXd::Identity(n, n));
    if (model.chol_.info() == Eigen::Success) break;
    if (hyper.noise_variance >= 1e-2) {
      throw Error(ErrorCode::InvalidArgument, "GP Cholesky failed even with noise variance 1e-2");
    }
    hyper.noise_variance = std::min(1e-2, hyper.noise_variance * 10.0);
  }
  model.hyper_ = hyper;
  model.alpha_ = model.chol_.solve(s.y);
  return model;
}

GpPrediction GpModel::predict_standardized(const Point& x) const {
  const auto n = static_cast<Eigen::Index>(inputs_.size());
  Eigen::VectorXd k(n);
  const double inv = 1.0 / (2.0 * hyper_.lengthscale * hyper_.lengthscale);
  for (Eigen::Index i = 0; i < n; ++i) {
    k[i] = hyper_.signal_variance * std::exp(-squared_distance(inputs_[static_cast<std::size_t>(i)], x) * inv);
  }
  const double mean = k.dot(alpha_);
  const Eigen::VectorXd v = chol_.matrixL().solve(k);
  const double variance = std::max(0.0, hyper_.signal_variance - v.squaredNorm());
  return {mean, variance};
}

GpPrediction GpModel::predict(const Point& x) const {
  const GpPrediction p = predict_standardized(x);
  return {y_mean_ + y_scale_ * p.mean, y_scale_ * y_scale_ * p.variance};
}

double log_marginal_likelihood(const std::vector<Point>& inputs, const std::vector<double>& targets,
                               const GpHyper& hyper) {
  require_training_set(inputs, targets);
  const Standardized s = standardize(targets);
  const auto n = static_cast<Eigen::Index>(inputs.size());
  Eigen::MatrixXd k = hyper.signal_variance * correlation(inputs, hyper.lengthscale) +
                      hyper.noise_variance * Eigen::MatrixXd::Identity(n, n);
  Eigen::LLT<Eigen::MatrixXd> chol(k);
  if (chol.info() != Eigen::Success) return -std::numeric_limits<double>::infinity();
  const double log_det = 2.0 * chol.matrixLLT().diagonal().array().log().sum();
  return -0.5 * s.y.dot(chol.solve(s.y)) - 0.5 * log_det -
         0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
}

GpHyper fit_hyperparameters(const std::vector<Point>& inputs, const std::vector<double>& targets) {
  require_training_set(inputs, targets);
  const Standardized s = standardize(targets);
  const auto n = static_cast<double>(inputs.size());
  const auto lengthscales = log_grid(0.01, 10.0, 10);
  const auto signal_variances = log_grid(0.01, 100.0, 10);
  const auto noise_variances = log_grid(1e-8, 1e-2, 10);

  // One eigendecomposition per lengthscale: with R = Q diag(lam) Q^T the
  // kernel sf2 R + sn2 I has eigenvalues sf2 lam + sn2 in the same basis.
  GpHyper best;
  double best_lml = -std::numeric_limits<double>::infinity();
  for (double l : lengthscales) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(correlation(inputs, l));
    const Eigen::VectorXd lam = eig.eigenvalues().cwiseMax(0.0);
    const Eigen::VectorXd proj2 = (eig.eigenvectors().transpose() * s.y).array().square();
    for (double sf2 : signal_variances) {
      for (double sn2 : noise_variances) {
        const Eigen::ArrayXd spectrum = sf2 * lam.array() + sn2;
        const double lml = -0.5 * (proj2.array() / spectrum).sum() - 0.5 * spectrum.log().sum() -
                           0.5 * n * std::log(2.0 * std::numbers::pi);
        if (lml > best_lml) {
          best_lml = lml;
          best = {l, sf2, sn2};
        }
      }
    }
  }
  return best;
}

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double expected_improvement(double mean, double variance, double best_so_far) {
  const double gap = mean - best_so_far;
  if (!(variance > 0.0)) return std::max(0.0, gap);
  const double sigma = std::sqrt(variance);
  const double z = gap / sigma;
  return std::max(0.0, gap * normal_cdf(z) + sigma * normal_pdf(z));
}

}  // namespace stlopt::optim

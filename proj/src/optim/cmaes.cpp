#include "stlopt/optim/cmaes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stlopt/error.hpp"

namespace stlopt::optim {

std::size_t CmaEs::default_lambda(std::size_t n) {
  return 4 + static_cast<std::size_t>(std::floor(3.0 * std::log(static_cast<double>(n))));
}

CmaEs::Strategy CmaEs::strategy(std::size_t n_dim, std::size_t lambda) {
  const double n = static_cast<double>(n_dim);
  Strategy s;
  s.mu = std::max<std::size_t>(1, lambda / 2);
  s.weights.resize(static_cast<Eigen::Index>(s.mu));
  for (std::size_t i = 0; i < s.mu; ++i) {
    s.weights[static_cast<Eigen::Index>(i)] =
        std::log((static_cast<double>(lambda) + 1.0) / 2.0) - std::log(static_cast<double>(i) + 1.0);
  }
  if (s.mu == 1) s.weights[0] = 1.0;
  s.weights /= s.weights.sum();
  s.mu_eff = 1.0 / s.weights.squaredNorm();
  s.c_sigma = (s.mu_eff + 2.0) / (n + s.mu_eff + 5.0);
  s.d_sigma = 1.0 + 2.0 * std::max(0.0, std::sqrt((s.mu_eff - 1.0) / (n + 1.0)) - 1.0) + s.c_sigma;
  s.c_c = (4.0 + s.mu_eff / n) / (n + 4.0 + 2.0 * s.mu_eff / n);
  s.c_1 = 2.0 / ((n + 1.3) * (n + 1.3) + s.mu_eff);
  s.c_mu = std::min(1.0 - s.c_1, 2.0 * (s.mu_eff - 2.0 + 1.0 / s.mu_eff) / ((n + 2.0) * (n + 2.0) + s.mu_eff));
  return s;
}

CmaEs::CmaEs(Bounds bounds, double sigma0, std::optional<std::size_t> lambda, std::uint64_t seed)
    : bounds_(std::move(bounds)),
      n_(bounds_.dim()),
      lambda_(lambda.value_or(default_lambda(bounds_.dim()))),
      params_(strategy(n_, lambda_)),
      weights_(params_.weights),
      rng_(seed),
      sigma_(sigma0) {
  if (!(sigma0 > 0.0) || !std::isfinite(sigma0)) {
    throw Error(ErrorCode::InvalidArgument, "CMA-ES sigma0 must be > 0");
  }
  if (lambda_ < 2) throw Error(ErrorCode::InvalidArgument, "CMA-ES population size must be >= 2");
  const auto n = static_cast<Eigen::Index>(n_);
  mean_ = Eigen::VectorXd::Constant(n, 0.5);
  cov_ = Eigen::MatrixXd::Identity(n, n);
  basis_ = Eigen::MatrixXd::Identity(n, n);
  scales_ = Eigen::VectorXd::Ones(n);
  path_sigma_ = Eigen::VectorXd::Zero(n);
  path_c_ = Eigen::VectorXd::Zero(n);
  const double nd = static_cast<double>(n_);
  chi_n_ = std::sqrt(nd) * (1.0 - 1.0 / (4.0 * nd) + 1.0 / (21.0 * nd * nd));
}

Point CmaEs::mean() const {
  return bounds_.from_unit(std::span<const double>(mean_.data(), n_));
}

std::vector<Point> CmaEs::ask() {
  const auto n = static_cast<Eigen::Index>(n_);
  std::vector<Point> out;
  out.reserve(lambda_);
  Eigen::VectorXd z(n);
  for (std::size_t i = 0; i < lambda_; ++i) {
    Eigen::VectorXd u;
    bool inside = false;
    for (int attempt = 0; attempt <= 100 && !inside; ++attempt) {
      for (Eigen::Index j = 0; j < n; ++j) z[j] = rng_.normal();
      u = mean_ + sigma_ * (basis_ * scales_.cwiseProduct(z));
      inside = (u.array() >= 0.0).all() && (u.array() <= 1.0).all();
    }
    u = u.cwiseMax(0.0).cwiseMin(1.0);
    out.push_back(bounds_.from_unit(std::span<const double>(u.data(), n_)));
  }
  return out;
}

void CmaEs::tell(const std::vector<Point>& points, const std::vector<double>& values) {
  if (points.size() != values.size()) {
    throw Error(ErrorCode::InvalidArgument, "tell: " + std::to_string(points.size()) + " points but " +
                                                std::to_string(values.size()) + " values");
  }
  if (points.empty() || points.size() > lambda_) {
    throw Error(ErrorCode::InvalidArgument, "tell: expected between 1 and lambda points");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "tell: non-finite objective value");
  }
  const Strategy p = points.size() == lambda_ ? params_ : strategy(n_, points.size());

  const auto n = static_cast<Eigen::Index>(n_);
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

  Eigen::MatrixXd steps(n, static_cast<Eigen::Index>(p.mu));
  for (std::size_t i = 0; i < p.mu; ++i) {
    const Point unit = bounds_.to_unit(points[order[i]]);
    steps.col(static_cast<Eigen::Index>(i)) = (Eigen::Map<const Eigen::VectorXd>(unit.data(), n) - mean_) / sigma_;
  }
  const Eigen::VectorXd step_w = steps * p.weights;
  mean_ += sigma_ * step_w;

  ++generation_;
  const Eigen::VectorXd inv_sqrt_step = basis_ * (basis_.transpose() * step_w).cwiseQuotient(scales_);
  path_sigma_ = (1.0 - p.c_sigma) * path_sigma_ + std::sqrt(p.c_sigma * (2.0 - p.c_sigma) * p.mu_eff) * inv_sqrt_step;
  const double ps_norm = path_sigma_.norm();
  const double decay = 1.0 - std::pow(1.0 - p.c_sigma, 2.0 * static_cast<double>(generation_));
  const bool h_sigma = ps_norm / std::sqrt(decay) < (1.4 + 2.0 / (static_cast<double>(n_) + 1.0)) * chi_n_;
  path_c_ = (1.0 - p.c_c) * path_c_ +
            (h_sigma ? std::sqrt(p.c_c * (2.0 - p.c_c) * p.mu_eff) : 0.0) * step_w;

  const double old_weight =
      1.0 - p.c_1 - p.c_mu + (h_sigma ? 0.0 : p.c_1 * p.c_c * (2.0 - p.c_c));
  Eigen::MatrixXd rank_mu = steps * p.weights.asDiagonal() * steps.transpose();
  cov_ = old_weight * cov_ + p.c_1 * path_c_ * path_c_.transpose() + p.c_mu * rank_mu;

  sigma_ *= std::exp((p.c_sigma / p.d_sigma) * (ps_norm / chi_n_ - 1.0));
  decompose();
}

void CmaEs::decompose() {
  cov_ = 0.5 * (cov_ + cov_.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov_);
  Eigen::VectorXd eigenvalues = eig.eigenvalues().cwiseMax(1e-12);
  basis_ = eig.eigenvectors();
  scales_ = eigenvalues.cwiseSqrt();
  if ((eig.eigenvalues().array() < 1e-12).any()) {
    cov_ = basis_ * eigenvalues.asDiagonal() * basis_.transpose();
  }
}

}  // namespace stlopt::optim

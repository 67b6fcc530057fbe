#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "stlopt/optim/bounds.hpp"
#include "stlopt/optim/rng.hpp"

namespace stlopt::optim {

/// (mu/mu_w, lambda)-CMA-ES with cumulative step-size adaptation and
/// rank-one plus rank-mu covariance updates. Searches the unit cube that
/// `bounds` maps onto, so sigma is relative to the box width. Maximizes.
class CmaEs {
 public:
  CmaEs(Bounds bounds, double sigma0, std::optional<std::size_t> lambda, std::uint64_t seed);

  /// Default population size 4 + floor(3 ln n).
  static std::size_t default_lambda(std::size_t n);

  /// lambda candidates; out-of-box draws are resampled up to 100 times, then clamped.
  std::vector<Point> ask();

  /// Updates the search distribution from (point, value) pairs. Fewer than
  /// lambda pairs (a truncated last generation) use weights for that count.
  void tell(const std::vector<Point>& points, const std::vector<double>& values);

  const Bounds& bounds() const noexcept { return bounds_; }
  std::size_t lambda() const noexcept { return lambda_; }
  std::size_t generation() const noexcept { return generation_; }
  double sigma() const noexcept { return sigma_; }
  Point mean() const;
  const Eigen::MatrixXd& covariance() const noexcept { return cov_; }
  const Eigen::VectorXd& weights() const noexcept { return weights_; }
  const Eigen::VectorXd& path_sigma() const noexcept { return path_sigma_; }
  const Eigen::VectorXd& path_c() const noexcept { return path_c_; }

 private:
  struct Strategy {
    std::size_t mu;
    Eigen::VectorXd weights;
    double mu_eff;
    double c_sigma, d_sigma, c_c, c_1, c_mu;
  };
  static Strategy strategy(std::size_t n, std::size_t lambda);
  void decompose();

  Bounds bounds_;
  std::size_t n_;
  std::size_t lambda_;
  Strategy params_;
  Eigen::VectorXd weights_;
  Rng rng_;

  Eigen::VectorXd mean_;  // unit-cube coordinates
  double sigma_;
  Eigen::MatrixXd cov_;
  Eigen::MatrixXd basis_;   // eigenvectors of cov_
  Eigen::VectorXd scales_;  // sqrt of eigenvalues
  Eigen::VectorXd path_sigma_;
  Eigen::VectorXd path_c_;
  std::size_t generation_ = 0;
  double chi_n_;
};

}  // namespace stlopt::optim

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "stlopt/error.hpp"
#include "stlopt/optim/bayes_opt.hpp"
#include "stlopt/optim/cmaes.hpp"
#include "stlopt/optim/gaussian_process.hpp"
#include "stlopt/optim/optimizer.hpp"

using namespace stlopt;
using namespace stlopt::optim;

namespace {

Bounds cube(std::size_t n, double lo = -1.0, double hi = 1.0) {
  return Bounds(std::vector<double>(n, lo), std::vector<double>(n, hi));
}

Point target(std::size_t n) {
  Point c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = 0.1 * static_cast<double>(i) - 0.35;
  return c;
}

double sphere(const Point& x, const Point& c) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - c[i]) * (x[i] - c[i]);
  return -s;
}

}  // namespace

TEST_CASE("rng is reproducible and in range") {
  Rng a(1), b(1), c(2);
  for (int i = 0; i < 100; ++i) {
    const double u = a.uniform();
    CHECK(u == b.uniform());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(a.below(7) < 7);
    b.below(7);
  }
  CHECK(a == b);
  CHECK_FALSE(a == c);
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double z = c.normal();
    sum += z;
    sq += z * z;
  }
  CHECK(std::abs(sum / 20000) < 0.05);
  CHECK(std::abs(sq / 20000 - 1.0) < 0.05);
}

TEST_CASE("bounds") {
  CHECK_THROWS_AS(Bounds({0, 1}, {1, 1}), Error);
  CHECK_THROWS_AS(Bounds({}, {}), Error);
  CHECK_THROWS_AS(Bounds({0}, {1, 2}), Error);
  const Bounds b({0, -2}, {10, 2});
  CHECK(b.to_unit(Point{5, 0}) == Point{0.5, 0.5});
  CHECK(b.from_unit(Point{1, 0}) == Point{10, -2});
  CHECK(b.clamp(Point{11, -3}) == Point{10, -2});
  CHECK(b.contains(Point{10, 2}));
  CHECK_FALSE(b.contains(Point{10.1, 2}));
}

TEST_CASE("cmaes construction") {
  CHECK(CmaEs::default_lambda(9) == 10);
  CHECK(CmaEs::default_lambda(1) == 4);
  CHECK_THROWS_AS(CmaEs(cube(3), 0.0, std::nullopt, 1), Error);
  CmaEs es(cube(9, 0, 10), 0.3, std::nullopt, 1);
  CHECK(es.lambda() == 10);
  for (double m : es.mean()) CHECK(m == doctest::Approx(5.0));
  CHECK(es.weights().sum() == doctest::Approx(1.0));
}

TEST_CASE("cmaes ask and tell contracts") {
  const Bounds b = cube(4, 0, 1);
  CmaEs es(b, 2.0, std::nullopt, 3);  // wide sigma forces resampling and clamping
  const auto pts = es.ask();
  CHECK(pts.size() == es.lambda());
  for (const auto& p : pts) CHECK(b.contains(p));
  CHECK_THROWS_AS(es.tell(pts, std::vector<double>(pts.size() - 1, 0.0)), Error);
  std::vector<double> vals(pts.size(), 0.0);
  vals[0] = std::nan("");
  CHECK_THROWS_AS(es.tell(pts, vals), Error);
  // A truncated generation is accepted.
  es.tell({pts[0], pts[1]}, {1.0, 2.0});
  CHECK(es.generation() == 1);
}

TEST_CASE("cmaes covariance stays symmetric positive definite") {
  const Point c = target(5);
  CmaEs es(cube(5), 0.3, std::nullopt, 4);
  for (int g = 0; g < 80; ++g) {
    const auto pts = es.ask();
    std::vector<double> vals;
    for (const auto& p : pts) vals.push_back(sphere(p, c));
    es.tell(pts, vals);
    const Eigen::MatrixXd& C = es.covariance();
    CHECK((C - C.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(C);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("cmaes moves toward the optimum and shrinks sigma") {
  const std::size_t n = 5;
  const Point c = target(n);
  double ratio_sum = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    CmaEs es(cube(n), 0.3, std::nullopt, seed);
    double sigma1 = 0.0;
    const double d0 = -sphere(es.mean(), c);
    for (int g = 1; g <= 50; ++g) {
      const auto pts = es.ask();
      std::vector<double> vals;
      for (const auto& p : pts) vals.push_back(sphere(p, c));
      es.tell(pts, vals);
      if (g == 1) sigma1 = es.sigma();
    }
    CHECK(-sphere(es.mean(), c) < d0);
    ratio_sum += sigma1 / es.sigma();
  }
  CHECK(ratio_sum / 5 >= 10.0);
}

TEST_CASE("gp interpolates and decays to the prior") {
  GpHyper h{0.1, 1.0, 1e-8};
  const auto gp = GpModel::fit({{0.5}}, {1.0}, h);
  auto p = gp.predict({0.5});
  CHECK(p.mean == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(p.variance <= 1e-6);
  p = gp.predict({0.5 + 10 * h.lengthscale});
  CHECK(p.mean == doctest::Approx(gp.output_mean()).epsilon(1e-9));
  CHECK(p.variance == doctest::Approx(h.signal_variance * gp.output_scale() * gp.output_scale()).epsilon(1e-9));

  const std::vector<Point> xs{{0.1, 0.2}, {0.7, 0.3}, {0.4, 0.9}, {0.95, 0.05}};
  const std::vector<double> ys{1.0, -2.0, 0.5, 3.0};
  const auto gp2 = GpModel::fit(xs, ys, {0.3, 1.0, 1e-8});
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(std::abs(gp2.predict(xs[i]).mean - ys[i]) <= 1e-4);
  }
  Rng rng(1);
  for (int i = 0; i < 200; ++i) CHECK(gp2.predict({rng.uniform(), rng.uniform()}).variance >= 0.0);
}

TEST_CASE("gp tolerates duplicate inputs") {
  const auto gp = GpModel::fit({{0.3}, {0.3}}, {0.0, 1.0}, {0.2, 1.0, 1e-8});
  const double m = gp.predict({0.3}).mean;
  CHECK(m > 0.0);
  CHECK(m < 1.0);
}

TEST_CASE("hyperparameter grid search") {
  Rng rng(2);
  std::vector<Point> xs;
  std::vector<double> ys;
  for (int i = 0; i < 30; ++i) {
    const double x = rng.uniform();
    xs.push_back({x});
    ys.push_back(std::sin(6 * x));
  }
  const GpHyper h = fit_hyperparameters(xs, ys);
  CHECK(h.lengthscale >= 0.01);
  CHECK(h.lengthscale <= 10);
  CHECK(h.noise_variance <= 1e-2);
  const double best = log_marginal_likelihood(xs, ys, h);
  CHECK(best >= log_marginal_likelihood(xs, ys, {0.01, 1.0, 1e-2}));
  CHECK(best >= log_marginal_likelihood(xs, ys, {10.0, 100.0, 1e-8}));
}

TEST_CASE("expected improvement") {
  CHECK(expected_improvement(-1.0, 0.0, 0.0) == 0.0);
  CHECK(expected_improvement(0.0, 0.0, 0.0) == 0.0);
  CHECK(expected_improvement(2.0, 1.0, 2.0) == doctest::Approx(0.398942).epsilon(1e-6));
  CHECK(std::abs(expected_improvement(3.0, 1e-20, 2.0) - 1.0) < 1e-9);
  CHECK(expected_improvement(3.0, 0.0, 2.0) == 1.0);
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(std::abs(normal_cdf(1.0) - 0.8413447460685429) < 1e-7);
  CHECK(std::abs(normal_cdf(-3.0) - 0.0013498980316301) < 1e-7);
}

TEST_CASE("bayes design is reproducible and inside bounds") {
  const Bounds b = cube(3, 0, 5);
  BayesOpt a(b, 9), c(b, 9);
  for (int i = 0; i < 10; ++i) {
    const auto p = a.ask();
    CHECK(p == c.ask());
    CHECK(b.contains(p[0]));
  }
}

TEST_CASE("floor at quantile") {
  CHECK(floor_at_quantile({-10, 1, 2, 3}, 0.5) == std::vector<double>{1.5, 1.5, 2, 3});
  CHECK(floor_at_quantile({4, -1}, 0.0) == std::vector<double>{4, -1});
}

TEST_CASE("bayes tell handles duplicates and rejects bad input") {
  const Bounds b = cube(2, 0, 1);
  BayesOpt bo(b, 1);
  bo.tell({{0.5, 0.5}, {0.5, 0.5}}, {1.0, 2.0});
  CHECK(bo.model().has_value());
  CHECK(b.contains(bo.ask()[0]));
  CHECK_THROWS_AS(bo.tell({{0.1, 0.1}}, {}), Error);
  CHECK_THROWS_AS(bo.tell({{0.1, 0.1}}, {INFINITY}), Error);
  CHECK_THROWS_AS(bo.tell({{2.0, 0.1}}, {0.0}), Error);
}

TEST_CASE("optimize contracts") {
  const Bounds b = cube(3);
  const Point c = target(3);
  auto f = [&](const Point& x) { return sphere(x, c); };
  for (Method m : {Method::Cmaes, Method::Bo, Method::Random}) {
    CAPTURE(to_string(m));
    const auto h = optimize(f, b, 37, m, 5);
    CHECK(h.size() == 37);
    double best = -INFINITY;
    for (std::size_t i = 0; i < h.size(); ++i) {
      CHECK(h[i].index == i + 1);
      CHECK(b.contains(h[i].params));
      best = std::max(best, h[i].value);
      CHECK(h[i].best_so_far == best);
    }
    const auto again = optimize(f, b, 37, m, 5);
    for (std::size_t i = 0; i < h.size(); ++i) {
      CHECK(again[i].params == h[i].params);
      CHECK(again[i].value == h[i].value);
    }
  }
  CHECK(optimize(f, b, 60, Method::Random, 1).size() == 60);
  CHECK_THROWS_AS(optimize(f, b, 0, Method::Random, 1), Error);
  CHECK(parse_method("cmaes") == Method::Cmaes);
  CHECK_THROWS_AS(parse_method("nelder-mead"), Error);
}

TEST_CASE("optimize names a non-finite objective vector") {
  try {
    optimize([](const Point&) { return std::nan(""); }, cube(2), 5, Method::Random, 1);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFinite);
    CHECK(std::string(e.what()).find("[") != std::string::npos);
  }
}

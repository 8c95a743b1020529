#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "macropeaks/bounds.hpp"
#include "macropeaks/errors.hpp"

using namespace macropeaks;

namespace {
const RadialCorrelation kNugget = [](double r) { return r > 0.0 ? 0.0 : 1.0; };
const RadialCorrelation kExp = [](double r) { return std::exp(-r); };
}  // namespace

TEST_CASE("supremum tail bound closed forms") {
  CHECK(borell_tis_bound(0.0, {0.0, 0.0}) == 1.0);
  CHECK(borell_tis_bound(3.0, {0.0, 0.0}) ==
        doctest::Approx(2.0 * std::exp(-4.5)).epsilon(1e-14));
  CHECK_THROWS_AS(borell_tis_bound(1.0, {2.0, 0.0}), RangeError);
}

TEST_CASE("expected-maximum estimates") {
  Eigen::VectorXd anchor(1);
  anchor << 5.0;

  // two independent mesh points: E[max of two standard normals] = 1/sqrt(pi)
  const auto two = estimate_mu(kNugget, anchor, 2, 40000, 11);
  CHECK(std::abs(two.mu - 1.0 / std::sqrt(M_PI)) < 3.0 * two.stderr_est);

  // single point: plain standard normal mean
  const auto one = estimate_mu(kNugget, anchor, 1, 40000, 11);
  CHECK(std::abs(one.mu) < 3.0 * one.stderr_est);

  // stationarity: the anchor does not enter a radial kernel
  Eigen::VectorXd other(1);
  other << -42.0;
  const auto a = estimate_mu(kExp, anchor, 5, 5000, 13);
  const auto b = estimate_mu(kExp, other, 5, 5000, 13);
  CHECK(a.mu == b.mu);
}

TEST_CASE("equicorrelated lower-tail constants") {
  const auto p = lopes_constants(0.5, 0.25);
  CHECK(p.alpha0 == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(p.beta0 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p.alpha0 == p.beta0 * (1.0 - std::sqrt(p.gamma0)));  // exact identity

  // limits: both constants collapse as the parameters approach 1
  CHECK(lopes_constants(1.0 - 1e-9, 0.25).alpha0 < 1e-8);
  const auto q = lopes_constants(0.5, 1.0 - 1e-9);
  CHECK(q.alpha0 < 1e-15);
  CHECK(q.beta0 < 1e-8);

  CHECK_THROWS_AS(lopes_constants(0.0, 0.5), DomainError);
  CHECK_THROWS_AS(lopes_constants(0.5, 1.0), DomainError);
}

TEST_CASE("lower-tail envelope values") {
  LopesParams p;
  p.alpha0 = 0.25;
  p.beta0 = 0.5;
  const double n = std::exp(2.0);
  CHECK(lopes_bound(n, p, 1.0) ==
        doctest::Approx(std::exp(-0.5) * std::pow(2.0, -0.25)).epsilon(1e-12));
  CHECK(lopes_bound(n, p, 2.0) ==
        doctest::Approx(2.0 * lopes_bound(n, p, 1.0)).epsilon(1e-14));
  double prev = lopes_bound(8.0, p, 1.0);
  for (double m : {64.0, 512.0, 4096.0, 32768.0}) {
    const double v = lopes_bound(m, p, 1.0);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(prev < 0.1);
}

TEST_CASE("one-coordinate lower tail is a fair coin") {
  const auto est = empirical_max_lower_tail(1, 0.3, 0.25, 40000, 7);
  CHECK(std::abs(est.probability - 0.5) < 3.0 * est.stderr_est);
}

TEST_CASE("independent limit matches the product-of-cdf closed form") {
  const long n = 64;
  const double gamma0 = 0.25;
  const double closed =
      std::pow(normal_cdf(std::sqrt(2.0 * gamma0 * std::log(double(n)))),
               static_cast<double>(n));
  const auto est = empirical_max_lower_tail(n, 0.0, gamma0, 60000, 21);
  CHECK(std::abs(est.probability - closed) <
        3.0 * (est.stderr_est + 1e-12));
}

TEST_CASE("lower-tail estimates decay and sit under the fitted envelope") {
  const double rho0 = 0.3;
  const double gamma0 = 0.25;
  const auto params = lopes_constants(rho0, gamma0);
  const std::size_t reps = 20000;

  const auto base = empirical_max_lower_tail(256, rho0, gamma0, reps, 31);
  const double scale =
      (base.probability + 3.0 * base.stderr_est) / lopes_bound(256, params, 1.0);
  double prev = base.probability;
  double prev_se = base.stderr_est;
  for (long n : {1024L, 4096L}) {
    const auto est = empirical_max_lower_tail(n, rho0, gamma0, reps, 31);
    CHECK(est.probability <= prev + 3.0 * (est.stderr_est + prev_se));
    CHECK(est.probability <=
          lopes_bound(static_cast<double>(n), params, scale) +
              3.0 * est.stderr_est);
    prev = est.probability;
    prev_se = est.stderr_est;
  }
  CHECK_THROWS_AS(empirical_max_lower_tail(4096, rho0, gamma0, 10, 1, 1000),
                  SizeCapError);
}

TEST_CASE("empirical supremum tails respect the analytic bound") {
  Eigen::VectorXd anchor(1);
  anchor << 3.0;
  const auto mu = estimate_mu(kExp, anchor, 5, 20000, 41);
  BorellParams inflated{mu.mu + 3.0 * mu.stderr_est, 0.0};

  const std::size_t reps = 20000;
  // reuse the sampler through estimate_mu's own mesh by drawing again
  Eigen::MatrixXd mesh(5, 1);
  for (int i = 0; i < 5; ++i) mesh(i, 0) = 3.0 + 0.25 * i;
  Eigen::MatrixXd cov(5, 5);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) cov(i, j) = kExp(std::abs(mesh(i, 0) - mesh(j, 0)));
  }
  const GaussianSampler sampler(cov, 1e-10);
  for (double offset : {1.0, 2.0}) {
    const double x = inflated.mu + offset;
    double hits = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      if (sampler.draw(41, r).maxCoeff() >= x) hits += 1.0;
    }
    const double p = hits / static_cast<double>(reps);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
    CHECK(p <= borell_tis_bound(x, inflated) + 3.0 * se);
  }
}

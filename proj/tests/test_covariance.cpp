#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <functional>

#include "macropeaks/covariance.hpp"
#include "macropeaks/errors.hpp"
#include "macropeaks/rng.hpp"

using namespace macropeaks;

namespace {

double simpson_block(const std::function<double(double)>& f, double a, double b,
                     int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += f(a + h * i) * ((i % 2) ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("heat variance closed form for white noise in d=1") {
  const auto spec = EquationSpec::heat(CorrelationModel::white_noise(1), 2.0);
  CHECK(variance(spec, 1.0) ==
        doctest::Approx(std::sqrt(1.0 / (2.0 * M_PI))).epsilon(1e-6));
  // vanishing variance as t -> 0+
  CHECK(variance(spec, 1e-8) < 1e-3);
}

TEST_CASE("heat covariance decays along a growing lag grid") {
  const auto spec = EquationSpec::heat(CorrelationModel::white_noise(1), 2.0);
  const double v = variance(spec, 1.0);
  double prev = v;
  for (double z : {1.0, 4.0, 16.0, 64.0, 256.0}) {
    const double c = heat_covariance(spec, 1.0, z).value;
    CHECK(std::abs(c) <= v + 1e-9);
    prev = c;
  }
  CHECK(std::abs(prev) < 1e-4 * v);
}

TEST_CASE("mixed-time heat covariance") {
  const auto spec = EquationSpec::heat(CorrelationModel::white_noise(1), 2.0);

  // reduces to the equal-time form
  const double same = heat_covariance(spec, 1.0, 0.7).value;
  CHECK(heat_covariance_st(spec, 1.0, 1.0, 0.7).value ==
        doctest::Approx(same).epsilon(1e-10));

  // symmetric in (t1, t2)
  CHECK(heat_covariance_st(spec, 1.0, 2.0, 0.3).value ==
        doctest::Approx(heat_covariance_st(spec, 2.0, 1.0, 0.3).value)
            .epsilon(1e-12));

  // independent 2-D quadrature oracle of the s-xi double integral at z=0:
  //   (2 pi)^{-1} int_0^1 int_R exp(-(3-2s) xi^2) dxi ds
  auto inner = [](double s) {
    const double a = 3.0 - 2.0 * s;
    return 2.0 * simpson_block([a](double x) { return std::exp(-a * x * x); },
                               0.0, 14.0, 4000);
  };
  const double oracle = simpson_block(inner, 0.0, 1.0, 400) / (2.0 * M_PI);
  CHECK(heat_covariance_st(spec, 1.0, 2.0, 0.0).value ==
        doctest::Approx(oracle).epsilon(1e-7));
}

TEST_CASE("wave variance closed forms for white noise in d=1") {
  const auto spec = EquationSpec::wave(CorrelationModel::white_noise(1));
  // real-space oracle: int_0^t int (half-indicator)^2 dy ds = t^2/4
  CHECK(variance(spec, 1.0) == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(variance(spec, 2.0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(variance(spec, 1e-8) < 1e-3);

  double prev = variance(spec, 1.0);
  for (double z : {1.0, 8.0, 64.0, 256.0}) {
    const double c = wave_covariance(spec, 1.0, z).value;
    CHECK(std::abs(c) <= prev + 1e-9);
  }
  CHECK(std::abs(wave_covariance(spec, 1.0, 256.0).value) < 1e-3);
}

TEST_CASE("riesz heat variance obeys the scaling law") {
  const auto spec = EquationSpec::heat(CorrelationModel::riesz(0.5, 1.0, 1), 2.0);
  const double ratio = variance(spec, 2.0) / variance(spec, 1.0);
  CHECK(ratio == doctest::Approx(std::pow(2.0, 0.75)).epsilon(1e-3));
}

TEST_CASE("variance is strictly increasing in time") {
  const auto heat = EquationSpec::heat(CorrelationModel::riesz(0.5, 1.0, 1), 2.0);
  const auto wave = EquationSpec::wave(CorrelationModel::exponential(1.0, 2));
  double vh = 0.0, vw = 0.0;
  for (double t : {0.5, 1.0, 1.5, 2.0, 3.0, 5.0}) {
    const double nh = variance(heat, t);
    const double nw = variance(wave, t);
    CHECK(nh > vh);
    CHECK(nw > vw);
    vh = nh;
    vw = nw;
  }
}

TEST_CASE("covariance matrices on random point sets are numerically psd") {
  CounterRng rng(7, 0);
  const auto specs = {EquationSpec::heat(CorrelationModel::riesz(0.5, 1.0, 1), 2.0),
                      EquationSpec::wave(CorrelationModel::white_noise(1))};
  int stream = 0;
  for (const auto& spec : specs) {
    const int n = 30;
    Eigen::VectorXd pts(n);
    for (int i = 0; i < n; ++i) pts(i) = 40.0 * rng.uniform(100 * stream + i);
    Eigen::MatrixXd cov(n, n);
    const double var = variance(spec, 1.0);
    for (int i = 0; i < n; ++i) {
      cov(i, i) = var;
      for (int j = i + 1; j < n; ++j) {
        cov(i, j) = cov(j, i) =
            covariance(spec, 1.0, std::abs(pts(i) - pts(j))).value;
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    CHECK(eig.eigenvalues().minCoeff() >=
          -1e-8 * eig.eigenvalues().maxCoeff());
    ++stream;
  }
}

TEST_CASE("correlation tables") {
  const auto spec = EquationSpec::heat(CorrelationModel::white_noise(1), 2.0);
  CorrelationGrid grid;
  grid.max_lag = 64.0;
  const auto table = correlation_function(spec, 1.0, grid);
  CHECK(table.values()(0) == 1.0);
  CHECK(table.non_increasing());
  CHECK(table.vanishing());
  CHECK(table(0.0) == doctest::Approx(1.0));
  CHECK(table(10.0) < 1.0);
  CHECK_THROWS_AS(table(65.0), TableRangeError);
}

TEST_CASE("riesz correlation sits under the power-law envelope") {
  const auto spec = EquationSpec::heat(CorrelationModel::riesz(0.5, 1.0, 1), 2.0);
  CorrelationGrid grid;
  grid.max_lag = 4096.0;
  const auto table = correlation_function(spec, 1.0, grid);
  // calibrate the envelope constant on an early tail lag, then check decay
  const auto& lags = table.lags();
  const auto& vals = table.values();
  Eigen::Index start = 0;
  while (lags(start) < 32.0) ++start;
  const double c_env = 2.0 * vals(start) * std::sqrt(lags(start));
  for (Eigen::Index i = start; i < lags.size(); ++i) {
    CHECK(vals(i) <= c_env / std::sqrt(lags(i)) + 1e-9);
  }
}

TEST_CASE("non-vanishing correlation is reported, not silently accepted") {
  const auto spec = EquationSpec::heat(CorrelationModel::riesz(0.5, 1.0, 1), 2.0);
  CorrelationGrid grid;
  grid.max_lag = 4.0;
  CHECK_THROWS_AS(correlation_function(spec, 1.0, grid),
                  NonVanishingCorrelationError);
}

TEST_CASE("equation preconditions") {
  CHECK_THROWS_AS(EquationSpec::heat(CorrelationModel::white_noise(2), 2.0),
                  UnsatisfiedConditionError);
  CHECK_THROWS_AS(EquationSpec::wave(CorrelationModel::white_noise(2)),
                  UnsatisfiedConditionError);
  CHECK_THROWS_AS(EquationSpec::heat(CorrelationModel::white_noise(1), 3.0),
                  DomainError);
  CHECK_THROWS_AS(heat_covariance(EquationSpec::heat(CorrelationModel::white_noise(1)),
                                  0.0, 0.0),
                  DomainError);
}

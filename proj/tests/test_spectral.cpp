#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Core>
#include <cmath>
#include <functional>

#include "macropeaks/errors.hpp"
#include "macropeaks/rng.hpp"
#include "macropeaks/spectral.hpp"

using namespace macropeaks;

namespace {

Eigen::VectorXd vec1(double x) {
  Eigen::VectorXd v(1);
  v << x;
  return v;
}

// Oracle-side adaptive Simpson, independent of the library quadrature.
double simpson(const std::function<double(double)>& f, double a, double b) {
  const double m = 0.5 * (a + b);
  return (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int depth) {
  const double whole = simpson(f, a, b);
  const double m = 0.5 * (a + b);
  const double left = simpson(f, a, m);
  const double right = simpson(f, m, b);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(f, a, m, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, 0.5 * tol, depth - 1);
}

// Numerical Fourier transform of the truncated kernel |x|^{-1/2} at xi:
//   2 \int_0^inf r^{-1/2} cos(xi r) dr
// series head + graded Simpson + two integration-by-parts tail terms.
double riesz_transform_oracle(double xi) {
  const double delta = 1e-6;
  double head = 2.0 * (2.0 * std::sqrt(delta));  // cos ~ 1 on [0, delta]

  auto integrand = [xi](double r) { return std::cos(xi * r) / std::sqrt(r); };
  double mid = adaptive_simpson(integrand, delta, 50.0, 1e-12, 40);

  const double far = 4.0e4;
  const double steps_per_period = 60.0;
  const double h = (2.0 * M_PI / xi) / steps_per_period;
  const long n = 2 * static_cast<long>((far - 50.0) / (2.0 * h)) + 2;
  const double hh = (far - 50.0) / static_cast<double>(n);
  double sum = integrand(50.0) + integrand(far);
  for (long i = 1; i < n; ++i) {
    sum += integrand(50.0 + hh * i) * ((i % 2) ? 4.0 : 2.0);
  }
  mid += sum * hh / 3.0;

  const double tail = -std::sin(xi * far) / (xi * std::sqrt(far)) +
                      std::cos(xi * far) / (2.0 * xi * xi * std::pow(far, 1.5));
  return head + 2.0 * (mid + tail);
}

}  // namespace

TEST_CASE("pointwise correlations") {
  CHECK(correlation_at(CorrelationModel::riesz(0.5, 1.0, 1), 4.0) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(correlation_at(CorrelationModel::exponential(1.0, 1), 0.0) == 1.0);
  CHECK_THROWS_AS(correlation_at(CorrelationModel::white_noise(1), 0.1),
                  NotAFunctionError);
  CHECK_THROWS_AS(correlation_at(CorrelationModel::riesz(0.5, 1.0, 1), 0.0),
                  DomainError);
  CHECK(correlation_at(CorrelationModel::log_decay(1.0, 1), 0.0) ==
        doctest::Approx(1.0));
}

TEST_CASE("correlation kernels are non-increasing in radius") {
  const auto exp_model = CorrelationModel::exponential(0.7, 1);
  const auto gauss_model = CorrelationModel::gaussian(1.3, 1);
  double prev_e = correlation_at(exp_model, 0.0);
  double prev_g = correlation_at(gauss_model, 0.0);
  for (double r = 0.1; r < 30.0; r += 0.1) {
    const double e = correlation_at(exp_model, r);
    const double g = correlation_at(gauss_model, r);
    CHECK(e <= prev_e);
    CHECK(g <= prev_g);
    prev_e = e;
    prev_g = g;
  }
}

TEST_CASE("spectral densities: white and exponential closed forms") {
  CHECK(spectral_density_at(CorrelationModel::white_noise(1), vec1(3.7)) == 1.0);
  // analytic transform of exp(-|x|) at 0 is 2; cross-check by quadrature
  const double quad =
      2.0 * adaptive_simpson([](double x) { return std::exp(-x); }, 0.0, 60.0,
                             1e-13, 40);
  CHECK(quad == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(spectral_density_at(CorrelationModel::exponential(1.0, 1), vec1(0.0)) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("riesz spectral constant against the numerical transform oracle") {
  const double xi = 2.0;
  const double oracle = riesz_transform_oracle(xi);
  const auto model = CorrelationModel::riesz(0.5, 1.0, 1);
  const double value = spectral_density_at(model, vec1(xi));
  CHECK(value == doctest::Approx(oracle).epsilon(2e-5));
  // and the closed form itself: sqrt(2 pi) * xi^{-1/2}
  CHECK(value ==
        doctest::Approx(std::sqrt(2.0 * M_PI) / std::sqrt(xi)).epsilon(1e-12));
}

TEST_CASE("density nonnegativity sampled over random frequencies") {
  CounterRng rng(99, 0);
  const auto models = {CorrelationModel::white_noise(1),
                       CorrelationModel::riesz(0.5, 1.0, 1),
                       CorrelationModel::exponential(1.0, 1),
                       CorrelationModel::gaussian(2.0, 1)};
  for (const auto& m : models) {
    for (int i = 0; i < 10000; ++i) {
      const double xi = 100.0 * rng.uniform(i) + 1e-6;
      CHECK(spectral_density_radial(m, xi) >= 0.0);
    }
  }
}

TEST_CASE("dalang condition closed forms and verdicts") {
  const auto white = CorrelationModel::white_noise(1);
  auto r = check_dalang(white, 2.0);
  CHECK(r.satisfied);
  CHECK(r.value == doctest::Approx(M_PI).epsilon(1e-6));

  r = check_dalang(white, 0.5);
  CHECK_FALSE(r.satisfied);

  r = check_dalang(CorrelationModel::riesz(0.5, 1.0, 1), 2.0);
  CHECK(r.satisfied);

  // white noise in d >= alpha fails
  CHECK_FALSE(check_dalang(CorrelationModel::white_noise(2), 2.0).satisfied);
}

TEST_CASE("reinforced condition verdicts") {
  const auto white = CorrelationModel::white_noise(1);
  CHECK(check_reinforced(white, 2.0, 0.9).satisfied);
  CHECK_FALSE(check_reinforced(white, 2.0, 0.4).satisfied);
  CHECK(check_reinforced(CorrelationModel::riesz(0.5, 1.0, 1), 2.0, 0.7).satisfied);
}

TEST_CASE("reinforced implies dalang, and larger eta stays satisfied") {
  // smaller eta is the stronger requirement under this convention
  const auto models = {CorrelationModel::white_noise(1),
                       CorrelationModel::riesz(0.7, 1.0, 1),
                       CorrelationModel::exponential(1.0, 2)};
  for (const auto& m : models) {
    for (double alpha : {0.8, 1.5, 2.0}) {
      for (double eta : {0.2, 0.5, 0.8}) {
        if (!check_reinforced(m, alpha, eta).satisfied) continue;
        CHECK(check_dalang(m, alpha).satisfied);
        for (double eta2 = eta; eta2 < 1.0; eta2 += 0.1) {
          CHECK(check_reinforced(m, alpha, eta2).satisfied);
        }
      }
    }
  }
}

TEST_CASE("finite-measure kernels satisfy every exponent") {
  const auto log_model = CorrelationModel::log_decay(1.0, 1);
  auto r = check_dalang(log_model, 2.0);
  CHECK(r.satisfied);
  CHECK(r.value == doctest::Approx(std::pow(2.0 * M_PI, 1) * 1.0));
  CHECK(check_reinforced(log_model, 2.0, 0.0).satisfied);
  CHECK(check_reinforced(CorrelationModel::gaussian(1.0, 3), 1.0, 0.0).satisfied);
}

TEST_CASE("mixing functional closed form pi exp(-|z|)") {
  const auto white = CorrelationModel::white_noise(1);
  CHECK(mixing_functional(white, 2.0, vec1(0.0)) ==
        doctest::Approx(M_PI).epsilon(1e-6));
  for (double z : {0.5, 1.0, 2.0, 4.0}) {
    CHECK(mixing_functional(white, 2.0, vec1(z)) ==
          doctest::Approx(M_PI * std::exp(-z)).epsilon(1e-6));
  }
}

TEST_CASE("mixing functional consistency and decay") {
  const auto riesz = CorrelationModel::riesz(0.5, 1.0, 1);
  const auto at_zero = mixing_functional(riesz, 2.0, vec1(0.0));
  CHECK(at_zero == doctest::Approx(check_dalang(riesz, 2.0).value).epsilon(1e-6));

  double prev = at_zero;
  for (double z : {2.0, 8.0, 32.0, 128.0, 512.0}) {
    const double v = mixing_functional(riesz, 2.0, vec1(z));
    CHECK(std::abs(v) < std::abs(prev) + 1e-9);
    prev = v;
  }
  CHECK(std::abs(prev) < 0.05 * at_zero);
}

TEST_CASE("mixing functional requires an integrable weight") {
  CHECK_THROWS_AS(mixing_functional(CorrelationModel::white_noise(1), 0.5, vec1(1.0)),
                  UnsatisfiedConditionError);
}

TEST_CASE("tabulated density integrates over its support") {
  Eigen::VectorXd r(5), v(5);
  r << 0.0, 1.0, 2.0, 3.0, 4.0;
  v << 1.0, 0.8, 0.5, 0.2, 0.0;
  const auto model = CorrelationModel::tabulated(r, v, 1);
  CHECK(spectral_density_radial(model, 10.0) == 0.0);
  auto rep = check_dalang(model, 1.0);
  CHECK(rep.satisfied);
  CHECK(rep.value > 0.0);
  CHECK(rep.value < 2.0 * 4.0);  // coarse envelope: density <= 1 on [0, 4]
  CHECK_THROWS_AS(
      CorrelationModel::tabulated(r, (v.array() - 0.5).matrix(), 1), DomainError);
}

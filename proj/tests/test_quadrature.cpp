#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "macropeaks/quadrature.hpp"

using namespace macropeaks;

TEST_CASE("gauss-kronrod on smooth closed forms") {
  auto poly = [](double x) { return x * x * x - 2.0 * x + 1.0; };
  auto r = integrate_gk(poly, 0.0, 2.0, 1e-12);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));  // x^4/4 - x^2 + x

  auto gauss = [](double x) { return std::exp(-x * x); };
  r = integrate_gk(gauss, 0.0, 10.0, 1e-12);
  CHECK(r.value == doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-12));

  auto lorentz = [](double x) { return 1.0 / (1.0 + x * x); };
  r = integrate_gk(lorentz, 0.0, 1000.0, 1e-10);
  CHECK(r.value == doctest::Approx(std::atan(1000.0)).epsilon(1e-10));
}

TEST_CASE("filon matches direct quadrature at moderate frequency") {
  auto g = [](double x) { return 1.0 / (1.0 + x); };
  const double omega = 7.0;
  auto direct = integrate_gk(
      [&](double x) { return g(x) * std::cos(omega * x); }, 0.0, 4.0, 1e-12);
  auto filon = filon_cos(g, 0.0, 4.0, omega, 1e-11);
  CHECK(filon.value == doctest::Approx(direct.value).epsilon(1e-8));

  auto direct_s = integrate_gk(
      [&](double x) { return g(x) * std::sin(omega * x); }, 0.0, 4.0, 1e-12);
  auto filon_s = filon_sin(g, 0.0, 4.0, omega, 1e-11);
  CHECK(filon_s.value == doctest::Approx(direct_s.value).epsilon(1e-8));
}

TEST_CASE("filon handles high frequency where plain rules would need huge grids") {
  // int_0^1 cos(omega x) dx = sin(omega)/omega
  auto one = [](double) { return 1.0; };
  const double omega = 5000.0;
  auto r = filon_cos(one, 0.0, 1.0, omega, 1e-12);
  CHECK(r.value == doctest::Approx(std::sin(omega) / omega).epsilon(1e-9));
}

TEST_CASE("power-term integration") {
  // int_0^eps (r^{-1/2} + 3 r) dr = 2 sqrt(eps) + 1.5 eps^2
  std::vector<PowerTerm> terms{{1.0, -0.5}, {3.0, 1.0}};
  const double eps = 0.3;
  CHECK(integrate_power_terms(terms, eps) ==
        doctest::Approx(2.0 * std::sqrt(eps) + 1.5 * eps * eps).epsilon(1e-14));
}

TEST_CASE("angular series agree with their functions") {
  const double z = 1.7;
  const double r = 0.21;
  auto evaluate = [&](const std::vector<PowerTerm>& s) {
    double v = 0.0;
    for (auto& t : s) v += t.coefficient * std::pow(r, t.exponent);
    return v;
  };
  CHECK(evaluate(cosine_series(z, 30.0)) ==
        doctest::Approx(std::cos(z * r)).epsilon(1e-12));
  CHECK(evaluate(sinc_series(z, 30.0)) ==
        doctest::Approx(std::sin(z * r) / (z * r)).epsilon(1e-12));
  CHECK(evaluate(bessel_j0_series(z, 30.0)) ==
        doctest::Approx(std::cyl_bessel_j(0, z * r)).epsilon(1e-12));
}

TEST_CASE("radial driver reproduces the arctangent integral") {
  // 2 int_0^inf dr/(1+r^2) = pi, tail handled analytically
  RadialIntegrand spec;
  spec.dimension = 1;
  spec.radial = [](double r) { return 1.0 / (1.0 + r * r); };
  spec.origin_series = {{1.0, 0.0}, {-1.0, 2.0}, {1.0, 4.0}, {-1.0, 6.0},
                        {1.0, 8.0}, {-1.0, 10.0}, {1.0, 12.0}, {-1.0, 14.0},
                        {1.0, 16.0}, {-1.0, 18.0}, {1.0, 20.0}};
  spec.origin_cut = 0.3;
  spec.tail_amplitude = 1.0;
  spec.tail_exponent = 2.0;
  spec.tail_cut = 4000.0;
  spec.tail_accuracy = 2e-11;  // next term of the tail expansion
  auto r = integrate_radial(spec, 1e-9);
  CHECK(r.value == doctest::Approx(M_PI).epsilon(1e-8));
}

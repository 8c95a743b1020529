#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "macropeaks/rng.hpp"

using namespace macropeaks;

TEST_CASE("counter rng is a pure function of (seed, stream, index)") {
  CounterRng a(42, 7);
  CounterRng b(42, 7);
  for (std::uint64_t i = 0; i < 64; ++i) {
    CHECK(a.normal(i) == b.normal(i));
    CHECK(a.uniform(i) == b.uniform(i));
  }
  // order independence
  CHECK(a.normal(63) == b.normal(63));
  CHECK(a.normal(0) == b.normal(0));
}

TEST_CASE("streams and seeds decorrelate") {
  CounterRng a(42, 0);
  CounterRng b(42, 1);
  CounterRng c(43, 0);
  int equal_ab = 0;
  int equal_ac = 0;
  for (std::uint64_t i = 0; i < 256; ++i) {
    if (a.uniform(i) == b.uniform(i)) ++equal_ab;
    if (a.uniform(i) == c.uniform(i)) ++equal_ac;
  }
  CHECK(equal_ab == 0);
  CHECK(equal_ac == 0);
}

TEST_CASE("uniform and normal moments") {
  CounterRng rng(2024, 5);
  const int n = 200000;
  double usum = 0.0, usq = 0.0, nsum = 0.0, nsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform(i);
    usum += u;
    usq += u * u;
    const double z = rng.normal(i);
    nsum += z;
    nsq += z * z;
  }
  CHECK(usum / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(usq / n == doctest::Approx(1.0 / 3.0).epsilon(0.01));
  CHECK(std::abs(nsum / n) < 0.01);
  CHECK(nsq / n == doctest::Approx(1.0).epsilon(0.02));
}

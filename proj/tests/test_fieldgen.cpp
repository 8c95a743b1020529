#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "macropeaks/errors.hpp"
#include "macropeaks/fieldgen.hpp"

using namespace macropeaks;

namespace {

const RadialCorrelation kNugget = [](double r) { return r > 0.0 ? 0.0 : 1.0; };
const RadialCorrelation kExp = [](double r) { return std::exp(-r); };

Eigen::MatrixXd lattice(Eigen::Index n, double spacing = 1.0, double origin = 0.0) {
  Eigen::MatrixXd pts(n, 1);
  for (Eigen::Index i = 0; i < n; ++i) pts(i, 0) = origin + spacing * i;
  return pts;
}

}  // namespace

TEST_CASE("samples are bit-reproducible from (inputs, seed)") {
  const auto pts = lattice(16);
  const auto a = sample_cholesky(kExp, pts, 11, 3);
  const auto b = sample_cholesky(kExp, pts, 11, 3);
  CHECK(a.values == b.values);
  const auto c = sample_circulant_1d(kExp, 64, 1.0, 0.0, 11, 3);
  const auto d = sample_circulant_1d(kExp, 64, 1.0, 0.0, 11, 3);
  CHECK(c.values == d.values);
  // different replicate stream -> different values
  CHECK(sample_cholesky(kExp, pts, 11, 4).values != a.values);
}

TEST_CASE("independent correlation reproduces the identity covariance") {
  const auto pts = lattice(3, 5.0);
  std::vector<FieldSample> samples;
  samples.reserve(100000);
  // factor once by hand: nugget covariance is the identity
  GaussianSampler sampler(Eigen::MatrixXd::Identity(3, 3), 0.0);
  for (int r = 0; r < 100000; ++r) {
    FieldSample s;
    s.points = pts;
    s.values = sampler.draw(5, static_cast<std::uint64_t>(r));
    samples.push_back(std::move(s));
  }
  const auto check = empirical_cov_check(samples, kNugget);
  CHECK(check.max_abs_deviation < 0.02);
  CHECK_FALSE(check.degenerate);
}

TEST_CASE("single-point sampling is standard normal") {
  double sum = 0.0, sq = 0.0;
  const int n = 100000;
  for (int r = 0; r < n; ++r) {
    const auto s = sample_cholesky(kNugget, lattice(1), 9, r);
    sum += s.values(0);
    sq += s.values(0) * s.values(0);
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(sq / n == doctest::Approx(1.0).epsilon(0.011));
}

TEST_CASE("a non-correlation is rejected by the factorization") {
  CHECK_THROWS_AS(
      sample_cholesky([](double r) { return 1.0 + r; }, lattice(8), 1, 0),
      FactorizationError);
}

TEST_CASE("size cap") {
  CholeskyOptions options;
  options.size_cap = 4;
  CHECK_THROWS_AS(sample_cholesky(kExp, lattice(5), 1, 0, options), SizeCapError);
}

TEST_CASE("circulant lattice reproduces the exponential lag-1 correlation") {
  const Eigen::Index n = 4096;
  double num = 0.0, den = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const auto s = sample_circulant_1d(kExp, n, 1.0, 0.0, 17, rep);
    CHECK(s.warnings.empty());
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      num += s.values(i) * s.values(i + 1);
      den += s.values(i) * s.values(i);
    }
  }
  CHECK(num / den == doctest::Approx(std::exp(-1.0)).epsilon(0.02 / std::exp(-1.0)));
}

TEST_CASE("circulant with one point is a single standard normal draw") {
  const auto s = sample_circulant_1d(kExp, 1, 1.0, 2.0, 3, 7);
  CHECK(s.values.size() == 1);
  double sum = 0.0, sq = 0.0;
  const int n = 20000;
  for (int r = 0; r < n; ++r) {
    const auto x = sample_circulant_1d(kExp, 1, 1.0, 2.0, 3, r).values(0);
    sum += x;
    sq += x * x;
  }
  CHECK(std::abs(sum / n) < 0.03);
  CHECK(sq / n == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("circulant and cholesky agree on a common sublattice") {
  const Eigen::Index sub = 64;
  const auto pts = lattice(sub);
  const int reps = 200;

  std::vector<FieldSample> chol, circ;
  for (int r = 0; r < reps; ++r) {
    chol.push_back(sample_cholesky(kExp, pts, 21, r));
    auto s = sample_circulant_1d(kExp, 512, 1.0, 0.0, 22, r);
    FieldSample trimmed;
    trimmed.points = pts;
    trimmed.values = s.values.head(sub);
    circ.push_back(std::move(trimmed));
  }
  const auto check_c = empirical_cov_check(chol, kExp);
  const auto check_f = empirical_cov_check(circ, kExp);
  REQUIRE(check_c.table.size() == check_f.table.size());
  int gross = 0;
  for (std::size_t k = 0; k < check_c.table.size(); ++k) {
    const auto& a = check_c.table[k];
    const auto& b = check_f.table[k];
    const double se = std::sqrt(a.stderr_est * a.stderr_est +
                                b.stderr_est * b.stderr_est);
    if (std::abs(a.empirical - b.empirical) > 4.5 * se) ++gross;
  }
  CHECK(gross == 0);
}

TEST_CASE("per-point variance stays standardized") {
  const Eigen::Index n = 128;
  Eigen::VectorXd sq = Eigen::VectorXd::Zero(n);
  const int reps = 10000;
  for (int r = 0; r < reps; ++r) {
    const auto s = sample_circulant_1d(kExp, n, 0.5, 0.0, 31, r);
    sq += s.values.cwiseProduct(s.values);
  }
  sq /= static_cast<double>(reps);
  CHECK(sq.minCoeff() > 0.95);
  CHECK(sq.maxCoeff() < 1.05);
}

TEST_CASE("embedding fallback: clip tiny mass, refuse large mass") {
  // wide gaussian: negative share ~1e-16, silently clipped with a warning
  const auto wide = [](double r) { return std::exp(-r * r / 32.0); };
  const auto s = sample_circulant_1d(wide, 256, 1.0, 0.0, 41, 0);
  REQUIRE(!s.warnings.empty());
  CHECK(s.values.allFinite());

  // cosine kernel: spectral leakage makes ~15% of the mass negative
  const auto cosine = [](double r) { return std::cos(r); };
  CHECK_THROWS_AS(sample_circulant_1d(cosine, 64, 1.0, 0.0, 41, 0),
                  EmbeddingError);

  // extension attempts do not rescue it either
  CirculantOptions options;
  options.fallback = EmbeddingFallback::Extend;
  options.max_extensions = 2;
  CHECK_THROWS_AS(sample_circulant_1d(cosine, 64, 1.0, 0.0, 41, 0, options),
                  EmbeddingError);
}

TEST_CASE("empirical check degenerate and small-sample paths") {
  std::vector<FieldSample> samples(3);
  for (auto& s : samples) {
    s.points = lattice(4);
    s.values = Eigen::VectorXd::Zero(4);
  }
  const auto check = empirical_cov_check(samples, kExp);
  CHECK(check.degenerate);
  // deviation equals the largest |target| entry, here corr(0) = 1
  CHECK(check.max_abs_deviation == doctest::Approx(1.0));

  // ten samples: wide deviations allowed, but the table carries stderr
  std::vector<FieldSample> few;
  for (int r = 0; r < 10; ++r) few.push_back(sample_cholesky(kExp, lattice(4), 3, r));
  const auto loose = empirical_cov_check(few, kExp);
  CHECK(loose.table.size() == 10);
  for (const auto& row : loose.table) {
    if (row.i != row.j) CHECK(row.stderr_est > 0.0);
  }

  // mismatched points are refused
  std::vector<FieldSample> bad = few;
  bad[1].points = lattice(4, 2.0);
  CHECK_THROWS_AS(empirical_cov_check(bad, kExp), MismatchedPointsError);
}

#include "macropeaks/bounds.hpp"

#include <cmath>

#include "macropeaks/errors.hpp"
#include "macropeaks/parallel.hpp"
#include "macropeaks/rng.hpp"

namespace macropeaks {

double borell_tis_bound(double x, const BorellParams& params) {
  if (x < params.mu) {
    throw RangeError("the supremum tail bound requires x >= mu");
  }
  return std::min(1.0, 2.0 * std::exp(-0.5 * x * x + params.mu * x));
}

BorellParams estimate_mu(const RadialCorrelation& corr,
                         const Eigen::VectorXd& anchor, int mesh_per_axis,
                         std::size_t replicates, std::uint64_t seed) {
  if (mesh_per_axis < 1) throw DomainError("mesh needs at least one point");
  if (replicates < 2) throw DomainError("need at least two replicates");
  const int d = static_cast<int>(anchor.size());

  std::size_t total = 1;
  for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(mesh_per_axis);
  Eigen::MatrixXd mesh(static_cast<Eigen::Index>(total), d);
  const double spacing =
      (mesh_per_axis > 1) ? 1.0 / (mesh_per_axis - 1) : 0.0;
  for (Eigen::Index row = 0; row < mesh.rows(); ++row) {
    auto rest = static_cast<std::size_t>(row);
    for (int a = 0; a < d; ++a) {
      mesh(row, a) =
          anchor(a) + spacing * static_cast<double>(rest % mesh_per_axis);
      rest /= static_cast<std::size_t>(mesh_per_axis);
    }
  }

  Eigen::MatrixXd cov(mesh.rows(), mesh.rows());
  for (Eigen::Index i = 0; i < mesh.rows(); ++i) {
    cov(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < mesh.rows(); ++j) {
      cov(i, j) = cov(j, i) = corr((mesh.row(i) - mesh.row(j)).norm());
    }
  }
  const GaussianSampler sampler(std::move(cov), 1e-10);

  const auto maxima = parallel_map(replicates, [&](std::size_t r) {
    return sampler.draw(seed, static_cast<std::uint64_t>(r)).maxCoeff();
  });
  double sum = 0.0;
  for (double m : maxima) sum += m;
  const double mean = sum / static_cast<double>(replicates);
  double var = 0.0;
  for (double m : maxima) var += (m - mean) * (m - mean);
  var /= static_cast<double>(replicates - 1);

  BorellParams params;
  params.mu = mean;
  params.stderr_est = std::sqrt(var / static_cast<double>(replicates));
  return params;
}

LopesParams lopes_constants(double rho0, double gamma0) {
  if (!(rho0 > 0.0 && rho0 < 1.0) || !(gamma0 > 0.0 && gamma0 < 1.0)) {
    throw DomainError("both correlation and gauge levels must lie in (0, 1)");
  }
  LopesParams p;
  p.rho0 = rho0;
  p.gamma0 = gamma0;
  p.beta0 = (1.0 - rho0) * (1.0 - std::sqrt(gamma0)) / rho0;
  p.alpha0 = p.beta0 * (1.0 - std::sqrt(gamma0));  // keeps the identity exact
  return p;
}

double lopes_bound(double n, const LopesParams& params, double scale) {
  if (!(n >= 2.0)) throw DomainError("the envelope needs n >= 2");
  return scale * std::pow(n, -params.alpha0) *
         std::pow(std::log(n), 0.5 * (params.beta0 - 1.0));
}

TailEstimate empirical_max_lower_tail(long n, double rho0, double gamma0,
                                      std::size_t replicates, std::uint64_t seed,
                                      long size_cap) {
  if (n < 1) throw DomainError("need at least one coordinate");
  if (n > size_cap) throw SizeCapError("vector length exceeds the cap");
  if (rho0 < 0.0 || rho0 >= 1.0 || !(gamma0 > 0.0 && gamma0 < 1.0)) {
    throw DomainError("need rho0 in [0,1) and gamma0 in (0,1)");
  }

  const double threshold =
      std::sqrt(2.0 * gamma0 * (1.0 - rho0) * std::log(static_cast<double>(n)));
  const double w_scale = std::sqrt(rho0);
  const double xi_scale = std::sqrt(1.0 - rho0);

  const auto hits = parallel_map(replicates, [&](std::size_t r) {
    const CounterRng rng(seed, static_cast<std::uint64_t>(r));
    const double w = rng.normal(0);
    double max_xi = -1e300;
    for (long i = 0; i < n; ++i) {
      max_xi = std::max(max_xi, rng.normal(static_cast<std::uint64_t>(i + 1)));
    }
    return (w_scale * w + xi_scale * max_xi <= threshold) ? 1.0 : 0.0;
  });
  double count = 0.0;
  for (double h : hits) count += h;

  TailEstimate est;
  est.n = n;
  est.replicates = replicates;
  est.probability = count / static_cast<double>(replicates);
  est.stderr_est = std::sqrt(est.probability * (1.0 - est.probability) /
                             static_cast<double>(replicates));
  return est;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace macropeaks

#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "macropeaks/fieldgen.hpp"

namespace macropeaks {

struct BorellParams {
  double mu = 0.0;  // E[sup over a unit cube] of the normalized field
  double stderr_est = 0.0;
};

// Upper tail of the supremum of a unit-variance field over a unit cube:
// min(1, 2 exp(-x^2/2 + mu x)), valid for x >= mu.
double borell_tis_bound(double x, const BorellParams& params);

// Monte Carlo estimate of E[max over a meshed unit cube Q(anchor, 1)];
// stationary kernels make the result anchor-independent.
BorellParams estimate_mu(const RadialCorrelation& corr,
                         const Eigen::VectorXd& anchor, int mesh_per_axis,
                         std::size_t replicates, std::uint64_t seed);

struct LopesParams {
  double rho0 = 0.0;
  double gamma0 = 0.0;
  double alpha0 = 0.0;  // (1-rho0)(1-sqrt(gamma0))^2 / rho0
  double beta0 = 0.0;   // (1-rho0)(1-sqrt(gamma0)) / rho0
};

LopesParams lopes_constants(double rho0, double gamma0);

// C n^{-alpha0} (log n)^{(beta0-1)/2}, the lower-tail envelope for the
// maximum of n equicorrelated Gaussians.
double lopes_bound(double n, const LopesParams& params, double scale);

struct TailEstimate {
  double probability = 0.0;
  double stderr_est = 0.0;
  long n = 0;
  std::size_t replicates = 0;
};

// MC probability of {max_i X_i <= sqrt(2 gamma0 (1-rho0) log n)} for the
// one-factor equicorrelated vector X_i = sqrt(rho0) W + sqrt(1-rho0) xi_i.
TailEstimate empirical_max_lower_tail(long n, double rho0, double gamma0,
                                      std::size_t replicates, std::uint64_t seed,
                                      long size_cap = 1 << 20);

// Standard normal CDF (shared by the closed-form oracles).
double normal_cdf(double x);

}  // namespace macropeaks

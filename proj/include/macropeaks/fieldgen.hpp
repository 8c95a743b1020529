#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace macropeaks {

using RadialCorrelation = std::function<double(double)>;

struct FieldSample {
  enum class Generator { Cholesky, Circulant1D };

  Eigen::MatrixXd points;  // one row per sample point
  Eigen::VectorXd values;
  Generator generator = Generator::Cholesky;
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;
  std::string correlation_id;
  std::vector<std::string> warnings;
};

// Dense zero-mean Gaussian sampler: factor once, draw many replicates. Values
// are a pure function of (seed, replicate), independent of evaluation order.
class GaussianSampler {
 public:
  explicit GaussianSampler(Eigen::MatrixXd covariance, double jitter = 1e-10);

  Eigen::VectorXd draw(std::uint64_t seed, std::uint64_t replicate) const;
  Eigen::Index size() const { return lower_.rows(); }

 private:
  Eigen::MatrixXd lower_;
};

struct CholeskyOptions {
  std::size_t size_cap = 8000;
  double jitter = 1e-10;  // absorbs ~1e-8 quadrature noise in tabulated kernels
};

// Exact draw from N(0, Sigma) with Sigma_ij = corr(|p_i - p_j|), unit diagonal.
FieldSample sample_cholesky(const RadialCorrelation& corr,
                            const Eigen::MatrixXd& points, std::uint64_t seed,
                            std::uint64_t replicate = 0,
                            const CholeskyOptions& options = {});

// Same draw law with an explicitly supplied covariance matrix (space-time use).
FieldSample sample_cholesky_cov(const Eigen::MatrixXd& covariance,
                                const Eigen::MatrixXd& points, std::uint64_t seed,
                                std::uint64_t replicate = 0, double jitter = 1e-10);

enum class EmbeddingFallback { ClipSmallMass, Extend };

struct CirculantOptions {
  EmbeddingFallback fallback = EmbeddingFallback::ClipSmallMass;
  double clip_mass_tol = 1e-6;  // clipped negative mass must stay below this share
  int max_extensions = 4;
};

// Stationary values on the lattice origin + k*spacing, k = 0..n-1, via
// circulant embedding of the Toeplitz correlation; distributionally identical
// to sample_cholesky on the same lattice. A non-PSD embedding triggers the
// configured fallback and leaves a warning in the sample metadata.
FieldSample sample_circulant_1d(const RadialCorrelation& corr, Eigen::Index n_points,
                                double spacing, double origin, std::uint64_t seed,
                                std::uint64_t replicate = 0,
                                const CirculantOptions& options = {});

struct CovCheckRow {
  Eigen::Index i = 0;
  Eigen::Index j = 0;
  double target = 0.0;
  double empirical = 0.0;
  double stderr_est = 0.0;
};

struct CovCheck {
  double max_abs_deviation = 0.0;
  std::vector<CovCheckRow> table;
  bool degenerate = false;  // some point had (near) zero sample variance
};

// Compares the known-mean empirical covariance of replicated samples on a
// common point set against the target correlation.
CovCheck empirical_cov_check(const std::vector<FieldSample>& samples,
                             const RadialCorrelation& corr);

}  // namespace macropeaks

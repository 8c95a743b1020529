#include "macropeaks/fieldgen.hpp"

#include <unsupported/Eigen/FFT>
#include <cmath>
#include <complex>

#include "macropeaks/errors.hpp"
#include "macropeaks/rng.hpp"

namespace macropeaks {

namespace {

// Smallest 5-smooth integer >= n; keeps the FFT away from large prime sizes.
Eigen::Index next_smooth(Eigen::Index n) {
  for (Eigen::Index m = n;; ++m) {
    Eigen::Index r = m;
    for (Eigen::Index p : {2, 3, 5}) {
      while (r % p == 0) r /= p;
    }
    if (r == 1) return m;
  }
}

struct Embedding {
  Eigen::VectorXd eigenvalues;
  Eigen::Index length = 0;
  double clipped_share = 0.0;
  bool clipped = false;
  bool saturated_lags = false;
};

Embedding build_embedding(const RadialCorrelation& corr, Eigen::Index n,
                          double spacing, Eigen::Index length) {
  Embedding emb;
  emb.length = length;
  std::vector<double> row(static_cast<std::size_t>(length));
  const double max_known_lag = spacing * static_cast<double>(n - 1);
  for (Eigen::Index j = 0; j < length; ++j) {
    const Eigen::Index folded = std::min(j, length - j);
    const double lag = spacing * static_cast<double>(folded);
    double value;
    if (folded == 0) {
      value = 1.0;
    } else if (lag <= max_known_lag) {
      value = corr(lag);
    } else {
      // Padding lags never enter the covariance of the first n outputs; if the
      // kernel is not defined there, saturate and let the PSD check decide.
      try {
        value = corr(lag);
      } catch (const Error&) {
        value = corr(max_known_lag);
        emb.saturated_lags = true;
      }
    }
    row[static_cast<std::size_t>(j)] = value;
  }

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> freq;
  fft.fwd(freq, row);
  emb.eigenvalues.resize(length);
  for (Eigen::Index j = 0; j < length; ++j) {
    emb.eigenvalues(j) = freq[static_cast<std::size_t>(j)].real();
  }
  return emb;
}

}  // namespace

GaussianSampler::GaussianSampler(Eigen::MatrixXd covariance, double jitter) {
  if (covariance.rows() != covariance.cols() || covariance.rows() == 0) {
    throw DomainError("covariance must be square and nonempty");
  }
  covariance.diagonal().array() += jitter;
  Eigen::LLT<Eigen::MatrixXd> llt(covariance);
  if (llt.info() != Eigen::Success) {
    throw FactorizationError(
        "covariance factorization failed; the kernel is not positive definite");
  }
  lower_ = llt.matrixL();
}

Eigen::VectorXd GaussianSampler::draw(std::uint64_t seed,
                                      std::uint64_t replicate) const {
  const CounterRng rng(seed, replicate);
  Eigen::VectorXd z(lower_.rows());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    z(i) = rng.normal(static_cast<std::uint64_t>(i));
  }
  return lower_ * z;
}

FieldSample sample_cholesky(const RadialCorrelation& corr,
                            const Eigen::MatrixXd& points, std::uint64_t seed,
                            std::uint64_t replicate,
                            const CholeskyOptions& options) {
  const Eigen::Index n = points.rows();
  if (n == 0) throw DomainError("empty point set");
  if (static_cast<std::size_t>(n) > options.size_cap) {
    throw SizeCapError("point count exceeds the dense-sampler cap");
  }
  Eigen::MatrixXd cov(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cov(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double r = (points.row(i) - points.row(j)).norm();
      cov(i, j) = cov(j, i) = corr(r);
    }
  }
  GaussianSampler sampler(std::move(cov), options.jitter);

  FieldSample sample;
  sample.points = points;
  sample.values = sampler.draw(seed, replicate);
  sample.generator = FieldSample::Generator::Cholesky;
  sample.seed = seed;
  sample.replicate = replicate;
  return sample;
}

FieldSample sample_cholesky_cov(const Eigen::MatrixXd& covariance,
                                const Eigen::MatrixXd& points, std::uint64_t seed,
                                std::uint64_t replicate, double jitter) {
  if (covariance.rows() != points.rows()) {
    throw MismatchedPointsError("covariance and point rows differ");
  }
  GaussianSampler sampler(covariance, jitter);
  FieldSample sample;
  sample.points = points;
  sample.values = sampler.draw(seed, replicate);
  sample.generator = FieldSample::Generator::Cholesky;
  sample.seed = seed;
  sample.replicate = replicate;
  return sample;
}

FieldSample sample_circulant_1d(const RadialCorrelation& corr, Eigen::Index n_points,
                                double spacing, double origin, std::uint64_t seed,
                                std::uint64_t replicate,
                                const CirculantOptions& options) {
  if (n_points < 1) throw DomainError("need at least one lattice point");
  if (!(spacing > 0.0)) throw DomainError("lattice spacing must be positive");

  FieldSample sample;
  sample.points.resize(n_points, 1);
  for (Eigen::Index k = 0; k < n_points; ++k) {
    sample.points(k, 0) = origin + spacing * static_cast<double>(k);
  }
  sample.generator = FieldSample::Generator::Circulant1D;
  sample.seed = seed;
  sample.replicate = replicate;

  const CounterRng rng(seed, replicate);
  if (n_points == 1) {
    sample.values.resize(1);
    sample.values(0) = rng.normal(0);
    return sample;
  }

  Eigen::Index length = next_smooth(2 * (n_points - 1));
  Embedding emb;
  int attempts = 0;
  for (;;) {
    emb = build_embedding(corr, n_points, spacing, length);
    const double min_eig = emb.eigenvalues.minCoeff();
    if (min_eig >= 0.0) break;

    const double negative_mass = -emb.eigenvalues.cwiseMin(0.0).sum();
    const double total_mass = emb.eigenvalues.cwiseAbs().sum();
    const double share = negative_mass / total_mass;
    if (options.fallback == EmbeddingFallback::Extend &&
        attempts < options.max_extensions) {
      ++attempts;
      length = next_smooth(2 * length);
      continue;
    }
    if (share < options.clip_mass_tol) {
      emb.eigenvalues = emb.eigenvalues.cwiseMax(0.0);
      emb.clipped = true;
      emb.clipped_share = share;
      break;
    }
    throw EmbeddingError("circulant embedding is not positive semidefinite "
                         "(negative spectral share " +
                         std::to_string(share) + ")");
  }
  if (emb.clipped) {
    sample.warnings.push_back("embedding eigenvalues clipped, negative share " +
                              std::to_string(emb.clipped_share));
  }
  if (emb.saturated_lags) {
    sample.warnings.push_back("correlation saturated beyond its tabulated range "
                              "for embedding padding lags");
  }

  const Eigen::Index m = emb.length;
  std::vector<std::complex<double>> spectrum(static_cast<std::size_t>(m));
  const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m));
  for (Eigen::Index k = 0; k < m; ++k) {
    const double scale = std::sqrt(std::max(0.0, emb.eigenvalues(k)));
    const double a = rng.normal(static_cast<std::uint64_t>(2 * k));
    const double b = rng.normal(static_cast<std::uint64_t>(2 * k + 1));
    spectrum[static_cast<std::size_t>(k)] = {scale * a * inv_sqrt_m,
                                             scale * b * inv_sqrt_m};
  }
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> transformed;
  fft.fwd(transformed, spectrum);

  sample.values.resize(n_points);
  for (Eigen::Index k = 0; k < n_points; ++k) {
    sample.values(k) = transformed[static_cast<std::size_t>(k)].real();
  }
  return sample;
}

CovCheck empirical_cov_check(const std::vector<FieldSample>& samples,
                             const RadialCorrelation& corr) {
  if (samples.size() < 2) {
    throw DomainError("need at least two samples for an empirical covariance");
  }
  const Eigen::MatrixXd& pts = samples.front().points;
  for (const auto& s : samples) {
    if (s.points.rows() != pts.rows() || s.points.cols() != pts.cols() ||
        s.points != pts) {
      throw MismatchedPointsError("samples are not on a common point set");
    }
  }
  const Eigen::Index n = pts.rows();
  const double count = static_cast<double>(samples.size());

  // Known-mean estimator with compensated accumulation.
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd sumsq = Eigen::MatrixXd::Zero(n, n);
  for (const auto& s : samples) {
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i; j < n; ++j) {
        const double prod = s.values(i) * s.values(j);
        const double y = prod - comp(i, j);
        const double t = sum(i, j) + y;
        comp(i, j) = (t - sum(i, j)) - y;
        sum(i, j) = t;
        sumsq(i, j) += prod * prod;
      }
    }
  }

  CovCheck check;
  check.table.reserve(static_cast<std::size_t>(n * (n + 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i) {
    if (sum(i, i) / count < 1e-12) check.degenerate = true;
    for (Eigen::Index j = i; j < n; ++j) {
      const double mean = sum(i, j) / count;
      const double second = sumsq(i, j) / count;
      const double var_est = std::max(0.0, second - mean * mean);
      const double r = (pts.row(i) - pts.row(j)).norm();
      const double target = (i == j) ? 1.0 : corr(r);
      check.table.push_back({i, j, target, mean, std::sqrt(var_est / count)});
      check.max_abs_deviation =
          std::max(check.max_abs_deviation, std::abs(mean - target));
    }
  }
  return check;
}

}  // namespace macropeaks

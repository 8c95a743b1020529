#pragma once

#include <Eigen/Core>
#include <memory>
#include <string>
#include <vector>

#include "macropeaks/interpolation.hpp"
#include "macropeaks/quadrature.hpp"

namespace macropeaks {

// Spatial correlation f and/or spectral measure fhat of the driving noise.
// Fourier convention: fhat(xi) = \int f(x) exp(-i xi . x) dx, so the Dirac
// correlation (white noise) has fhat = 1.
struct CorrelationModel {
  enum class Kind { WhiteNoise, Riesz, Exponential, GaussianCorr, LogDecay, Tabulated };

  Kind kind = Kind::WhiteNoise;
  int dimension = 1;
  double beta = 0.5;    // Riesz exponent, 0 < beta < dimension
  double c = 1.0;       // Riesz / LogDecay amplitude
  double lambda = 1.0;  // Exponential rate
  double sigma = 1.0;   // GaussianCorr width
  std::shared_ptr<const MonotoneCubic> density_table;  // Tabulated radial density

  static CorrelationModel white_noise(int d = 1);
  static CorrelationModel riesz(double beta, double c = 1.0, int d = 1);
  static CorrelationModel exponential(double lambda, int d = 1);
  static CorrelationModel gaussian(double sigma, int d = 1);
  static CorrelationModel log_decay(double c = 1.0, int d = 1);
  static CorrelationModel tabulated(const Eigen::VectorXd& radii,
                                    const Eigen::VectorXd& density, int d = 1);

  bool has_density() const { return kind != Kind::LogDecay; }
  bool is_function_kernel() const {
    return kind == Kind::Riesz || kind == Kind::Exponential ||
           kind == Kind::GaussianCorr || kind == Kind::LogDecay;
  }
  std::string kind_name() const;
};

enum class ConditionId { Dalang, Reinforced, Mixing };

struct ConditionReport {
  ConditionId id = ConditionId::Dalang;
  double eta = 1.0;  // exponent on (1 + |xi|^alpha); 1 for the Dalang case
  bool satisfied = false;
  double value = 0.0;  // integral when satisfied, +inf otherwise
  double error = 0.0;
  std::string note;  // divergence witness or bound provenance
};

// Pointwise correlation f at radius r. Throws NotAFunctionError for white
// noise and tabulated-density models, DomainError for Riesz at r = 0.
double correlation_at(const CorrelationModel& model, double r);

// Spectral density fhat at a frequency vector; NoDensityError when the model
// is configured as a measure without density (LogDecay).
double spectral_density_at(const CorrelationModel& model,
                           const Eigen::Ref<const Eigen::VectorXd>& xi);
double spectral_density_radial(const CorrelationModel& model, double r);

// \int fhat(dxi) / (1 + |xi|^alpha)^eta with divergence decided by the
// model's closed-form tail exponent before any quadrature runs.
ConditionReport check_dalang(const CorrelationModel& model, double alpha);
ConditionReport check_reinforced(const CorrelationModel& model, double alpha,
                                 double eta);

// Re \int exp(i xi . z) fhat(dxi) / (1 + |xi|^alpha); requires the Dalang
// integral to be finite.
double mixing_functional(const CorrelationModel& model, double alpha,
                         const Eigen::Ref<const Eigen::VectorXd>& z);
double mixing_functional_radial(const CorrelationModel& model, double alpha,
                                double z_norm);

}  // namespace macropeaks

#pragma once

#include <Eigen/Core>
#include <memory>

#include "macropeaks/interpolation.hpp"
#include "macropeaks/spectral.hpp"

namespace macropeaks {

// Mild-solution covariance targets: the fractional heat equation
// d/dt u = -(-Laplace)^{alpha/2} u + noise, or the wave equation
// d^2/dt^2 u = Laplace u + noise, both with zero initial data.
struct EquationSpec {
  enum class Type { Heat, Wave };

  Type type = Type::Heat;
  double alpha = 2.0;  // fractional order, heat only
  CorrelationModel model;

  static EquationSpec heat(const CorrelationModel& model, double alpha = 2.0);
  static EquationSpec wave(const CorrelationModel& model);
};

struct CovEvaluation {
  double t1 = 0.0;
  double t2 = 0.0;
  double lag = 0.0;  // |z|
  double value = 0.0;
  double error = 0.0;
};

// E[Z(t, x) Z(t, x+z)] by spectral quadrature,
//   (2 pi)^{-d} \int w_t(|xi|) exp(i xi . z) fhat(d xi),
// with w the time-integrated squared propagator transform.
CovEvaluation heat_covariance(const EquationSpec& spec, double t, double lag);
// Mixed-time extension, symmetric in (t1, t2); equals heat_covariance at t1 = t2.
CovEvaluation heat_covariance_st(const EquationSpec& spec, double t1, double t2,
                                 double lag);
CovEvaluation wave_covariance(const EquationSpec& spec, double t, double lag);

// Dispatch on the equation type (equal-time covariance).
CovEvaluation covariance(const EquationSpec& spec, double t, double lag);

// Variance E[Z(t,x)^2]; strictly increasing in t, positive for t > 0.
double variance(const EquationSpec& spec, double t);

struct CorrelationGrid {
  double max_lag = 1024.0;
  double first_lag = 0.25;
  int points_per_decade = 16;
  double vanish_threshold = 0.05;
};

// Radial correlation rho_t(r) = cov(t, r) / var(t) tabulated on a geometric
// lag grid. Throws NonVanishingCorrelationError when the terminal value stays
// above the threshold: the model then falls outside the vanishing-correlation
// hypothesis at this range.
class CorrelationTable {
 public:
  CorrelationTable() = default;
  CorrelationTable(Eigen::VectorXd lags, Eigen::VectorXd values, double variance,
                   bool non_increasing, double vanish_threshold);

  double operator()(double lag) const;  // monotone-cubic, no extrapolation

  const Eigen::VectorXd& lags() const { return lags_; }
  const Eigen::VectorXd& values() const { return values_; }
  double variance() const { return variance_; }
  bool non_increasing() const { return non_increasing_; }
  double terminal_value() const { return values_(values_.size() - 1); }
  double max_lag() const { return lags_(lags_.size() - 1); }
  bool vanishing() const { return std::abs(terminal_value()) < threshold_; }

 private:
  Eigen::VectorXd lags_;
  Eigen::VectorXd values_;
  double variance_ = 1.0;
  bool non_increasing_ = false;
  double threshold_ = 0.05;
  std::shared_ptr<const MonotoneCubic> interp_;
};

CorrelationTable correlation_function(const EquationSpec& spec, double t,
                                      const CorrelationGrid& grid = {});

}  // namespace macropeaks

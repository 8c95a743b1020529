#include "macropeaks/covariance.hpp"

#include <cmath>
#include <vector>

#include "macropeaks/errors.hpp"
#include "radial_parts.hpp"

namespace macropeaks {

namespace {

constexpr double kQuadTol = 1e-9;

CovEvaluation spectral_covariance(const EquationSpec& spec, double t1, double t2,
                                  double lag, const detail::RadialPart& weight) {
  const int d = spec.model.dimension;
  const auto density = detail::density_part(spec.model, kQuadTol);
  const auto quad =
      detail::integrate_product(d, std::abs(lag), density, weight, kQuadTol);
  if (!quad.converged) {
    throw QuadratureError("covariance quadrature did not converge");
  }
  const double norm = std::pow(2.0 * M_PI, -d);
  CovEvaluation out;
  out.t1 = t1;
  out.t2 = t2;
  out.lag = std::abs(lag);
  out.value = norm * quad.value;
  out.error = norm * quad.error;
  return out;
}

}  // namespace

EquationSpec EquationSpec::heat(const CorrelationModel& model, double alpha) {
  if (!(alpha > 0.0) || alpha > 2.0) {
    throw DomainError("fractional order alpha must lie in (0, 2]");
  }
  const auto dalang = check_dalang(model, alpha);
  if (!dalang.satisfied) {
    throw UnsatisfiedConditionError(
        "no random-field solution: the Dalang integral diverges (" + dalang.note +
        ")");
  }
  EquationSpec spec;
  spec.type = Type::Heat;
  spec.alpha = alpha;
  spec.model = model;
  return spec;
}

EquationSpec EquationSpec::wave(const CorrelationModel& model) {
  if (model.dimension > 3) {
    throw DomainError("wave solutions are handled for d in {1,2,3}");
  }
  const auto dalang = check_dalang(model, 2.0);
  if (!dalang.satisfied) {
    throw UnsatisfiedConditionError(
        "no random-field solution: the Dalang integral diverges (" + dalang.note +
        ")");
  }
  EquationSpec spec;
  spec.type = Type::Wave;
  spec.alpha = 2.0;
  spec.model = model;
  return spec;
}

CovEvaluation heat_covariance(const EquationSpec& spec, double t, double lag) {
  if (spec.type != EquationSpec::Type::Heat) {
    throw DomainError("heat_covariance requires a heat spec");
  }
  if (!(t > 0.0)) throw DomainError("time must be positive");
  return spectral_covariance(spec, t, t, lag,
                             detail::heat_weight(spec.alpha, t, t, kQuadTol));
}

CovEvaluation heat_covariance_st(const EquationSpec& spec, double t1, double t2,
                                 double lag) {
  if (spec.type != EquationSpec::Type::Heat) {
    throw DomainError("heat_covariance_st requires a heat spec");
  }
  if (!(t1 > 0.0) || !(t2 > 0.0)) throw DomainError("times must be positive");
  return spectral_covariance(spec, t1, t2, lag,
                             detail::heat_weight(spec.alpha, t1, t2, kQuadTol));
}

CovEvaluation wave_covariance(const EquationSpec& spec, double t, double lag) {
  if (spec.type != EquationSpec::Type::Wave) {
    throw DomainError("wave_covariance requires a wave spec");
  }
  if (!(t > 0.0)) throw DomainError("time must be positive");
  return spectral_covariance(spec, t, t, lag, detail::wave_weight(t, kQuadTol));
}

CovEvaluation covariance(const EquationSpec& spec, double t, double lag) {
  return spec.type == EquationSpec::Type::Heat ? heat_covariance(spec, t, lag)
                                               : wave_covariance(spec, t, lag);
}

double variance(const EquationSpec& spec, double t) {
  const auto cov = covariance(spec, t, 0.0);
  if (!(cov.value > 0.0)) {
    throw InvalidVarianceError("variance must be strictly positive");
  }
  return cov.value;
}

CorrelationTable::CorrelationTable(Eigen::VectorXd lags, Eigen::VectorXd values,
                                   double variance, bool non_increasing,
                                   double vanish_threshold)
    : lags_(std::move(lags)),
      values_(std::move(values)),
      variance_(variance),
      non_increasing_(non_increasing),
      threshold_(vanish_threshold) {
  interp_ = std::make_shared<MonotoneCubic>(lags_, values_);
}

double CorrelationTable::operator()(double lag) const {
  if (!interp_) throw DomainError("empty correlation table");
  return (*interp_)(std::abs(lag));
}

CorrelationTable correlation_function(const EquationSpec& spec, double t,
                                      const CorrelationGrid& grid) {
  if (!(t > 0.0)) throw DomainError("time must be positive");
  if (!(grid.max_lag > grid.first_lag) || !(grid.first_lag > 0.0)) {
    throw DomainError("correlation grid needs 0 < first_lag < max_lag");
  }

  const double var = variance(spec, t);
  std::vector<double> lags{0.0};
  const double ratio = std::pow(10.0, 1.0 / grid.points_per_decade);
  for (double lag = grid.first_lag; lag < grid.max_lag; lag *= ratio) {
    lags.push_back(lag);
  }
  lags.push_back(grid.max_lag);

  Eigen::VectorXd lag_vec(static_cast<Eigen::Index>(lags.size()));
  Eigen::VectorXd val_vec(lag_vec.size());
  lag_vec(0) = 0.0;
  val_vec(0) = 1.0;
  bool non_increasing = true;
  for (Eigen::Index i = 1; i < lag_vec.size(); ++i) {
    lag_vec(i) = lags[static_cast<std::size_t>(i)];
    val_vec(i) = covariance(spec, t, lag_vec(i)).value / var;
    if (val_vec(i) > val_vec(i - 1) + 1e-9) non_increasing = false;
  }

  CorrelationTable table(lag_vec, val_vec, var, non_increasing,
                         grid.vanish_threshold);
  if (!table.vanishing()) {
    throw NonVanishingCorrelationError(
        "terminal correlation " + std::to_string(table.terminal_value()) +
        " at lag " + std::to_string(grid.max_lag) + " exceeds the threshold " +
        std::to_string(grid.vanish_threshold));
  }
  return table;
}

}  // namespace macropeaks

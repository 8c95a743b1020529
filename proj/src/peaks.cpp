#include "macropeaks/peaks.hpp"

#include <cmath>

#include "macropeaks/errors.hpp"

namespace macropeaks {

StretchFactor StretchFactor::power_law(double delta) {
  if (!(delta > 0.0)) throw DomainError("stretch exponent must be positive");
  StretchFactor g;
  g.family_ = Family::PowerLaw;
  g.delta_ = delta;
  return g;
}

StretchFactor StretchFactor::exponential() {
  StretchFactor g;
  g.family_ = Family::Exp;
  return g;
}

StretchFactor StretchFactor::tabulated(const Eigen::VectorXd& r,
                                       const Eigen::VectorXd& g) {
  for (Eigen::Index i = 1; i < g.size(); ++i) {
    if (!(g(i) > g(i - 1))) {
      throw DomainError("tabulated stretch factor must be strictly increasing");
    }
  }
  StretchFactor s;
  s.family_ = Family::Tabulated;
  s.table_ = std::make_shared<MonotoneCubic>(r, g);
  return s;
}

double StretchFactor::operator()(double r) const {
  switch (family_) {
    case Family::PowerLaw:
      return std::pow(r, delta_);
    case Family::Exp:
      return std::exp(r);
    case Family::Tabulated:
      try {
        return (*table_)(r);
      } catch (const TableRangeError&) {
        throw PreconditionError("stretch factor queried outside its table");
      }
  }
  throw DomainError("unknown stretch family");
}

double StretchFactor::inverse(double level) const {
  switch (family_) {
    case Family::PowerLaw:
      if (!(level > 0.0)) throw PreconditionError("stretch level must be positive");
      return std::pow(level, 1.0 / delta_);
    case Family::Exp:
      if (!(level > 0.0)) throw PreconditionError("stretch level must be positive");
      return std::log(level);
    case Family::Tabulated: {
      const auto& values = table_->values();
      if (level < values(0) || level > values(values.size() - 1)) {
        throw PreconditionError(
            "stretch factor is bounded below the requested level");
      }
      // bisection on the monotone interpolant
      double lo = table_->min_x();
      double hi = table_->max_x();
      for (int i = 0; i < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        if ((*table_)(mid) < level) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
  }
  throw DomainError("unknown stretch family");
}

std::string StretchFactor::describe() const {
  switch (family_) {
    case Family::PowerLaw:
      return "powerlaw(delta=" + std::to_string(delta_) + ")";
    case Family::Exp:
      return "exp";
    case Family::Tabulated:
      return "tabulated";
  }
  return "unknown";
}

ExceedanceSet extract_spatial_peaks(const FieldSample& field,
                                    const GaugeParams& gauge) {
  if (!(gauge.gamma > 0.0)) throw DomainError("gamma must be positive");
  if (!(gauge.variance > 0.0)) throw InvalidVarianceError("variance must be positive");

  std::vector<Eigen::Index> keep;
  std::vector<double> thresholds;
  for (Eigen::Index i = 0; i < field.points.rows(); ++i) {
    const double radius = field.points.row(i).norm();
    if (!(radius > gauge.min_radius)) continue;
    const double threshold =
        std::sqrt(2.0 * gauge.gamma * gauge.variance * std::log(radius));
    if (field.values(i) >= threshold) {
      keep.push_back(i);
      thresholds.push_back(threshold);
    }
  }

  ExceedanceSet set;
  set.points.resize(static_cast<Eigen::Index>(keep.size()), field.points.cols());
  set.values.resize(set.points.rows());
  set.thresholds.resize(set.points.rows());
  for (Eigen::Index i = 0; i < set.points.rows(); ++i) {
    const Eigen::Index src = keep[static_cast<std::size_t>(i)];
    set.points.row(i) = field.points.row(src);
    set.values(i) = field.values(src);
    set.thresholds(i) = thresholds[static_cast<std::size_t>(i)];
  }
  set.gamma = gauge.gamma;
  set.variance = gauge.variance;
  set.source_seed = field.seed;
  set.source_replicate = field.replicate;
  return set;
}

ExceedanceSet extract_spacetime_peaks(const FieldSample& field, double gamma,
                                      const std::function<double(double)>& variance_at,
                                      const StretchFactor& stretch) {
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  if (field.points.cols() < 2) {
    throw DomainError("space-time samples need a time column plus space");
  }

  std::vector<Eigen::Index> keep;
  std::vector<double> thresholds;
  std::vector<double> stretched;
  for (Eigen::Index i = 0; i < field.points.rows(); ++i) {
    const double t = field.points(i, 0);
    const double v = variance_at(t);
    if (!(v > 0.0)) throw InvalidVarianceError("variance must be positive");
    const double g = stretch(t);
    const double coord = std::exp(g);
    if (!(coord > M_E)) continue;  // the stretched time must land beyond e
    const double threshold = std::sqrt(2.0 * gamma * v * g);
    if (field.values(i) >= threshold) {
      keep.push_back(i);
      thresholds.push_back(threshold);
      stretched.push_back(coord);
    }
  }

  ExceedanceSet set;
  set.points.resize(static_cast<Eigen::Index>(keep.size()), field.points.cols());
  set.values.resize(set.points.rows());
  set.thresholds.resize(set.points.rows());
  for (Eigen::Index i = 0; i < set.points.rows(); ++i) {
    const Eigen::Index src = keep[static_cast<std::size_t>(i)];
    set.points(i, 0) = stretched[static_cast<std::size_t>(i)];
    set.points.rightCols(field.points.cols() - 1).row(i) =
        field.points.rightCols(field.points.cols() - 1).row(src);
    set.values(i) = field.values(src);
    set.thresholds(i) = thresholds[static_cast<std::size_t>(i)];
  }
  set.gamma = gamma;
  set.variance = -1.0;
  set.stretch = stretch.describe();
  set.source_seed = field.seed;
  set.source_replicate = field.replicate;
  return set;
}

StretchValidation validate_stretch(
    const std::function<double(double, double)>& corr_st, const StretchFactor& g,
    const std::vector<double>& epsilons, int n_lo, int n_hi, double threshold) {
  if (n_hi <= n_lo) throw DomainError("need a nontrivial level grid");

  // the factor must be strictly increasing to infinity across the grid
  double prev_r = -1e300;
  for (int n = n_lo; n <= n_hi; ++n) {
    const double r = g.inverse(static_cast<double>(n));
    if (!(r > prev_r)) {
      throw PreconditionError("stretch factor is not strictly increasing");
    }
    prev_r = r;
  }

  StretchValidation out;
  out.pass = true;
  for (const double eps : epsilons) {
    std::vector<double> values;
    for (int n = n_lo; n <= n_hi; ++n) {
      const double t = g.inverse(static_cast<double>(n));
      values.push_back(corr_st(t, std::exp(n * eps)));
    }
    StretchValidation::Row row;
    row.epsilon = eps;
    row.terminal = values.back();
    row.vanishes = std::abs(row.terminal) < threshold;
    row.tail_monotone = true;
    for (std::size_t i = values.size() / 2; i + 1 < values.size(); ++i) {
      if (values[i + 1] > values[i] + 1e-12) {
        row.tail_monotone = false;
        break;
      }
    }
    out.pass = out.pass && row.vanishes && row.tail_monotone;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace macropeaks

#pragma once

#include <Eigen/Core>

#include "macropeaks/errors.hpp"

namespace macropeaks {

// Fritsch-Carlson monotone cubic interpolant on a sorted grid. Preserves the
// monotonicity of the data between nodes; evaluation outside the grid throws
// (radial tables are never extrapolated implicitly).
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(Eigen::VectorXd x, Eigen::VectorXd y);

  double operator()(double x) const;

  double min_x() const { return x_.size() ? x_(0) : 0.0; }
  double max_x() const { return x_.size() ? x_(x_.size() - 1) : 0.0; }
  Eigen::Index size() const { return x_.size(); }
  const Eigen::VectorXd& nodes() const { return x_; }
  const Eigen::VectorXd& values() const { return y_; }

 private:
  Eigen::VectorXd x_;
  Eigen::VectorXd y_;
  Eigen::VectorXd slope_;  // node derivatives
};

}  // namespace macropeaks

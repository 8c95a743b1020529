#include "macropeaks/interpolation.hpp"

#include <cmath>

namespace macropeaks {

MonotoneCubic::MonotoneCubic(Eigen::VectorXd x, Eigen::VectorXd y)
    : x_(std::move(x)), y_(std::move(y)) {
  const Eigen::Index n = x_.size();
  if (n < 2 || y_.size() != n) {
    throw DomainError("interpolation table needs >= 2 matching nodes");
  }
  for (Eigen::Index i = 1; i < n; ++i) {
    if (!(x_(i) > x_(i - 1))) {
      throw DomainError("interpolation nodes must be strictly increasing");
    }
  }

  Eigen::VectorXd secant(n - 1);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    secant(i) = (y_(i + 1) - y_(i)) / (x_(i + 1) - x_(i));
  }

  slope_.resize(n);
  slope_(0) = secant(0);
  slope_(n - 1) = secant(n - 2);
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    slope_(i) = (secant(i - 1) * secant(i) > 0.0)
                    ? 0.5 * (secant(i - 1) + secant(i))
                    : 0.0;
  }
  // Fritsch-Carlson limiter.
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (secant(i) == 0.0) {
      slope_(i) = 0.0;
      slope_(i + 1) = 0.0;
      continue;
    }
    const double a = slope_(i) / secant(i);
    const double b = slope_(i + 1) / secant(i);
    const double norm = a * a + b * b;
    if (norm > 9.0) {
      const double scale = 3.0 / std::sqrt(norm);
      slope_(i) = scale * a * secant(i);
      slope_(i + 1) = scale * b * secant(i);
    }
  }
}

double MonotoneCubic::operator()(double x) const {
  const Eigen::Index n = x_.size();
  if (n == 0) throw DomainError("empty interpolation table");
  if (x < x_(0) || x > x_(n - 1)) {
    throw TableRangeError("interpolation query outside the tabulated range");
  }
  Eigen::Index lo = 0;
  Eigen::Index hi = n - 1;
  while (hi - lo > 1) {
    const Eigen::Index mid = (lo + hi) / 2;
    if (x_(mid) <= x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double h = x_(lo + 1) - x_(lo);
  const double t = (x - x_(lo)) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * y_(lo) + h10 * h * slope_(lo) + h01 * y_(lo + 1) +
         h11 * h * slope_(lo + 1);
}

}  // namespace macropeaks

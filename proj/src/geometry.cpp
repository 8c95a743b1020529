#include "macropeaks/geometry.hpp"

#include <cmath>

#include "macropeaks/errors.hpp"

namespace macropeaks {

namespace {

bool inside_v(const Eigen::Ref<const Eigen::RowVectorXd>& x, double radius) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!(x(i) >= -radius && x(i) < radius)) return false;
  }
  return true;
}

}  // namespace

int shell_of(const Eigen::Ref<const Eigen::RowVectorXd>& x) {
  const double m = x.cwiseAbs().maxCoeff();
  int n = std::max(0, static_cast<int>(std::floor(std::log(std::max(m, 1e-300)))));
  while (n > 0 && inside_v(x, std::exp(n - 1))) --n;
  while (!inside_v(x, std::exp(n))) ++n;
  return n;
}

int shell_of(double x) {
  Eigen::RowVectorXd v(1);
  v << x;
  return shell_of(v);
}

Eigen::VectorXd skeleton_axis(int n, double theta) {
  if (n < 1) throw DomainError("skeleton shell index must be >= 1");
  if (!(theta > 0.0 && theta < 1.0)) {
    throw DomainError("skeleton parameter theta must lie in (0, 1)");
  }
  const double base = std::exp(n);
  const double spacing = std::exp(n * theta);
  const auto count =
      static_cast<Eigen::Index>(std::floor(std::exp(n * (1.0 - theta)))) + 1;
  Eigen::VectorXd anchors(count);
  for (Eigen::Index j = 0; j < count; ++j) {
    anchors(j) = base + spacing * static_cast<double>(j);
  }
  return anchors;
}

Eigen::MatrixXd skeleton_points(int n, double theta, int d,
                                std::size_t max_points) {
  if (d < 1) throw DomainError("dimension must be >= 1");
  const Eigen::VectorXd axis = skeleton_axis(n, theta);
  const auto per_axis = static_cast<std::size_t>(axis.size());
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) {
    if (total > max_points / per_axis + 1) {
      throw SizeCapError("skeleton point count exceeds the configured cap");
    }
    total *= per_axis;
  }
  if (total > max_points) {
    throw SizeCapError("skeleton point count exceeds the configured cap");
  }

  Eigen::MatrixXd points(static_cast<Eigen::Index>(total), d);
  for (Eigen::Index row = 0; row < points.rows(); ++row) {
    auto rest = static_cast<std::size_t>(row);
    for (int axis_i = 0; axis_i < d; ++axis_i) {
      points(row, axis_i) = axis(static_cast<Eigen::Index>(rest % per_axis));
      rest /= per_axis;
    }
  }
  return points;
}

Subskeleton subskeleton_in_cube(int n, double delta, const Cube& cube,
                                std::size_t max_points) {
  const int d = static_cast<int>(cube.corner.size());
  if (d < 1) throw DomainError("cube must have at least one axis");
  const double theta = std::log(cube.side) / static_cast<double>(n);
  if (!(delta > 0.0) || !(delta < theta)) {
    throw InvalidRangeError("need 0 < delta < theta for a sub-skeleton");
  }

  const Eigen::VectorXd axis = skeleton_axis(n, delta);
  const double spacing = std::exp(n * delta);
  std::vector<std::vector<double>> per_axis(static_cast<std::size_t>(d));
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) {
    const double lo = cube.corner(i);
    const double hi = cube.corner(i) + cube.side;
    auto& keep = per_axis[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < axis.size(); ++j) {
      if (axis(j) >= lo && axis(j) < hi) keep.push_back(axis(j));
    }
    if (keep.empty()) {
      return {Eigen::MatrixXd(0, d), spacing, 1.0};
    }
    total *= keep.size();
    if (total > max_points) {
      throw SizeCapError("sub-skeleton point count exceeds the configured cap");
    }
  }

  Eigen::MatrixXd points(static_cast<Eigen::Index>(total), d);
  for (Eigen::Index row = 0; row < points.rows(); ++row) {
    auto rest = static_cast<std::size_t>(row);
    for (int i = 0; i < d; ++i) {
      const auto& keep = per_axis[static_cast<std::size_t>(i)];
      points(row, i) = keep[rest % keep.size()];
      rest /= keep.size();
    }
  }

  const double expected = std::exp(n * d * (theta - delta));
  const double m = static_cast<double>(total);
  const double ratio = std::max(m / expected, expected / m);
  return {std::move(points), spacing, ratio};
}

Eigen::MatrixXd block_set_points(int n, double q, int k, int ambient_dim,
                                 double spacing, std::size_t max_points) {
  if (n < 1) throw DomainError("block-set shell index must be >= 1");
  if (!(q > 1.0)) throw DomainError("block parameter q must exceed 1");
  if (k < 1 || k > ambient_dim) {
    throw DomainError("compressed axis count k must lie in [1, ambient_dim]");
  }
  if (!(spacing > 0.0)) throw DomainError("spacing must be positive");

  const double split = std::exp(static_cast<double>(n) / q);
  const double top = std::exp(n + 1);

  std::vector<std::vector<double>> per_axis(static_cast<std::size_t>(ambient_dim));
  std::size_t total = 1;
  for (int i = 0; i < ambient_dim; ++i) {
    const double lo = (i < k) ? 0.0 : split;
    const double hi = (i < k) ? split : top;
    auto& keep = per_axis[static_cast<std::size_t>(i)];
    for (double v = spacing * std::ceil(lo / spacing + 1e-12);
         v <= hi; v += spacing) {
      if (v > lo) keep.push_back(v);
    }
    if (keep.empty()) keep.push_back(hi);  // degenerate thin block
    total *= keep.size();
    if (total > max_points) {
      throw SizeCapError("block-set point count exceeds the configured cap");
    }
  }

  Eigen::MatrixXd points(static_cast<Eigen::Index>(total), ambient_dim);
  for (Eigen::Index row = 0; row < points.rows(); ++row) {
    auto rest = static_cast<std::size_t>(row);
    for (int i = 0; i < ambient_dim; ++i) {
      const auto& keep = per_axis[static_cast<std::size_t>(i)];
      points(row, i) = keep[rest % keep.size()];
      rest /= keep.size();
    }
  }
  return points;
}

}  // namespace macropeaks

#include "macropeaks/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_set>
#include <set>

#include "macropeaks/errors.hpp"

namespace macropeaks {

namespace {

struct Fit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  int count = 0;
};

Fit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  Fit fit;
  fit.count = static_cast<int>(x.size());
  if (fit.count < 2) return fit;
  double sx = 0.0, sy = 0.0;
  for (int i = 0; i < fit.count; ++i) {
    sx += x[static_cast<std::size_t>(i)];
    sy += y[static_cast<std::size_t>(i)];
  }
  const double mx = sx / fit.count;
  const double my = sy / fit.count;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < fit.count; ++i) {
    const double dx = x[static_cast<std::size_t>(i)] - mx;
    sxx += dx * dx;
    sxy += dx * (y[static_cast<std::size_t>(i)] - my);
  }
  if (sxx == 0.0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (int i = 0; i < fit.count; ++i) {
    const double pred =
        fit.intercept + fit.slope * x[static_cast<std::size_t>(i)];
    const double r = y[static_cast<std::size_t>(i)] - pred;
    ss_res += r * r;
  }
  if (fit.count > 2) {
    fit.slope_stderr = std::sqrt(ss_res / (fit.count - 2) / sxx);
  }
  return fit;
}

// d = 1 shell components: S_0 = [-1, 1); S_n = [-e^n, -e^{n-1}) u [e^{n-1}, e^n).
std::vector<std::pair<double, double>> shell_components_1d(int n) {
  if (n == 0) return {{-1.0, 1.0}};
  const double inner = std::exp(n - 1);
  const double outer = std::exp(n);
  return {{-outer, -inner}, {inner, outer}};
}

// Exact 1-d covering cost of sorted points inside one component [lo, hi).
// Optimal covers use contiguous runs; interval side is max(1, span) with the
// boundary point covered by the +0 width convention. Ties prefer fewer cubes.
void dp_cover_component(const std::vector<double>& pts, double lo, double hi,
                        double scale, double rho, double& cost_out,
                        std::vector<Cube>& cubes) {
  const std::size_t m = pts.size();
  if (m == 0) {
    cost_out = 0.0;
    return;
  }
  std::vector<double> cost(m + 1, 0.0);
  std::vector<int> cube_count(m + 1, 0);
  std::vector<std::size_t> cut(m + 1, 0);
  for (std::size_t i = 1; i <= m; ++i) {
    cost[i] = std::numeric_limits<double>::infinity();
    for (std::size_t j = i; j >= 1; --j) {
      const double span = pts[i - 1] - pts[j - 1];
      const double side = std::max(1.0, span);
      const double w = std::pow(side / scale, rho);
      if (w > cost[i]) break;  // wider runs only get costlier
      const double total = cost[j - 1] + w;
      const int cubes_total = cube_count[j - 1] + 1;
      if (total < cost[i] - 1e-15 ||
          (total <= cost[i] + 1e-15 && cubes_total < cube_count[i])) {
        cost[i] = total;
        cube_count[i] = cubes_total;
        cut[i] = j - 1;
      }
      if (j == 1) break;
    }
  }
  cost_out = cost[m];

  std::size_t end = m;
  std::vector<Cube> local;
  while (end > 0) {
    const std::size_t start = cut[end];
    const double span = pts[end - 1] - pts[start];
    const double side = std::max(1.0, span);
    Cube cube;
    cube.corner = Eigen::VectorXd::Constant(1, std::min(pts[start], hi - side));
    cube.corner(0) = std::max(cube.corner(0), lo);
    cube.side = side;
    local.push_back(std::move(cube));
    end = start;
  }
  cubes.insert(cubes.end(), local.rbegin(), local.rend());
}

CoveringResult nu_exact_1d(const Eigen::MatrixXd& points, int n, double rho) {
  CoveringResult result;
  result.shell = n;
  result.rho = rho;
  result.method = CoveringResult::Method::ExactDP;
  const double scale = std::exp(n);
  double total = 0.0;
  for (const auto& [lo, hi] : shell_components_1d(n)) {
    std::vector<double> inside;
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      const double x = points(i, 0);
      if (x >= lo && x < hi && shell_of(x) == n) inside.push_back(x);
    }
    std::sort(inside.begin(), inside.end());
    double cost = 0.0;
    dp_cover_component(inside, lo, hi, scale, rho, cost, result.cubes);
    total += cost;
  }
  result.value = total;
  return result;
}

// Slab id inside S_n for d >= 2: (axis with the largest |coordinate|, sign).
// Cubes confined to a slab avoid the inner hole V_{n-1} by construction.
struct SlabKey {
  int axis;
  int sign;
  bool operator<(const SlabKey& other) const {
    return std::tie(axis, sign) < std::tie(other.axis, other.sign);
  }
};

// Exact packing of nonnegative cell indices into one 64-bit key (d <= 3,
// 21 bits per axis).
std::uint64_t pack_cell(const long* cell, int d) {
  std::uint64_t key = 0;
  for (int a = 0; a < d; ++a) {
    if (cell[a] < 0 || cell[a] >= (1L << 21)) {
      throw SizeCapError("cell index exceeds the packed-key range");
    }
    key = (key << 21) | static_cast<std::uint64_t>(cell[a]);
  }
  return key;
}

CoveringResult nu_greedy(const Eigen::MatrixXd& points, int n, double rho) {
  CoveringResult result;
  result.shell = n;
  result.rho = rho;
  result.method = CoveringResult::Method::Greedy;
  const int d = static_cast<int>(points.cols());
  if (d > 3) throw DomainError("greedy covers are implemented for d <= 3");
  const double scale = std::exp(n);
  const double inner = (n >= 1) ? std::exp(n - 1) : 0.0;
  const double thickness = scale - inner;

  std::map<SlabKey, std::vector<Eigen::Index>> slabs;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    if (shell_of(points.row(i)) != n) continue;
    Eigen::Index axis = 0;
    points.row(i).cwiseAbs().maxCoeff(&axis);
    slabs[{static_cast<int>(axis), points(i, axis) >= 0.0 ? 1 : -1}].push_back(i);
  }

  // Candidate sides are capped well below the shell thickness: shell-size
  // cubes cover any thin set at O(1) cost and carry no dimensional signal.
  const double side_cap = std::max(1.0, thickness / 4.0);

  double total = 0.0;
  std::unordered_set<std::uint64_t> cells;
  std::vector<std::uint64_t> best_cells;
  for (const auto& [key, idx] : slabs) {
    // slab box: the dominant axis pinned to [sign*inner, sign*scale)
    Eigen::VectorXd lo = Eigen::VectorXd::Constant(d, -scale);
    Eigen::VectorXd hi = Eigen::VectorXd::Constant(d, scale);
    if (key.sign > 0) {
      lo(key.axis) = inner;
    } else {
      hi(key.axis) = -inner;
    }

    // dyadic ladder plus shell-proportional and data-extent sides, so the
    // chosen scale tracks the set smoothly across shells
    std::vector<double> sides{1.0};
    while (sides.back() * 2.0 <= side_cap) sides.push_back(sides.back() * 2.0);
    sides.push_back(side_cap);
    for (int a = 0; a < d; ++a) {
      double ext_lo = 1e300;
      double ext_hi = -1e300;
      for (const Eigen::Index i : idx) {
        ext_lo = std::min(ext_lo, points(i, a));
        ext_hi = std::max(ext_hi, points(i, a));
      }
      double extent = ext_hi - ext_lo;
      for (int halving = 0; halving < 4 && extent >= 1.0; ++halving) {
        sides.push_back(std::min(side_cap, extent));
        extent *= 0.5;
      }
    }
    std::sort(sides.begin(), sides.end());
    sides.erase(std::unique(sides.begin(), sides.end()), sides.end());

    double best_cost = std::numeric_limits<double>::infinity();
    double best_side = 1.0;
    for (const double side : sides) {
      cells.clear();
      cells.reserve(idx.size());
      long cell[3] = {0, 0, 0};
      for (const Eigen::Index i : idx) {
        for (int a = 0; a < d; ++a) {
          cell[a] = static_cast<long>(std::floor((points(i, a) - lo(a)) / side));
        }
        cells.insert(pack_cell(cell, d));
      }
      const double cost =
          static_cast<double>(cells.size()) * std::pow(side / scale, rho);
      if (cost < best_cost) {
        best_cost = cost;
        best_side = side;
        best_cells.assign(cells.begin(), cells.end());
      }
    }
    total += best_cost;
    for (const std::uint64_t packed : best_cells) {
      Cube cube;
      cube.corner.resize(d);
      long cell[3] = {0, 0, 0};
      for (int a = 0; a < d; ++a) {
        cell[a] = static_cast<long>((packed >> (21 * (d - 1 - a))) &
                                    ((1ULL << 21) - 1));
      }
      for (int a = 0; a < d; ++a) {
        double corner = lo(a) + best_side * static_cast<double>(cell[a]);
        corner = std::min(corner, hi(a) - best_side);
        cube.corner(a) = corner;
      }
      cube.side = best_side;
      result.cubes.push_back(std::move(cube));
    }
  }
  result.value = total;
  return result;
}

Eigen::MatrixXd filter_beyond_e(const Eigen::MatrixXd& points) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    if (points.row(i).norm() > M_E) keep.push_back(i);
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(keep.size()), points.cols());
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    out.row(i) = points.row(keep[static_cast<std::size_t>(i)]);
  }
  return out;
}

}  // namespace

CoveringResult nu_n_rho(const Eigen::MatrixXd& points, int n, double rho) {
  if (!(rho > 0.0)) throw DomainError("covering exponent rho must be positive");
  if (n < 0) throw DomainError("shell index must be nonnegative");
  if (points.cols() < 1) throw DomainError("points need at least one column");
  if (points.cols() == 1) return nu_exact_1d(points, n, rho);
  return nu_greedy(points, n, rho);
}

CoveringSeries covering_series(const Eigen::MatrixXd& points, double rho,
                               int n_max, const TrendOptions& options) {
  if (n_max < 4) throw DomainError("trend classification needs n_max >= 4");
  const Eigen::MatrixXd kept = filter_beyond_e(points);

  CoveringSeries series;
  for (int n = 1; n <= n_max; ++n) {
    series.shells.push_back(n);
    series.values.push_back(nu_n_rho(kept, n, rho).value);
  }

  const int fit_lo = n_max - (n_max - 1) / 2;
  std::vector<double> xs, ys;
  int zeros = 0;
  for (int n = fit_lo; n <= n_max; ++n) {
    const double v = series.values[static_cast<std::size_t>(n - 1)];
    if (v > 0.0) {
      xs.push_back(static_cast<double>(n));
      ys.push_back(std::log(v));
    } else {
      ++zeros;
    }
  }

  if (xs.size() < 2) {
    series.trend = SeriesTrend::Summable;  // final half (almost) vanished
    return series;
  }
  const Fit fit = least_squares(xs, ys);
  series.slope = fit.slope;
  series.level = std::exp(fit.intercept + fit.slope * n_max);
  if (zeros > static_cast<int>(xs.size())) {
    series.trend = SeriesTrend::Summable;
  } else if (fit.slope < options.summable_slope) {
    series.trend = SeriesTrend::Summable;
  } else if (fit.slope > options.divergent_slope ||
             (fit.slope >= -options.flat_band &&
              series.level >= options.level_floor)) {
    series.trend = SeriesTrend::Divergent;
  } else {
    series.trend = SeriesTrend::Inconclusive;
  }
  return series;
}

std::vector<double> unit_cube_counts(const Eigen::MatrixXd& points, int n_lo,
                                     int n_hi) {
  const Eigen::MatrixXd kept = filter_beyond_e(points);
  std::vector<std::set<std::vector<long>>> cubes(
      static_cast<std::size_t>(n_hi - n_lo + 1));
  for (Eigen::Index i = 0; i < kept.rows(); ++i) {
    const int n = shell_of(kept.row(i));
    if (n < n_lo || n > n_hi) continue;
    std::vector<long> cell(static_cast<std::size_t>(kept.cols()));
    for (Eigen::Index a = 0; a < kept.cols(); ++a) {
      cell[static_cast<std::size_t>(a)] =
          static_cast<long>(std::floor(kept(i, a)));
    }
    cubes[static_cast<std::size_t>(n - n_lo)].insert(std::move(cell));
  }
  std::vector<double> counts;
  counts.reserve(cubes.size());
  for (const auto& c : cubes) counts.push_back(static_cast<double>(c.size()));
  return counts;
}

DimensionEstimate counting_estimate_from_counts(const std::vector<int>& shells,
                                                const std::vector<double>& counts,
                                                int ambient_dim) {
  if (shells.size() != counts.size()) {
    throw DomainError("shells and counts must align");
  }
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < shells.size(); ++i) {
    if (counts[i] > 0.0) {
      xs.push_back(static_cast<double>(shells[i]));
      ys.push_back(std::log(counts[i]));
    }
  }
  if (xs.size() < 3) {
    throw InsufficientShellsError(
        "counting slope needs points in at least three shells");
  }
  const Fit fit = least_squares(xs, ys);

  DimensionEstimate est;
  est.method = DimensionEstimate::Method::CountingSlope;
  est.value = std::clamp(fit.slope, 0.0, static_cast<double>(ambient_dim));
  est.uncertainty = fit.slope_stderr;
  est.fit_lo = shells.front();
  est.fit_hi = shells.back();
  est.shells = shells;
  est.shell_data = counts;
  return est;
}

DimensionEstimate estimate_dim_counting(const Eigen::MatrixXd& points, int n_lo,
                                        int n_hi) {
  if (n_lo < 1 || n_hi < n_lo) throw DomainError("invalid shell range");
  const auto counts = unit_cube_counts(points, n_lo, n_hi);
  std::vector<int> shells;
  for (int n = n_lo; n <= n_hi; ++n) shells.push_back(n);
  return counting_estimate_from_counts(shells, counts,
                                       static_cast<int>(points.cols()));
}

DimensionEstimate estimate_dim_bisection(const Eigen::MatrixXd& points, int n_max,
                                         double tolerance,
                                         const TrendOptions& options) {
  if (!(tolerance > 0.0)) throw DomainError("tolerance must be positive");
  const int d = static_cast<int>(points.cols());
  {
    const auto counts = unit_cube_counts(points, 1, n_max);
    int nonempty = 0;
    for (double c : counts) nonempty += (c > 0.0) ? 1 : 0;
    if (nonempty < 3) {
      throw InsufficientShellsError(
          "series bisection needs points in at least three shells");
    }
  }

  double lo = 0.0;
  double hi = static_cast<double>(d);
  double strong_lo = 0.0;
  double strong_hi = static_cast<double>(d);
  bool saw_inconclusive = false;
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    const auto series = covering_series(points, mid, n_max, options);
    switch (series.trend) {
      case SeriesTrend::Divergent:
        lo = mid;
        strong_lo = std::max(strong_lo, mid);
        break;
      case SeriesTrend::Summable:
        hi = mid;
        strong_hi = std::min(strong_hi, mid);
        break;
      case SeriesTrend::Inconclusive:
        saw_inconclusive = true;
        if (series.slope < 0.0) {
          hi = mid;
        } else {
          lo = mid;
        }
        break;
    }
  }

  DimensionEstimate est;
  est.method = DimensionEstimate::Method::SeriesBisection;
  est.value = std::clamp(0.5 * (lo + hi), 0.0, static_cast<double>(d));
  est.uncertainty = 0.5 * (hi - lo);
  if (saw_inconclusive) {
    est.uncertainty =
        std::max(est.uncertainty, 0.5 * (strong_hi - strong_lo));
  }
  est.one_sided_upper = (d >= 2);
  est.fit_lo = 1;
  est.fit_hi = n_max;
  return est;
}

ThicknessReport thickness_test(const Eigen::MatrixXd& points, double theta,
                               int n_lo, int n_hi) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw DomainError("thickness parameter theta must lie in (0, 1)");
  }
  if (n_lo < 1 || n_hi < n_lo) throw DomainError("invalid shell range");
  const int d = static_cast<int>(points.cols());

  ThicknessReport report;
  report.theta = theta;
  for (int n = n_lo; n <= n_hi; ++n) {
    const double base = std::exp(n);
    const double side = std::exp(n * theta);
    const auto per_axis =
        static_cast<long>(std::floor(std::exp(n * (1.0 - theta)))) + 1;
    std::set<std::vector<long>> hit;
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      std::vector<long> idx(static_cast<std::size_t>(d));
      bool ok = true;
      for (int a = 0; a < d && ok; ++a) {
        const double offset = points(i, a) - base;
        if (offset < 0.0) {
          ok = false;
          break;
        }
        // nudge absorbs roundoff when a point sits exactly on a cube corner
        const long j = static_cast<long>(std::floor(offset / side + 1e-9));
        if (j >= per_axis) {
          ok = false;
          break;
        }
        idx[static_cast<std::size_t>(a)] = j;
      }
      if (ok) hit.insert(std::move(idx));
    }
    double total = 1.0;
    for (int a = 0; a < d; ++a) total *= static_cast<double>(per_axis);
    report.shells.push_back(n);
    report.occupancy.push_back(static_cast<double>(hit.size()) / total);
  }

  report.first_full = -1;
  for (std::size_t i = report.occupancy.size(); i-- > 0;) {
    if (report.occupancy[i] >= 1.0) {
      report.first_full = report.shells[i];
    } else {
      break;
    }
  }
  report.certified = report.first_full >= 0;
  report.certified_bound =
      report.certified ? d * (1.0 - theta) : 0.0;
  return report;
}

}  // namespace macropeaks

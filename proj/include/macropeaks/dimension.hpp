#pragma once

#include <Eigen/Core>
#include <vector>

#include "macropeaks/geometry.hpp"

namespace macropeaks {

// Shell covering functional nu^n_rho: infimal cost sum (s(Q_i)/e^n)^rho over
// covers of (set intersect S_n) by cubes of side >= 1 contained in S_n.
struct CoveringResult {
  enum class Method { ExactDP, Greedy };

  int shell = 0;
  double rho = 1.0;
  double value = 0.0;
  Method method = Method::ExactDP;
  std::vector<Cube> cubes;  // realized cover
};

// d = 1: exact infimum by dynamic programming over contiguous runs of the
// sorted points (interval side max(1, span), boundary point covered by the
// +0 width convention). d >= 2: greedy multi-scale upper bound over dyadic
// grid covers per hole-avoiding slab, flagged Greedy.
CoveringResult nu_n_rho(const Eigen::MatrixXd& points, int n, double rho);

enum class SeriesTrend { Summable, Divergent, Inconclusive };

struct TrendOptions {
  double summable_slope = -0.1;
  double divergent_slope = 0.1;
  double flat_band = 0.02;    // |slope| within the band counts as flat
  double level_floor = 0.1;   // flat series above this level diverge
};

struct CoveringSeries {
  std::vector<int> shells;
  std::vector<double> values;
  SeriesTrend trend = SeriesTrend::Inconclusive;
  double slope = 0.0;  // log-linear fit over the final half
  double level = 0.0;  // fitted value at the last shell
};

// Per-shell nu^n_rho for n = 1..n_max on the set {|x| > e}, classified by the
// log-linear trend of the final half. Finite ranges cannot certify
// summability, only a trend.
CoveringSeries covering_series(const Eigen::MatrixXd& points, double rho,
                               int n_max, const TrendOptions& options = {});

struct DimensionEstimate {
  enum class Method { CountingSlope, SeriesBisection, Thickness };

  Method method = Method::CountingSlope;
  double value = 0.0;
  double uncertainty = 0.0;
  bool one_sided_upper = false;  // greedy-backed estimates in d >= 2
  int fit_lo = 0;
  int fit_hi = 0;
  std::vector<int> shells;
  std::vector<double> shell_data;  // per-shell counts or series values
  int replicates = 1;
};

// Least-squares slope of log(unit cubes hit) against the shell index,
// clamped to [0, d].
DimensionEstimate estimate_dim_counting(const Eigen::MatrixXd& points, int n_lo,
                                        int n_hi);

// Same fit on externally aggregated per-shell counts (e.g. replicate means).
DimensionEstimate counting_estimate_from_counts(const std::vector<int>& shells,
                                                const std::vector<double>& counts,
                                                int ambient_dim);

// Per-shell distinct unit-cube counts on {|x| > e}; shared by the counting
// estimator and replicate-pooling callers.
std::vector<double> unit_cube_counts(const Eigen::MatrixXd& points, int n_lo,
                                     int n_hi);

// Bisection of rho on the covering-series trend. Inconclusive probes move the
// bracket weakly and widen the reported uncertainty instead of being guessed.
DimensionEstimate estimate_dim_bisection(const Eigen::MatrixXd& points, int n_max,
                                         double tolerance,
                                         const TrendOptions& options = {});

struct ThicknessReport {
  double theta = 0.0;
  std::vector<int> shells;
  std::vector<double> occupancy;  // fraction of skeleton cubes hit per shell
  int first_full = -1;            // smallest k with full occupancy on [k, end]
  bool certified = false;
  double certified_bound = 0.0;   // d (1 - theta) when certified
};

ThicknessReport thickness_test(const Eigen::MatrixXd& points, double theta,
                               int n_lo, int n_hi);

}  // namespace macropeaks

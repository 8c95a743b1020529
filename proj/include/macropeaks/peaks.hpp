#pragma once

#include <Eigen/Core>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "macropeaks/fieldgen.hpp"
#include "macropeaks/interpolation.hpp"

namespace macropeaks {

struct GaugeParams {
  double gamma = 1.0;
  double variance = 1.0;     // slice variance; 1 for normalized fields
  double min_radius = M_E;   // points with |x| <= e are excluded
};

// Monotone reparametrization of time; continuous, strictly increasing,
// unbounded on (1, inf).
class StretchFactor {
 public:
  enum class Family { PowerLaw, Exp, Tabulated };

  static StretchFactor power_law(double delta);
  static StretchFactor exponential();
  static StretchFactor tabulated(const Eigen::VectorXd& r,
                                 const Eigen::VectorXd& g);

  double operator()(double r) const;
  double inverse(double level) const;  // throws PreconditionError off-range
  Family family() const { return family_; }
  double delta() const { return delta_; }
  std::string describe() const;

 private:
  Family family_ = Family::PowerLaw;
  double delta_ = 1.0;
  std::shared_ptr<const MonotoneCubic> table_;
};

struct ExceedanceSet {
  Eigen::MatrixXd points;     // surviving points (stretched first coordinate
                              // for the space-time variant)
  Eigen::VectorXd values;
  Eigen::VectorXd thresholds;
  double gamma = 0.0;
  double variance = 1.0;      // fixed-slice variance; -1 when v(t) varies
  std::string stretch;        // empty for spatial extractions
  std::uint64_t source_seed = 0;
  std::uint64_t source_replicate = 0;

  Eigen::Index size() const { return points.rows(); }
};

// Spatial peaks: points with |x| > e and value >= sqrt(2 gamma v log|x|)
// (closed inequality).
ExceedanceSet extract_spatial_peaks(const FieldSample& field,
                                    const GaugeParams& gauge);

// Space-time peaks: the sample's first coordinate is physical time; survivors
// are reported at (e^{g(t)}, x) with value >= sqrt(2 gamma v(t) g(t)), first
// coordinate required beyond e.
ExceedanceSet extract_spacetime_peaks(const FieldSample& field, double gamma,
                                      const std::function<double(double)>& variance_at,
                                      const StretchFactor& stretch);

struct StretchValidation {
  struct Row {
    double epsilon = 0.0;
    double terminal = 0.0;
    bool vanishes = false;
    bool tail_monotone = false;
  };
  bool pass = false;
  std::vector<Row> rows;
};

// Checks corr(g^{-1}(n), e^{n eps}) for each epsilon over the integer grid
// [n_lo, n_hi]: the sequence must fall below the threshold and be
// non-increasing over the final half of the grid.
StretchValidation validate_stretch(
    const std::function<double(double, double)>& corr_st, const StretchFactor& g,
    const std::vector<double>& epsilons, int n_lo, int n_hi,
    double threshold = 0.05);

}  // namespace macropeaks

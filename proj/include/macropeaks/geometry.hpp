#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace macropeaks {

// Half-open axis cube Q(x, r) = prod_i [x_i, x_i + r), side r >= 1.
struct Cube {
  Eigen::VectorXd corner;
  double side = 1.0;
};

// Exponential cubes V_n = [-e^n, e^n)^d partition space into shells
// S_0 = V_0, S_{n+1} = V_{n+1} \ V_n. Index selection is comparison-based so
// boundary points (say x = e) land on the correct side of the half-open split.
int shell_of(const Eigen::Ref<const Eigen::RowVectorXd>& x);
int shell_of(double x);

// Per-axis skeleton anchors e^n + j e^{n theta} for integer 0 <= j <= e^{n(1-theta)}.
Eigen::VectorXd skeleton_axis(int n, double theta);

// Full d-fold anchor product; throws SizeCapError beyond max_points.
Eigen::MatrixXd skeleton_points(int n, double theta, int d,
                                std::size_t max_points = 20000000);

struct Subskeleton {
  Eigen::MatrixXd points;
  double min_separation = 0.0;  // guaranteed >= e^{n delta}
  double count_ratio = 1.0;     // realized c with m in [c^{-1} E, c E], E = e^{n d (theta-delta)}
};

// Finer delta-skeleton anchors inside the cube Q(corner, e^{n theta}); the
// selection is the consecutive-anchor grid, so pairwise separations are at
// least one delta-spacing by construction.
Subskeleton subskeleton_in_cube(int n, double delta, const Cube& cube,
                                std::size_t max_points = 20000000);

// Deterministic lattice sample of the block
//   (0, e^{n/q}]^k x (e^{n/q}, e^{n+1}]^{D-k}  in R^D,
// used as a known-dimension covering oracle set.
Eigen::MatrixXd block_set_points(int n, double q, int k, int ambient_dim,
                                 double spacing,
                                 std::size_t max_points = 20000000);

}  // namespace macropeaks

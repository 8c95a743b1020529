#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace macropeaks {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // absolute error estimate
  std::size_t evaluations = 0;
  bool converged = true;
};

using RealFunction = std::function<double(double)>;

// Adaptive Gauss-Kronrod 7/15 on a finite interval, worst-interval refinement.
QuadResult integrate_gk(const RealFunction& f, double a, double b,
                        double abs_tol = 1e-10, std::size_t max_intervals = 4000);

// Composite Filon rules for \int_a^b g(x) cos(omega x) dx and the sine analogue.
// The panel count doubles until two refinements agree to abs_tol; only the
// smooth factor g is sampled, so the cost is independent of omega.
QuadResult filon_cos(const RealFunction& g, double a, double b, double omega,
                     double abs_tol = 1e-10);
QuadResult filon_sin(const RealFunction& g, double a, double b, double omega,
                     double abs_tol = 1e-10);

// One term c * r^e of a generalized power series around the origin.
struct PowerTerm {
  double coefficient = 0.0;
  double exponent = 0.0;
};

// \int_0^eps sum_k c_k r^{e_k} dr, term by term. Requires every exponent > -1.
double integrate_power_terms(const std::vector<PowerTerm>& terms, double eps);

// Product of truncated series; terms beyond max_exponent or below drop_tol
// in absolute coefficient are discarded.
std::vector<PowerTerm> multiply_series(const std::vector<PowerTerm>& a,
                                       const std::vector<PowerTerm>& b,
                                       double max_exponent, double drop_tol = 0.0);

// Even series of the angular factors: cos(zr), J0(zr), sin(zr)/(zr).
std::vector<PowerTerm> cosine_series(double z, double max_exponent);
std::vector<PowerTerm> bessel_j0_series(double z, double max_exponent);
std::vector<PowerTerm> sinc_series(double z, double max_exponent);

// Surface measure of the unit sphere boundary factor used in the radial
// reduction: 2 (d=1), 2*pi (d=2), 4*pi (d=3).
double surface_measure(int dimension);

// Isotropic integral over R^d reduced to the radial axis,
//   I = surface(d) * \int_0^inf radial(r) * osc_d(z r) dr,
// where radial already contains the r^{d-1} volume factor and
// osc_1 = cos, osc_2 = J_0, osc_3 = sin(zr)/(zr).
//
// The origin is handled by term-wise integration of origin_series (the
// expansion of radial on [0, origin_cut], oscillation factor folded in by the
// driver); an empty series means radial is integrable-smooth from 0 and the
// quadrature starts there. The far tail is handled analytically from tail_cut
// using radial ~ tail_amplitude * r^{-tail_exponent}; tail_accuracy bounds the
// remainder of that asymptote. A zero amplitude means the tail decays faster
// than any power and tail_cut already carries the full mass to tolerance.
struct RadialIntegrand {
  int dimension = 1;
  double oscillation = 0.0;  // |z| >= 0
  RealFunction radial;
  std::vector<PowerTerm> origin_series;
  double origin_cut = 0.0;
  double tail_amplitude = 0.0;
  double tail_exponent = 0.0;
  double tail_cut = 50.0;
  double tail_accuracy = 0.0;
};

QuadResult integrate_radial(const RadialIntegrand& spec, double abs_tol = 1e-8);

}  // namespace macropeaks

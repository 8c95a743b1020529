#pragma once

// Internal factorization of the radial spectral integrands into a density
// part (fhat_radial * r^{d-1}) and a weight part, each carrying an origin
// expansion and tail asymptotics so integrate_radial can stitch the pieces.

#include <functional>
#include <vector>

#include "macropeaks/quadrature.hpp"
#include "macropeaks/spectral.hpp"

namespace macropeaks::detail {

struct RadialPart {
  std::function<double(double)> fn;  // exact factor, finite on (0, inf)
  std::vector<PowerTerm> series;     // expansion near 0; empty: start GK at 0
  double series_cut = 0.0;
  double tail_amp = 0.0;   // fn ~ tail_amp * r^{-tail_s} beyond min_cut
  double tail_s = 0.0;
  double corr_amp = 0.0;   // |fn - asymptote| <= corr_amp * r^{-corr_s}
  double corr_s = 0.0;
  double min_cut = 1.0;
  bool exp_tail = false;   // negligible beyond min_cut instead of power decay
};

RadialPart density_part(const CorrelationModel& model, double tol);
RadialPart condition_weight(double alpha, double eta, double tol);
// (exp(-|t1-t2| r^alpha) - exp(-(t1+t2) r^alpha)) / (2 r^alpha)
RadialPart heat_weight(double alpha, double t1, double t2, double tol);
// t/(2 r^2) - sin(2 t r)/(4 r^3)
RadialPart wave_weight(double t, double tol);

QuadResult integrate_product(int dimension, double z, const RadialPart& density,
                             const RadialPart& weight, double tol);

// Riesz Fourier constant: transform of c |x|^{-beta} is
// c * 2^{d-beta} pi^{d/2} Gamma((d-beta)/2) / Gamma(beta/2) * |xi|^{beta-d}.
double riesz_fourier_constant(double beta, double c, int d);
// Exponential kernel transform amplitude: 2^d pi^{(d-1)/2} Gamma((d+1)/2) lambda.
double exponential_fourier_constant(double lambda, int d);

}  // namespace macropeaks::detail

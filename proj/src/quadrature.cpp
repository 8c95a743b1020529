#include "macropeaks/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "macropeaks/errors.hpp"

namespace macropeaks {

namespace {

// Kronrod 15 abscissae/weights with the embedded Gauss 7 rule on [-1, 1].
constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kGaussWeights[4] = {0.129484966168870, 0.279705391489277,
                                     0.381830050505119, 0.417959183673469};

struct PanelEstimate {
  double value;
  double error;
};

PanelEstimate gk15(const RealFunction& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = 0.0;
  double gauss = 0.0;
  for (int i = 0; i < 8; ++i) {
    double fsum;
    if (i == 7) {
      fsum = f(mid);
    } else {
      fsum = f(mid - half * kKronrodNodes[i]) + f(mid + half * kKronrodNodes[i]);
    }
    kronrod += kKronrodWeights[i] * fsum;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fsum;
  }
  kronrod *= half;
  gauss *= half;
  return {kronrod, std::abs(kronrod - gauss)};
}

struct Interval {
  double a, b, value, error;
  bool operator<(const Interval& other) const { return error < other.error; }
};

// Filon coefficients for panel phase theta = omega * h.
void filon_coefficients(double theta, double& alpha, double& beta, double& gamma) {
  if (std::abs(theta) < 1.0 / 6.0) {
    const double t2 = theta * theta;
    alpha = theta * t2 * (2.0 / 45.0 - t2 * (2.0 / 315.0 - t2 * (2.0 / 4725.0)));
    beta = 2.0 / 3.0 + t2 * (2.0 / 15.0 - t2 * (4.0 / 105.0 - t2 * (2.0 / 567.0)));
    gamma = 4.0 / 3.0 - t2 * (2.0 / 15.0 - t2 * (1.0 / 210.0 - t2 / 11340.0));
    return;
  }
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double t3 = theta * theta * theta;
  alpha = (theta * theta + theta * s * c - 2.0 * s * s) / t3;
  beta = 2.0 * (theta * (1.0 + c * c) - 2.0 * s * c) / t3;
  gamma = 4.0 * (s - theta * c) / t3;
}

double filon_pass(const RealFunction& g, double a, double b, double omega,
                  std::size_t panels, bool cosine) {
  const std::size_t nodes = 2 * panels;  // even grid: x_0..x_{2n}
  const double h = (b - a) / static_cast<double>(nodes);
  double alpha, beta, gamma;
  filon_coefficients(omega * h, alpha, beta, gamma);

  double even_sum = 0.0;
  double odd_sum = 0.0;
  for (std::size_t j = 0; j <= nodes; ++j) {
    const double x = a + h * static_cast<double>(j);
    const double gx = g(x);
    const double trig = cosine ? std::cos(omega * x) : std::sin(omega * x);
    if (j % 2 == 0) {
      const double w = (j == 0 || j == nodes) ? 0.5 : 1.0;
      even_sum += w * gx * trig;
    } else {
      odd_sum += gx * trig;
    }
  }
  double boundary;
  if (cosine) {
    boundary = g(b) * std::sin(omega * b) - g(a) * std::sin(omega * a);
  } else {
    boundary = -(g(b) * std::cos(omega * b) - g(a) * std::cos(omega * a));
  }
  return h * (alpha * boundary + beta * even_sum + gamma * odd_sum);
}

QuadResult filon_adaptive(const RealFunction& g, double a, double b, double omega,
                          double abs_tol, bool cosine) {
  if (!(b > a)) return {0.0, 0.0, 0, true};
  QuadResult out;
  std::size_t panels = 8;
  double prev = filon_pass(g, a, b, omega, panels, cosine);
  for (int pass = 0; pass < 16; ++pass) {
    panels *= 2;
    const double cur = filon_pass(g, a, b, omega, panels, cosine);
    const double diff = std::abs(cur - prev);
    out.value = cur;
    out.error = diff;
    out.evaluations += 2 * panels + 1;
    if (diff <= abs_tol) return out;
    prev = cur;
  }
  out.converged = false;
  return out;
}

}  // namespace

QuadResult integrate_gk(const RealFunction& f, double a, double b, double abs_tol,
                        std::size_t max_intervals) {
  QuadResult out;
  if (!(b > a)) return out;

  std::priority_queue<Interval> queue;
  auto first = gk15(f, a, b);
  out.evaluations = 15;
  queue.push({a, b, first.value, first.error});
  double total_value = first.value;
  double total_error = first.error;

  while (total_error > abs_tol && queue.size() < max_intervals) {
    Interval worst = queue.top();
    if (worst.error <= abs_tol / static_cast<double>(2 * queue.size())) break;
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // interval at FP resolution
      queue.push({worst.a, worst.b, worst.value, 0.0});
      total_error -= worst.error;
      continue;
    }
    const auto left = gk15(f, worst.a, mid);
    const auto right = gk15(f, mid, worst.b);
    out.evaluations += 30;
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    queue.push({worst.a, mid, left.value, left.error});
    queue.push({mid, worst.b, right.value, right.error});
  }

  out.value = total_value;
  out.error = total_error;
  out.converged = total_error <= std::max(abs_tol, 1e-14 * std::abs(total_value));
  return out;
}

QuadResult filon_cos(const RealFunction& g, double a, double b, double omega,
                     double abs_tol) {
  return filon_adaptive(g, a, b, omega, abs_tol, true);
}

QuadResult filon_sin(const RealFunction& g, double a, double b, double omega,
                     double abs_tol) {
  return filon_adaptive(g, a, b, omega, abs_tol, false);
}

double integrate_power_terms(const std::vector<PowerTerm>& terms, double eps) {
  double sum = 0.0;
  for (const auto& term : terms) {
    if (term.exponent <= -1.0) {
      throw DomainError("origin series term with non-integrable exponent");
    }
    sum += term.coefficient * std::pow(eps, term.exponent + 1.0) /
           (term.exponent + 1.0);
  }
  return sum;
}

std::vector<PowerTerm> multiply_series(const std::vector<PowerTerm>& a,
                                       const std::vector<PowerTerm>& b,
                                       double max_exponent, double drop_tol) {
  std::vector<PowerTerm> out;
  out.reserve(a.size() * b.size() / 2 + 1);
  for (const auto& ta : a) {
    for (const auto& tb : b) {
      const double e = ta.exponent + tb.exponent;
      if (e > max_exponent) continue;
      const double c = ta.coefficient * tb.coefficient;
      if (std::abs(c) <= drop_tol) continue;
      out.push_back({c, e});
    }
  }
  return out;
}

std::vector<PowerTerm> cosine_series(double z, double max_exponent) {
  std::vector<PowerTerm> out{{1.0, 0.0}};
  double coef = 1.0;
  for (int k = 1; 2.0 * k <= max_exponent; ++k) {
    coef *= -z * z / (static_cast<double>(2 * k - 1) * static_cast<double>(2 * k));
    out.push_back({coef, 2.0 * k});
  }
  return out;
}

std::vector<PowerTerm> bessel_j0_series(double z, double max_exponent) {
  std::vector<PowerTerm> out{{1.0, 0.0}};
  double coef = 1.0;
  for (int k = 1; 2.0 * k <= max_exponent; ++k) {
    const double kk = static_cast<double>(k);
    coef *= -(z * z / 4.0) / (kk * kk);
    out.push_back({coef, 2.0 * k});
  }
  return out;
}

std::vector<PowerTerm> sinc_series(double z, double max_exponent) {
  std::vector<PowerTerm> out{{1.0, 0.0}};
  double coef = 1.0;
  for (int k = 1; 2.0 * k <= max_exponent; ++k) {
    coef *= -z * z / (static_cast<double>(2 * k) * static_cast<double>(2 * k + 1));
    out.push_back({coef, 2.0 * k});
  }
  return out;
}

double surface_measure(int dimension) {
  switch (dimension) {
    case 1:
      return 2.0;
    case 2:
      return 2.0 * M_PI;
    case 3:
      return 4.0 * M_PI;
    default:
      throw DomainError("radial reduction implemented for d in {1,2,3}");
  }
}

namespace {

double oscillation_factor(int d, double z, double r) {
  if (z == 0.0) return 1.0;
  const double zr = z * r;
  switch (d) {
    case 1:
      return std::cos(zr);
    case 2:
      return std::cyl_bessel_j(0, zr);
    default: {
      if (std::abs(zr) < 1e-8) return 1.0 - zr * zr / 6.0;
      return std::sin(zr) / zr;
    }
  }
}

constexpr double kFilonSwitch = 50.0;  // use Filon beyond |z| * x_max > 50 in d=1

}  // namespace

QuadResult integrate_radial(const RadialIntegrand& spec, double abs_tol) {
  const int d = spec.dimension;
  const double z = std::abs(spec.oscillation);
  const double surface = surface_measure(d);
  const double inner_tol = abs_tol / surface;

  QuadResult total;

  // Origin [0, eps] by the supplied series times the angular series.
  double eps = spec.origin_cut;
  if (eps > 0.0 && z > 0.0) eps = std::min(eps, 0.5 / z);
  if (eps > 0.0) {
    double max_exp = 16.0;
    for (const auto& t : spec.origin_series) max_exp = std::max(max_exp, t.exponent);
    std::vector<PowerTerm> combined;
    if (z == 0.0) {
      combined = spec.origin_series;
    } else {
      std::vector<PowerTerm> osc;
      switch (d) {
        case 1:
          osc = cosine_series(z, 12.0);
          break;
        case 2:
          osc = bessel_j0_series(z, 12.0);
          break;
        default:
          osc = sinc_series(z, 12.0);
          break;
      }
      combined = multiply_series(spec.origin_series, osc, max_exp + 12.0);
    }
    total.value += integrate_power_terms(combined, eps);
  }

  // Analytic far tail.
  double cut = spec.tail_cut;
  double tail_value = 0.0;
  double tail_error = spec.tail_accuracy;
  if (spec.tail_amplitude != 0.0) {
    const double s = spec.tail_exponent;
    if (z == 0.0) {
      if (s <= 1.0) throw QuadratureError("non-integrable radial tail");
      tail_value = spec.tail_amplitude * std::pow(cut, 1.0 - s) / (s - 1.0);
    } else {
      // One integration by parts bounds the dropped oscillatory tail.
      double bound = 2.0 * std::abs(spec.tail_amplitude) * std::pow(cut, -s) / z;
      if (d == 2) bound *= std::pow(cut * z, -0.5) * 2.0;
      if (d == 3) bound /= std::max(1.0, z * cut);
      if (bound > inner_tol && s > 0.0) {
        const double grown =
            std::pow(2.0 * std::abs(spec.tail_amplitude) / (z * inner_tol), 1.0 / s);
        cut = std::min(std::max(cut, grown), cut * 1e6);
        bound = 2.0 * std::abs(spec.tail_amplitude) * std::pow(cut, -s) / z;
      }
      tail_error += bound;
    }
  }

  // Middle region [eps, cut].
  if (cut > eps) {
    const double mid_tol = inner_tol * 0.5;
    if (d == 1 && z * cut > kFilonSwitch) {
      // Geometric blocks keep the smooth factor well-resolved per block.
      double lo = eps;
      if (lo <= 0.0) lo = std::min(1e-8, cut * 1e-12);
      double block_hi = std::max(lo * 2.0, 1.0);
      int blocks = 1;
      for (double x = block_hi; x < cut; x *= 2.0) ++blocks;
      const double per_block = mid_tol / static_cast<double>(blocks);
      while (lo < cut) {
        const double hi = std::min(cut, block_hi);
        const auto part = filon_cos(spec.radial, lo, hi, z, per_block);
        total.value += part.value;
        total.error += part.error;
        total.evaluations += part.evaluations;
        total.converged = total.converged && part.converged;
        lo = hi;
        block_hi *= 2.0;
      }
    } else if (z * cut > kFilonSwitch && d >= 2) {
      // Oscillation-scaled panels; refuse absurd panel counts.
      const double period = 2.0 * M_PI / z;
      const double span = cut - eps;
      const double chunks = span / period;
      if (chunks > 200000.0) {
        throw QuadratureError("oscillation too fast for the Bessel-weight range");
      }
      auto f = [&](double r) {
        return spec.radial(r) * oscillation_factor(d, z, r);
      };
      const auto part = integrate_gk(f, eps, cut, mid_tol,
                                     static_cast<std::size_t>(chunks) * 4 + 4000);
      total.value += part.value;
      total.error += part.error;
      total.evaluations += part.evaluations;
      total.converged = total.converged && part.converged;
    } else {
      auto f = [&](double r) {
        return spec.radial(r) * oscillation_factor(d, z, r);
      };
      const auto part = integrate_gk(f, eps, cut, mid_tol);
      total.value += part.value;
      total.error += part.error;
      total.evaluations += part.evaluations;
      total.converged = total.converged && part.converged;
    }
  }

  total.value += (z == 0.0) ? tail_value : 0.0;
  total.error += tail_error;
  total.value *= surface;
  total.error *= surface;
  return total;
}

}  // namespace macropeaks

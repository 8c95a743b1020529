#include "radial_parts.hpp"

#include <algorithm>
#include <cmath>

#include "macropeaks/errors.hpp"

namespace macropeaks::detail {

namespace {

constexpr int kMaxSeriesTerms = 400;

// Evaluate a generalized power series at r (small-r fallback paths).
double eval_series(const std::vector<PowerTerm>& terms, double r) {
  double sum = 0.0;
  for (const auto& t : terms) sum += t.coefficient * std::pow(r, t.exponent);
  return sum;
}

}  // namespace

double riesz_fourier_constant(double beta, double c, int d) {
  return c * std::pow(2.0, d - beta) * std::pow(M_PI, 0.5 * d) *
         std::tgamma(0.5 * (d - beta)) / std::tgamma(0.5 * beta);
}

double exponential_fourier_constant(double lambda, int d) {
  return std::pow(2.0, d) * std::pow(M_PI, 0.5 * (d - 1)) *
         std::tgamma(0.5 * (d + 1)) * lambda;
}

RadialPart density_part(const CorrelationModel& model, double tol) {
  const int d = model.dimension;
  const double vol = static_cast<double>(d - 1);  // r^{d-1} volume factor
  RadialPart part;

  switch (model.kind) {
    case CorrelationModel::Kind::WhiteNoise: {
      part.fn = [vol](double r) { return std::pow(r, vol); };
      part.series = {{1.0, vol}};
      part.series_cut = 1e30;
      part.tail_amp = 1.0;
      part.tail_s = -vol;
      part.min_cut = 1.0;
      return part;
    }
    case CorrelationModel::Kind::Riesz: {
      const double amp = riesz_fourier_constant(model.beta, model.c, d);
      const double p = model.beta - 1.0;  // r^{beta-d} * r^{d-1}
      part.fn = [amp, p](double r) { return amp * std::pow(r, p); };
      part.series = {{amp, p}};
      part.series_cut = 1e30;
      part.tail_amp = amp;
      part.tail_s = -p;
      part.min_cut = 1.0;
      return part;
    }
    case CorrelationModel::Kind::Exponential: {
      const double lam = model.lambda;
      const double amp = exponential_fourier_constant(lam, d);
      const double half_power = 0.5 * (d + 1);
      part.fn = [amp, lam, vol, half_power](double r) {
        return amp * std::pow(r, vol) /
               std::pow(lam * lam + r * r, half_power);
      };
      // amp * lam^{-(d+1)} * r^{d-1} * sum binom(-(d+1)/2, k) (r/lam)^{2k}
      const double lead = amp * std::pow(lam, -(d + 1.0));
      double coef = lead;
      part.series.push_back({coef, vol});
      const double cut = 0.6 * lam;
      for (int k = 1; k < kMaxSeriesTerms; ++k) {
        coef *= (-half_power - (k - 1)) / static_cast<double>(k) / (lam * lam);
        part.series.push_back({coef, vol + 2.0 * k});
        if (std::abs(coef) * std::pow(cut, vol + 2.0 * k) < tol * 1e-4) break;
      }
      part.series_cut = cut;
      part.tail_amp = amp;
      part.tail_s = 2.0;
      part.corr_amp = amp * half_power * lam * lam;
      part.corr_s = 4.0;
      part.min_cut = 4.0 * lam;
      return part;
    }
    case CorrelationModel::Kind::GaussianCorr: {
      const double sig = model.sigma;
      const double amp = std::pow(2.0 * M_PI * sig * sig, 0.5 * d);
      part.fn = [amp, sig, vol](double r) {
        return amp * std::pow(r, vol) * std::exp(-0.5 * sig * sig * r * r);
      };
      double coef = amp;
      part.series.push_back({coef, vol});
      for (int k = 1; k < kMaxSeriesTerms; ++k) {
        coef *= -0.5 * sig * sig / static_cast<double>(k);
        part.series.push_back({coef, vol + 2.0 * k});
        if (std::abs(coef) * std::pow(0.5 / sig, vol + 2.0 * k) < tol * 1e-4) break;
      }
      part.series_cut = 0.5 / sig;
      part.exp_tail = true;
      const double log_open = std::log(std::max(amp, 1.0) / std::min(tol, 1e-6));
      part.min_cut = std::sqrt(2.0 * (log_open + 10.0 + d)) / sig;
      return part;
    }
    case CorrelationModel::Kind::Tabulated: {
      auto table = model.density_table;
      part.fn = [table, vol](double r) {
        if (r > table->max_x() || r < table->min_x()) return 0.0;
        return (*table)(r)*std::pow(r, vol);
      };
      part.series_cut = 0.0;  // bounded at 0, quadrature starts there
      part.exp_tail = true;   // compact support
      part.min_cut = table->max_x();
      return part;
    }
    case CorrelationModel::Kind::LogDecay:
      throw NoDensityError("log-decay correlation carries no spectral density");
  }
  throw DomainError("unknown correlation kind");
}

RadialPart condition_weight(double alpha, double eta, double tol) {
  RadialPart part;
  part.fn = [alpha, eta](double r) {
    return std::pow(1.0 + std::pow(r, alpha), -eta);
  };
  double coef = 1.0;
  part.series.push_back({1.0, 0.0});
  const double cut = 0.5;
  for (int k = 1; k < kMaxSeriesTerms; ++k) {
    coef *= (-eta - (k - 1)) / static_cast<double>(k);
    part.series.push_back({coef, alpha * k});
    if (std::abs(coef) * std::pow(cut, alpha * k) < tol * 1e-4) break;
  }
  part.series_cut = cut;
  part.tail_amp = 1.0;
  part.tail_s = alpha * eta;
  part.corr_amp = eta;
  part.corr_s = alpha * (eta + 1.0);
  part.min_cut = 4.0;
  return part;
}

RadialPart heat_weight(double alpha, double t1, double t2, double tol) {
  const double delta = std::abs(t1 - t2);
  const double total = t1 + t2;
  RadialPart part;
  part.fn = [alpha, delta, total](double r) {
    const double ra = std::pow(r, alpha);
    // exp(-delta ra) - exp(-total ra), cancellation-free via expm1
    return -std::exp(-delta * ra) * std::expm1(-(total - delta) * ra) /
           (2.0 * ra);
  };
  // sum_{k>=1} (-1)^{k+1} (total^k - delta^k) r^{alpha(k-1)} / (2 k!)
  const double cut = std::min(0.5, std::pow(0.5 / total, 1.0 / alpha));
  double tpow = 1.0;
  double dpow = 1.0;
  double factorial = 1.0;
  for (int k = 1; k < kMaxSeriesTerms; ++k) {
    tpow *= total;
    dpow *= delta;
    factorial *= static_cast<double>(k);
    const double coef = ((k % 2 == 1) ? 1.0 : -1.0) * (tpow - dpow) /
                        (2.0 * factorial);
    part.series.push_back({coef, alpha * (k - 1)});
    if (k > 2 && std::abs(coef) * std::pow(cut, alpha * (k - 1)) < tol * 1e-4) break;
  }
  part.series_cut = cut;
  if (delta == 0.0) {
    part.tail_amp = 0.5;
    part.tail_s = alpha;
    // residual exp(-total r^alpha)/(2 r^alpha): pick cut where it is tiny
    part.corr_amp = 0.0;
    part.corr_s = 0.0;
    part.min_cut = std::pow(40.0 / total, 1.0 / alpha);
  } else {
    // both exponentials die; treat as exponential-type tail
    part.exp_tail = true;
    part.min_cut = std::pow((40.0 + std::log(1.0 / tol)) / delta, 1.0 / alpha);
  }
  return part;
}

RadialPart wave_weight(double t, double tol) {
  RadialPart part;
  // series: sum_{m>=1} (-1)^{m+1} (2t)^{2m+1} r^{2m-2} / (4 (2m+1)!)
  std::vector<PowerTerm> series;
  double power = 2.0 * t;           // (2t)^{2m+1} running value, m from 1
  double factorial = 1.0;           // (2m+1)!
  for (int m = 1; m < kMaxSeriesTerms; ++m) {
    power *= 4.0 * t * t;
    factorial *= static_cast<double>(2 * m) * static_cast<double>(2 * m + 1);
    const double coef = ((m % 2 == 1) ? 1.0 : -1.0) * power / (4.0 * factorial);
    series.push_back({coef, 2.0 * (m - 1)});
    if (m > 2 && std::abs(coef) * std::pow(0.25 / t, 2.0 * (m - 1)) < tol * 1e-4) {
      break;
    }
  }
  const double switch_r = 0.05 / t;
  part.fn = [t, series, switch_r](double r) {
    if (r < switch_r) return eval_series(series, r);
    return t / (2.0 * r * r) - std::sin(2.0 * t * r) / (4.0 * r * r * r);
  };
  part.series = series;
  part.series_cut = 0.25 / t;
  part.tail_amp = 0.5 * t;
  part.tail_s = 2.0;
  part.corr_amp = 0.25;  // |sin| <= 1
  part.corr_s = 3.0;
  part.min_cut = 4.0 / t + 4.0;
  return part;
}

QuadResult integrate_product(int dimension, double z, const RadialPart& density,
                             const RadialPart& weight, double tol) {
  RadialIntegrand spec;
  spec.dimension = dimension;
  spec.oscillation = z;
  auto dfn = density.fn;
  auto wfn = weight.fn;
  spec.radial = [dfn, wfn](double r) { return dfn(r) * wfn(r); };

  if (!density.series.empty() && !weight.series.empty()) {
    double max_exp = 40.0;
    spec.origin_series = multiply_series(density.series, weight.series, max_exp);
    spec.origin_cut = std::min({density.series_cut, weight.series_cut, 0.5});
  } else {
    spec.origin_cut = 0.0;
  }

  double cut = std::max(density.min_cut, weight.min_cut);
  if (density.exp_tail || weight.exp_tail) {
    spec.tail_amplitude = 0.0;
    spec.tail_cut = cut;
    spec.tail_accuracy = 0.0;
  } else {
    const double amp = density.tail_amp * weight.tail_amp;
    const double s = density.tail_s + weight.tail_s;
    auto correction_bound = [&](double c, double amp_c, double s_c) {
      if (amp_c == 0.0) return 0.0;
      if (z > 0.0) return 2.0 * amp_c * std::pow(c, -s_c) / z;
      if (s_c <= 1.0) return 1e300;
      return amp_c * std::pow(c, 1.0 - s_c) / (s_c - 1.0);
    };
    const double ca1 = density.corr_amp * weight.tail_amp;
    const double cs1 = density.corr_s + weight.tail_s;
    const double ca2 = weight.corr_amp * density.tail_amp;
    const double cs2 = weight.corr_s + density.tail_s;
    double bound = correction_bound(cut, ca1, cs1) + correction_bound(cut, ca2, cs2);
    for (int i = 0; i < 60 && bound > 0.25 * tol; ++i) {
      cut *= 2.0;
      bound = correction_bound(cut, ca1, cs1) + correction_bound(cut, ca2, cs2);
    }
    spec.tail_amplitude = amp;
    spec.tail_exponent = s;
    spec.tail_cut = cut;
    spec.tail_accuracy = bound;
  }
  return integrate_radial(spec, tol);
}

}  // namespace macropeaks::detail

#include "macropeaks/spectral.hpp"

#include <cmath>
#include <limits>

#include "macropeaks/errors.hpp"
#include "radial_parts.hpp"

namespace macropeaks {

namespace {

constexpr double kQuadTol = 1e-8;  // default absolute quadrature tolerance

void require_dimension(int d) {
  if (d < 1) throw DomainError("dimension must be >= 1");
}

// Closed-form integrability of \int fhat(dxi) (1 + |xi|^alpha)^{-eta}.
// Quadrature cannot certify divergence, so the decision is made from the
// model's tail exponent before any numeric evaluation runs.
bool condition_satisfied(const CorrelationModel& model, double alpha, double eta,
                         std::string& note) {
  const int d = model.dimension;
  switch (model.kind) {
    case CorrelationModel::Kind::WhiteNoise:
      if (alpha * eta > d) return true;
      note = "tail exponent alpha*eta = " + std::to_string(alpha * eta) +
             " <= d, integrand not integrable at infinity";
      return false;
    case CorrelationModel::Kind::Riesz:
      if (alpha * eta > model.beta) return true;
      note = "tail exponent alpha*eta <= beta, integrand not integrable";
      return false;
    case CorrelationModel::Kind::Exponential:
    case CorrelationModel::Kind::GaussianCorr:
      return true;  // density decays faster than any relevant power
    case CorrelationModel::Kind::Tabulated:
      return true;  // compactly supported density
    case CorrelationModel::Kind::LogDecay:
      note = "finite spectral measure; value is the Bochner total-mass bound";
      return true;
  }
  return false;
}

ConditionReport evaluate_condition(const CorrelationModel& model, double alpha,
                                   double eta, ConditionId id) {
  require_dimension(model.dimension);
  if (!(alpha > 0.0) || alpha > 2.0) throw DomainError("alpha must lie in (0, 2]");
  if (eta < 0.0) throw DomainError("eta must be nonnegative");

  ConditionReport report;
  report.id = id;
  report.eta = eta;
  report.satisfied = condition_satisfied(model, alpha, eta, report.note);
  if (!report.satisfied) {
    report.value = std::numeric_limits<double>::infinity();
    return report;
  }

  if (model.kind == CorrelationModel::Kind::LogDecay) {
    // Bounded continuous positive-definite f: fhat is a finite measure with
    // total mass (2 pi)^d f(0).
    report.value = std::pow(2.0 * M_PI, model.dimension) * model.c;
    report.error = 0.0;
    return report;
  }

  const auto density = detail::density_part(model, kQuadTol);
  const auto weight = detail::condition_weight(alpha, eta, kQuadTol);
  const auto quad =
      detail::integrate_product(model.dimension, 0.0, density, weight, kQuadTol);
  if (!quad.converged) {
    throw QuadratureError("integrability-check quadrature did not converge");
  }
  report.value = quad.value;
  report.error = quad.error;
  return report;
}

}  // namespace

CorrelationModel CorrelationModel::white_noise(int d) {
  require_dimension(d);
  CorrelationModel m;
  m.kind = Kind::WhiteNoise;
  m.dimension = d;
  return m;
}

CorrelationModel CorrelationModel::riesz(double beta, double c, int d) {
  require_dimension(d);
  if (!(beta > 0.0) || !(beta < d)) {
    throw DomainError("Riesz exponent requires 0 < beta < d");
  }
  if (!(c > 0.0)) throw DomainError("Riesz amplitude must be positive");
  CorrelationModel m;
  m.kind = Kind::Riesz;
  m.dimension = d;
  m.beta = beta;
  m.c = c;
  return m;
}

CorrelationModel CorrelationModel::exponential(double lambda, int d) {
  require_dimension(d);
  if (!(lambda > 0.0)) throw DomainError("exponential rate must be positive");
  CorrelationModel m;
  m.kind = Kind::Exponential;
  m.dimension = d;
  m.lambda = lambda;
  return m;
}

CorrelationModel CorrelationModel::gaussian(double sigma, int d) {
  require_dimension(d);
  if (!(sigma > 0.0)) throw DomainError("gaussian width must be positive");
  CorrelationModel m;
  m.kind = Kind::GaussianCorr;
  m.dimension = d;
  m.sigma = sigma;
  return m;
}

CorrelationModel CorrelationModel::log_decay(double c, int d) {
  require_dimension(d);
  if (!(c > 0.0)) throw DomainError("log-decay amplitude must be positive");
  CorrelationModel m;
  m.kind = Kind::LogDecay;
  m.dimension = d;
  m.c = c;
  return m;
}

CorrelationModel CorrelationModel::tabulated(const Eigen::VectorXd& radii,
                                             const Eigen::VectorXd& density,
                                             int d) {
  require_dimension(d);
  if ((density.array() < 0.0).any()) {
    throw DomainError("tabulated spectral density must be nonnegative");
  }
  CorrelationModel m;
  m.kind = Kind::Tabulated;
  m.dimension = d;
  m.density_table = std::make_shared<MonotoneCubic>(radii, density);
  return m;
}

std::string CorrelationModel::kind_name() const {
  switch (kind) {
    case Kind::WhiteNoise:
      return "white";
    case Kind::Riesz:
      return "riesz";
    case Kind::Exponential:
      return "exponential";
    case Kind::GaussianCorr:
      return "gaussian";
    case Kind::LogDecay:
      return "logdecay";
    case Kind::Tabulated:
      return "tabulated";
  }
  return "unknown";
}

double correlation_at(const CorrelationModel& model, double r) {
  if (r < 0.0) throw DomainError("radius must be nonnegative");
  switch (model.kind) {
    case CorrelationModel::Kind::WhiteNoise:
      throw NotAFunctionError("white-noise correlation is a Dirac measure");
    case CorrelationModel::Kind::Tabulated:
      throw NotAFunctionError(
          "tabulated models are specified by their spectral density");
    case CorrelationModel::Kind::Riesz:
      if (r == 0.0) throw DomainError("Riesz kernel diverges at radius 0");
      return model.c * std::pow(r, -model.beta);
    case CorrelationModel::Kind::Exponential:
      return std::exp(-model.lambda * r);
    case CorrelationModel::Kind::GaussianCorr:
      return std::exp(-0.5 * r * r / (model.sigma * model.sigma));
    case CorrelationModel::Kind::LogDecay:
      return model.c / std::log(M_E + r);
  }
  throw DomainError("unknown correlation kind");
}

double spectral_density_radial(const CorrelationModel& model, double r) {
  if (r < 0.0) throw DomainError("frequency radius must be nonnegative");
  switch (model.kind) {
    case CorrelationModel::Kind::WhiteNoise:
      return 1.0;
    case CorrelationModel::Kind::Riesz:
      if (r == 0.0) throw DomainError("Riesz spectral density diverges at 0");
      return detail::riesz_fourier_constant(model.beta, model.c,
                                            model.dimension) *
             std::pow(r, model.beta - model.dimension);
    case CorrelationModel::Kind::Exponential: {
      const double amp =
          detail::exponential_fourier_constant(model.lambda, model.dimension);
      return amp / std::pow(model.lambda * model.lambda + r * r,
                            0.5 * (model.dimension + 1));
    }
    case CorrelationModel::Kind::GaussianCorr: {
      const double s2 = model.sigma * model.sigma;
      return std::pow(2.0 * M_PI * s2, 0.5 * model.dimension) *
             std::exp(-0.5 * s2 * r * r);
    }
    case CorrelationModel::Kind::Tabulated:
      if (r < model.density_table->min_x() || r > model.density_table->max_x()) {
        return 0.0;  // compactly supported by convention
      }
      return (*model.density_table)(r);
    case CorrelationModel::Kind::LogDecay:
      throw NoDensityError("log-decay correlation carries no spectral density");
  }
  throw DomainError("unknown correlation kind");
}

double spectral_density_at(const CorrelationModel& model,
                           const Eigen::Ref<const Eigen::VectorXd>& xi) {
  if (xi.size() != model.dimension) {
    throw DomainError("frequency vector dimension mismatch");
  }
  return spectral_density_radial(model, xi.norm());
}

ConditionReport check_dalang(const CorrelationModel& model, double alpha) {
  return evaluate_condition(model, alpha, 1.0, ConditionId::Dalang);
}

ConditionReport check_reinforced(const CorrelationModel& model, double alpha,
                                 double eta) {
  if (eta >= 1.0) throw DomainError("reinforced exponent requires eta in [0, 1)");
  return evaluate_condition(model, alpha, eta, ConditionId::Reinforced);
}

double mixing_functional_radial(const CorrelationModel& model, double alpha,
                                double z_norm) {
  const auto dalang = check_dalang(model, alpha);
  if (!dalang.satisfied) {
    throw UnsatisfiedConditionError(
        "mixing functional requires a finite Dalang integral");
  }
  if (model.kind == CorrelationModel::Kind::LogDecay) {
    throw NoDensityError("mixing functional needs a spectral density");
  }
  const auto density = detail::density_part(model, kQuadTol);
  const auto weight = detail::condition_weight(alpha, 1.0, kQuadTol);
  const auto quad = detail::integrate_product(model.dimension, std::abs(z_norm),
                                              density, weight, kQuadTol);
  if (!quad.converged) {
    throw QuadratureError("mixing-functional quadrature did not converge");
  }
  return quad.value;
}

double mixing_functional(const CorrelationModel& model, double alpha,
                         const Eigen::Ref<const Eigen::VectorXd>& z) {
  if (z.size() != model.dimension) {
    throw DomainError("lag vector dimension mismatch");
  }
  return mixing_functional_radial(model, alpha, z.norm());
}

}  // namespace macropeaks

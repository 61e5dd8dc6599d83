#include "mimwave/state_law.hpp"

#include <cmath>
#include <string>

namespace mimwave {

StateLaw StateLaw::power_law(double gamma, double scale) {
  const double anchor_q = gamma > 1.0 ? 0.0 : 1.0;
  return power_law(gamma, scale, anchor_q, 1.0);
}

StateLaw StateLaw::power_law(double gamma, double scale, double anchor_q, double anchor_s) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("power_law: gamma must be positive");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("power_law: scale must be positive");
  }
  // 1/R ~ p^(-1/gamma) is integrable at zero only for gamma > 1; 1/R^2 only
  // for gamma > 2. Anchors must avoid the non-integrable endpoint.
  if (anchor_q < 0.0 || (anchor_q == 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("power_law: anchor for Q must be positive when gamma <= 1");
  }
  if (anchor_s < 0.0 || (anchor_s == 0.0 && gamma <= 2.0)) {
    throw std::invalid_argument("power_law: anchor for S must be positive when gamma <= 2");
  }
  StateLaw law;
  law.kind_ = Kind::power;
  law.gamma_ = gamma;
  law.scale_ = scale;
  law.anchor_q_ = anchor_q;
  law.anchor_s_ = anchor_s;
  return law;
}

StateLaw StateLaw::linear(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("linear law: c must be positive");
  }
  StateLaw law;
  law.kind_ = Kind::linear;
  law.c_ = c;
  return law;
}

void StateLaw::require_power(const char* what) const {
  if (kind_ != Kind::power) {
    throw std::logic_error(std::string(what) + ": not defined for the linear law");
  }
}

void StateLaw::require_positive_pressure(double p, const char* what) const {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw std::domain_error(std::string(what) + ": pressure must be positive, got " +
                            std::to_string(p));
  }
}

double StateLaw::R(double p) const {
  if (kind_ == Kind::linear) return c_ * c_ * p;
  require_positive_pressure(p, "R");
  return scale_ * std::pow(p, 1.0 / gamma_);
}

double StateLaw::dR(double p) const {
  if (kind_ == Kind::linear) return c_ * c_;
  require_positive_pressure(p, "dR");
  return (scale_ / gamma_) * std::pow(p, (1.0 - gamma_) / gamma_);
}

double StateLaw::Q(double p) const {
  require_power("Q");
  require_positive_pressure(p, "Q");
  if (gamma_ == 1.0) return std::log(p / anchor_q_) / scale_;
  const double e = (gamma_ - 1.0) / gamma_;
  const double at_anchor = anchor_q_ == 0.0 ? 0.0 : std::pow(anchor_q_, e);
  return gamma_ / (scale_ * (gamma_ - 1.0)) * (std::pow(p, e) - at_anchor);
}

double StateLaw::dQ(double p) const {
  require_power("dQ");
  return 1.0 / R(p);
}

double StateLaw::S(double p) const {
  require_power("S");
  require_positive_pressure(p, "S");
  const double c2 = scale_ * scale_;
  if (gamma_ == 2.0) return std::log(p / anchor_s_) / c2;
  const double e = (gamma_ - 2.0) / gamma_;
  const double at_anchor = anchor_s_ == 0.0 ? 0.0 : std::pow(anchor_s_, e);
  return gamma_ / (c2 * (gamma_ - 2.0)) * (std::pow(p, e) - at_anchor);
}

double StateLaw::dS(double p) const {
  require_power("dS");
  const double r = R(p);
  return 1.0 / (r * r);
}

double StateLaw::pressure_from_density(double rho) const {
  if (kind_ == Kind::linear) return rho / (c_ * c_);
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw std::domain_error("pressure_from_density: density must be positive, got " +
                            std::to_string(rho));
  }
  return std::pow(rho / scale_, gamma_);
}

double internal_energy(const StateLaw& law, FlowKind kind, double p, double rho0) {
  if (kind == FlowKind::compressible_wave) {
    return rho0 * (law.R(p) * law.S(p) - law.Q(p));
  }
  return law.R(p) * law.Q(p) - p;
}

double internal_energy_derivative(const StateLaw& law, FlowKind kind, double p, double rho0) {
  if (kind == FlowKind::compressible_wave) {
    return rho0 * law.dR(p) * law.S(p);
  }
  return law.dR(p) * law.Q(p);
}

}  // namespace mimwave

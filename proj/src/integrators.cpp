#include "mimwave/integrators.hpp"

#include <cmath>
#include <string>

#include "mimwave/text.hpp"

namespace mimwave {

std::string_view to_string(Scheme scheme) {
  return scheme == Scheme::rk4 ? "rk4" : "implicit_midpoint";
}

Scheme scheme_from_string(std::string_view name) {
  if (name == "rk4") return Scheme::rk4;
  if (name == "implicit_midpoint") return Scheme::implicit_midpoint;
  throw std::invalid_argument("unknown integrator scheme: " + std::string(name));
}

namespace {

ModelState step_rk4(const ModelState& y, double dt) {
  const StateBundle k1 = rhs(y);
  const StateBundle k2 = rhs(apply_increment(y, k1, 0.5 * dt));
  const StateBundle k3 = rhs(apply_increment(y, k2, 0.5 * dt));
  const StateBundle k4 = rhs(apply_increment(y, k3, dt));
  const StateBundle sum = axpy(axpy(axpy(k1, 2.0, k2), 2.0, k3), 1.0, k4);
  return apply_increment(y, sum, dt / 6.0);
}

// Solves k = f(y + dt/2 k) by fixed-point sweeps; the step is y + dt k.
ModelState step_midpoint(const ModelState& y, const IntegratorConfig& cfg) {
  const double dt = cfg.dt;
  StateBundle k = rhs(y);
  double residual = 0.0;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    StateBundle k_next = rhs(apply_increment(y, k, 0.5 * dt));
    residual = std::fabs(dt) * max_abs_diff(k_next, k);
    k = std::move(k_next);
    if (residual <= cfg.tolerance) {
      return apply_increment(y, k, dt);
    }
  }
  throw ConvergenceFailure("implicit midpoint: fixed point not converged after " +
                               std::to_string(cfg.max_iterations) + " sweeps, residual " +
                               format_g(residual) + " (tolerance " + format_g(cfg.tolerance) +
                               "); reduce dt or relax the tolerance",
                           residual, cfg.max_iterations);
}

}  // namespace

ModelState step(const ModelState& state, const IntegratorConfig& config) {
  if (config.dt == 0.0 || !std::isfinite(config.dt)) {
    throw std::invalid_argument("step: dt must be nonzero and finite");
  }
  if (config.scheme == Scheme::rk4) return step_rk4(state, config.dt);
  if (!(config.tolerance > 0.0)) {
    throw std::invalid_argument("step: tolerance must be positive");
  }
  if (config.max_iterations < 1) {
    throw std::invalid_argument("step: max_iterations must be at least 1");
  }
  return step_midpoint(state, config);
}

}  // namespace mimwave

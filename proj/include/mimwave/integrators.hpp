#pragma once

#include <stdexcept>

#include "mimwave/models.hpp"

// Time integration. Classical RK4 for fourth-order accuracy; implicit
// midpoint (via fixed-point iteration) for exact conservation of quadratic
// invariants up to the solver tolerance. Mass and the linear momentum
// functionals are preserved by both schemes to roundoff.

namespace mimwave {

enum class Scheme { rk4, implicit_midpoint };

std::string_view to_string(Scheme scheme);
Scheme scheme_from_string(std::string_view name);

struct IntegratorConfig {
  Scheme scheme = Scheme::rk4;
  double dt = 0.0;
  // Fixed-point stop: max-norm of the state update change per sweep.
  double tolerance = 1e-13;
  int max_iterations = 100;
};

// Raised when the midpoint fixed-point iteration fails to reach tolerance.
struct ConvergenceFailure : std::runtime_error {
  ConvergenceFailure(const std::string& msg, double residual_, int iterations_)
      : std::runtime_error(msg), residual(residual_), iterations(iterations_) {}
  double residual;
  int iterations;
};

// One step of the configured scheme. dt may be negative (time reversal).
ModelState step(const ModelState& state, const IntegratorConfig& config);

}  // namespace mimwave

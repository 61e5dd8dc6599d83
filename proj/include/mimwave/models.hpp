#pragma once

#include <optional>
#include <string_view>

#include "mimwave/operators.hpp"

// The four semi-discrete models and their conservation bookkeeping.
//
//   scalar_wave        dp/dt = w,                dw/dt = LAPL p
//   linear_wave        drho/dt = -rho0 DIV v,    dv/dt = -GRAD p / rho0,  p = c^2 rho
//   compressible_wave  drho/dt = -div_r(v, rt),  dv/dt = -GRAD Q(p)
//   euler              drho/dt = -div(m),        d(rv)/dt = -advec(m, v) - grad(p)
//
// with rt = face_density(p, law, compressible_wave), r = face_density(p,
// law, euler), m = r v, and rv = v interp_c2f(rho). Momentum rv is derived
// from (rho, v) wherever needed and never stored. Velocity is recovered via
// the product rule: dv/dt = (d(rv)/dt - v interp(drho/dt)) / interp(rho).
//
// energy_rate_audit evaluates the exact differential of the model energy
// with the right-hand side substituted in. The operator identities make it
// cancel algebraically, so the audit vanishes to roundoff at every state;
// finite_difference_energy_check is the independent oracle for the same
// quantity, accurate to O(dt^2).

namespace mimwave {

enum class ModelKind { scalar_wave, linear_wave, compressible_wave, euler };

std::string_view to_string(ModelKind kind);
ModelKind model_kind_from_string(std::string_view name);

struct ModelConfig {
  double rho0 = 1.0;        // reference density (linear and compressible models)
  double wave_speed = 1.0;  // c in the linear-wave closure p = c^2 rho
  std::optional<StateLaw> law;
};

// Prognostic fields; which members are present depends on the model kind.
// The same shape carries time-derivative bundles.
struct StateBundle {
  CellField cell_a;                 // p (scalar_wave) or rho
  std::optional<CellField> cell_b;  // w (scalar_wave)
  std::optional<FaceField> face;    // v
};

StateBundle axpy(const StateBundle& x, double s, const StateBundle& y);
double max_abs_diff(const StateBundle& x, const StateBundle& y);

struct ModelState {
  ModelKind kind;
  ModelConfig config;
  StateBundle u;

  static ModelState scalar_wave(CellField p, CellField w);
  static ModelState linear_wave(CellField rho, FaceField v, double rho0, double c);
  static ModelState compressible_wave(CellField rho, FaceField v, double rho0, StateLaw law);
  static ModelState euler(CellField rho, FaceField v, StateLaw law);

  const StaggeredGrid& grid() const { return u.cell_a.grid(); }
  const GridPtr& grid_ptr() const { return u.cell_a.grid_ptr(); }

  const CellField& p() const;    // scalar_wave
  const CellField& w() const;    // scalar_wave
  const CellField& rho() const;  // flow models
  const FaceField& v() const;    // flow models
};

struct EnergyBreakdown {
  double kinetic = 0.0;
  double internal = 0.0;
  double total = 0.0;
  double mass = 0.0;      // 0 by convention for scalar_wave
  double momentum = 0.0;  // 0 by convention for scalar_wave
};

StateBundle rhs(const ModelState& state);
EnergyBreakdown energy(const ModelState& state);

// d(total energy)/dt along the model flow, evaluated algebraically.
double energy_rate_audit(const ModelState& state);

// Central-difference oracle (E(s + dt k) - E(s - dt k)) / (2 dt), k = rhs(s).
double finite_difference_energy_check(const ModelState& state, double dt);

// state + s * increment, same kind and parameters.
ModelState apply_increment(const ModelState& state, const StateBundle& increment, double s);

}  // namespace mimwave

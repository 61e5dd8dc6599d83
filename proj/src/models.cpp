#include "mimwave/models.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mimwave {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::scalar_wave: return "scalar_wave";
    case ModelKind::linear_wave: return "linear_wave";
    case ModelKind::compressible_wave: return "compressible_wave";
    case ModelKind::euler: return "euler";
  }
  return "?";
}

ModelKind model_kind_from_string(std::string_view name) {
  if (name == "scalar_wave") return ModelKind::scalar_wave;
  if (name == "linear_wave") return ModelKind::linear_wave;
  if (name == "compressible_wave") return ModelKind::compressible_wave;
  if (name == "euler") return ModelKind::euler;
  throw std::invalid_argument("unknown model kind: " + std::string(name));
}

StateBundle axpy(const StateBundle& x, double s, const StateBundle& y) {
  if (x.cell_b.has_value() != y.cell_b.has_value() ||
      x.face.has_value() != y.face.has_value()) {
    throw std::invalid_argument("StateBundle axpy: shapes do not match");
  }
  StateBundle out{axpy(x.cell_a, s, y.cell_a), std::nullopt, std::nullopt};
  if (x.cell_b) out.cell_b = axpy(*x.cell_b, s, *y.cell_b);
  if (x.face) out.face = axpy(*x.face, s, *y.face);
  return out;
}

double max_abs_diff(const StateBundle& x, const StateBundle& y) {
  double m = max_abs_diff(x.cell_a, y.cell_a);
  if (x.cell_b) m = std::max(m, max_abs_diff(*x.cell_b, *y.cell_b));
  if (x.face) m = std::max(m, max_abs_diff(*x.face, *y.face));
  return m;
}

namespace {

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::invalid_argument(std::string(what) + " must be positive");
  }
}

}  // namespace

ModelState ModelState::scalar_wave(CellField p, CellField w) {
  require_same_grid(p, w, "scalar_wave state");
  ModelState s{ModelKind::scalar_wave, ModelConfig{},
               StateBundle{std::move(p), std::move(w), std::nullopt}};
  return s;
}

ModelState ModelState::linear_wave(CellField rho, FaceField v, double rho0, double c) {
  require_same_grid(rho, v, "linear_wave state");
  require_positive(rho0, "rho0");
  require_positive(c, "wave speed");
  ModelState s{ModelKind::linear_wave, ModelConfig{rho0, c, std::nullopt},
               StateBundle{std::move(rho), std::nullopt, std::move(v)}};
  return s;
}

ModelState ModelState::compressible_wave(CellField rho, FaceField v, double rho0,
                                         StateLaw law) {
  require_same_grid(rho, v, "compressible_wave state");
  require_positive(rho0, "rho0");
  if (rho.grid().dims() != 1) {
    throw std::invalid_argument("compressible_wave: 1-D grids only");
  }
  if (law.kind() != StateLaw::Kind::power) {
    throw std::invalid_argument("compressible_wave: needs a power law");
  }
  ModelState s{ModelKind::compressible_wave, ModelConfig{rho0, 1.0, std::move(law)},
               StateBundle{std::move(rho), std::nullopt, std::move(v)}};
  return s;
}

ModelState ModelState::euler(CellField rho, FaceField v, StateLaw law) {
  require_same_grid(rho, v, "euler state");
  if (rho.grid().dims() != 1) {
    throw std::invalid_argument("euler: 1-D grids only");
  }
  if (law.kind() != StateLaw::Kind::power) {
    throw std::invalid_argument("euler: needs a power law");
  }
  ModelState s{ModelKind::euler, ModelConfig{1.0, 1.0, std::move(law)},
               StateBundle{std::move(rho), std::nullopt, std::move(v)}};
  return s;
}

const CellField& ModelState::p() const {
  if (kind != ModelKind::scalar_wave) throw std::logic_error("p(): not a scalar_wave state");
  return u.cell_a;
}
const CellField& ModelState::w() const {
  if (kind != ModelKind::scalar_wave || !u.cell_b) {
    throw std::logic_error("w(): not a scalar_wave state");
  }
  return *u.cell_b;
}
const CellField& ModelState::rho() const {
  if (kind == ModelKind::scalar_wave) throw std::logic_error("rho(): scalar_wave state");
  return u.cell_a;
}
const FaceField& ModelState::v() const {
  if (kind == ModelKind::scalar_wave || !u.face) {
    throw std::logic_error("v(): scalar_wave state");
  }
  return *u.face;
}

namespace {

// Closure for the linear-wave model. The energy c^2/(2 rho0) <rho,rho>_c is
// an exact invariant of the semi-discrete system precisely when the
// momentum equation carries p = c^2 rho.
CellField linear_pressure(const ModelState& s) {
  const double c = s.config.wave_speed;
  return scale(s.rho(), c * c);
}

CellField flow_pressure(const ModelState& s) {
  const StateLaw& law = *s.config.law;
  return transform(s.rho(), [&law](double rho) { return law.pressure_from_density(rho); });
}

// Shared intermediates of the isentropic model; rhs and the audit must see
// identical floating-point values for the cancellations to be exact.
struct EulerTerms {
  CellField p;
  FaceField m;        // r v with r the chain-rule face density
  CellField drho;     // -div(m)
  FaceField drv;      // -advec(m, v) - grad(p)
  FaceField irho;     // interp_c2f(rho)
  FaceField dv;       // (drv - v interp(drho)) / irho
};

EulerTerms euler_terms(const ModelState& s) {
  const StateLaw& law = *s.config.law;
  CellField p = flow_pressure(s);
  const FaceField r = face_density(p, law, FlowKind::euler);
  FaceField m = multiply(r, s.v());
  CellField drho = scale(div(m), -1.0);
  FaceField drv = axpy(scale(advec(m, s.v()), -1.0), -1.0, grad(p));
  FaceField irho = interp_c2f(s.rho());
  if (min_value(irho) <= 0.0) {
    throw std::domain_error("euler: interpolated density is not positive");
  }
  FaceField dv = divide(axpy(drv, -1.0, multiply(s.v(), interp_c2f(drho))), irho);
  return EulerTerms{std::move(p), std::move(m), std::move(drho),
                    std::move(drv), std::move(irho), std::move(dv)};
}

}  // namespace

StateBundle rhs(const ModelState& s) {
  switch (s.kind) {
    case ModelKind::scalar_wave: {
      return StateBundle{s.w(), lapl(s.p()), std::nullopt};
    }
    case ModelKind::linear_wave: {
      CellField drho = scale(div(s.v()), -s.config.rho0);
      FaceField dv = scale(grad(linear_pressure(s)), -1.0 / s.config.rho0);
      return StateBundle{std::move(drho), std::nullopt, std::move(dv)};
    }
    case ModelKind::compressible_wave: {
      const StateLaw& law = *s.config.law;
      CellField p = flow_pressure(s);
      const FaceField rt = face_density(p, law, FlowKind::compressible_wave);
      CellField drho = scale(div_r(s.v(), rt), -1.0);
      CellField qp = transform(p, [&law](double x) { return law.Q(x); });
      FaceField dv = scale(grad(qp), -1.0);
      return StateBundle{std::move(drho), std::nullopt, std::move(dv)};
    }
    case ModelKind::euler: {
      EulerTerms t = euler_terms(s);
      return StateBundle{std::move(t.drho), std::nullopt, std::move(t.dv)};
    }
  }
  throw std::logic_error("rhs: unknown model kind");
}

EnergyBreakdown energy(const ModelState& s) {
  EnergyBreakdown e;
  switch (s.kind) {
    case ModelKind::scalar_wave: {
      e.kinetic = 0.5 * inner_product_cells(s.w(), s.w());
      e.internal = -0.5 * inner_product_cells(s.p(), lapl(s.p()));
      break;
    }
    case ModelKind::linear_wave: {
      const double rho0 = s.config.rho0, c = s.config.wave_speed;
      e.kinetic = 0.5 * rho0 * inner_product_faces(s.v(), s.v());
      e.internal = 0.5 * c * c / rho0 * inner_product_cells(s.rho(), s.rho());
      e.mass = total_cells(s.rho());
      e.momentum = rho0 * total_faces(s.v());
      break;
    }
    case ModelKind::compressible_wave: {
      const StateLaw& law = *s.config.law;
      const double rho0 = s.config.rho0;
      e.kinetic = 0.5 * rho0 * inner_product_faces(s.v(), s.v());
      const CellField p = flow_pressure(s);
      e.internal = total_cells(transform(p, [&](double x) {
        return internal_energy(law, FlowKind::compressible_wave, x, rho0);
      }));
      e.mass = total_cells(s.rho());
      e.momentum = rho0 * total_faces(s.v());
      break;
    }
    case ModelKind::euler: {
      const StateLaw& law = *s.config.law;
      const FaceField rv = multiply(s.v(), interp_c2f(s.rho()));
      e.kinetic = 0.5 * inner_product_faces(s.v(), rv);
      const CellField p = flow_pressure(s);
      e.internal = total_cells(transform(p, [&](double x) {
        return internal_energy(law, FlowKind::euler, x, 1.0);
      }));
      e.mass = total_cells(s.rho());
      e.momentum = total_faces(rv);
      break;
    }
  }
  e.total = e.kinetic + e.internal;
  return e;
}

double energy_rate_audit(const ModelState& s) {
  switch (s.kind) {
    case ModelKind::scalar_wave: {
      const StateBundle k = rhs(s);
      const CellField& dp = k.cell_a;
      const CellField& dw = *k.cell_b;
      return inner_product_cells(s.w(), dw) - 0.5 * inner_product_cells(dp, lapl(s.p())) -
             0.5 * inner_product_cells(s.p(), lapl(dp));
    }
    case ModelKind::linear_wave: {
      const StateBundle k = rhs(s);
      const double rho0 = s.config.rho0, c = s.config.wave_speed;
      return rho0 * inner_product_faces(s.v(), *k.face) +
             c * c / rho0 * inner_product_cells(s.rho(), k.cell_a);
    }
    case ModelKind::compressible_wave: {
      const StateBundle k = rhs(s);
      const StateLaw& law = *s.config.law;
      const double rho0 = s.config.rho0;
      const CellField p = flow_pressure(s);
      const CellField sp = transform(p, [&law](double x) { return law.S(x); });
      return rho0 * inner_product_faces(s.v(), *k.face) +
             rho0 * total_cells(multiply(sp, k.cell_a));
    }
    case ModelKind::euler: {
      const EulerTerms t = euler_terms(s);
      const StateLaw& law = *s.config.law;
      const CellField qp = transform(t.p, [&law](double x) { return law.Q(x); });
      const FaceField v2 = multiply(s.v(), s.v());
      return inner_product_faces(s.v(), t.drv) -
             0.5 * inner_product_faces(v2, interp_c2f(t.drho)) +
             total_cells(multiply(qp, t.drho));
    }
  }
  throw std::logic_error("energy_rate_audit: unknown model kind");
}

double finite_difference_energy_check(const ModelState& s, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("finite_difference_energy_check: dt must be positive");
  }
  const StateBundle k = rhs(s);
  const double e_plus = energy(apply_increment(s, k, dt)).total;
  const double e_minus = energy(apply_increment(s, k, -dt)).total;
  return (e_plus - e_minus) / (2.0 * dt);
}

ModelState apply_increment(const ModelState& s, const StateBundle& increment, double h) {
  return ModelState{s.kind, s.config, axpy(s.u, h, increment)};
}

}  // namespace mimwave

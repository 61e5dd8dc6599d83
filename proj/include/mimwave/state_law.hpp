#pragma once

#include <stdexcept>

// Constitutive closures rho = R(p) together with the two antiderivatives
//
//   Q(p) = integral of 1/R      from p_q to p,
//   S(p) = integral of 1/R^2    from p_s to p,
//
// evaluated in closed form. The working family is the power law
// R(p) = C p^(1/gamma) on p > 0; the linear law rho = c^2 p supplies R only
// and is used by the linear-wave model, which never touches Q or S.
//
// Q and S enter the face densities and the internal-energy bookkeeping of
// the nonlinear models; the anchors p_q and p_s shift them by constants,
// which shifts internal energy by conserved quantities only.

namespace mimwave {

// Which nonlinear flow model a law-derived quantity belongs to. The two
// models pair different antiderivatives: the isentropic model works with
// Q, the quasi-linear compressible model with Q and S.
enum class FlowKind { compressible_wave, euler };

class StateLaw {
public:
  enum class Kind { power, linear };

  // Power law R(p) = scale * p^(1/gamma). Default anchors: p_q = 0 where
  // 1/R is integrable at zero (gamma > 1) and 1 otherwise; p_s = 1.
  static StateLaw power_law(double gamma, double scale = 1.0);
  static StateLaw power_law(double gamma, double scale, double anchor_q, double anchor_s);
  // Linear law rho = c^2 p.
  static StateLaw linear(double c);

  Kind kind() const { return kind_; }
  double gamma() const { return gamma_; }
  double scale() const { return scale_; }
  double anchor_q() const { return anchor_q_; }
  double anchor_s() const { return anchor_s_; }
  double wave_speed() const { return c_; }  // linear law only

  double R(double p) const;
  double dR(double p) const;
  double Q(double p) const;   // dQ/dp = 1/R
  double dQ(double p) const;
  double S(double p) const;   // dS/dp = 1/R^2
  double dS(double p) const;

  // Inverse of R; the pressure carried by a density sample.
  double pressure_from_density(double rho) const;

private:
  StateLaw() = default;

  void require_power(const char* what) const;
  void require_positive_pressure(double p, const char* what) const;

  Kind kind_ = Kind::power;
  double gamma_ = 2.0;
  double scale_ = 1.0;
  double anchor_q_ = 0.0;
  double anchor_s_ = 1.0;
  double c_ = 1.0;
};

// Internal energy density per cell and its pressure derivative:
//   compressible_wave: e(p) = rho0 (R(p) S(p) - Q(p)),  e'(p) = rho0 R'(p) S(p)
//   euler:             e(p) = R(p) Q(p) - p,            e'(p) = R'(p) Q(p)
double internal_energy(const StateLaw& law, FlowKind kind, double p, double rho0);
double internal_energy_derivative(const StateLaw& law, FlowKind kind, double p, double rho0);

}  // namespace mimwave

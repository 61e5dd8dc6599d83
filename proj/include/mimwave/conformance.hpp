#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mimwave/integrators.hpp"
#include "mimwave/random_fields.hpp"

// The audit machinery: a deterministic battery of operator and conservation
// checks, the per-step conservation time series, and the dt-refinement
// study. Reports are reproducible bit for bit from (sizes, laws, seed) and
// are sorted by check name.

namespace mimwave {

// Deliberate defects injected into the battery; used as negative controls
// to prove the checks can fail.
enum class BreakHook { none, advec_half_factor, div_sign };

struct ConformanceOptions {
  std::vector<std::size_t> sizes = {4, 8, 16};
  std::vector<double> gammas = {1.4, 2.0};
  std::uint64_t seed = 0;
  BreakHook break_hook = BreakHook::none;
};

struct CheckRecord {
  std::string name;
  std::string identity;  // the identity or property audited
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ConformanceReport {
  ConformanceOptions options;
  std::vector<CheckRecord> checks;

  bool all_pass() const;
  std::size_t n_failed() const;
  // Largest residual/tolerance ratio over all checks.
  double worst_ratio() const;
  std::string to_text() const;
  std::string to_csv() const;
};

ConformanceReport run_conformance(const ConformanceOptions& options = {});

struct ConservationSample {
  long step = 0;
  double t = 0.0;
  EnergyBreakdown e;
  double dEdt_audit = 0.0;
};

struct ConservationSeries {
  std::vector<ConservationSample> rows;
  // Set when integration aborted; rows up to the failure are retained.
  std::optional<std::string> failure;
};

// Integrates `steps` steps, sampling every `stride` steps plus the final state.
ConservationSeries conservation_run(const ModelState& initial, const IntegratorConfig& config,
                                    long steps, long stride);

std::string conservation_csv(const ConservationSeries& series);

struct ConvergencePoint {
  double dt = 0.0;
  long steps = 0;
  double energy_error = 0.0;
  bool saturated = false;  // error at or below the scheme's roundoff floor
};

struct ConvergenceTable {
  std::vector<ConvergencePoint> points;
  double fitted_order = 0.0;
  bool order_valid = false;
};

// Terminal |E(T) - E(0)| over a geometric dt sequence (at least three
// values). Integrator failure at one dt aborts the remaining points; the
// partial table keeps what finished.
ConvergenceTable convergence_study(const ModelState& initial, const IntegratorConfig& base,
                                   double total_time, const std::vector<double>& dts);

std::string convergence_text(const ConvergenceTable& table);

}  // namespace mimwave

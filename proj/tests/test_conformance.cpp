// PURPOSE: verify the check battery itself: coverage, determinism, and the
// break hooks proving the checks can fail.
//
// A green battery is only evidence if (a) every identity family actually
// appears in the report, (b) the report is reproducible bit for bit, and
// (c) deliberately broken operators turn the right families red while
// leaving unrelated families green.

#include "mimwave/conformance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mimwave/dense.hpp"
#include "test_util.hpp"

using namespace mimwave;

namespace {

bool has_prefix(const ConformanceReport& r, const std::string& prefix) {
  return std::any_of(r.checks.begin(), r.checks.end(), [&](const CheckRecord& c) {
    return c.name.rfind(prefix, 0) == 0;
  });
}

std::vector<const CheckRecord*> with_prefix(const ConformanceReport& r,
                                            const std::string& prefix) {
  std::vector<const CheckRecord*> out;
  for (const auto& c : r.checks) {
    if (c.name.rfind(prefix, 0) == 0) out.push_back(&c);
  }
  return out;
}

void test_default_battery_is_green() {
  const ConformanceReport r = run_conformance();
  CHECK(r.all_pass());
  CHECK_EQ(r.n_failed(), 0u);
  CHECK(r.checks.size() >= 20);
  CHECK(r.worst_ratio() < 1.0);
  CHECK(r.worst_ratio() > 0.0);

  // Sorted by name: stable report layout.
  CHECK(std::is_sorted(r.checks.begin(), r.checks.end(),
                       [](const CheckRecord& a, const CheckRecord& b) {
                         return a.name < b.name;
                       }));
}

void test_every_identity_family_is_covered() {
  const ConformanceReport r = run_conformance();
  const std::vector<std::string> families = {
      "adjoint.grad_div.1d.",     "adjoint.grad_div.2d.",
      "adjoint.lapl_self.1d.",    "adjoint.lapl_self.2d.",
      "adjoint.rgrad_divr.",      "advec.symmetry.",
      "advec.quadratic_form.",    "nullspace.grad_const.",
      "nullspace.div_const.",     "conservation.divr_total.",
      "momentum.advec_total.",    "momentum.grad_total.",
      "lapl.negative.",           "chain_rule.euler.",
      "chain_rule.compressible_wave.", "chain_rule.fallback_continuity.",
      "energy_rate.",             "mass_rate.",
      "momentum_rate.",           "audit_fd.",
      "anchor_independence.",
  };
  for (const std::string& f : families) {
    CHECK_MSG(has_prefix(r, f), "missing check family " + f);
  }
  // Every model kind appears in the audit checks.
  for (const char* kind : {"scalar_wave", "linear_wave", "compressible_wave", "euler"}) {
    CHECK_MSG(has_prefix(r, std::string("energy_rate.") + kind),
              std::string("missing energy_rate for ") + kind);
    CHECK_MSG(has_prefix(r, std::string("audit_fd.") + kind),
              std::string("missing audit_fd for ") + kind);
  }
}

void test_reports_are_deterministic() {
  ConformanceOptions opt;
  opt.sizes = {4, 8};
  opt.gammas = {1.4, 2.0};
  opt.seed = 12345;
  const std::string a = run_conformance(opt).to_csv();
  const std::string b = run_conformance(opt).to_csv();
  CHECK_MSG(a == b, "same options must give byte-identical reports");
  CHECK(a.find("# seed=12345") != std::string::npos);
  CHECK(a.find("name,identity,residual,tolerance,status") != std::string::npos);

  // A different seed still passes (identities hold at any state).
  opt.seed = 777;
  CHECK(run_conformance(opt).all_pass());
}

void test_break_hook_div_sign() {
  ConformanceOptions opt;
  opt.break_hook = BreakHook::div_sign;
  const ConformanceReport r = run_conformance(opt);
  CHECK(!r.all_pass());

  // The flipped divergence must defeat every grad/div adjoint check, loudly.
  const auto adjoints = with_prefix(r, "adjoint.grad_div.");
  CHECK(!adjoints.empty());
  for (const CheckRecord* c : adjoints) {
    CHECK_MSG(!c->pass && c->residual >= 1e-2,
              c->name + " residual " + testutil::num(c->residual) +
                  " should be far beyond tolerance");
  }
  // Families that never touch DIV stay green.
  for (const CheckRecord* c : with_prefix(r, "chain_rule.")) CHECK_MSG(c->pass, c->name);
  for (const CheckRecord* c : with_prefix(r, "nullspace.grad_const.")) CHECK_MSG(c->pass, c->name);
}

void test_break_hook_advec_half_factor() {
  ConformanceOptions opt;
  opt.break_hook = BreakHook::advec_half_factor;
  const ConformanceReport r = run_conformance(opt);
  CHECK(!r.all_pass());

  const auto symmetry = with_prefix(r, "advec.symmetry.");
  CHECK(!symmetry.empty());
  for (const CheckRecord* c : symmetry) {
    CHECK_MSG(!c->pass && c->residual >= 1e-2,
              c->name + " residual " + testutil::num(c->residual));
  }
  for (const CheckRecord* c : with_prefix(r, "advec.quadratic_form.")) {
    CHECK_MSG(!c->pass, c->name + " should fail under the advection defect");
  }
  // The differential operators are untouched.
  for (const CheckRecord* c : with_prefix(r, "adjoint.")) CHECK_MSG(c->pass, c->name);
  for (const CheckRecord* c : with_prefix(r, "chain_rule.")) CHECK_MSG(c->pass, c->name);
}

void test_option_validation() {
  ConformanceOptions opt;
  opt.sizes = {2};
  CHECK_THROWS(run_conformance(opt), std::invalid_argument);
  opt.sizes = {dense_assembly_max_unknowns + 1};
  CHECK_THROWS(run_conformance(opt), std::invalid_argument);
  opt.sizes = {8};
  opt.gammas = {-1.0};
  CHECK_THROWS(run_conformance(opt), std::invalid_argument);

  // Empty sizes skip the 1-D groups but keep the battery meaningful.
  opt = ConformanceOptions{};
  opt.sizes = {};
  const ConformanceReport r = run_conformance(opt);
  CHECK(r.all_pass());
  CHECK(has_prefix(r, "adjoint.grad_div.2d."));
  CHECK(has_prefix(r, "audit_fd."));
  CHECK(!has_prefix(r, "adjoint.grad_div.1d."));
}

ModelState series_state(std::uint64_t seed) {
  ModelConfig cfg;
  cfg.rho0 = 1.3;
  cfg.wave_speed = 2.0;
  return random_state(ModelKind::linear_wave, build_grid(16, 16.0), cfg, seed);
}

void test_conservation_run_sampling() {
  const ModelState s = series_state(42);
  IntegratorConfig cfg;
  cfg.scheme = Scheme::implicit_midpoint;
  cfg.dt = 0.05;
  cfg.tolerance = 1e-14;

  const ConservationSeries series = conservation_run(s, cfg, 10, 4);
  CHECK(!series.failure.has_value());
  // Step 0, every fourth step, and the final step.
  CHECK_EQ(series.rows.size(), std::size_t{4});
  CHECK_EQ(series.rows[0].step, 0L);
  CHECK_EQ(series.rows[1].step, 4L);
  CHECK_EQ(series.rows[2].step, 8L);
  CHECK_EQ(series.rows[3].step, 10L);
  CHECK_CLOSE(series.rows[3].t, 0.5, 1e-15);

  const double e0 = series.rows[0].e.total;
  const double scale = 1.0 + std::abs(e0);
  for (const auto& row : series.rows) {
    CHECK(std::abs(row.e.total - e0) <= 1e-10 * scale);
    CHECK(std::abs(row.e.mass - series.rows[0].e.mass) <= 1e-12 * scale);
    CHECK(std::abs(row.e.momentum - series.rows[0].e.momentum) <= 1e-12 * scale);
    CHECK(std::abs(row.dEdt_audit) <= 1e-12 * scale);
  }

  const std::string csv = conservation_csv(series);
  CHECK(csv.rfind("step,t,E_kin,E_int,E_total,mass,momentum,dEdt_audit\n", 0) == 0);
  CHECK_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')),
           series.rows.size() + 1);

  // A zero-step run still reports the initial sample.
  const ConservationSeries only_start = conservation_run(s, cfg, 0, 3);
  CHECK_EQ(only_start.rows.size(), std::size_t{1});
  CHECK_EQ(only_start.rows[0].step, 0L);

  CHECK_THROWS(conservation_run(s, cfg, -1, 1), std::invalid_argument);
  CHECK_THROWS(conservation_run(s, cfg, 10, 0), std::invalid_argument);
}

void test_conservation_run_reports_failure() {
  ModelConfig cfg;
  cfg.law = StateLaw::power_law(1.4, 1.0);
  const ModelState s = random_state(ModelKind::euler, build_grid(16, 16.0), cfg, 7);
  IntegratorConfig ic;
  ic.scheme = Scheme::implicit_midpoint;
  ic.dt = 0.5;
  ic.tolerance = 1e-15;
  ic.max_iterations = 1;

  const ConservationSeries series = conservation_run(s, ic, 50, 5);
  CHECK(series.failure.has_value());
  CHECK(series.failure->find("step 1:") != std::string::npos);
  // The pre-failure samples survive.
  CHECK_EQ(series.rows.size(), std::size_t{1});
  CHECK_EQ(series.rows[0].step, 0L);
}

void test_convergence_study_validation() {
  const ModelState s = series_state(3);
  IntegratorConfig cfg;
  cfg.scheme = Scheme::rk4;

  const std::vector<double> too_few = {0.1, 0.05};
  const std::vector<double> negative = {0.1, 0.05, -0.025};
  const std::vector<double> not_geometric = {0.1, 0.05, 0.03};
  const std::vector<double> increasing = {0.025, 0.05, 0.1};
  const std::vector<double> good = {0.1, 0.05, 0.025};
  CHECK_THROWS(convergence_study(s, cfg, 1.0, too_few), std::invalid_argument);
  CHECK_THROWS(convergence_study(s, cfg, 1.0, negative), std::invalid_argument);
  CHECK_THROWS(convergence_study(s, cfg, 1.0, not_geometric), std::invalid_argument);
  CHECK_THROWS(convergence_study(s, cfg, 1.0, increasing), std::invalid_argument);
  CHECK_THROWS(convergence_study(s, cfg, 0.0, good), std::invalid_argument);
}

void test_convergence_study_rk4_order() {
  // For the linear model the leading rk4 energy term cancels by skew
  // symmetry, so the terminal energy error decays one order faster than the
  // scheme's nominal four.
  const ModelState s = series_state(11);
  IntegratorConfig cfg;
  cfg.scheme = Scheme::rk4;

  const ConvergenceTable table = convergence_study(s, cfg, 1.0, {0.1, 0.05, 0.025});
  CHECK_EQ(table.points.size(), std::size_t{3});
  for (const auto& pt : table.points) {
    CHECK(!pt.saturated);
    CHECK(pt.energy_error > 0.0);
  }
  CHECK(table.points[0].energy_error > table.points[1].energy_error);
  CHECK(table.points[1].energy_error > table.points[2].energy_error);
  CHECK_EQ(table.points[0].steps, 10L);
  CHECK_EQ(table.points[2].steps, 40L);
  CHECK(table.order_valid);
  CHECK_MSG(table.fitted_order > 4.5 && table.fitted_order < 5.5,
            "fitted order " + testutil::num(table.fitted_order));

  const std::string text = convergence_text(table);
  CHECK(text.rfind("dt,steps,energy_error,order\n", 0) == 0);
  CHECK(text.find("fitted order: ") != std::string::npos);
}

void test_convergence_study_midpoint_saturates() {
  // The midpoint scheme conserves the energy to solver tolerance at any dt,
  // so every point sits on the roundoff floor and no order can be fitted.
  const ModelState s = series_state(5);
  IntegratorConfig cfg;
  cfg.scheme = Scheme::implicit_midpoint;
  cfg.tolerance = 1e-13;

  const ConvergenceTable table = convergence_study(s, cfg, 0.8, {0.4, 0.2, 0.1});
  CHECK_EQ(table.points.size(), std::size_t{3});
  for (const auto& pt : table.points) CHECK(pt.saturated);
  CHECK(!table.order_valid);
  const std::string text = convergence_text(table);
  CHECK(text.find("saturated") != std::string::npos);
  CHECK(text.find("fitted order: saturated") != std::string::npos);
}

void test_text_rendering() {
  ConformanceOptions opt;
  opt.sizes = {4};
  opt.gammas = {2.0};
  const ConformanceReport r = run_conformance(opt);
  const std::string text = r.to_text();
  CHECK(text.find("checks passed") != std::string::npos);
  CHECK(text.find("FAIL") == std::string::npos);
  const std::string csv = r.to_csv();
  // One line per check plus three comment lines and the header.
  const std::size_t lines = static_cast<std::size_t>(
      std::count(csv.begin(), csv.end(), '\n'));
  CHECK_EQ(lines, r.checks.size() + 4);
}

}  // namespace

int main() {
  test_default_battery_is_green();
  test_every_identity_family_is_covered();
  test_reports_are_deterministic();
  test_break_hook_div_sign();
  test_break_hook_advec_half_factor();
  test_option_validation();
  test_text_rendering();
  test_conservation_run_sampling();
  test_conservation_run_reports_failure();
  test_convergence_study_validation();
  test_convergence_study_rk4_order();
  test_convergence_study_midpoint_saturates();
  return testutil::summary("test_conformance");
}

// Command-line front end: time integration with conservation tracking,
// the operator/conservation check battery, dense operator dumps, and the
// dt-refinement study.
//
// Exit codes: 0 success, 1 configuration/usage error, 2 runtime failure or
// failed checks.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mimwave/config.hpp"
#include "mimwave/conformance.hpp"
#include "mimwave/dense.hpp"
#include "mimwave/text.hpp"

namespace {

using namespace mimwave;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

double drift(double final_value, double initial_value) {
  return std::fabs(final_value - initial_value) / (1.0 + std::fabs(initial_value));
}

int cmd_run(const std::string& config_path, const std::string& out_override) {
  const RunConfig cfg = load_run_config(config_path);
  std::string out_path = out_override;
  if (out_path.empty() && cfg.output) out_path = *cfg.output;
  if (out_path.empty()) {
    throw ConfigError("no output path: set 'output' in the config or pass --out");
  }

  const ModelState s0 = initial_state(cfg);
  const ConservationSeries series =
      conservation_run(s0, cfg.integrator, cfg.steps, cfg.sample_stride);
  write_file(out_path, conservation_csv(series));

  const ConservationSample& first = series.rows.front();
  const ConservationSample& last = series.rows.back();
  double audit_max = 0.0;
  for (const auto& row : series.rows) {
    audit_max = std::max(audit_max, std::fabs(row.dEdt_audit));
  }

  std::cout << "model=" << to_string(cfg.model) << " scheme=" << to_string(cfg.integrator.scheme)
            << " steps=" << cfg.steps << " dt=" << format_g(cfg.integrator.dt) << "\n";
  std::cout << "E_total " << format_g17(first.e.total) << " -> " << format_g17(last.e.total)
            << "  (drift " << format_g(drift(last.e.total, first.e.total)) << ")\n";
  std::cout << "mass drift " << format_g(drift(last.e.mass, first.e.mass)) << "  momentum drift "
            << format_g(drift(last.e.momentum, first.e.momentum)) << "  max |dE/dt audit| "
            << format_g(audit_max) << "\n";
  std::cout << "wrote " << out_path << " (" << series.rows.size() << " samples)\n";

  if (series.failure) {
    std::cerr << "integration aborted: " << *series.failure << "\n";
    return 2;
  }
  return 0;
}

int cmd_conformance(const ConformanceOptions& options, const std::string& out_path,
                    const std::string& format) {
  const ConformanceReport report = run_conformance(options);
  const std::string body = format == "csv" ? report.to_csv() : report.to_text();
  if (out_path.empty()) {
    std::cout << body;
  } else {
    write_file(out_path, body);
    std::cout << (report.all_pass() ? "all " : "FAILED: ") << report.checks.size()
              << " checks, " << report.n_failed() << " failed, wrote " << out_path << "\n";
  }
  return report.all_pass() ? 0 : 2;
}

std::string matrix_csv(const OperatorMatrix& m, double spacing) {
  std::string out = "# name=" + m.name + " rows=" + std::to_string(m.rows) +
                    " cols=" + std::to_string(m.cols) + " in=" + m.in_space +
                    " out=" + m.out_space + " spacing=" + format_g(spacing) + "\n";
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      if (j) out += ",";
      out += format_g17(m.at(i, j));
    }
    out += "\n";
  }
  return out;
}

FaceField coefficient_field(const GridPtr& grid, const std::vector<double>& coeff,
                            std::uint64_t seed) {
  if (!coeff.empty()) {
    if (coeff.size() != grid->n_faces_total()) {
      throw ConfigError("--coeff needs exactly " + std::to_string(grid->n_faces_total()) +
                        " values for this grid");
    }
    return FaceField(grid, coeff);
  }
  SplitMix64 rng(mix_seed(seed, 0x636f656666ULL));
  return random_smooth_face_field(grid, rng, 1.1, 0.5);
}

int cmd_assemble(const std::string& op, std::size_t n, const std::vector<double>& coeff,
                 std::uint64_t seed, const std::string& out_prefix) {
  static const std::set<std::string> known = {"grad",  "div",   "lapl", "interp",
                                              "advec", "div_r", "r_grad"};
  if (!known.count(op)) {
    throw ConfigError("unknown operator '" + op + "' (expected grad, div, lapl, interp, advec, "
                      "div_r, or r_grad)");
  }
  // Unit spacing keeps stencil entries integral and easy to eyeball.
  const GridPtr grid = build_grid(n, static_cast<double>(n));
  const FaceField r = coefficient_field(grid, coeff, seed);

  OperatorMatrix m = [&]() {
    if (op == "grad") {
      return assemble_cells_to_faces(grid, [](const CellField& p) { return grad(p); }, "GRAD");
    }
    if (op == "div") {
      return assemble_faces_to_cells(grid, [](const FaceField& v) { return div(v); }, "DIV");
    }
    if (op == "lapl") {
      return assemble_cells_to_cells(grid, [](const CellField& p) { return lapl(p); }, "LAPL");
    }
    if (op == "interp") {
      return assemble_cells_to_faces(grid, [](const CellField& a) { return interp_c2f(a); },
                                     "INTERP");
    }
    if (op == "advec") {
      return assemble_faces_to_faces(grid, [&r](const FaceField& w) { return advec(r, w); },
                                     "ADVEC");
    }
    if (op == "div_r") {
      return assemble_faces_to_cells(grid, [&r](const FaceField& v) { return div_r(v, r); },
                                     "div_r");
    }
    return assemble_cells_to_faces(grid, [&r](const CellField& s) { return r_grad(s, r); },
                                   "r_grad");
  }();

  const OperatorMatrix adj = m.weighted_adjoint();
  if (out_prefix.empty()) {
    std::cout << matrix_csv(m, grid->spacing(0));
  } else {
    write_file(out_prefix + ".csv", matrix_csv(m, grid->spacing(0)));
    write_file(out_prefix + ".adjoint.csv", matrix_csv(adj, grid->spacing(0)));
    std::cout << "wrote " << out_prefix << ".csv and " << out_prefix << ".adjoint.csv\n";
  }

  // Report the identity the operator participates in, where there is one.
  if (op == "grad" || op == "div") {
    const auto grad_m =
        assemble_cells_to_faces(grid, [](const CellField& p) { return grad(p); }, "GRAD");
    const auto div_m =
        assemble_faces_to_cells(grid, [](const FaceField& v) { return div(v); }, "DIV");
    std::cout << "adjoint residual |GRAD* + DIV| = "
              << format_g(adjoint_residual(grad_m, div_m, -1)) << "\n";
  } else if (op == "lapl") {
    std::cout << "self-adjointness residual |LAPL* - LAPL| = "
              << format_g(adjoint_residual(m, m, +1)) << "\n";
  } else if (op == "div_r" || op == "r_grad") {
    const auto rg = assemble_cells_to_faces(
        grid, [&r](const CellField& s) { return r_grad(s, r); }, "r_grad");
    const auto dr = assemble_faces_to_cells(
        grid, [&r](const FaceField& v) { return div_r(v, r); }, "div_r");
    std::cout << "adjoint residual |r_grad* + div_r| = "
              << format_g(adjoint_residual(rg, dr, -1)) << "\n";
  } else if (op == "advec") {
    const FaceField diag = interp_c2f(div(r));
    double worst = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i) {
      for (std::size_t j = 0; j < m.cols; ++j) {
        const double expect = i == j ? diag[i] : 0.0;
        worst = std::max(worst, std::fabs(m.at(i, j) + adj.at(i, j) - expect));
      }
    }
    std::cout << "symmetry residual |ADVEC + ADVEC* - diag(Interp(DIV m))| = "
              << format_g(worst) << "\n";
  }
  return 0;
}

int cmd_convergence(const std::string& config_path, const std::vector<double>& dts,
                    const std::string& out_path) {
  const RunConfig cfg = load_run_config(config_path);
  const double total_time = static_cast<double>(cfg.steps) * cfg.integrator.dt;
  if (!(total_time > 0.0)) {
    throw ConfigError("convergence needs steps * integrator.dt > 0 in the config");
  }
  const ModelState s0 = initial_state(cfg);
  const ConvergenceTable table = convergence_study(s0, cfg.integrator, total_time, dts);
  const std::string body = convergence_text(table);
  if (out_path.empty()) {
    std::cout << body;
  } else {
    write_file(out_path, body);
    std::cout << "wrote " << out_path << "\n";
    if (table.order_valid) {
      std::cout << "fitted order: " << format_g(table.fitted_order) << "\n";
    } else {
      std::cout << "fitted order: saturated\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Staggered-grid wave and flow models with conservation audits"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "Integrate a configured model, writing a "
                                            "conservation time series CSV");
  std::string run_config, run_out;
  run_cmd->add_option("--config", run_config, "Config file (TOML subset)")->required();
  run_cmd->add_option("--out", run_out, "Output CSV path (overrides the config's 'output')");

  // conformance
  auto* conf_cmd = app.add_subcommand("conformance", "Run the operator and conservation "
                                                     "check battery");
  ConformanceOptions conf_opts;
  std::string conf_out, conf_format = "text", conf_break;
  conf_cmd->add_option("--sizes", conf_opts.sizes, "Grid sizes (comma separated)")
      ->delimiter(',');
  conf_cmd->add_option("--gammas", conf_opts.gammas, "Power-law exponents (comma separated)")
      ->delimiter(',');
  conf_cmd->add_option("--seed", conf_opts.seed, "Seed for randomized checks");
  conf_cmd->add_option("--out", conf_out, "Write the report here instead of stdout");
  conf_cmd->add_option("--format", conf_format, "Report format")
      ->check(CLI::IsMember({"text", "csv"}));
  conf_cmd->add_option("--break", conf_break, "Inject a deliberate defect (negative control)")
      ->check(CLI::IsMember({"advec", "div"}))
      ->group("");  // hidden

  // assemble
  auto* asm_cmd = app.add_subcommand("assemble", "Write a dense matrix for an operator on a "
                                                 "1-D grid with unit spacing");
  std::string asm_op, asm_out;
  std::size_t asm_n = 8;
  std::vector<double> asm_coeff;
  std::uint64_t asm_seed = 0;
  asm_cmd->add_option("operator", asm_op, "grad, div, lapl, interp, advec, div_r, or r_grad")
      ->required();
  asm_cmd->add_option("n", asm_n, "Number of cells")->required();
  asm_cmd->add_option("--coeff", asm_coeff,
                      "Coefficient field values for advec/div_r/r_grad (comma separated)")
      ->delimiter(',');
  asm_cmd->add_option("--seed", asm_seed, "Seed for the random coefficient field");
  asm_cmd->add_option("--out", asm_out, "Output prefix (writes <prefix>.csv and "
                                        "<prefix>.adjoint.csv)");

  // convergence
  auto* conv_cmd = app.add_subcommand("convergence", "Energy-error convergence under dt "
                                                     "refinement");
  std::string conv_config, conv_out;
  std::vector<double> conv_dts;
  conv_cmd->add_option("--config", conv_config, "Config file (TOML subset)")->required();
  conv_cmd->add_option("--dt", conv_dts, "Geometric dt sequence, largest first "
                                         "(comma separated, at least three)")
      ->delimiter(',')
      ->required();
  conv_cmd->add_option("--out", conv_out, "Write the table here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (*run_cmd) return cmd_run(run_config, run_out);
    if (*conf_cmd) {
      if (conf_break == "advec") conf_opts.break_hook = BreakHook::advec_half_factor;
      if (conf_break == "div") conf_opts.break_hook = BreakHook::div_sign;
      return cmd_conformance(conf_opts, conf_out, conf_format);
    }
    if (*asm_cmd) return cmd_assemble(asm_op, asm_n, asm_coeff, asm_seed, asm_out);
    if (*conv_cmd) return cmd_convergence(conv_config, conv_dts, conv_out);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}

#include "mimwave/conformance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mimwave/dense.hpp"
#include "mimwave/text.hpp"

namespace mimwave {

namespace {

// ============================================================
// battery plumbing
// ============================================================

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::string size_tag(std::size_t n) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "N%03zu", n);
  return buf;
}

std::string gamma_tag(double g) { return "g" + format_g(g); }

struct Battery {
  const ConformanceOptions& opt;
  std::vector<CheckRecord> checks;

  // Per-check generator seeded from the battery seed and the check name, so
  // draws do not depend on check order.
  SplitMix64 rng_for(const std::string& name) const {
    return SplitMix64(mix_seed(opt.seed, fnv1a64(name)));
  }

  void add(std::string name, std::string identity, double residual, double tolerance) {
    checks.push_back(CheckRecord{std::move(name), std::move(identity), residual, tolerance,
                                 residual <= tolerance});
  }
};

using DivOp = std::function<CellField(const FaceField&)>;
using AdvecOp = std::function<FaceField(const FaceField&, const FaceField&)>;

// Negative controls: the battery must catch a dropped half factor in the
// advective flux and a flipped divergence sign.
FaceField advec_missing_half(const FaceField& m, const FaceField& w) {
  const StaggeredGrid& g = m.grid();
  const std::size_t n = g.n_cells_total();
  const double inv_h = 1.0 / g.spacing(0);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ip = (i + 1 == n) ? 0 : i + 1;
    const std::size_t im = (i == 0) ? n - 1 : i - 1;
    const double flux_r = 0.5 * (m[i] + m[ip]);
    const double flux_l = 0.5 * (m[im] + m[i]);
    out[i] = (flux_r * (w[i] + w[ip]) - flux_l * (w[im] + w[i])) * inv_h;
  }
  return FaceField(m.grid_ptr(), std::move(out));
}

DivOp make_div_op(BreakHook hook) {
  if (hook == BreakHook::div_sign) {
    return [](const FaceField& v) { return scale(div(v), -1.0); };
  }
  return [](const FaceField& v) { return div(v); };
}

AdvecOp make_advec_op(BreakHook hook) {
  if (hook == BreakHook::advec_half_factor) {
    return [](const FaceField& m, const FaceField& w) { return advec_missing_half(m, w); };
  }
  return [](const FaceField& m, const FaceField& w) { return advec(m, w); };
}

// ============================================================
// field constructions
// ============================================================

CellField random_positive_pressure(const GridPtr& grid, SplitMix64& rng) {
  return random_smooth_cell_field(grid, rng, 1.2, 0.55);
}

// Positive pressure field with one adjacent-cell pair inside the divided-
// difference fallback window and one just outside it.
CellField pressure_with_straddle(const GridPtr& grid, SplitMix64& rng) {
  CellField base = random_positive_pressure(grid, rng);
  std::vector<double> v(base.values().begin(), base.values().end());
  if (v.size() >= 4) {
    v[1] = v[0] * (1.0 + 0.4 * face_density_fallback_rel);
    v[2] = v[1] * (1.0 + 3.0 * face_density_fallback_rel);
  }
  return CellField(grid, std::move(v));
}

FaceField random_face(const GridPtr& grid, SplitMix64& rng, double offset, double amplitude) {
  return random_smooth_face_field(grid, rng, offset, amplitude);
}

double energy_scale(const EnergyBreakdown& e) {
  return 1.0 + std::fabs(e.kinetic) + std::fabs(e.internal);
}

// ============================================================
// check groups
// ============================================================

void check_adjoints_1d(Battery& b, const DivOp& div_op) {
  for (std::size_t n : b.opt.sizes) {
    const GridPtr g = build_grid(n, 1.0);
    const auto grad_m = assemble_cells_to_faces(g, [](const CellField& p) { return grad(p); },
                                                "GRAD");
    const auto div_m = assemble_faces_to_cells(g, div_op, "DIV");
    const double scale_gd = std::max(grad_m.max_abs(), div_m.max_abs());
    b.add("adjoint.grad_div.1d." + size_tag(n), "GRAD* = -DIV",
          adjoint_residual(grad_m, div_m, -1) / scale_gd, 1e-13);

    const auto lapl_m = assemble_cells_to_cells(g, [](const CellField& p) { return lapl(p); },
                                                "LAPL");
    b.add("adjoint.lapl_self.1d." + size_tag(n), "LAPL* = LAPL",
          adjoint_residual(lapl_m, lapl_m, +1) / lapl_m.max_abs(), 1e-13);

    for (double gamma : b.opt.gammas) {
      for (FlowKind kind : {FlowKind::compressible_wave, FlowKind::euler}) {
        const char* kind_tag = kind == FlowKind::compressible_wave ? "qs" : "pq";
        const std::string name = "adjoint.rgrad_divr.1d." + size_tag(n) + "." +
                                 gamma_tag(gamma) + "." + kind_tag;
        SplitMix64 rng = b.rng_for(name);
        const StateLaw law = StateLaw::power_law(gamma);
        const FaceField r = face_density(random_positive_pressure(g, rng), law, kind);
        const auto rg =
            assemble_cells_to_faces(g, [&r](const CellField& s) { return r_grad(s, r); },
                                    "r_grad");
        const auto dr =
            assemble_faces_to_cells(g, [&r](const FaceField& v) { return div_r(v, r); },
                                    "div_r");
        const double sc = std::max(rg.max_abs(), dr.max_abs());
        b.add(name, "r_grad(.,r)* = -div_r(.,r)", adjoint_residual(rg, dr, -1) / sc, 1e-13);
      }
    }
  }
}

void check_adjoints_2d(Battery& b, const DivOp& div_op) {
  const std::size_t shapes[][2] = {{3, 4}, {4, 4}};
  for (const auto& s : shapes) {
    const std::size_t n2[2] = {s[0], s[1]};
    const double len[2] = {1.0, 0.8};
    const GridPtr g = build_grid(2, n2, len);
    const std::string tag =
        std::to_string(s[0]) + "x" + std::to_string(s[1]);
    const auto grad_m = assemble_cells_to_faces(g, [](const CellField& p) { return grad(p); },
                                                "GRAD");
    const auto div_m = assemble_faces_to_cells(g, div_op, "DIV");
    const double sc = std::max(grad_m.max_abs(), div_m.max_abs());
    b.add("adjoint.grad_div.2d." + tag, "GRAD* = -DIV",
          adjoint_residual(grad_m, div_m, -1) / sc, 1e-13);
    const auto lapl_m = assemble_cells_to_cells(g, [](const CellField& p) { return lapl(p); },
                                                "LAPL");
    b.add("adjoint.lapl_self.2d." + tag, "LAPL* = LAPL",
          adjoint_residual(lapl_m, lapl_m, +1) / lapl_m.max_abs(), 1e-13);
  }
}

void check_advec(Battery& b, const AdvecOp& advec_op) {
  for (std::size_t n : b.opt.sizes) {
    const GridPtr g = build_grid(n, 1.0);
    const double h = g->spacing(0);
    for (int trial = 0; trial < 2; ++trial) {
      const std::string name =
          "advec.symmetry." + size_tag(n) + ".s" + std::to_string(trial);
      SplitMix64 rng = b.rng_for(name);
      const FaceField m = random_face(g, rng, 0.3, 1.0);
      const auto adv =
          assemble_faces_to_faces(g, [&](const FaceField& w) { return advec_op(m, w); },
                                  "ADVEC");
      const auto adj = adv.weighted_adjoint();
      const FaceField diag = interp_c2f(div(m));
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const double expect = i == j ? diag[i] : 0.0;
          worst = std::max(worst, std::fabs(adv.at(i, j) + adj.at(i, j) - expect));
        }
      }
      b.add(name, "ADVEC + ADVEC* = diag(Interp(DIV m))", worst * h / max_abs(m), 1e-14);
    }

    const std::string qname = "advec.quadratic_form." + size_tag(n);
    SplitMix64 rng = b.rng_for(qname);
    const FaceField m = random_face(g, rng, 0.3, 1.0);
    const FaceField w = random_face(g, rng, 0.0, 1.0);
    const double lhs = inner_product_faces(w, advec_op(m, w));
    const double rhs_q = 0.5 * inner_product_faces(multiply(w, w), interp_c2f(div(m)));
    b.add(qname, "<w, ADVEC w> = (1/2)<w w, Interp(DIV m)>",
          std::fabs(lhs - rhs_q) / (1.0 + std::fabs(lhs) + std::fabs(rhs_q)), 1e-13);
  }
}

void check_null_spaces(Battery& b, const DivOp& div_op) {
  for (std::size_t n : b.opt.sizes) {
    const GridPtr g = build_grid(n, 1.0);
    const double inv_h = 1.0 / g->spacing(0);
    b.add("nullspace.grad_const." + size_tag(n), "GRAD const = 0",
          max_abs(grad(CellField::constant(g, 2.75))) / (2.75 * inv_h), 1e-15);
    b.add("nullspace.div_const." + size_tag(n), "DIV const = 0",
          max_abs(div_op(FaceField::constant(g, -1.4))) / (1.4 * inv_h), 1e-15);

    const std::string cname = "conservation.divr_total." + size_tag(n);
    SplitMix64 rng = b.rng_for(cname);
    const FaceField v = random_face(g, rng, 0.2, 1.0);
    const FaceField r = random_face(g, rng, 1.1, 0.9);
    const CellField dr = div_r(v, r);
    b.add(cname, "total(div_r(v, r)) = 0",
          std::fabs(total_cells(dr)) / (total_abs_cells(dr) + 1.0), 1e-13);
  }
}

void check_momentum_telescoping(Battery& b, const AdvecOp& advec_op) {
  for (std::size_t n : b.opt.sizes) {
    const GridPtr g = build_grid(n, 1.0);
    {
      const std::string name = "momentum.advec_total." + size_tag(n);
      SplitMix64 rng = b.rng_for(name);
      const FaceField m = random_face(g, rng, 0.3, 1.0);
      const FaceField w = random_face(g, rng, 0.1, 1.0);
      const FaceField a = advec_op(m, w);
      b.add(name, "total(ADVEC(m, w)) = 0",
            std::fabs(total_faces(a)) / (total_abs_faces(a) + 1.0), 1e-13);
    }
    {
      const std::string name = "momentum.grad_total." + size_tag(n);
      SplitMix64 rng = b.rng_for(name);
      const FaceField gp = grad(random_smooth_cell_field(g, rng, 0.5, 1.0));
      b.add(name, "total(GRAD p) = 0",
            std::fabs(total_faces(gp)) / (total_abs_faces(gp) + 1.0), 1e-13);
    }
    {
      const std::string name = "lapl.negative." + size_tag(n);
      SplitMix64 rng = b.rng_for(name);
      const CellField p = random_smooth_cell_field(g, rng, 0.0, 1.0);
      const double quad = inner_product_cells(p, lapl(p));
      const FaceField gp = grad(p);
      const double sc = inner_product_faces(gp, gp) + 1.0;
      b.add(name, "<p, LAPL p> <= 0", std::max(0.0, quad) / sc, 1e-13);
    }
  }
}

void check_chain_rules(Battery& b) {
  for (std::size_t n : b.opt.sizes) {
    const GridPtr g = build_grid(n, 1.0);
    for (double gamma : b.opt.gammas) {
      const StateLaw law = StateLaw::power_law(gamma);
      {
        const std::string name = "chain_rule.euler." + size_tag(n) + "." + gamma_tag(gamma);
        SplitMix64 rng = b.rng_for(name);
        const CellField p = pressure_with_straddle(g, rng);
        const FaceField r = face_density(p, law, FlowKind::euler);
        const CellField qp = transform(p, [&law](double x) { return law.Q(x); });
        const FaceField lhs = r_grad(qp, r);
        const FaceField want = grad(p);
        const double sc = std::max(max_abs(want), 1e-30);
        b.add(name, "r_grad(Q(p), r) = GRAD p", max_abs_diff(lhs, want) / sc, 1e-13);
      }
      {
        const std::string name =
            "chain_rule.compressible_wave." + size_tag(n) + "." + gamma_tag(gamma);
        SplitMix64 rng = b.rng_for(name);
        const CellField p = pressure_with_straddle(g, rng);
        const FaceField rt = face_density(p, law, FlowKind::compressible_wave);
        const CellField sp = transform(p, [&law](double x) { return law.S(x); });
        const CellField qp = transform(p, [&law](double x) { return law.Q(x); });
        const FaceField lhs = r_grad(sp, rt);
        const FaceField want = grad(qp);
        const double sc = std::max(max_abs(want), 1e-30);
        b.add(name, "r_grad(S(p), rt) = GRAD Q(p)", max_abs_diff(lhs, want) / sc, 1e-13);
      }
    }
  }

  // Continuity across the fallback window: the divided difference and the
  // midpoint limit must agree where they hand over.
  for (FlowKind kind : {FlowKind::euler, FlowKind::compressible_wave}) {
    const char* kind_name = kind == FlowKind::euler ? "euler" : "compressible_wave";
    const std::string name = std::string("chain_rule.fallback_continuity.") + kind_name;
    const GridPtr g = build_grid(4, 1.0);
    const StateLaw law = StateLaw::power_law(1.4);
    const double p0 = 1.3;
    const double window = face_density_fallback_rel * p0;
    double worst = 0.0;
    for (double side : {1.0 - 1e-3, 1.0 + 1e-3}) {
      const CellField below(g, {p0, p0 + window * (1.0 - 1e-3), p0, p0});
      const CellField above(g, {p0, p0 + window * side, p0, p0});
      const FaceField rb = face_density(below, law, kind);
      const FaceField ra = face_density(above, law, kind);
      worst = std::max(worst, std::fabs(ra[1] - rb[1]) / std::fabs(rb[1]));
    }
    b.add(name, "face density continuous across fallback", worst, 1e-6);
  }
}

ModelConfig flow_config(ModelKind kind, double gamma) {
  ModelConfig cfg;
  if (kind == ModelKind::linear_wave) {
    cfg.rho0 = 1.3;
    cfg.wave_speed = 2.0;
  } else if (kind == ModelKind::compressible_wave) {
    cfg.rho0 = 1.1;
    cfg.law = StateLaw::power_law(gamma);
  } else if (kind == ModelKind::euler) {
    cfg.law = StateLaw::power_law(gamma);
  }
  return cfg;
}

void check_model_rates(Battery& b) {
  constexpr ModelKind kinds[] = {ModelKind::scalar_wave, ModelKind::linear_wave,
                                 ModelKind::compressible_wave, ModelKind::euler};
  for (ModelKind kind : kinds) {
    const bool has_law =
        kind == ModelKind::compressible_wave || kind == ModelKind::euler;
    const std::vector<double> gammas = has_law ? b.opt.gammas : std::vector<double>{0.0};
    for (std::size_t n : b.opt.sizes) {
      for (double gamma : gammas) {
        std::string suffix = "." + size_tag(n);
        if (has_law) suffix += "." + gamma_tag(gamma);
        const ModelConfig cfg = flow_config(kind, gamma);
        const std::string ename = "energy_rate." + std::string(to_string(kind)) + suffix;
        SplitMix64 rng = b.rng_for(ename);
        const GridPtr g = build_grid(n, 1.0);

        double worst_energy = 0.0, worst_mass = 0.0, worst_momentum = 0.0;
        for (int trial = 0; trial < 3; ++trial) {
          const ModelState s = random_state(kind, g, cfg, rng.next());
          const EnergyBreakdown e = energy(s);
          worst_energy =
              std::max(worst_energy, std::fabs(energy_rate_audit(s)) / energy_scale(e));
          if (kind == ModelKind::scalar_wave) continue;

          const StateBundle k = rhs(s);
          worst_mass = std::max(
              worst_mass,
              std::fabs(total_cells(k.cell_a)) / (total_abs_cells(k.cell_a) + 1.0));
          if (kind == ModelKind::euler) {
            const FaceField drv = axpy(multiply(*k.face, interp_c2f(s.rho())), 1.0,
                                       multiply(s.v(), interp_c2f(k.cell_a)));
            worst_momentum = std::max(
                worst_momentum, std::fabs(total_faces(drv)) / (total_abs_faces(drv) + 1.0));
          } else {
            worst_momentum = std::max(
                worst_momentum,
                std::fabs(total_faces(*k.face)) / (total_abs_faces(*k.face) + 1.0));
          }
        }
        b.add(ename, "dE/dt = 0", worst_energy, 1e-12);
        if (kind == ModelKind::scalar_wave) continue;
        b.add("mass_rate." + std::string(to_string(kind)) + suffix, "d(mass)/dt = 0",
              worst_mass, 1e-13);
        b.add("momentum_rate." + std::string(to_string(kind)) + suffix, "d(momentum)/dt = 0",
              worst_momentum, 1e-13);
      }
    }
  }
}

void check_audit_oracle(Battery& b) {
  const std::size_t n = b.opt.sizes.empty() ? 16 : b.opt.sizes.back();
  const GridPtr g = build_grid(std::max<std::size_t>(n, 8), 1.0);
  constexpr ModelKind kinds[] = {ModelKind::scalar_wave, ModelKind::linear_wave,
                                 ModelKind::compressible_wave, ModelKind::euler};
  for (ModelKind kind : kinds) {
    const ModelConfig cfg = flow_config(kind, 1.4);
    const std::string name = "audit_fd." + std::string(to_string(kind));
    SplitMix64 rng = b.rng_for(name);
    const ModelState s = random_state(kind, g, cfg, rng.next());
    const double audit = energy_rate_audit(s);
    const double sc = energy_scale(energy(s));
    const double fd = finite_difference_energy_check(s, 1e-5);
    b.add(name, "audit = central difference + O(dt^2)", std::fabs(fd - audit) / sc, 1e-8);

    // For the nonlinear models the oracle error is a clean O(dt^2) term;
    // halving dt must shrink it by about four.
    if (kind == ModelKind::compressible_wave || kind == ModelKind::euler) {
      const std::string rname = "audit_fd.richardson." + std::string(to_string(kind));
      const double e1 = std::fabs(finite_difference_energy_check(s, 2e-3) - audit);
      const double e2 = std::fabs(finite_difference_energy_check(s, 1e-3) - audit);
      const double ratio = e2 > 0.0 ? e1 / e2 : 4.0;
      b.add(rname, "oracle error scales as dt^2", std::fabs(ratio - 4.0), 0.5);
    }
  }
}

void check_anchor_independence(Battery& b) {
  const GridPtr g = build_grid(8, 1.0);
  for (FlowKind fk : {FlowKind::compressible_wave, FlowKind::euler}) {
    const ModelKind kind =
        fk == FlowKind::compressible_wave ? ModelKind::compressible_wave : ModelKind::euler;
    const StateLaw base = StateLaw::power_law(1.4);
    const StateLaw shifted = StateLaw::power_law(1.4, 1.0, 0.7, 1.9);
    const std::string aname = "anchor_independence.audit." + std::string(to_string(kind));
    SplitMix64 rng = b.rng_for(aname);
    const std::uint64_t state_seed = rng.next();

    ModelConfig cfg_a = flow_config(kind, 1.4);
    ModelConfig cfg_b = cfg_a;
    cfg_a.law = base;
    cfg_b.law = shifted;
    const ModelState sa = random_state(kind, g, cfg_a, state_seed);
    const ModelState sb = random_state(kind, g, cfg_b, state_seed);

    const EnergyBreakdown ea = energy(sa), eb = energy(sb);
    b.add(aname, "dE/dt audit independent of anchors",
          std::fabs(energy_rate_audit(sa) - energy_rate_audit(sb)) / energy_scale(ea), 1e-13);

    // Anchors shift Q and S by constants, so E_int moves by combinations of
    // mass and volume only.
    const double dq = shifted.Q(1.7) - base.Q(1.7);
    const double ds = shifted.S(1.7) - base.S(1.7);
    const double rho0 = cfg_a.rho0;
    double expected = 0.0;
    if (fk == FlowKind::compressible_wave) {
      expected = rho0 * (ds * ea.mass - dq * g->total_volume());
    } else {
      expected = dq * ea.mass;
    }
    const std::string ename = "anchor_independence.energy." + std::string(to_string(kind));
    b.add(ename, "anchor shifts move E_int by conserved amounts",
          std::fabs((eb.internal - ea.internal) - expected) / (1.0 + std::fabs(ea.internal)),
          1e-12);
  }
}

}  // namespace

// ============================================================
// report
// ============================================================

bool ConformanceReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckRecord& c) { return c.pass; });
}

std::size_t ConformanceReport::n_failed() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckRecord& c) { return !c.pass; }));
}

double ConformanceReport::worst_ratio() const {
  double worst = 0.0;
  for (const auto& c : checks) worst = std::max(worst, c.residual / c.tolerance);
  return worst;
}

namespace {

std::string join_sizes(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ";";
    s += std::to_string(v[i]);
  }
  return s;
}

std::string join_gammas(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ";";
    s += format_g(v[i]);
  }
  return s;
}

}  // namespace

std::string ConformanceReport::to_csv() const {
  std::ostringstream out;
  out << "# seed=" << options.seed << "\n";
  out << "# sizes=" << join_sizes(options.sizes) << "\n";
  out << "# gammas=" << join_gammas(options.gammas) << "\n";
  out << "name,identity,residual,tolerance,status\n";
  for (const auto& c : checks) {
    out << c.name << "," << c.identity << "," << format_g17(c.residual) << ","
        << format_g17(c.tolerance) << "," << (c.pass ? "pass" : "FAIL") << "\n";
  }
  return out.str();
}

std::string ConformanceReport::to_text() const {
  std::size_t width = 4;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  std::ostringstream out;
  out << "conformance battery: seed " << options.seed << ", sizes "
      << join_sizes(options.sizes) << ", gammas " << join_gammas(options.gammas) << "\n";
  for (const auto& c : checks) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "  %-*s  %-4s  residual %10.3e  tol %8.1e\n",
                  static_cast<int>(width), c.name.c_str(), c.pass ? "pass" : "FAIL",
                  c.residual, c.tolerance);
    out << buf;
  }
  out << (checks.size() - n_failed()) << "/" << checks.size()
      << " checks passed, worst residual at " << format_g(worst_ratio())
      << " of tolerance\n";
  return out.str();
}

ConformanceReport run_conformance(const ConformanceOptions& options) {
  for (std::size_t n : options.sizes) {
    if (n < 3 || n > dense_assembly_max_unknowns) {
      throw std::invalid_argument("run_conformance: sizes must be in [3, " +
                                  std::to_string(dense_assembly_max_unknowns) + "]");
    }
  }
  for (double g : options.gammas) {
    if (!(g > 0.0)) throw std::invalid_argument("run_conformance: gamma must be positive");
  }

  Battery b{options, {}};
  const DivOp div_op = make_div_op(options.break_hook);
  const AdvecOp advec_op = make_advec_op(options.break_hook);

  if (!options.sizes.empty()) {
    check_adjoints_1d(b, div_op);
    check_advec(b, advec_op);
    check_null_spaces(b, div_op);
    check_momentum_telescoping(b, advec_op);
    check_chain_rules(b);
    check_model_rates(b);
  }
  check_adjoints_2d(b, div_op);
  check_audit_oracle(b);
  check_anchor_independence(b);

  std::sort(b.checks.begin(), b.checks.end(),
            [](const CheckRecord& x, const CheckRecord& y) { return x.name < y.name; });

  ConformanceReport report;
  report.options = options;
  report.checks = std::move(b.checks);
  return report;
}

// ============================================================
// conservation series
// ============================================================

namespace {

ConservationSample sample_state(const ModelState& s, long step, double dt) {
  ConservationSample row;
  row.step = step;
  row.t = static_cast<double>(step) * dt;
  row.e = energy(s);
  row.dEdt_audit = energy_rate_audit(s);
  return row;
}

}  // namespace

ConservationSeries conservation_run(const ModelState& initial, const IntegratorConfig& config,
                                    long steps, long stride) {
  if (steps < 0) throw std::invalid_argument("conservation_run: steps must be >= 0");
  if (stride < 1) throw std::invalid_argument("conservation_run: stride must be >= 1");
  ConservationSeries series;
  ModelState s = initial;
  series.rows.push_back(sample_state(s, 0, config.dt));
  for (long n = 1; n <= steps; ++n) {
    try {
      s = step(s, config);
    } catch (const std::exception& e) {
      series.failure = "step " + std::to_string(n) + ": " + e.what();
      return series;
    }
    if (n % stride == 0 || n == steps) {
      series.rows.push_back(sample_state(s, n, config.dt));
    }
  }
  return series;
}

std::string conservation_csv(const ConservationSeries& series) {
  std::ostringstream out;
  out << "step,t,E_kin,E_int,E_total,mass,momentum,dEdt_audit\n";
  for (const auto& r : series.rows) {
    out << r.step << "," << format_g17(r.t) << "," << format_g17(r.e.kinetic) << ","
        << format_g17(r.e.internal) << "," << format_g17(r.e.total) << ","
        << format_g17(r.e.mass) << "," << format_g17(r.e.momentum) << ","
        << format_g17(r.dEdt_audit) << "\n";
  }
  return out.str();
}

// ============================================================
// convergence study
// ============================================================

ConvergenceTable convergence_study(const ModelState& initial, const IntegratorConfig& base,
                                   double total_time, const std::vector<double>& dts) {
  if (dts.size() < 3) {
    throw std::invalid_argument("convergence_study: need at least three dt values");
  }
  for (double dt : dts) {
    if (!(dt > 0.0)) throw std::invalid_argument("convergence_study: dt must be positive");
  }
  const double ratio = dts[0] / dts[1];
  for (std::size_t i = 1; i + 1 < dts.size(); ++i) {
    if (std::fabs(dts[i] / dts[i + 1] - ratio) > 1e-6 * ratio) {
      throw std::invalid_argument("convergence_study: dt values must form a geometric sequence");
    }
  }
  if (!(ratio > 1.0)) {
    throw std::invalid_argument("convergence_study: dt values must decrease");
  }
  if (!(total_time > 0.0)) {
    throw std::invalid_argument("convergence_study: total time must be positive");
  }

  const double e0 = energy(initial).total;
  // Roundoff floor for |E(T) - E(0)|: proportional to the energy scale for
  // rk4; set by the fixed-point stop for the midpoint scheme.
  const double floor = base.scheme == Scheme::implicit_midpoint
                           ? 100.0 * base.tolerance * std::max(1.0, std::fabs(e0))
                           : 1e-13 * std::fabs(e0);

  ConvergenceTable table;
  for (double dt : dts) {
    ConvergencePoint pt;
    pt.dt = dt;
    pt.steps = std::max<long>(1, std::lround(total_time / dt));
    IntegratorConfig cfg = base;
    cfg.dt = dt;
    ModelState s = initial;
    bool failed = false;
    for (long n = 0; n < pt.steps; ++n) {
      try {
        s = step(s, cfg);
      } catch (const std::exception&) {
        failed = true;
        break;
      }
    }
    if (failed) break;  // keep the partial table
    pt.energy_error = std::fabs(energy(s).total - e0);
    pt.saturated = pt.energy_error <= floor;
    table.points.push_back(pt);
  }

  // Least-squares slope of log(error) against log(dt) over usable points.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& pt : table.points) {
    if (pt.saturated || pt.energy_error <= 0.0) continue;
    const double x = std::log(pt.dt), y = std::log(pt.energy_error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m >= 2) {
    const double denom = m * sxx - sx * sx;
    if (denom != 0.0) {
      table.fitted_order = (m * sxy - sx * sy) / denom;
      table.order_valid = true;
    }
  }
  return table;
}

std::string convergence_text(const ConvergenceTable& table) {
  std::ostringstream out;
  out << "dt,steps,energy_error,order\n";
  for (std::size_t i = 0; i < table.points.size(); ++i) {
    const auto& pt = table.points[i];
    out << format_g17(pt.dt) << "," << pt.steps << "," << format_g17(pt.energy_error) << ",";
    if (pt.saturated) {
      out << "saturated";
    } else if (i == 0 || table.points[i - 1].saturated ||
               table.points[i - 1].energy_error <= 0.0 || pt.energy_error <= 0.0) {
      out << "-";
    } else {
      const auto& prev = table.points[i - 1];
      out << format_g(std::log(prev.energy_error / pt.energy_error) /
                      std::log(prev.dt / pt.dt));
    }
    out << "\n";
  }
  if (table.order_valid) {
    out << "fitted order: " << format_g(table.fitted_order) << "\n";
  } else {
    out << "fitted order: saturated\n";
  }
  return out.str();
}

}  // namespace mimwave

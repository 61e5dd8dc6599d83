// PURPOSE: exercise the run-configuration reader: the TOML-subset syntax,
// strict rejection of anything suspect, defaults, and the initial-field
// presets that turn a config into a model state.

#include "mimwave/config.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "test_util.hpp"

using namespace mimwave;

namespace {

// Returns the ConfigError message, or "" when the text parses cleanly.
std::string error_of(std::string_view text) {
  try {
    parse_run_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

void expect_error(std::string_view text, std::string_view needle) {
  const std::string msg = error_of(text);
  CHECK_MSG(msg.find(needle) != std::string::npos,
            "expected error containing '" + std::string(needle) + "', got '" + msg + "'");
}

// ============================================================
// parsing
// ============================================================

void test_full_config_sections() {
  const RunConfig cfg = parse_run_config(R"(
model = "euler"
steps = 250
sample_stride = 5
output = "series.csv"

[grid]
n_cells = 48
length = 2.5

[law]
gamma = 1.4
scale = 2.0
anchor_q = 0.7
anchor_s = 1.9

[integrator]
scheme = "implicit_midpoint"
dt = 1e-3
tolerance = 1e-12
max_iterations = 40

[init.rho]
preset = "sine"
offset = 1.0
amplitude = 0.25
mode = 2

[init.v]
preset = "uniform"
offset = 0.05
)");

  CHECK(cfg.model == ModelKind::euler);
  CHECK_EQ(cfg.dims, 1);
  CHECK_EQ(cfg.n_cells[0], std::size_t{48});
  CHECK_EQ(cfg.length[0], 2.5);
  CHECK(cfg.physics.law.has_value());
  CHECK_EQ(cfg.physics.law->gamma(), 1.4);
  CHECK_EQ(cfg.physics.law->scale(), 2.0);
  CHECK_EQ(cfg.physics.law->anchor_q(), 0.7);
  CHECK_EQ(cfg.physics.law->anchor_s(), 1.9);
  CHECK(cfg.integrator.scheme == Scheme::implicit_midpoint);
  CHECK_EQ(cfg.integrator.dt, 1e-3);
  CHECK_EQ(cfg.integrator.tolerance, 1e-12);
  CHECK_EQ(cfg.integrator.max_iterations, 40);
  CHECK_EQ(cfg.steps, 250L);
  CHECK_EQ(cfg.sample_stride, 5L);
  CHECK(cfg.output.has_value() && *cfg.output == "series.csv");

  const FieldInit& rho = cfg.init.at("rho");
  CHECK(rho.preset == FieldInit::Preset::sine);
  CHECK_EQ(rho.offset, 1.0);
  CHECK_EQ(rho.amplitude, 0.25);
  CHECK_EQ(rho.mode, 2L);
  const FieldInit& v = cfg.init.at("v");
  CHECK(v.preset == FieldInit::Preset::uniform);
  CHECK_EQ(v.offset, 0.05);
}

void test_dotted_keys_match_sections() {
  const RunConfig a = parse_run_config(
      "model = \"linear_wave\"\n"
      "grid.n_cells = 12\n"
      "grid.length = 3.0\n"
      "rho0 = 1.3\n"
      "law.kind = \"linear\"\n"
      "law.c = 2.0\n"
      "integrator.dt = 0.01\n"
      "steps = 10\n"
      "init.v.preset = \"sine\"\n"
      "init.v.amplitude = 0.2\n");
  const RunConfig b = parse_run_config(R"(
model = "linear_wave"
rho0 = 1.3
steps = 10
[grid]
n_cells = 12
length = 3.0
[law]
kind = "linear"
c = 2.0
[integrator]
dt = 0.01
[init.v]
preset = "sine"
amplitude = 0.2
)");
  CHECK(a.model == b.model);
  CHECK_EQ(a.n_cells[0], b.n_cells[0]);
  CHECK_EQ(a.length[0], b.length[0]);
  CHECK_EQ(a.physics.rho0, b.physics.rho0);
  CHECK_EQ(a.physics.wave_speed, 2.0);
  CHECK_EQ(b.physics.wave_speed, 2.0);
  CHECK_EQ(a.integrator.dt, b.integrator.dt);
  CHECK_EQ(a.init.at("v").amplitude, b.init.at("v").amplitude);
}

void test_defaults() {
  const RunConfig cfg = parse_run_config(
      "model = \"scalar_wave\"\n"
      "grid.n_cells = 8\n"
      "grid.length = 1.0\n"
      "integrator.dt = 0.1\n"
      "steps = 0\n");
  CHECK(cfg.integrator.scheme == Scheme::rk4);
  CHECK_EQ(cfg.integrator.tolerance, 1e-13);
  CHECK_EQ(cfg.integrator.max_iterations, 100);
  CHECK_EQ(cfg.sample_stride, 1L);
  CHECK_EQ(cfg.steps, 0L);
  CHECK(!cfg.output.has_value());
  CHECK(cfg.init.empty());
  CHECK(!cfg.physics.law.has_value());
}

void test_comments_and_strings() {
  // Comments strip at an unquoted '#'; quoted '#' is data.
  const RunConfig cfg = parse_run_config(
      "# leading comment\n"
      "model = \"scalar_wave\"  # trailing comment\n"
      "grid.n_cells = 8\n"
      "grid.length = 1.0\n"
      "integrator.dt = 2.5e-2\n"
      "steps = 3\n"
      "output = \"runs#1.csv\"\n");
  CHECK_EQ(cfg.integrator.dt, 0.025);
  CHECK(cfg.output.has_value() && *cfg.output == "runs#1.csv");
}

void test_syntax_errors_carry_line_numbers() {
  const std::string base =
      "model = \"scalar_wave\"\n"
      "grid.n_cells = 8\n"
      "grid.length = 1.0\n"
      "integrator.dt = 0.1\n"
      "steps = 1\n";
  expect_error(base + "just words\n", "line 6: expected 'key = value'");
  expect_error(base + "bad key! = 1\n", "line 6: invalid key");
  expect_error(base + "[unterminated\n", "line 6: unterminated section header");
  expect_error(base + "output = \"oops\n", "line 6: unterminated string");
  expect_error(base + "extra = 12abc\n", "line 6: expected a finite number");
  expect_error(base + "extra = true\n", "line 6: booleans are not supported");
  expect_error(base + "extra = []\n", "line 6: empty array");
  expect_error(base + "extra = [1, 2,]\n", "line 6: trailing comma");
  expect_error(base + "steps = 2\n", "line 6: duplicate key 'steps'");
  expect_error(base + "typo_key = 1\n", "line 6: unknown key 'typo_key'");
  expect_error(base + "steps.inner = 1\n", "line 6: unknown key 'steps.inner'");
}

void test_missing_and_type_errors() {
  expect_error("grid.n_cells = 8\n", "missing required key 'model'");
  expect_error("model = \"scalar_wave\"\n", "missing required key 'grid.n_cells'");
  expect_error(
      "model = \"scalar_wave\"\ngrid.n_cells = 8\ngrid.length = 1.0\nsteps = 1\n",
      "missing required key 'integrator.dt'");
  expect_error(
      "model = 3\ngrid.n_cells = 8\ngrid.length = 1.0\nintegrator.dt = 0.1\nsteps = 1\n",
      "'model' must be a string");
  expect_error(
      "model = \"scalar_wave\"\ngrid.n_cells = 8\ngrid.length = 1.0\n"
      "integrator.dt = \"fast\"\nsteps = 1\n",
      "'integrator.dt' must be a number");
  expect_error(
      "model = \"scalar_wave\"\ngrid.n_cells = 8\ngrid.length = 1.0\n"
      "integrator.dt = 0.1\nsteps = 2.5\n",
      "'steps' must be an integer");
  expect_error(
      "model = \"viscous_wave\"\ngrid.n_cells = 8\ngrid.length = 1.0\n"
      "integrator.dt = 0.1\nsteps = 1\n",
      "unknown model kind");
}

// ============================================================
// semantic validation
// ============================================================

std::string flow_base(std::string_view model) {
  return "model = \"" + std::string(model) +
         "\"\ngrid.n_cells = 8\ngrid.length = 1.0\nintegrator.dt = 0.1\nsteps = 1\n";
}

void test_model_specific_rules() {
  // rho0 belongs to the models with a reference density.
  expect_error(flow_base("scalar_wave") + "rho0 = 1.0\n", "rho0 is not used by scalar_wave");
  expect_error(flow_base("euler") + "law.gamma = 1.4\nrho0 = 1.0\n", "rho0 is not used by euler");
  expect_error(flow_base("linear_wave") + "rho0 = -1.0\n", "rho0 must be positive");

  // Law sections are per model kind.
  expect_error(flow_base("scalar_wave") + "law.gamma = 1.4\n",
               "scalar_wave does not take a [law] section");
  expect_error(flow_base("euler"), "euler requires law.gamma");
  expect_error(flow_base("compressible_wave"), "compressible_wave requires law.gamma");
  expect_error(flow_base("euler") + "law.kind = \"linear\"\nlaw.gamma = 1.4\n",
               "euler requires law.kind = \"power\"");
  expect_error(flow_base("linear_wave") + "law.kind = \"power\"\n",
               "linear_wave requires law.kind = \"linear\"");
  expect_error(flow_base("linear_wave") + "law.c = 0.0\n", "law.c must be positive");
  expect_error(flow_base("linear_wave") + "law.gamma = 1.4\n", "unknown key 'law.gamma'");
  // Law construction failures surface as config errors.
  expect_error(flow_base("euler") + "law.gamma = -2.0\n", "gamma");

  // Flow models are one-dimensional.
  expect_error("model = \"euler\"\ngrid.n_cells = [8, 8]\ngrid.length = [1.0, 1.0]\n"
               "law.gamma = 1.4\nintegrator.dt = 0.1\nsteps = 1\n",
               "euler supports 1-D grids only");
}

void test_grid_and_integrator_rules() {
  expect_error(
      "model = \"scalar_wave\"\ngrid.n_cells = 2\ngrid.length = 1.0\n"
      "integrator.dt = 0.1\nsteps = 1\n",
      "grid.n_cells entries must be integers >= 3");
  expect_error(
      "model = \"scalar_wave\"\ngrid.n_cells = 8.5\ngrid.length = 1.0\n"
      "integrator.dt = 0.1\nsteps = 1\n",
      "grid.n_cells entries must be integers >= 3");
  expect_error(
      "model = \"scalar_wave\"\ngrid.n_cells = 8\ngrid.length = 0.0\n"
      "integrator.dt = 0.1\nsteps = 1\n",
      "grid.length entries must be positive");
  expect_error(
      "model = \"scalar_wave\"\ngrid.n_cells = 8\ngrid.length = 1.0\ngrid.dims = 3\n"
      "integrator.dt = 0.1\nsteps = 1\n",
      "grid.dims must be 1 or 2");
  expect_error(
      "model = \"scalar_wave\"\ngrid.n_cells = [8, 8, 8]\ngrid.length = 1.0\n"
      "integrator.dt = 0.1\nsteps = 1\n",
      "grid.dims must be 1 or 2");  // a 3-entry n_cells array implies dims = 3

  expect_error(flow_base("scalar_wave") + "integrator.scheme = \"leapfrog\"\n",
               "unknown integrator scheme");
  expect_error(
      "model = \"scalar_wave\"\ngrid.n_cells = 8\ngrid.length = 1.0\n"
      "integrator.dt = 0.0\nsteps = 1\n",
      "integrator.dt must be nonzero");
  expect_error(flow_base("scalar_wave") + "integrator.tolerance = 0.0\n",
               "integrator.tolerance must be positive");
  expect_error(flow_base("scalar_wave") + "integrator.max_iterations = 0\n",
               "integrator.max_iterations must be >= 1");
  expect_error(
      "model = \"scalar_wave\"\ngrid.n_cells = 8\ngrid.length = 1.0\n"
      "integrator.dt = 0.1\nsteps = -1\n",
      "steps must be >= 0");
  expect_error(flow_base("scalar_wave") + "sample_stride = 0\n", "sample_stride must be >= 1");
}

void test_preset_rules() {
  expect_error(flow_base("scalar_wave") + "init.p.preset = \"square\"\n", "unknown preset");
  expect_error(flow_base("scalar_wave") + "init.p.mode = 2\n",
               "init.p.mode applies to the sine preset only");
  expect_error(flow_base("scalar_wave") + "init.p.preset = \"sine\"\ninit.p.center = 0.5\n",
               "init.p.center/width apply to the gaussian preset only");
  expect_error(flow_base("scalar_wave") + "init.p.preset = \"sine\"\ninit.p.mode = 0\n",
               "init.p.mode must be >= 1");
  expect_error(flow_base("scalar_wave") +
                   "init.p.preset = \"gaussian\"\ninit.p.width = 0.0\n",
               "init.p.width must be positive");
  expect_error(flow_base("scalar_wave") +
                   "init.p.preset = \"gaussian\"\ninit.p.center = 1.5\n",
               "init.p.center must lie in [0, 1]");
  // Init keys for fields the model does not carry are unknown keys.
  expect_error(flow_base("scalar_wave") + "init.rho.offset = 1.0\n", "unknown key 'init.rho");
}

// ============================================================
// field evaluation and initial states
// ============================================================

void test_uniform_and_sine_eval() {
  const GridPtr grid = build_grid(8, 2.0);

  FieldInit uni;
  uni.offset = 0.7;
  const CellField u = eval_cell_init(uni, grid);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK_EQ(u[i], 0.7);

  FieldInit sine;
  sine.preset = FieldInit::Preset::sine;
  sine.offset = 0.3;
  sine.amplitude = 0.5;
  sine.mode = 2;
  const CellField c = eval_cell_init(sine, grid);
  const FaceField f = eval_face_init(sine, grid);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < 8; ++i) {
    const double xc = (static_cast<double>(i) + 0.5) * 0.25;
    const double xf = static_cast<double>(i) * 0.25;
    CHECK_CLOSE(c[i], 0.3 + 0.5 * std::sin(two_pi * 2.0 * xc / 2.0), 1e-14);
    CHECK_CLOSE(f[i], 0.3 + 0.5 * std::sin(two_pi * 2.0 * xf / 2.0), 1e-14);
  }
}

void test_gaussian_eval_is_periodic() {
  const GridPtr grid = build_grid(10, 2.0);
  FieldInit g;
  g.preset = FieldInit::Preset::gaussian;
  g.offset = 0.1;
  g.amplitude = 0.9;
  g.center = 0.25;  // bump at x = 0.5
  g.width = 0.05;   // sigma = 0.1

  const CellField field = eval_cell_init(g, grid);
  for (std::size_t i = 0; i < 10; ++i) {
    const double x = (static_cast<double>(i) + 0.5) * 0.2;
    double d = x - 0.5;
    d -= 2.0 * std::nearbyint(d / 2.0);
    const double want = 0.1 + 0.9 * std::exp(-d * d / (2.0 * 0.1 * 0.1));
    CHECK_CLOSE(field[i], want, 1e-14);
  }
  // The bump cell takes the full amplitude; the antipode is far below it.
  CHECK_CLOSE(field[2], 1.0, 1e-14);
  CHECK(field[7] < 0.1 + 1e-10);

  // A bump centered on the seam wraps: symmetric cells match.
  g.center = 0.0;
  const CellField seam = eval_cell_init(g, grid);
  for (std::size_t i = 0; i < 5; ++i) CHECK_CLOSE(seam[i], seam[9 - i], 1e-13);
}

void test_2d_eval() {
  const std::size_t n[2] = {4, 3};
  const double len[2] = {1.0, 0.6};
  const GridPtr grid = build_grid(2, {n, 2}, {len, 2});

  FieldInit sine;
  sine.preset = FieldInit::Preset::sine;
  sine.amplitude = 1.0;
  const double two_pi = 2.0 * std::numbers::pi;

  const CellField c = eval_cell_init(sine, grid);
  for (std::size_t iy = 0; iy < 3; ++iy) {
    for (std::size_t ix = 0; ix < 4; ++ix) {
      const double x = grid->cell_center(0, ix);
      const double y = grid->cell_center(1, iy);
      const double want = std::sin(two_pi * x / 1.0) * std::sin(two_pi * y / 0.6);
      CHECK_CLOSE(c[grid->cell_index(ix, iy)], want, 1e-14);
    }
  }

  // Face samples stagger only along their own axis.
  const FaceField f = eval_face_init(sine, grid);
  const double want_x = std::sin(two_pi * grid->face_position(0, 1) / 1.0) *
                        std::sin(two_pi * grid->cell_center(1, 2) / 0.6);
  CHECK_CLOSE(f[grid->face_index(0, 1, 2)], want_x, 1e-14);
  const double want_y = std::sin(two_pi * grid->cell_center(0, 1) / 1.0) *
                        std::sin(two_pi * grid->face_position(1, 2) / 0.6);
  CHECK_CLOSE(f[grid->face_index(1, 1, 2)], want_y, 1e-14);
}

void test_initial_state_builders() {
  const RunConfig cfg = parse_run_config(R"(
model = "euler"
grid.n_cells = 16
grid.length = 2.0
law.gamma = 1.4
integrator.dt = 0.01
steps = 1
init.rho.preset = "sine"
init.rho.offset = 1.0
init.rho.amplitude = 0.2
init.v.offset = 0.05
)");
  const ModelState s = initial_state(cfg);
  CHECK(s.kind == ModelKind::euler);
  CHECK_EQ(s.grid().n_cells_total(), std::size_t{16});
  CHECK_EQ(s.grid().length(0), 2.0);
  const double two_pi = 2.0 * std::numbers::pi;
  const double x3 = s.grid().cell_center(0, 3);
  CHECK_CLOSE(s.rho()[3], 1.0 + 0.2 * std::sin(two_pi * x3 / 2.0), 1e-14);
  for (std::size_t i = 0; i < 16; ++i) CHECK_EQ(s.v()[i], 0.05);

  // Unconfigured fields default to rest: rho uniform 1, v zero.
  const RunConfig quiet = parse_run_config(
      "model = \"compressible_wave\"\ngrid.n_cells = 8\ngrid.length = 1.0\n"
      "rho0 = 1.1\nlaw.gamma = 2.0\nintegrator.dt = 0.01\nsteps = 1\n");
  const ModelState q = initial_state(quiet);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK_EQ(q.rho()[i], 1.0);
    CHECK_EQ(q.v()[i], 0.0);
  }

  // Scalar wave defaults both fields to zero.
  const ModelState z = initial_state(parse_run_config(
      "model = \"scalar_wave\"\ngrid.n_cells = 8\ngrid.length = 1.0\n"
      "integrator.dt = 0.01\nsteps = 1\n"));
  CHECK_EQ(max_abs(z.p()), 0.0);
  CHECK_EQ(max_abs(z.w()), 0.0);
}

void test_initial_state_density_guard() {
  // A sine that dips to zero mean density cannot seed a flow model.
  const RunConfig cfg = parse_run_config(R"(
model = "euler"
grid.n_cells = 16
grid.length = 2.0
law.gamma = 1.4
integrator.dt = 0.01
steps = 1
init.rho.preset = "sine"
init.rho.amplitude = 0.5
)");
  CHECK_THROWS(initial_state(cfg), ConfigError);

  // The linear model has no positivity requirement.
  const RunConfig lin = parse_run_config(R"(
model = "linear_wave"
grid.n_cells = 16
grid.length = 2.0
integrator.dt = 0.01
steps = 1
init.rho.preset = "sine"
init.rho.amplitude = 0.5
)");
  const ModelState s = initial_state(lin);
  CHECK(min_value(s.rho()) < 0.0);
}

void test_grid_broadcast() {
  const RunConfig cfg = parse_run_config(R"(
model = "linear_wave"
grid.n_cells = [8, 6]
grid.length = [2.0, 1.5]
integrator.dt = 0.01
steps = 1
)");
  CHECK_EQ(cfg.dims, 2);
  CHECK_EQ(cfg.n_cells[0], std::size_t{8});
  CHECK_EQ(cfg.n_cells[1], std::size_t{6});
  const GridPtr grid = make_grid(cfg);
  CHECK_EQ(grid->dims(), 2);
  CHECK_EQ(grid->n_cells_total(), std::size_t{48});
  CHECK_CLOSE(grid->spacing(1), 0.25, 1e-15);

  // A scalar entry broadcasts across explicitly requested dims.
  const RunConfig square = parse_run_config(R"(
model = "scalar_wave"
grid.dims = 2
grid.n_cells = 8
grid.length = 2.0
integrator.dt = 0.01
steps = 1
)");
  CHECK_EQ(square.dims, 2);
  CHECK_EQ(square.n_cells[1], std::size_t{8});
  CHECK_EQ(square.length[1], 2.0);
}

}  // namespace

int main() {
  test_full_config_sections();
  test_dotted_keys_match_sections();
  test_defaults();
  test_comments_and_strings();
  test_syntax_errors_carry_line_numbers();
  test_missing_and_type_errors();
  test_model_specific_rules();
  test_grid_and_integrator_rules();
  test_preset_rules();
  test_initial_state_builders();
  test_initial_state_density_guard();
  test_uniform_and_sine_eval();
  test_gaussian_eval_is_periodic();
  test_2d_eval();
  test_grid_broadcast();
  return testutil::summary("test_config");
}

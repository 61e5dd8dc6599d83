#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "mimwave/integrators.hpp"

// Run configuration: a small TOML-subset format (sections, dotted keys,
// numbers, double-quoted strings, flat numeric arrays, # comments) plus the
// builders that turn a parsed config into a grid and an initial model state.
// Unknown keys are errors; so are values a run could silently misuse.

namespace mimwave {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct FieldInit {
  enum class Preset { uniform, sine, gaussian };
  Preset preset = Preset::uniform;
  double offset = 0.0;
  double amplitude = 0.0;
  long mode = 1;         // sine: wavenumber per axis
  double center = 0.5;   // gaussian: bump center as a fraction of each axis length
  double width = 0.1;    // gaussian: standard deviation as a fraction of each axis length
};

struct RunConfig {
  ModelKind model = ModelKind::scalar_wave;
  int dims = 1;
  std::array<std::size_t, 2> n_cells{0, 0};
  std::array<double, 2> length{0.0, 0.0};
  ModelConfig physics;
  IntegratorConfig integrator;
  long steps = 0;
  long sample_stride = 1;
  std::optional<std::string> output;
  std::map<std::string, FieldInit> init;  // keyed by state field name
};

RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::string& path);

// State field names for a model kind: {"p", "w"} or {"rho", "v"}.
std::array<std::string_view, 2> state_field_names(ModelKind kind);

CellField eval_cell_init(const FieldInit& f, const GridPtr& grid);
FaceField eval_face_init(const FieldInit& f, const GridPtr& grid);

GridPtr make_grid(const RunConfig& config);
ModelState initial_state(const RunConfig& config);

}  // namespace mimwave

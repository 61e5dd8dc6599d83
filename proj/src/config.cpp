#include "mimwave/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace mimwave {

namespace {

// ============================================================
// TOML-subset parsing
// ============================================================

struct TomlValue {
  enum class Kind { number, text, array };
  Kind kind = Kind::number;
  double number = 0.0;
  std::string text;
  std::vector<double> array;
  int line = 0;
};

[[noreturn]] void fail_at(int line, const std::string& message) {
  throw ConfigError("config: line " + std::to_string(line) + ": " + message);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Comments start at an unquoted '#'.
std::string_view strip_comment(std::string_view s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

bool valid_key(std::string_view key) {
  if (key.empty() || key.front() == '.' || key.back() == '.') return false;
  for (char c : key) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '.';
    if (!ok) return false;
  }
  return key.find("..") == std::string_view::npos;
}

double parse_number(std::string_view s, int line) {
  s = trim(s);
  double value = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    fail_at(line, "expected a finite number, got '" + std::string(s) + "'");
  }
  return value;
}

TomlValue parse_value(std::string_view s, int line) {
  TomlValue v;
  v.line = line;
  s = trim(s);
  if (s.empty()) fail_at(line, "missing value");
  if (s.front() == '"') {
    if (s.size() < 2 || s.back() != '"') fail_at(line, "unterminated string");
    const std::string_view body = s.substr(1, s.size() - 2);
    if (body.find('"') != std::string_view::npos ||
        body.find('\\') != std::string_view::npos) {
      fail_at(line, "escapes and embedded quotes are not supported");
    }
    v.kind = TomlValue::Kind::text;
    v.text = std::string(body);
    return v;
  }
  if (s.front() == '[') {
    if (s.back() != ']') fail_at(line, "unterminated array");
    v.kind = TomlValue::Kind::array;
    std::string_view body = trim(s.substr(1, s.size() - 2));
    if (body.empty()) fail_at(line, "empty array");
    while (!body.empty()) {
      const std::size_t comma = body.find(',');
      const std::string_view item =
          comma == std::string_view::npos ? body : body.substr(0, comma);
      v.array.push_back(parse_number(item, line));
      if (comma == std::string_view::npos) break;
      body = body.substr(comma + 1);
      if (trim(body).empty()) fail_at(line, "trailing comma in array");
    }
    return v;
  }
  if (s == "true" || s == "false") fail_at(line, "booleans are not supported");
  v.kind = TomlValue::Kind::number;
  v.number = parse_number(s, line);
  return v;
}

std::map<std::string, TomlValue> parse_entries(std::string_view text) {
  std::map<std::string, TomlValue> entries;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                           : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    line = trim(strip_comment(line));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail_at(line_no, "unterminated section header");
      const std::string_view name = trim(line.substr(1, line.size() - 2));
      if (!valid_key(name)) fail_at(line_no, "invalid section name '" + std::string(name) + "'");
      section = std::string(name);
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail_at(line_no, "expected 'key = value' or '[section]'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    if (!valid_key(key)) fail_at(line_no, "invalid key '" + std::string(key) + "'");
    const std::string full =
        section.empty() ? std::string(key) : section + "." + std::string(key);
    if (entries.count(full)) fail_at(line_no, "duplicate key '" + full + "'");
    entries.emplace(full, parse_value(line.substr(eq + 1), line_no));
  }
  return entries;
}

// Typed key lookup that records consumption so leftovers can be rejected.
class Reader {
public:
  explicit Reader(std::map<std::string, TomlValue> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  double number(const std::string& key) {
    const TomlValue& v = require(key);
    if (v.kind != TomlValue::Kind::number) fail_at(v.line, "'" + key + "' must be a number");
    return v.number;
  }
  double number_or(const std::string& key, double fallback) {
    return has(key) ? number(key) : fallback;
  }

  long integer(const std::string& key) {
    const TomlValue& v = require(key);
    if (v.kind != TomlValue::Kind::number || v.number != std::floor(v.number) ||
        std::fabs(v.number) > 1e15) {
      fail_at(v.line, "'" + key + "' must be an integer");
    }
    return static_cast<long>(v.number);
  }
  long integer_or(const std::string& key, long fallback) {
    return has(key) ? integer(key) : fallback;
  }

  std::string text(const std::string& key) {
    const TomlValue& v = require(key);
    if (v.kind != TomlValue::Kind::text) fail_at(v.line, "'" + key + "' must be a string");
    return v.text;
  }
  std::string text_or(const std::string& key, const std::string& fallback) {
    return has(key) ? text(key) : fallback;
  }

  // A scalar number promotes to a one-element array.
  std::vector<double> numbers(const std::string& key) {
    const TomlValue& v = require(key);
    if (v.kind == TomlValue::Kind::number) return {v.number};
    if (v.kind != TomlValue::Kind::array) {
      fail_at(v.line, "'" + key + "' must be a number or an array of numbers");
    }
    return v.array;
  }

  int line_of(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
  }

  void reject_leftovers() const {
    for (const auto& [key, value] : entries_) {
      if (!consumed_.count(key)) fail_at(value.line, "unknown key '" + key + "'");
    }
  }

private:
  const TomlValue& require(const std::string& key) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("config: missing required key '" + key + "'");
    consumed_.insert(key);
    return it->second;
  }

  std::map<std::string, TomlValue> entries_;
  std::set<std::string> consumed_;
};

// ============================================================
// section readers
// ============================================================

void read_grid(Reader& r, RunConfig& cfg) {
  const std::vector<double> n_raw = r.numbers("grid.n_cells");
  const std::vector<double> len_raw = r.numbers("grid.length");
  const int dims = static_cast<int>(r.integer_or("grid.dims", static_cast<long>(n_raw.size())));
  if (dims != 1 && dims != 2) {
    throw ConfigError("config: grid.dims must be 1 or 2");
  }
  cfg.dims = dims;

  auto broadcast = [dims](const std::vector<double>& raw, const char* key) {
    if (raw.size() != 1 && raw.size() != static_cast<std::size_t>(dims)) {
      throw ConfigError(std::string("config: ") + key + " must have 1 or " +
                        std::to_string(dims) + " entries");
    }
    std::array<double, 2> out{0.0, 0.0};
    for (int a = 0; a < dims; ++a) {
      out[static_cast<std::size_t>(a)] = raw.size() == 1 ? raw[0] : raw[static_cast<std::size_t>(a)];
    }
    return out;
  };

  const std::array<double, 2> n = broadcast(n_raw, "grid.n_cells");
  const std::array<double, 2> len = broadcast(len_raw, "grid.length");
  for (int a = 0; a < dims; ++a) {
    const double na = n[static_cast<std::size_t>(a)];
    if (na != std::floor(na) || na < 3 || na > 1e9) {
      throw ConfigError("config: grid.n_cells entries must be integers >= 3");
    }
    if (!(len[static_cast<std::size_t>(a)] > 0.0)) {
      throw ConfigError("config: grid.length entries must be positive");
    }
    cfg.n_cells[static_cast<std::size_t>(a)] = static_cast<std::size_t>(na);
    cfg.length[static_cast<std::size_t>(a)] = len[static_cast<std::size_t>(a)];
  }
}

void read_law(Reader& r, RunConfig& cfg) {
  const bool flow =
      cfg.model == ModelKind::compressible_wave || cfg.model == ModelKind::euler;
  const bool present = r.has("law.kind") || r.has("law.gamma") || r.has("law.scale") ||
                       r.has("law.anchor_q") || r.has("law.anchor_s") || r.has("law.c");

  if (cfg.model == ModelKind::scalar_wave) {
    if (present) throw ConfigError("config: scalar_wave does not take a [law] section");
    return;
  }
  if (cfg.model == ModelKind::linear_wave) {
    if (present) {
      const std::string kind = r.text_or("law.kind", "linear");
      if (kind != "linear") {
        throw ConfigError("config: linear_wave requires law.kind = \"linear\"");
      }
      cfg.physics.wave_speed = r.number_or("law.c", 1.0);
      if (!(cfg.physics.wave_speed > 0.0)) {
        throw ConfigError("config: law.c must be positive");
      }
    }
    return;
  }

  if (!flow) return;
  if (!r.has("law.gamma")) {
    throw ConfigError("config: " + std::string(to_string(cfg.model)) +
                      " requires law.gamma");
  }
  const std::string kind = r.text_or("law.kind", "power");
  if (kind != "power") {
    throw ConfigError("config: " + std::string(to_string(cfg.model)) +
                      " requires law.kind = \"power\"");
  }
  const double gamma = r.number("law.gamma");
  const double scale = r.number_or("law.scale", 1.0);
  try {
    if (r.has("law.anchor_q") || r.has("law.anchor_s")) {
      const StateLaw defaults = StateLaw::power_law(gamma, scale);
      cfg.physics.law = StateLaw::power_law(gamma, scale,
                                            r.number_or("law.anchor_q", defaults.anchor_q()),
                                            r.number_or("law.anchor_s", defaults.anchor_s()));
    } else {
      cfg.physics.law = StateLaw::power_law(gamma, scale);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

void read_integrator(Reader& r, RunConfig& cfg) {
  const std::string scheme = r.text_or("integrator.scheme", "rk4");
  try {
    cfg.integrator.scheme = scheme_from_string(scheme);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  cfg.integrator.dt = r.number("integrator.dt");
  if (cfg.integrator.dt == 0.0) throw ConfigError("config: integrator.dt must be nonzero");
  cfg.integrator.tolerance = r.number_or("integrator.tolerance", 1e-13);
  if (!(cfg.integrator.tolerance > 0.0)) {
    throw ConfigError("config: integrator.tolerance must be positive");
  }
  cfg.integrator.max_iterations =
      static_cast<int>(r.integer_or("integrator.max_iterations", 100));
  if (cfg.integrator.max_iterations < 1) {
    throw ConfigError("config: integrator.max_iterations must be >= 1");
  }
}

FieldInit read_field_init(Reader& r, const std::string& prefix) {
  FieldInit f;
  const std::string preset = r.text_or(prefix + ".preset", "uniform");
  if (preset == "uniform") {
    f.preset = FieldInit::Preset::uniform;
  } else if (preset == "sine") {
    f.preset = FieldInit::Preset::sine;
  } else if (preset == "gaussian") {
    f.preset = FieldInit::Preset::gaussian;
  } else {
    throw ConfigError("config: unknown preset '" + preset + "' for " + prefix +
                      " (expected uniform, sine, or gaussian)");
  }
  f.offset = r.number_or(prefix + ".offset", 0.0);
  f.amplitude = r.number_or(prefix + ".amplitude", 0.0);
  f.mode = r.integer_or(prefix + ".mode", 1);
  f.center = r.number_or(prefix + ".center", 0.5);
  f.width = r.number_or(prefix + ".width", 0.1);
  if (f.preset != FieldInit::Preset::sine && r.has(prefix + ".mode")) {
    throw ConfigError("config: " + prefix + ".mode applies to the sine preset only");
  }
  if (f.preset != FieldInit::Preset::gaussian &&
      (r.has(prefix + ".center") || r.has(prefix + ".width"))) {
    throw ConfigError("config: " + prefix + ".center/width apply to the gaussian preset only");
  }
  if (f.mode < 1) throw ConfigError("config: " + prefix + ".mode must be >= 1");
  if (!(f.width > 0.0)) throw ConfigError("config: " + prefix + ".width must be positive");
  if (f.center < 0.0 || f.center > 1.0) {
    throw ConfigError("config: " + prefix + ".center must lie in [0, 1]");
  }
  return f;
}

}  // namespace

// ============================================================
// public entry points
// ============================================================

RunConfig parse_run_config(std::string_view text) {
  Reader r(parse_entries(text));
  RunConfig cfg;

  try {
    cfg.model = model_kind_from_string(r.text("model"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  read_grid(r, cfg);

  if (r.has("rho0")) {
    if (cfg.model == ModelKind::scalar_wave || cfg.model == ModelKind::euler) {
      throw ConfigError("config: rho0 is not used by " + std::string(to_string(cfg.model)));
    }
    cfg.physics.rho0 = r.number("rho0");
    if (!(cfg.physics.rho0 > 0.0)) throw ConfigError("config: rho0 must be positive");
  }

  read_law(r, cfg);
  read_integrator(r, cfg);

  cfg.steps = r.integer("steps");
  if (cfg.steps < 0) throw ConfigError("config: steps must be >= 0");
  cfg.sample_stride = r.integer_or("sample_stride", 1);
  if (cfg.sample_stride < 1) throw ConfigError("config: sample_stride must be >= 1");
  if (r.has("output")) cfg.output = r.text("output");

  const auto names = state_field_names(cfg.model);
  for (std::string_view name : names) {
    const std::string prefix = "init." + std::string(name);
    if (r.has(prefix + ".preset") || r.has(prefix + ".offset") ||
        r.has(prefix + ".amplitude") || r.has(prefix + ".mode") ||
        r.has(prefix + ".center") || r.has(prefix + ".width")) {
      cfg.init.emplace(std::string(name), read_field_init(r, prefix));
    }
  }

  r.reject_leftovers();

  const bool flow =
      cfg.model == ModelKind::compressible_wave || cfg.model == ModelKind::euler;
  if (cfg.dims == 2 && flow) {
    throw ConfigError("config: " + std::string(to_string(cfg.model)) +
                      " supports 1-D grids only");
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

std::array<std::string_view, 2> state_field_names(ModelKind kind) {
  if (kind == ModelKind::scalar_wave) return {"p", "w"};
  return {"rho", "v"};
}

namespace {

double eval_init_at(const FieldInit& f, const StaggeredGrid& g, const double* x) {
  switch (f.preset) {
    case FieldInit::Preset::uniform:
      return f.offset;
    case FieldInit::Preset::sine: {
      double s = 1.0;
      for (int a = 0; a < g.dims(); ++a) {
        constexpr double two_pi = 6.283185307179586476925286766559;
        s *= std::sin(two_pi * static_cast<double>(f.mode) * x[a] / g.length(a));
      }
      return f.offset + f.amplitude * s;
    }
    case FieldInit::Preset::gaussian: {
      double exponent = 0.0;
      for (int a = 0; a < g.dims(); ++a) {
        const double length = g.length(a);
        double d = x[a] - f.center * length;
        d -= length * std::nearbyint(d / length);  // periodic minimum image
        const double sigma = f.width * length;
        exponent += d * d / (2.0 * sigma * sigma);
      }
      return f.offset + f.amplitude * std::exp(-exponent);
    }
  }
  return f.offset;
}

}  // namespace

CellField eval_cell_init(const FieldInit& f, const GridPtr& grid) {
  const StaggeredGrid& g = *grid;
  std::vector<double> v(g.n_cells_total());
  const std::size_t ny = g.dims() == 2 ? g.n_cells(1) : 1;
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < g.n_cells(0); ++ix) {
      const double x[2] = {g.cell_center(0, ix), g.dims() == 2 ? g.cell_center(1, iy) : 0.0};
      v[g.cell_index(ix, iy)] = eval_init_at(f, g, x);
    }
  }
  return CellField(grid, std::move(v));
}

FaceField eval_face_init(const FieldInit& f, const GridPtr& grid) {
  const StaggeredGrid& g = *grid;
  std::vector<double> v(g.n_faces_total());
  const std::size_t ny = g.dims() == 2 ? g.n_cells(1) : 1;
  for (int axis = 0; axis < g.dims(); ++axis) {
    for (std::size_t iy = 0; iy < ny; ++iy) {
      for (std::size_t ix = 0; ix < g.n_cells(0); ++ix) {
        double x[2] = {g.cell_center(0, ix), g.dims() == 2 ? g.cell_center(1, iy) : 0.0};
        x[axis] = g.face_position(axis, axis == 0 ? ix : iy);
        v[g.face_index(axis, ix, iy)] = eval_init_at(f, g, x);
      }
    }
  }
  return FaceField(grid, std::move(v));
}

GridPtr make_grid(const RunConfig& config) {
  const std::size_t n[2] = {config.n_cells[0], config.n_cells[1]};
  const double len[2] = {config.length[0], config.length[1]};
  return build_grid(config.dims, {n, static_cast<std::size_t>(config.dims)},
                    {len, static_cast<std::size_t>(config.dims)});
}

ModelState initial_state(const RunConfig& config) {
  const GridPtr grid = make_grid(config);
  const auto names = state_field_names(config.model);

  auto init_for = [&config](std::string_view name, double default_offset) {
    const auto it = config.init.find(std::string(name));
    if (it != config.init.end()) return it->second;
    FieldInit f;
    f.offset = default_offset;
    return f;
  };

  if (config.model == ModelKind::scalar_wave) {
    const CellField p = eval_cell_init(init_for(names[0], 0.0), grid);
    const CellField w = eval_cell_init(init_for(names[1], 0.0), grid);
    return ModelState::scalar_wave(p, w);
  }

  const CellField rho = eval_cell_init(init_for(names[0], 1.0), grid);
  const FaceField vel = eval_face_init(init_for(names[1], 0.0), grid);

  if (config.model == ModelKind::linear_wave) {
    return ModelState::linear_wave(rho, vel, config.physics.rho0, config.physics.wave_speed);
  }
  if (min_value(rho) <= 0.0) {
    throw ConfigError("config: init." + std::string(names[0]) +
                      " must be positive everywhere for " +
                      std::string(to_string(config.model)));
  }
  if (config.model == ModelKind::compressible_wave) {
    return ModelState::compressible_wave(rho, vel, config.physics.rho0, *config.physics.law);
  }
  return ModelState::euler(rho, vel, *config.physics.law);
}

}  // namespace mimwave

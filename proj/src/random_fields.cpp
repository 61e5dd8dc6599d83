#include "mimwave/random_fields.hpp"

#include <cmath>
#include <numbers>

namespace mimwave {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  SplitMix64 rng(seed ^ (0x632BE59BD9B4E019ULL * (tag + 1)));
  return rng.next();
}

namespace {

constexpr int n_modes = 3;

struct TrigMode {
  double amp_sin, amp_cos;
  int k;
  double ky_phase;  // second-axis phase (2-D only)
};

// Draws modes k = 1..n_modes and normalizes so the fluctuation magnitude is
// bounded by `amplitude` pointwise.
std::vector<TrigMode> draw_modes(SplitMix64& rng, double amplitude) {
  std::vector<TrigMode> modes(n_modes);
  double weight = 0.0;
  for (int j = 0; j < n_modes; ++j) {
    modes[j].amp_sin = rng.next_signed();
    modes[j].amp_cos = rng.next_signed();
    modes[j].k = j + 1;
    modes[j].ky_phase = 2.0 * std::numbers::pi * rng.next_double();
    weight += std::fabs(modes[j].amp_sin) + std::fabs(modes[j].amp_cos);
  }
  const double norm = weight > 0.0 ? amplitude / weight : 0.0;
  for (auto& m : modes) {
    m.amp_sin *= norm;
    m.amp_cos *= norm;
  }
  return modes;
}

double eval_modes(const std::vector<TrigMode>& modes, double offset, int dims, double x_hat,
                  double y_hat) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double value = offset;
  for (const auto& m : modes) {
    const double arg = two_pi * m.k * x_hat;
    double factor = 1.0;
    if (dims == 2) factor = std::sin(two_pi * m.k * y_hat + m.ky_phase);
    value += (m.amp_sin * std::sin(arg) + m.amp_cos * std::cos(arg)) * factor;
  }
  return value;
}

}  // namespace

CellField random_smooth_cell_field(const GridPtr& grid, SplitMix64& rng, double offset,
                                   double amplitude) {
  const auto modes = draw_modes(rng, amplitude);
  const int dims = grid->dims();
  std::vector<double> v(grid->n_cells_total());
  const std::size_t nx = grid->n_cells(0);
  const std::size_t ny = dims == 2 ? grid->n_cells(1) : 1;
  for (std::size_t iy = 0; iy < ny; ++iy) {
    const double y_hat = dims == 2 ? grid->cell_center(1, iy) / grid->length(1) : 0.0;
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const double x_hat = grid->cell_center(0, ix) / grid->length(0);
      v[iy * nx + ix] = eval_modes(modes, offset, dims, x_hat, y_hat);
    }
  }
  return CellField(grid, std::move(v));
}

FaceField random_smooth_face_field(const GridPtr& grid, SplitMix64& rng, double offset,
                                   double amplitude) {
  const int dims = grid->dims();
  std::vector<double> v(grid->n_faces_total());
  const std::size_t nx = grid->n_cells(0);
  const std::size_t ny = dims == 2 ? grid->n_cells(1) : 1;
  const std::size_t nc = grid->n_cells_total();
  for (int axis = 0; axis < dims; ++axis) {
    const auto modes = draw_modes(rng, amplitude);
    for (std::size_t iy = 0; iy < ny; ++iy) {
      for (std::size_t ix = 0; ix < nx; ++ix) {
        // Axis-a faces sit at the face position along a, cell centers elsewhere.
        const double x = axis == 0 ? grid->face_position(0, ix) : grid->cell_center(0, ix);
        const double x_hat = x / grid->length(0);
        double y_hat = 0.0;
        if (dims == 2) {
          const double y = axis == 1 ? grid->face_position(1, iy) : grid->cell_center(1, iy);
          y_hat = y / grid->length(1);
        }
        v[static_cast<std::size_t>(axis) * nc + iy * nx + ix] =
            eval_modes(modes, offset, dims, x_hat, y_hat);
      }
    }
  }
  return FaceField(grid, std::move(v));
}

ModelState random_state(ModelKind kind, const GridPtr& grid, const ModelConfig& config,
                        std::uint64_t seed) {
  SplitMix64 rng(seed);
  switch (kind) {
    case ModelKind::scalar_wave: {
      CellField p = random_smooth_cell_field(grid, rng, 0.0, 1.0);
      CellField w = random_smooth_cell_field(grid, rng, 0.0, 1.0);
      return ModelState::scalar_wave(std::move(p), std::move(w));
    }
    case ModelKind::linear_wave: {
      CellField rho = random_smooth_cell_field(grid, rng, 1.0, 0.4);
      FaceField v = random_smooth_face_field(grid, rng, 0.25, 0.25);
      return ModelState::linear_wave(std::move(rho), std::move(v), config.rho0,
                                     config.wave_speed);
    }
    case ModelKind::compressible_wave: {
      CellField rho = random_smooth_cell_field(grid, rng, 1.0, 0.35);
      FaceField v = random_smooth_face_field(grid, rng, 0.25, 0.25);
      return ModelState::compressible_wave(std::move(rho), std::move(v), config.rho0,
                                           *config.law);
    }
    case ModelKind::euler: {
      CellField rho = random_smooth_cell_field(grid, rng, 1.0, 0.35);
      FaceField v = random_smooth_face_field(grid, rng, 0.25, 0.25);
      return ModelState::euler(std::move(rho), std::move(v), *config.law);
    }
  }
  throw std::logic_error("random_state: unknown model kind");
}

}  // namespace mimwave

#include "mimwave/grid.hpp"

#include <atomic>
#include <cmath>

namespace mimwave {

namespace {

std::uint64_t next_grid_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

void require_finite(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument(std::string(what) + ": non-finite entry");
    }
  }
}

}  // namespace

StaggeredGrid::StaggeredGrid(int dims, std::array<std::size_t, 2> n_cells,
                             std::array<double, 2> length)
    : dims_(dims), n_cells_(n_cells), length_(length), id_(next_grid_id()) {
  if (dims_ != 1 && dims_ != 2) {
    throw std::invalid_argument("build_grid: dims must be 1 or 2");
  }
  n_cells_total_ = 1;
  cell_volume_ = 1.0;
  for (int a = 0; a < dims_; ++a) {
    const std::size_t n = n_cells_[static_cast<std::size_t>(a)];
    const double len = length_[static_cast<std::size_t>(a)];
    if (n < 3) {
      throw std::invalid_argument("build_grid: need at least 3 cells per axis");
    }
    if (!(len > 0.0) || !std::isfinite(len)) {
      throw std::invalid_argument("build_grid: axis length must be positive");
    }
    spacing_[static_cast<std::size_t>(a)] = len / static_cast<double>(n);
    n_cells_total_ *= n;
    cell_volume_ *= spacing_[static_cast<std::size_t>(a)];
  }
  for (int a = dims_; a < 2; ++a) {
    n_cells_[static_cast<std::size_t>(a)] = 1;
    length_[static_cast<std::size_t>(a)] = 0.0;
    spacing_[static_cast<std::size_t>(a)] = 0.0;
  }
  cell_weights_.assign(n_cells_total_, cell_volume_);
  face_weights_.assign(n_faces_total(), cell_volume_);
}

GridPtr build_grid(int dims, std::span<const std::size_t> n_cells,
                   std::span<const double> length) {
  if (dims < 1 || dims > 2 || n_cells.size() < static_cast<std::size_t>(dims) ||
      length.size() < static_cast<std::size_t>(dims)) {
    throw std::invalid_argument("build_grid: dims must be 1 or 2 with matching extents");
  }
  std::array<std::size_t, 2> n{n_cells[0], dims == 2 ? n_cells[1] : std::size_t{1}};
  std::array<double, 2> len{length[0], dims == 2 ? length[1] : 0.0};
  return std::make_shared<const StaggeredGrid>(dims, n, len);
}

GridPtr build_grid(std::size_t n_cells, double length) {
  const std::array<std::size_t, 1> n{n_cells};
  const std::array<double, 1> len{length};
  return build_grid(1, n, len);
}

CellField::CellField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), v_(std::move(values)) {
  if (!grid_) throw std::invalid_argument("CellField: null grid");
  if (v_.size() != grid_->n_cells_total()) {
    throw std::invalid_argument("CellField: value count does not match cell count");
  }
  require_finite({v_.data(), v_.size()}, "CellField");
}

CellField CellField::zeros(GridPtr grid) {
  std::vector<double> v(grid->n_cells_total(), 0.0);
  return CellField(std::move(grid), std::move(v));
}

CellField CellField::constant(GridPtr grid, double value) {
  std::vector<double> v(grid->n_cells_total(), value);
  return CellField(std::move(grid), std::move(v));
}

FaceField::FaceField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), v_(std::move(values)) {
  if (!grid_) throw std::invalid_argument("FaceField: null grid");
  if (v_.size() != grid_->n_faces_total()) {
    throw std::invalid_argument("FaceField: value count does not match face count");
  }
  require_finite({v_.data(), v_.size()}, "FaceField");
}

FaceField FaceField::zeros(GridPtr grid) {
  std::vector<double> v(grid->n_faces_total(), 0.0);
  return FaceField(std::move(grid), std::move(v));
}

FaceField FaceField::constant(GridPtr grid, double value) {
  std::vector<double> v(grid->n_faces_total(), value);
  return FaceField(std::move(grid), std::move(v));
}

void require_same_grid(const StaggeredGrid& a, const StaggeredGrid& b, const char* what) {
  if (a.id() != b.id()) {
    throw std::invalid_argument(std::string(what) + ": fields live on different grids");
  }
}

double inner_product_cells(const CellField& a, const CellField& b) {
  require_same_grid(a, b, "inner_product_cells");
  return kernels::par::dot_w(a.data(), b.data(), a.grid().cell_weights().data(), a.size());
}

double inner_product_faces(const FaceField& a, const FaceField& b) {
  require_same_grid(a, b, "inner_product_faces");
  return kernels::par::dot_w(a.data(), b.data(), a.grid().face_weights().data(), a.size());
}

double total_cells(const CellField& a) {
  return kernels::par::sum_w(a.data(), a.grid().cell_weights().data(), a.size());
}

double total_faces(const FaceField& a) {
  return kernels::par::sum_w(a.data(), a.grid().face_weights().data(), a.size());
}

double total_abs_cells(const CellField& a) {
  return kernels::par::sum_abs_w(a.data(), a.grid().cell_weights().data(), a.size());
}

double total_abs_faces(const FaceField& a) {
  return kernels::par::sum_abs_w(a.data(), a.grid().face_weights().data(), a.size());
}

}  // namespace mimwave

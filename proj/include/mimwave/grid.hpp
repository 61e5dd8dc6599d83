#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mimwave/kernels.hpp"

// Periodic uniform staggered grids and the fields living on them.
//
// Scalars (pressure, density) sit at cell centers, velocity-like quantities
// at cell faces. Periodicity identifies face N with face 0, so a 1-D grid
// carries exactly one face per cell; a 2-D tensor-product grid carries one
// face block per axis. Cell weights are cell volumes; face weights equal the
// cell volume as well, which makes the two weighted inner products share one
// quadrature. Grids are immutable and identified by a unique tag; every
// binary field operation checks that both operands live on the same grid.

namespace mimwave {

class StaggeredGrid;
using GridPtr = std::shared_ptr<const StaggeredGrid>;

class StaggeredGrid {
public:
  StaggeredGrid(int dims, std::array<std::size_t, 2> n_cells, std::array<double, 2> length);

  int dims() const { return dims_; }
  std::size_t n_cells(int axis) const { return n_cells_[static_cast<std::size_t>(axis)]; }
  std::size_t n_cells_total() const { return n_cells_total_; }
  // One face block of n_cells_total entries per axis.
  std::size_t n_faces_total() const { return static_cast<std::size_t>(dims_) * n_cells_total_; }
  double length(int axis) const { return length_[static_cast<std::size_t>(axis)]; }
  double spacing(int axis) const { return spacing_[static_cast<std::size_t>(axis)]; }
  double cell_volume() const { return cell_volume_; }
  double total_volume() const { return cell_volume_ * static_cast<double>(n_cells_total_); }

  const std::vector<double>& cell_weights() const { return cell_weights_; }
  const std::vector<double>& face_weights() const { return face_weights_; }

  std::size_t cell_index(std::size_t ix, std::size_t iy = 0) const {
    return iy * n_cells_[0] + ix;
  }
  std::size_t face_index(int axis, std::size_t ix, std::size_t iy = 0) const {
    return static_cast<std::size_t>(axis) * n_cells_total_ + iy * n_cells_[0] + ix;
  }
  double cell_center(int axis, std::size_t i) const {
    return (static_cast<double>(i) + 0.5) * spacing(axis);
  }
  double face_position(int axis, std::size_t i) const {
    return static_cast<double>(i) * spacing(axis);
  }

  std::uint64_t id() const { return id_; }

private:
  int dims_;
  std::array<std::size_t, 2> n_cells_;
  std::array<double, 2> length_;
  std::array<double, 2> spacing_;
  std::size_t n_cells_total_;
  double cell_volume_;
  std::vector<double> cell_weights_;
  std::vector<double> face_weights_;
  std::uint64_t id_;
};

GridPtr build_grid(int dims, std::span<const std::size_t> n_cells, std::span<const double> length);
GridPtr build_grid(std::size_t n_cells, double length);  // 1-D convenience

// A scalar sample per cell center. Entries are validated finite on
// construction; instances are immutable.
class CellField {
public:
  CellField(GridPtr grid, std::vector<double> values);

  static CellField zeros(GridPtr grid);
  static CellField constant(GridPtr grid, double value);

  std::span<const double> values() const { return {v_.data(), v_.size()}; }
  const double* data() const { return v_.data(); }
  std::size_t size() const { return v_.size(); }
  double operator[](std::size_t i) const { return v_[i]; }
  const StaggeredGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }

private:
  GridPtr grid_;
  std::vector<double> v_;
};

// A scalar sample per face, one block per axis (axis 0 first). Entries are
// validated finite on construction; instances are immutable.
class FaceField {
public:
  FaceField(GridPtr grid, std::vector<double> values);

  static FaceField zeros(GridPtr grid);
  static FaceField constant(GridPtr grid, double value);

  std::span<const double> values() const { return {v_.data(), v_.size()}; }
  std::span<const double> axis_values(int axis) const {
    return values().subspan(static_cast<std::size_t>(axis) * grid_->n_cells_total(),
                            grid_->n_cells_total());
  }
  const double* data() const { return v_.data(); }
  std::size_t size() const { return v_.size(); }
  double operator[](std::size_t i) const { return v_[i]; }
  const StaggeredGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }

private:
  GridPtr grid_;
  std::vector<double> v_;
};

void require_same_grid(const StaggeredGrid& a, const StaggeredGrid& b, const char* what);

inline void require_same_grid(const CellField& a, const CellField& b, const char* what) {
  require_same_grid(a.grid(), b.grid(), what);
}
inline void require_same_grid(const FaceField& a, const FaceField& b, const char* what) {
  require_same_grid(a.grid(), b.grid(), what);
}
inline void require_same_grid(const CellField& a, const FaceField& b, const char* what) {
  require_same_grid(a.grid(), b.grid(), what);
}

// Weighted inner products <a,b>_c = sum_i Omega_c,i a_i b_i and the face
// analogue. Products are formed as (a*b)*w, so the products commute bitwise.
double inner_product_cells(const CellField& a, const CellField& b);
double inner_product_faces(const FaceField& a, const FaceField& b);

// Weighted sum over cells; equals inner_product_cells(ones, a) bit for bit.
double total_cells(const CellField& a);
double total_faces(const FaceField& a);
double total_abs_faces(const FaceField& a);
double total_abs_cells(const CellField& a);

// Elementwise field algebra. Results live on the shared grid of the inputs.

template <class Field>
Field axpy(const Field& x, double s, const Field& y) {
  require_same_grid(x, y, "axpy");
  std::vector<double> out(x.size());
  kernels::par::axpy(x.data(), s, y.data(), out.data(), x.size());
  return Field(x.grid_ptr(), std::move(out));
}

template <class Field>
Field multiply(const Field& a, const Field& b) {
  require_same_grid(a, b, "multiply");
  std::vector<double> out(a.size());
  kernels::par::multiply(a.data(), b.data(), out.data(), a.size());
  return Field(a.grid_ptr(), std::move(out));
}

template <class Field>
Field divide(const Field& a, const Field& b) {
  require_same_grid(a, b, "divide");
  std::vector<double> out(a.size());
  kernels::par::divide(a.data(), b.data(), out.data(), a.size());
  return Field(a.grid_ptr(), std::move(out));
}

template <class Field>
Field scale(const Field& a, double s) {
  std::vector<double> out(a.size());
  kernels::par::scale(a.data(), s, out.data(), a.size());
  return Field(a.grid_ptr(), std::move(out));
}

// Applies f to every entry; f may throw on out-of-domain values.
template <class Field, class F>
Field transform(const Field& a, F&& f) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f(a[i]);
  return Field(a.grid_ptr(), std::move(out));
}

template <class Field>
double max_abs(const Field& a) {
  return kernels::par::max_abs(a.data(), a.size());
}

template <class Field>
double max_abs_diff(const Field& a, const Field& b) {
  require_same_grid(a, b, "max_abs_diff");
  return kernels::par::max_abs_diff(a.data(), b.data(), a.size());
}

template <class Field>
double min_value(const Field& a) {
  return kernels::par::min_value(a.data(), a.size());
}

}  // namespace mimwave

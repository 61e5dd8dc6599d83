#include "mimwave/dense.hpp"

#include <cmath>
#include <stdexcept>

namespace mimwave {

namespace {

void check_assembly_size(std::size_t n_in, std::size_t n_out) {
  if (std::max(n_in, n_out) > dense_assembly_max_unknowns) {
    throw std::invalid_argument("assemble_dense: problem exceeds the dense assembly guard of " +
                                std::to_string(dense_assembly_max_unknowns) + " unknowns");
  }
}

template <class InField, class OutField, class Op>
OperatorMatrix assemble(const GridPtr& grid, std::size_t n_in, std::size_t n_out,
                        const std::vector<double>& w_in, const std::vector<double>& w_out,
                        const char* in_space, const char* out_space, const Op& op,
                        std::string name) {
  check_assembly_size(n_in, n_out);
  OperatorMatrix m;
  m.rows = n_out;
  m.cols = n_in;
  m.a.assign(n_out * n_in, 0.0);
  m.in_weights = w_in;
  m.out_weights = w_out;
  m.in_space = in_space;
  m.out_space = out_space;
  m.name = std::move(name);
  std::vector<double> basis(n_in, 0.0);
  for (std::size_t j = 0; j < n_in; ++j) {
    basis[j] = 1.0;
    const OutField col = op(InField(grid, basis));
    for (std::size_t i = 0; i < n_out; ++i) m.at(i, j) = col[i];
    basis[j] = 0.0;
  }
  return m;
}

}  // namespace

double OperatorMatrix::max_abs() const {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::fabs(x));
  return m;
}

OperatorMatrix OperatorMatrix::weighted_adjoint() const {
  OperatorMatrix adj;
  adj.rows = cols;
  adj.cols = rows;
  adj.a.assign(cols * rows, 0.0);
  adj.in_weights = out_weights;
  adj.out_weights = in_weights;
  adj.in_space = out_space;
  adj.out_space = in_space;
  adj.name = name + "*";
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t j = 0; j < rows; ++j) {
      adj.at(i, j) = at(j, i) * out_weights[j] / in_weights[i];
    }
  }
  return adj;
}

OperatorMatrix assemble_cells_to_faces(const GridPtr& grid,
                                       const std::function<FaceField(const CellField&)>& op,
                                       std::string name) {
  return assemble<CellField, FaceField>(grid, grid->n_cells_total(), grid->n_faces_total(),
                                        grid->cell_weights(), grid->face_weights(), "cells",
                                        "faces", op, std::move(name));
}

OperatorMatrix assemble_faces_to_cells(const GridPtr& grid,
                                       const std::function<CellField(const FaceField&)>& op,
                                       std::string name) {
  return assemble<FaceField, CellField>(grid, grid->n_faces_total(), grid->n_cells_total(),
                                        grid->face_weights(), grid->cell_weights(), "faces",
                                        "cells", op, std::move(name));
}

OperatorMatrix assemble_cells_to_cells(const GridPtr& grid,
                                       const std::function<CellField(const CellField&)>& op,
                                       std::string name) {
  return assemble<CellField, CellField>(grid, grid->n_cells_total(), grid->n_cells_total(),
                                        grid->cell_weights(), grid->cell_weights(), "cells",
                                        "cells", op, std::move(name));
}

OperatorMatrix assemble_faces_to_faces(const GridPtr& grid,
                                       const std::function<FaceField(const FaceField&)>& op,
                                       std::string name) {
  return assemble<FaceField, FaceField>(grid, grid->n_faces_total(), grid->n_faces_total(),
                                        grid->face_weights(), grid->face_weights(), "faces",
                                        "faces", op, std::move(name));
}

double adjoint_residual(const OperatorMatrix& a, const OperatorMatrix& b, int sign) {
  const OperatorMatrix adj = a.weighted_adjoint();
  if (adj.rows != b.rows || adj.cols != b.cols || adj.in_space != b.in_space ||
      adj.out_space != b.out_space) {
    throw std::invalid_argument("adjoint_residual: operator shapes or spaces do not match");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < adj.a.size(); ++i) {
    m = std::max(m, std::fabs(adj.a[i] - sign * b.a[i]));
  }
  return m;
}

}  // namespace mimwave

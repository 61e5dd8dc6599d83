#pragma once

#include <functional>
#include <string>

#include "mimwave/grid.hpp"

// Dense assembly of the staggered operators by probing with basis vectors,
// plus the weighted adjoint A* = W_in^-1 A^T W_out. The dense path is the
// oracle for the adjoint identities: a stencil operator matches its claimed
// adjoint when adjoint_residual(A, B, sign) vanishes.

namespace mimwave {

inline constexpr std::size_t dense_assembly_max_unknowns = 4096;

struct OperatorMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;  // row-major
  std::vector<double> in_weights;
  std::vector<double> out_weights;
  std::string in_space;   // "cells" or "faces"
  std::string out_space;
  std::string name;

  double at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  double& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double max_abs() const;

  // W_in^-1 A^T W_out; swaps the spaces and weights.
  OperatorMatrix weighted_adjoint() const;
};

OperatorMatrix assemble_cells_to_faces(const GridPtr& grid,
                                       const std::function<FaceField(const CellField&)>& op,
                                       std::string name);
OperatorMatrix assemble_faces_to_cells(const GridPtr& grid,
                                       const std::function<CellField(const FaceField&)>& op,
                                       std::string name);
OperatorMatrix assemble_cells_to_cells(const GridPtr& grid,
                                       const std::function<CellField(const CellField&)>& op,
                                       std::string name);
OperatorMatrix assemble_faces_to_faces(const GridPtr& grid,
                                       const std::function<FaceField(const FaceField&)>& op,
                                       std::string name);

// max |A* - sign * B|, entrywise. Throws on shape or space mismatch.
double adjoint_residual(const OperatorMatrix& a, const OperatorMatrix& b, int sign);

}  // namespace mimwave

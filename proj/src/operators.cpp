#include "mimwave/operators.hpp"

#include <cmath>

namespace mimwave {

FaceField grad(const CellField& p) {
  const StaggeredGrid& g = p.grid();
  std::vector<double> out(g.n_faces_total());
  if (g.dims() == 1) {
    kernels::par::grad_1d(p.data(), out.data(), g.n_cells_total(), 1.0 / g.spacing(0));
  } else {
    const std::size_t nc = g.n_cells_total();
    for (int a = 0; a < 2; ++a) {
      kernels::par::grad_2d_axis(p.data(), out.data() + static_cast<std::size_t>(a) * nc,
                                 g.n_cells(0), g.n_cells(1), a, 1.0 / g.spacing(a));
    }
  }
  return FaceField(p.grid_ptr(), std::move(out));
}

CellField div(const FaceField& v) {
  const StaggeredGrid& g = v.grid();
  std::vector<double> out(g.n_cells_total(), 0.0);
  if (g.dims() == 1) {
    kernels::par::div_1d(v.data(), out.data(), g.n_cells_total(), 1.0 / g.spacing(0));
  } else {
    const std::size_t nc = g.n_cells_total();
    for (int a = 0; a < 2; ++a) {
      kernels::par::div_2d_axis_add(v.data() + static_cast<std::size_t>(a) * nc, out.data(),
                                    g.n_cells(0), g.n_cells(1), a, 1.0 / g.spacing(a));
    }
  }
  return CellField(v.grid_ptr(), std::move(out));
}

CellField lapl(const CellField& p) { return div(grad(p)); }

FaceField interp_c2f(const CellField& a) {
  const StaggeredGrid& g = a.grid();
  std::vector<double> out(g.n_faces_total());
  if (g.dims() == 1) {
    kernels::par::interp_c2f_1d(a.data(), out.data(), g.n_cells_total());
  } else {
    const std::size_t nc = g.n_cells_total();
    for (int ax = 0; ax < 2; ++ax) {
      kernels::par::interp_c2f_2d_axis(a.data(), out.data() + static_cast<std::size_t>(ax) * nc,
                                       g.n_cells(0), g.n_cells(1), ax);
    }
  }
  return FaceField(a.grid_ptr(), std::move(out));
}

CellField div_r(const FaceField& v, const FaceField& r) {
  require_same_grid(v, r, "div_r");
  return div(multiply(r, v));
}

FaceField r_grad(const CellField& s, const FaceField& r) {
  require_same_grid(s, r, "r_grad");
  return multiply(r, grad(s));
}

FaceField advec(const FaceField& m, const FaceField& w) {
  require_same_grid(m, w, "advec");
  const StaggeredGrid& g = m.grid();
  if (g.dims() != 1) {
    throw std::invalid_argument("advec: defined for 1-D grids only");
  }
  std::vector<double> out(g.n_faces_total());
  kernels::par::advec_1d(m.data(), w.data(), out.data(), g.n_cells_total(),
                         1.0 / g.spacing(0));
  return FaceField(m.grid_ptr(), std::move(out));
}

namespace {

// Divided difference with the shared-limit fallback. num and den are the
// increments of the chosen antiderivatives between the two adjacent cells;
// both quotients tend to R(p) as the pressures merge.
double face_quotient(const StateLaw& law, FlowKind kind, double p_left, double p_right) {
  const double mag = std::max({std::fabs(p_left), std::fabs(p_right), 1.0});
  if (std::fabs(p_right - p_left) <= face_density_fallback_rel * mag) {
    return law.R(0.5 * (p_left + p_right));
  }
  if (kind == FlowKind::euler) {
    return (p_right - p_left) / (law.Q(p_right) - law.Q(p_left));
  }
  return (law.Q(p_right) - law.Q(p_left)) / (law.S(p_right) - law.S(p_left));
}

}  // namespace

FaceField face_density(const CellField& p, const StateLaw& law, FlowKind kind) {
  const StaggeredGrid& g = p.grid();
  std::vector<double> out(g.n_faces_total());
  if (g.dims() == 1) {
    const std::size_t n = g.n_cells_total();
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t im = (i == 0) ? n - 1 : i - 1;
      out[i] = face_quotient(law, kind, p[im], p[i]);
    }
  } else {
    const std::size_t nx = g.n_cells(0), ny = g.n_cells(1), nc = g.n_cells_total();
    for (std::size_t iy = 0; iy < ny; ++iy) {
      for (std::size_t ix = 0; ix < nx; ++ix) {
        const std::size_t xm = (ix == 0) ? nx - 1 : ix - 1;
        const std::size_t ym = (iy == 0) ? ny - 1 : iy - 1;
        out[iy * nx + ix] = face_quotient(law, kind, p[iy * nx + xm], p[iy * nx + ix]);
        out[nc + iy * nx + ix] = face_quotient(law, kind, p[ym * nx + ix], p[iy * nx + ix]);
      }
    }
  }
  return FaceField(p.grid_ptr(), std::move(out));
}

}  // namespace mimwave

#pragma once

#include "mimwave/grid.hpp"
#include "mimwave/state_law.hpp"

// The staggered operator kit. All operators act on periodic fields and are
// built so that the discrete identities below hold to machine precision:
//
//   GRAD* = -DIV                  <GRAD p, v>_v = -<p, DIV v>_c
//   LAPL  = DIV o GRAD            self-adjoint, <p, LAPL p>_c <= 0
//   r_grad(.,r)* = -div_r(.,r)    for any fixed face coefficient r
//   ADVEC + ADVEC* = diag(interp_c2f(div(m)))
//
// and the face densities turn continuum chain rules into exact discrete
// statements:
//
//   r_grad(Q(p), face_density(p, law, euler))             = grad(p)
//   r_grad(S(p), face_density(p, law, compressible_wave)) = grad(Q(p))
//
// The adjoints are taken with respect to the weighted inner products of
// grid.hpp. Advection and the face densities are 1-D constructions; the
// differential operators and interp work in 1-D and 2-D.

namespace mimwave {

FaceField grad(const CellField& p);
CellField div(const FaceField& v);
// DIV o GRAD, assembled by composition.
CellField lapl(const CellField& p);
// Arithmetic two-cell mean onto faces.
FaceField interp_c2f(const CellField& a);

// DIV(diag(r) v): divergence of a coefficient-weighted flux.
CellField div_r(const FaceField& v, const FaceField& r);
// diag(r) GRAD s: coefficient-weighted gradient.
FaceField r_grad(const CellField& s, const FaceField& r);

// Flux-form advection of a face field w by a face mass flux m. 1-D only.
FaceField advec(const FaceField& m, const FaceField& w);

// Divided-difference face density for pressure field p under a law:
//   euler:             (p_R - p_L) / (Q(p_R) - Q(p_L))
//   compressible_wave: (Q(p_R) - Q(p_L)) / (S(p_R) - S(p_L))
// where L and R are the two cells adjacent to the face. When the adjacent
// pressures agree to within face_density_fallback_rel (relative to their
// magnitude), both quotients fall back to their common limit R((p_L+p_R)/2).
FaceField face_density(const CellField& p, const StateLaw& law, FlowKind kind);

inline constexpr double face_density_fallback_rel = 1e-8;

}  // namespace mimwave

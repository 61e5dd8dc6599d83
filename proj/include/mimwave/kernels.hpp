#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

// Stencil, elementwise, and reduction kernels on raw arrays.
//
// Every kernel exists in two forms: kernels::serial is the plain reference
// used by the tests and the benchmark, kernels::par is the OpenMP form the
// field operators call. Elementwise and stencil kernels produce bit-identical
// output in both forms. Reductions sum fixed-size chunks in index order, so
// the result is independent of the number of threads; below one chunk the
// parallel form degenerates to the serial left-to-right sum.

namespace mimwave::kernels {

// Parallelize only above this element count; tiny grids stay on one thread.
inline constexpr std::size_t par_grain = 8192;
// Fixed summation block for deterministic parallel reductions.
inline constexpr std::size_t reduce_chunk = 4096;

namespace serial {

// 1-D periodic staggered stencils. Cells and faces both carry n entries;
// face i sits between cell i-1 and cell i (indices mod n).

inline void grad_1d(const double* p, double* out, std::size_t n, double inv_h) {
  out[0] = (p[0] - p[n - 1]) * inv_h;
  for (std::size_t i = 1; i < n; ++i) out[i] = (p[i] - p[i - 1]) * inv_h;
}

inline void div_1d(const double* v, double* out, std::size_t n, double inv_h) {
  for (std::size_t i = 0; i + 1 < n; ++i) out[i] = (v[i + 1] - v[i]) * inv_h;
  out[n - 1] = (v[0] - v[n - 1]) * inv_h;
}

inline void interp_c2f_1d(const double* a, double* out, std::size_t n) {
  out[0] = 0.5 * (a[n - 1] + a[0]);
  for (std::size_t i = 1; i < n; ++i) out[i] = 0.5 * (a[i - 1] + a[i]);
}

// Flux-form advection of a face field w by a face mass flux m.
// The flux between faces i and i+1 is the mean of m there; the transported
// value is the mean of w. The half factors make ADVEC + ADVEC* diagonal.
inline void advec_1d(const double* m, const double* w, double* out, std::size_t n,
                     double inv_h) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ip = (i + 1 == n) ? 0 : i + 1;
    const std::size_t im = (i == 0) ? n - 1 : i - 1;
    const double flux_r = 0.5 * (m[i] + m[ip]);
    const double flux_l = 0.5 * (m[im] + m[i]);
    out[i] = (flux_r * (0.5 * (w[i] + w[ip])) - flux_l * (0.5 * (w[im] + w[i]))) * inv_h;
  }
}

// 2-D tensor-product stencils, x-fastest cell layout: cell (ix,iy) at
// iy*nx + ix. Each axis has one face block with the same layout; the axis-a
// face at (ix,iy) sits on the low side of cell (ix,iy) along axis a.

inline void grad_2d_axis(const double* p, double* out, std::size_t nx, std::size_t ny,
                         int axis, double inv_h) {
  if (axis == 0) {
    for (std::size_t iy = 0; iy < ny; ++iy)
      for (std::size_t ix = 0; ix < nx; ++ix) {
        const std::size_t xm = (ix == 0) ? nx - 1 : ix - 1;
        out[iy * nx + ix] = (p[iy * nx + ix] - p[iy * nx + xm]) * inv_h;
      }
  } else {
    for (std::size_t iy = 0; iy < ny; ++iy)
      for (std::size_t ix = 0; ix < nx; ++ix) {
        const std::size_t ym = (iy == 0) ? ny - 1 : iy - 1;
        out[iy * nx + ix] = (p[iy * nx + ix] - p[ym * nx + ix]) * inv_h;
      }
  }
}

// Adds the axis contribution of the divergence into out.
inline void div_2d_axis_add(const double* v, double* out, std::size_t nx, std::size_t ny,
                            int axis, double inv_h) {
  if (axis == 0) {
    for (std::size_t iy = 0; iy < ny; ++iy)
      for (std::size_t ix = 0; ix < nx; ++ix) {
        const std::size_t xp = (ix + 1 == nx) ? 0 : ix + 1;
        out[iy * nx + ix] += (v[iy * nx + xp] - v[iy * nx + ix]) * inv_h;
      }
  } else {
    for (std::size_t iy = 0; iy < ny; ++iy)
      for (std::size_t ix = 0; ix < nx; ++ix) {
        const std::size_t yp = (iy + 1 == ny) ? 0 : iy + 1;
        out[iy * nx + ix] += (v[yp * nx + ix] - v[iy * nx + ix]) * inv_h;
      }
  }
}

inline void interp_c2f_2d_axis(const double* a, double* out, std::size_t nx,
                               std::size_t ny, int axis) {
  if (axis == 0) {
    for (std::size_t iy = 0; iy < ny; ++iy)
      for (std::size_t ix = 0; ix < nx; ++ix) {
        const std::size_t xm = (ix == 0) ? nx - 1 : ix - 1;
        out[iy * nx + ix] = 0.5 * (a[iy * nx + xm] + a[iy * nx + ix]);
      }
  } else {
    for (std::size_t iy = 0; iy < ny; ++iy)
      for (std::size_t ix = 0; ix < nx; ++ix) {
        const std::size_t ym = (iy == 0) ? ny - 1 : iy - 1;
        out[iy * nx + ix] = 0.5 * (a[ym * nx + ix] + a[iy * nx + ix]);
      }
  }
}

// Elementwise kernels.

inline void multiply(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

inline void divide(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] / b[i];
}

inline void axpy(const double* x, double s, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + s * y[i];
}

inline void scale(const double* x, double s, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = s * x[i];
}

// Reductions. Products are formed as (a*b)*w so that exchanging a and b is
// bitwise neutral.

inline double dot_w(const double* a, const double* b, const double* w, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += (a[i] * b[i]) * w[i];
  return s;
}

inline double sum_w(const double* a, const double* w, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * w[i];
  return s;
}

inline double sum_abs_w(const double* a, const double* w, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += (a[i] < 0.0 ? -a[i] : a[i]) * w[i];
  return s;
}

inline double max_abs(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, a[i] < 0.0 ? -a[i] : a[i]);
  return m;
}

inline double max_abs_diff(const double* a, const double* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    m = std::max(m, d < 0.0 ? -d : d);
  }
  return m;
}

inline double min_value(const double* a, std::size_t n) {
  double m = a[0];
  for (std::size_t i = 1; i < n; ++i) m = std::min(m, a[i]);
  return m;
}

}  // namespace serial

namespace par {

namespace detail {

// Sums f(chunk_begin, chunk_end) over fixed chunks, combining partials in
// chunk order. Identical to the serial sum whenever n fits in one chunk.
template <class F>
double chunked_sum(std::size_t n, F&& partial) {
  const std::size_t nchunks = (n + reduce_chunk - 1) / reduce_chunk;
  if (nchunks <= 1) return partial(std::size_t{0}, n);
  std::vector<double> parts(nchunks);
#pragma omp parallel for schedule(static)
  for (long c = 0; c < static_cast<long>(nchunks); ++c) {
    const std::size_t b0 = static_cast<std::size_t>(c) * reduce_chunk;
    const std::size_t b1 = std::min(n, b0 + reduce_chunk);
    parts[static_cast<std::size_t>(c)] = partial(b0, b1);
  }
  double s = 0.0;
  for (double x : parts) s += x;
  return s;
}

}  // namespace detail

inline void grad_1d(const double* p, double* out, std::size_t n, double inv_h) {
#pragma omp parallel for schedule(static) if (n >= par_grain)
  for (long i = 0; i < static_cast<long>(n); ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    const std::size_t im = (u == 0) ? n - 1 : u - 1;
    out[u] = (p[u] - p[im]) * inv_h;
  }
}

inline void div_1d(const double* v, double* out, std::size_t n, double inv_h) {
#pragma omp parallel for schedule(static) if (n >= par_grain)
  for (long i = 0; i < static_cast<long>(n); ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    const std::size_t ip = (u + 1 == n) ? 0 : u + 1;
    out[u] = (v[ip] - v[u]) * inv_h;
  }
}

inline void interp_c2f_1d(const double* a, double* out, std::size_t n) {
#pragma omp parallel for schedule(static) if (n >= par_grain)
  for (long i = 0; i < static_cast<long>(n); ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    const std::size_t im = (u == 0) ? n - 1 : u - 1;
    out[u] = 0.5 * (a[im] + a[u]);
  }
}

inline void advec_1d(const double* m, const double* w, double* out, std::size_t n,
                     double inv_h) {
#pragma omp parallel for schedule(static) if (n >= par_grain)
  for (long i = 0; i < static_cast<long>(n); ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    const std::size_t ip = (u + 1 == n) ? 0 : u + 1;
    const std::size_t im = (u == 0) ? n - 1 : u - 1;
    const double flux_r = 0.5 * (m[u] + m[ip]);
    const double flux_l = 0.5 * (m[im] + m[u]);
    out[u] = (flux_r * (0.5 * (w[u] + w[ip])) - flux_l * (0.5 * (w[im] + w[u]))) * inv_h;
  }
}

inline void grad_2d_axis(const double* p, double* out, std::size_t nx, std::size_t ny,
                         int axis, double inv_h) {
  if (axis == 0) {
#pragma omp parallel for collapse(2) schedule(static) if (nx * ny >= par_grain)
    for (long iy = 0; iy < static_cast<long>(ny); ++iy)
      for (long ix = 0; ix < static_cast<long>(nx); ++ix) {
        const std::size_t x = static_cast<std::size_t>(ix), y = static_cast<std::size_t>(iy);
        const std::size_t xm = (x == 0) ? nx - 1 : x - 1;
        out[y * nx + x] = (p[y * nx + x] - p[y * nx + xm]) * inv_h;
      }
  } else {
#pragma omp parallel for collapse(2) schedule(static) if (nx * ny >= par_grain)
    for (long iy = 0; iy < static_cast<long>(ny); ++iy)
      for (long ix = 0; ix < static_cast<long>(nx); ++ix) {
        const std::size_t x = static_cast<std::size_t>(ix), y = static_cast<std::size_t>(iy);
        const std::size_t ym = (y == 0) ? ny - 1 : y - 1;
        out[y * nx + x] = (p[y * nx + x] - p[ym * nx + x]) * inv_h;
      }
  }
}

inline void div_2d_axis_add(const double* v, double* out, std::size_t nx, std::size_t ny,
                            int axis, double inv_h) {
  if (axis == 0) {
#pragma omp parallel for collapse(2) schedule(static) if (nx * ny >= par_grain)
    for (long iy = 0; iy < static_cast<long>(ny); ++iy)
      for (long ix = 0; ix < static_cast<long>(nx); ++ix) {
        const std::size_t x = static_cast<std::size_t>(ix), y = static_cast<std::size_t>(iy);
        const std::size_t xp = (x + 1 == nx) ? 0 : x + 1;
        out[y * nx + x] += (v[y * nx + xp] - v[y * nx + x]) * inv_h;
      }
  } else {
#pragma omp parallel for collapse(2) schedule(static) if (nx * ny >= par_grain)
    for (long iy = 0; iy < static_cast<long>(ny); ++iy)
      for (long ix = 0; ix < static_cast<long>(nx); ++ix) {
        const std::size_t x = static_cast<std::size_t>(ix), y = static_cast<std::size_t>(iy);
        const std::size_t yp = (y + 1 == ny) ? 0 : y + 1;
        out[y * nx + x] += (v[yp * nx + x] - v[y * nx + x]) * inv_h;
      }
  }
}

inline void interp_c2f_2d_axis(const double* a, double* out, std::size_t nx,
                               std::size_t ny, int axis) {
  if (axis == 0) {
#pragma omp parallel for collapse(2) schedule(static) if (nx * ny >= par_grain)
    for (long iy = 0; iy < static_cast<long>(ny); ++iy)
      for (long ix = 0; ix < static_cast<long>(nx); ++ix) {
        const std::size_t x = static_cast<std::size_t>(ix), y = static_cast<std::size_t>(iy);
        const std::size_t xm = (x == 0) ? nx - 1 : x - 1;
        out[y * nx + x] = 0.5 * (a[y * nx + xm] + a[y * nx + x]);
      }
  } else {
#pragma omp parallel for collapse(2) schedule(static) if (nx * ny >= par_grain)
    for (long iy = 0; iy < static_cast<long>(ny); ++iy)
      for (long ix = 0; ix < static_cast<long>(nx); ++ix) {
        const std::size_t x = static_cast<std::size_t>(ix), y = static_cast<std::size_t>(iy);
        const std::size_t ym = (y == 0) ? ny - 1 : y - 1;
        out[y * nx + x] = 0.5 * (a[ym * nx + x] + a[y * nx + x]);
      }
  }
}

inline void multiply(const double* a, const double* b, double* out, std::size_t n) {
#pragma omp parallel for schedule(static) if (n >= par_grain)
  for (long i = 0; i < static_cast<long>(n); ++i) out[i] = a[i] * b[i];
}

inline void divide(const double* a, const double* b, double* out, std::size_t n) {
#pragma omp parallel for schedule(static) if (n >= par_grain)
  for (long i = 0; i < static_cast<long>(n); ++i) out[i] = a[i] / b[i];
}

inline void axpy(const double* x, double s, const double* y, double* out, std::size_t n) {
#pragma omp parallel for schedule(static) if (n >= par_grain)
  for (long i = 0; i < static_cast<long>(n); ++i) out[i] = x[i] + s * y[i];
}

inline void scale(const double* x, double s, double* out, std::size_t n) {
#pragma omp parallel for schedule(static) if (n >= par_grain)
  for (long i = 0; i < static_cast<long>(n); ++i) out[i] = s * x[i];
}

inline double dot_w(const double* a, const double* b, const double* w, std::size_t n) {
  return detail::chunked_sum(
      n, [&](std::size_t b0, std::size_t b1) { return serial::dot_w(a + b0, b + b0, w + b0, b1 - b0); });
}

inline double sum_w(const double* a, const double* w, std::size_t n) {
  return detail::chunked_sum(
      n, [&](std::size_t b0, std::size_t b1) { return serial::sum_w(a + b0, w + b0, b1 - b0); });
}

inline double sum_abs_w(const double* a, const double* w, std::size_t n) {
  return detail::chunked_sum(
      n, [&](std::size_t b0, std::size_t b1) { return serial::sum_abs_w(a + b0, w + b0, b1 - b0); });
}

// max/min are order-independent, so a plain OpenMP reduction is exact.

inline double max_abs(const double* a, std::size_t n) {
  double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m) if (n >= par_grain)
  for (long i = 0; i < static_cast<long>(n); ++i) m = std::max(m, a[i] < 0.0 ? -a[i] : a[i]);
  return m;
}

inline double max_abs_diff(const double* a, const double* b, std::size_t n) {
  double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m) if (n >= par_grain)
  for (long i = 0; i < static_cast<long>(n); ++i) {
    const double d = a[i] - b[i];
    m = std::max(m, d < 0.0 ? -d : d);
  }
  return m;
}

inline double min_value(const double* a, std::size_t n) {
  double m = a[0];
#pragma omp parallel for schedule(static) reduction(min : m) if (n >= par_grain)
  for (long i = 0; i < static_cast<long>(n); ++i) m = std::min(m, a[i]);
  return m;
}

}  // namespace par

}  // namespace mimwave::kernels

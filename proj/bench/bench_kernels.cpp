// Timing comparison of the serial reference kernels against the OpenMP
// versions, plus the max discrepancy between the two. Stencil kernels are
// bit-identical by construction (expected max|d| = 0); reductions sum fixed
// chunks in index order, so they are thread-count independent but differ
// from the single running serial sum by summation-order roundoff.

#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <vector>

#include "mimwave/kernels.hpp"
#include "mimwave/random_fields.hpp"

namespace {

using namespace mimwave;

std::vector<double> random_vector(std::size_t n, SplitMix64& rng, double offset, double amp) {
  std::vector<double> v(n);
  for (auto& x : v) x = offset + amp * rng.next_signed();
  return v;
}

template <typename F>
double time_best_of(int repeats, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const double t0 = omp_get_wtime();
    f();
    const double t1 = omp_get_wtime();
    if (t1 - t0 < best) best = t1 - t0;
  }
  return best;
}

void row(const char* name, std::size_t n, double t_serial, double t_par, double max_delta,
         const char* delta_label = "max|d|") {
  std::printf("%-10s  n=%-9zu  serial %10.3e s  parallel %10.3e s  speedup %5.2fx  %s %g\n",
              name, n, t_serial, t_par, t_serial / t_par, delta_label, max_delta);
}

void bench_size(std::size_t n, int repeats) {
  SplitMix64 rng(42);
  const std::vector<double> a = random_vector(n, rng, 0.5, 1.0);
  const std::vector<double> b = random_vector(n, rng, 0.3, 1.0);
  const std::vector<double> w = random_vector(n, rng, 1.0, 0.0);
  std::vector<double> out_s(n), out_p(n);
  const double inv_h = static_cast<double>(n);

  {
    const double ts = time_best_of(repeats, [&] {
      kernels::serial::grad_1d(a.data(), out_s.data(), n, inv_h);
    });
    const double tp = time_best_of(repeats, [&] {
      kernels::par::grad_1d(a.data(), out_p.data(), n, inv_h);
    });
    row("grad", n, ts, tp, kernels::serial::max_abs_diff(out_s.data(), out_p.data(), n));
  }
  {
    const double ts = time_best_of(repeats, [&] {
      kernels::serial::advec_1d(a.data(), b.data(), out_s.data(), n, inv_h);
    });
    const double tp = time_best_of(repeats, [&] {
      kernels::par::advec_1d(a.data(), b.data(), out_p.data(), n, inv_h);
    });
    row("advec", n, ts, tp, kernels::serial::max_abs_diff(out_s.data(), out_p.data(), n));
  }
  {
    double dot_s = 0.0, dot_p = 0.0;
    const double ts = time_best_of(repeats, [&] {
      dot_s = kernels::serial::dot_w(a.data(), b.data(), w.data(), n);
    });
    const double tp = time_best_of(repeats, [&] {
      dot_p = kernels::par::dot_w(a.data(), b.data(), w.data(), n);
    });
    row("dot_w", n, ts, tp, std::abs(dot_s - dot_p) / std::abs(dot_s), "rel|d|");
  }
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 20;
  std::printf("threads: %d (set OMP_NUM_THREADS to vary)\n", omp_get_max_threads());
  for (std::size_t n : {std::size_t(1) << 14, std::size_t(1) << 18, std::size_t(1) << 22}) {
    bench_size(n, repeats);
  }
  return 0;
}

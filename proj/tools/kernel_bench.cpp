// Compares the serial reference kernels against the OpenMP versions, both
// in isolation and through a full stiff integration, and verifies that the
// two paths produce identical results.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mono/driver.hpp"
#include "mono/kernels.hpp"
#include "mono/problems.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void bench_stage_update(std::size_t n, int reps) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> y0(n), yjm1(n), yjm2(n), fj(n), f0(n), out_s(n), out_p(n);
    for (auto* v : {&y0, &yjm1, &yjm2, &fj, &f0})
        for (auto& x : *v) x = dist(rng);

    auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r)
        mono::kernels::stage_update_serial(out_s, y0, yjm1, yjm2, fj, f0, 0.1, 1.8, -0.9, 0.01,
                                           0.3);
    const double ts = seconds_since(t0);

    t0 = Clock::now();
    for (int r = 0; r < reps; ++r)
        mono::kernels::stage_update(out_p, y0, yjm1, yjm2, fj, f0, 0.1, 1.8, -0.9, 0.01, 0.3);
    const double tp = seconds_since(t0);

    bool identical = true;
    for (std::size_t i = 0; i < n; ++i) identical = identical && out_s[i] == out_p[i];

    std::printf("stage_update  n=%8zu  serial %8.3f ms  parallel %8.3f ms  speedup %5.2fx  %s\n",
                n, ts * 1e3, tp * 1e3, ts / tp, identical ? "bitwise-equal" : "MISMATCH");
}

void bench_integration(int grid_n) {
    auto p = mono::make_decay_grid_problem(grid_n, 0.05);
    mono::SolverConfig cfg;
    cfg.atol = cfg.rtol = 1e-6;

    auto t0 = Clock::now();
    auto rep = mono::integrate(p, cfg);
    const double t = seconds_since(t0);
    std::printf("decay_grid    n=%8d  %8.3f ms  n_f=%ld accepted=%ld (%s)\n", grid_n, t * 1e3,
                rep.n_f, rep.n_accepted, mono::to_string(rep.status));
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; parallel kernels run serially\n");
#endif

    for (std::size_t n : {std::size_t(1000), std::size_t(100000), std::size_t(2000000)})
        bench_stage_update(n, 200);

    for (int n : {1000, 100000, 500000}) bench_integration(n);
    return 0;
}

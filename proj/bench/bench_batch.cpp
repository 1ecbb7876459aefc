// Throughput comparison of the serial reference kernels against the
// OpenMP-parallel ones, on the same inputs, with a result equality check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cordic/batch.hpp"

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

struct Timing {
    double best = 0.0;
    double mevals = 0.0;
};

template <typename Fn>
Timing time_kernel(Fn&& fn, size_t count, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const double t0 = now_seconds();
        fn();
        const double t1 = now_seconds();
        best = std::min(best, t1 - t0);
    }
    return Timing{best, static_cast<double>(count) / best / 1e6};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cordic batch kernel benchmark: serial reference vs OpenMP"};
    size_t count = 1u << 20;
    int iters = 24;
    int reps = 3;
    bool fixed = false;
    int width = 16, frac = 13;
    app.add_option("--count", count, "number of evaluations per kernel");
    app.add_option("--iters", iters, "micro-rotations per evaluation");
    app.add_option("--reps", reps, "repetitions (best-of)");
    app.add_flag("--fixed", fixed, "benchmark the fixed-point backend");
    app.add_option("--width", width, "Q-format width with --fixed");
    app.add_option("--frac", frac, "Q-format fraction bits with --fixed");
    CLI11_PARSE(app, argc, argv);

    const cordic::CordicParams params =
        fixed ? cordic::CordicParams::fixed_point(cordic::QFormat(width, frac), iters)
              : cordic::CordicParams::real(iters);

    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> angle_dist(-3.141592653589793, 3.141592653589793);
    std::vector<double> angles(count);
    for (double& a : angles) a = angle_dist(rng);

    std::vector<double> cos_s(count), sin_s(count), cos_p(count), sin_p(count);

#ifdef _OPENMP
    const int threads = omp_get_max_threads();
#else
    const int threads = 1;
#endif
    std::printf("sincos batch: count=%zu iters=%d backend=%s threads=%d\n", count, iters,
                fixed ? "fixed" : "real", threads);

    const Timing ts = time_kernel(
        [&] { cordic::batch::sincos_serial(angles, params, cos_s, sin_s); }, count, reps);
    const Timing tp = time_kernel(
        [&] { cordic::batch::sincos_parallel(angles, params, cos_p, sin_p); }, count, reps);

    size_t mismatches = 0;
    for (size_t i = 0; i < count; ++i)
        if (cos_s[i] != cos_p[i] || sin_s[i] != sin_p[i]) ++mismatches;

    std::printf("%-10s %12s %12s\n", "kernel", "time [s]", "Mevals/s");
    std::printf("%-10s %12.4f %12.2f\n", "serial", ts.best, ts.mevals);
    std::printf("%-10s %12.4f %12.2f\n", "parallel", tp.best, tp.mevals);
    std::printf("speedup %.2fx, mismatches %zu\n", ts.best / tp.best, mismatches);

    return mismatches == 0 ? 0 : 1;
}

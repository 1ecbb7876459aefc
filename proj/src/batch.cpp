#include "cordic/batch.hpp"

#include <atomic>
#include <exception>
#include <stdexcept>

namespace cordic::batch {

namespace {

void require_sizes(size_t in, size_t out_a, size_t out_b, const char* what) {
    if (in != out_a || in != out_b)
        throw std::invalid_argument(std::string(what) + ": span sizes differ");
}

// OpenMP loop that forwards the first worker exception to the caller
// instead of terminating the process.
template <typename Fn>
void parallel_for(int64_t count, Fn&& fn) {
    std::exception_ptr err = nullptr;
    std::atomic<bool> failed{false};
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < count; ++i) {
        if (failed.load(std::memory_order_relaxed)) continue;
        try {
            fn(i);
        } catch (...) {
#pragma omp critical(cordic_batch_err)
            {
                if (!err) {
                    err = std::current_exception();
                    failed.store(true, std::memory_order_relaxed);
                }
            }
        }
    }
    if (err) std::rethrow_exception(err);
}

}  // namespace

void sincos_serial(std::span<const double> angles, const CordicParams& params,
                   std::span<double> cos_out, std::span<double> sin_out) {
    require_sizes(angles.size(), cos_out.size(), sin_out.size(), "sincos_serial");
    const CordicEngine engine(params);
    for (size_t i = 0; i < angles.size(); ++i) {
        const SinCos r = engine.sincos(angles[i]);
        cos_out[i] = r.cos_v;
        sin_out[i] = r.sin_v;
    }
}

void sincos_parallel(std::span<const double> angles, const CordicParams& params,
                     std::span<double> cos_out, std::span<double> sin_out) {
    require_sizes(angles.size(), cos_out.size(), sin_out.size(), "sincos_parallel");
    const CordicEngine engine(params);
    parallel_for(static_cast<int64_t>(angles.size()), [&](int64_t i) {
        const SinCos r = engine.sincos(angles[i]);
        cos_out[i] = r.cos_v;
        sin_out[i] = r.sin_v;
    });
}

void atan2_magnitude_serial(std::span<const double> xs, std::span<const double> ys,
                            const CordicParams& params, std::span<double> angle_out,
                            std::span<double> magnitude_out) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("atan2_magnitude_serial: input spans differ");
    require_sizes(xs.size(), angle_out.size(), magnitude_out.size(), "atan2_magnitude_serial");
    const CordicEngine engine(params);
    for (size_t i = 0; i < xs.size(); ++i) {
        const Atan2Mag r = engine.atan2_magnitude(xs[i], ys[i]);
        angle_out[i] = r.angle;
        magnitude_out[i] = r.magnitude;
    }
}

void atan2_magnitude_parallel(std::span<const double> xs, std::span<const double> ys,
                              const CordicParams& params, std::span<double> angle_out,
                              std::span<double> magnitude_out) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("atan2_magnitude_parallel: input spans differ");
    require_sizes(xs.size(), angle_out.size(), magnitude_out.size(), "atan2_magnitude_parallel");
    const CordicEngine engine(params);
    parallel_for(static_cast<int64_t>(xs.size()), [&](int64_t i) {
        const Atan2Mag r = engine.atan2_magnitude(xs[i], ys[i]);
        angle_out[i] = r.angle;
        magnitude_out[i] = r.magnitude;
    });
}

}  // namespace cordic::batch

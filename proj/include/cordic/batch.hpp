#pragma once

// Batch evaluation over arrays of inputs. Every element is an independent
// pure evaluation, so the parallel kernels split the index range across
// OpenMP threads and must produce results identical to the serial reference
// implementations kept here for testing and benchmarking.

#include <span>

#include "cordic/core.hpp"

namespace cordic::batch {

// cos/sin for each angle. Outputs must match angles.size().
void sincos_serial(std::span<const double> angles, const CordicParams& params,
                   std::span<double> cos_out, std::span<double> sin_out);
void sincos_parallel(std::span<const double> angles, const CordicParams& params,
                     std::span<double> cos_out, std::span<double> sin_out);

// Full-plane arctangent and gain-compensated magnitude per (x, y) pair.
void atan2_magnitude_serial(std::span<const double> xs, std::span<const double> ys,
                            const CordicParams& params, std::span<double> angle_out,
                            std::span<double> magnitude_out);
void atan2_magnitude_parallel(std::span<const double> xs, std::span<const double> ys,
                              const CordicParams& params, std::span<double> angle_out,
                              std::span<double> magnitude_out);

}  // namespace cordic::batch

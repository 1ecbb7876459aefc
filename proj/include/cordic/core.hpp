#pragma once

// CORDIC rotation/vectoring kernels over two interchangeable backends:
//  - Real: IEEE double, scaling by ldexp (exact powers of two)
//  - Fixed: Q-format shift-add, bit-faithful to a hardware datapath
//
// Rotation mode drives the angle accumulator z to zero and rotates the input
// vector by z0; vectoring mode drives y to zero and recovers atan(y0/x0) plus
// the gain-scaled magnitude. Both pick the per-iteration direction d from a
// sign test only, so every step is a conditional add/sub plus a shift.
//
// Direction tie rule (applied literally, including at exactly zero):
//   rotation:  d = -1 if z < 0, +1 otherwise
//   vectoring: d = +1 if y < 0, -1 otherwise

#include <optional>
#include <vector>

#include "cordic/fixed_point.hpp"

namespace cordic {

enum class Correction { None, HalfPi, Pi };
enum class CordicMode { Rotation, Vectoring };

struct CordicParams {
    int n = 20;                       // micro-rotation count, i = 0..n-1
    std::optional<QFormat> fixed;     // empty = Real backend
    Correction correction = Correction::Pi;

    static CordicParams real(int n = 20) { return CordicParams{n, std::nullopt, Correction::Pi}; }
    static CordicParams fixed_point(const QFormat& fmt) {
        return CordicParams{fmt.frac + 1, fmt, Correction::Pi};
    }
    static CordicParams fixed_point(const QFormat& fmt, int n) {
        return CordicParams{n, fmt, Correction::Pi};
    }
    bool is_fixed() const { return fixed.has_value(); }
};

struct CordicState {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;  // angle accumulator, radians
    int i = 0;       // iterations performed
};

struct FxTriple {
    Fx x, y, z;
};

// atan(2^-i) table. `entries` always holds the real view; `fixed_entries`
// holds the quantized ROM words when built for the Fixed backend (in that
// case entries[i] mirrors their exact real value).
struct AtanLut {
    std::vector<double> entries;
    std::vector<Fx> fixed_entries;

    int size() const { return static_cast<int>(entries.size()); }
};

struct GainInfo {
    double an = 1.0;      // prod_{i<n} sqrt(1 + 2^-2i)
    double inv_an = 1.0;  // 1/an, the x0 seed that unscales sin/cos
};

struct SinCos {
    double cos_v = 1.0;
    double sin_v = 0.0;
};

struct FxSinCos {
    Fx cos_v, sin_v;
};

struct Atan2Mag {
    double angle = 0.0;             // full-plane arctangent, (-pi, pi]
    double magnitude_scaled = 0.0;  // x_n = An * hypot(x0, y0), gain included
    double magnitude = 0.0;         // magnitude_scaled / An
};

// Output fixup recorded by quadrant reduction. NegateBoth undoes a pi
// pre-rotation; QuarterTurn(d) undoes a d*pi/2 one by (x,y) -> (-d*y, d*x).
enum class FlipKind { None, NegateBoth, QuarterTurn };

struct FlipRecord {
    FlipKind kind = FlipKind::None;
    int d = 0;  // quarter-turn direction, +1 or -1
};

struct QuadrantReduced {
    double x = 0.0, y = 0.0, z = 0.0;
    FlipRecord flip;
};

AtanLut build_lut(const CordicParams& params);
GainInfo gain(int n);

// Largest |z0| (rotation) or |atan(y0/x0)| (vectoring) the iteration can
// absorb: sum of all table angles plus one trailing term.
double convergence_bound(const AtanLut& lut);

// Wrap any finite angle into [-pi, pi); -pi is included, +pi maps to -pi.
double wrap_angle(double theta);

// Pre-rotation by +-pi/2 (HalfPi) or pi (Pi) extending convergence to the
// full circle; magnitude is preserved exactly. Rotation mode triggers on
// |z| > pi/2 and is driven by the sign of z; vectoring mode triggers on the
// left half-plane / y-axis and is driven by the signs of x and y.
QuadrantReduced quadrant_reduce(double x, double y, double z, Correction policy, CordicMode mode);

// Bit-exact fixed kernels (exposed for tests and the datapath model).
// The LUT must come from build_lut with a Fixed backend.
FxTriple rotate_fixed(const FxTriple& start, const AtanLut& lut, int n);
FxTriple vector_fixed(const FxTriple& start, const AtanLut& lut, int n);

// Precomputed tables and constants for one parameter set. Immutable after
// construction; share one instance freely across threads.
class CordicEngine {
  public:
    explicit CordicEngine(const CordicParams& params);

    const CordicParams& params() const { return params_; }
    const AtanLut& lut() const { return lut_; }
    const GainInfo& gain_info() const { return gain_; }

    CordicState rotate(double x0, double y0, double z0) const;
    CordicState vector(double x0, double y0, double z0) const;
    SinCos sincos(double angle) const;
    FxSinCos sincos_fixed(const Fx& angle) const;
    Atan2Mag atan2_magnitude(double x, double y) const;

  private:
    CordicParams params_;
    AtanLut lut_;
    GainInfo gain_;
    double bound_real_ = 0.0;
    int64_t bound_raw_ = 0;  // Fixed backend only
    Fx x0_rom_, pi_rom_, half_pi_rom_;
};

// One-shot conveniences; each builds a CordicEngine and delegates.
CordicState rotate(double x0, double y0, double z0, const CordicParams& params);
CordicState vector(double x0, double y0, double z0, const CordicParams& params);

// Full-domain sine/cosine: wrap, reduce, rotate (inv_An, 0) by the reduced
// angle, undo the recorded flip.
SinCos sincos(double angle, const CordicParams& params);

// Fixed-backend entry taking the already-quantized angle register value;
// this is the surface the cycle-accurate machine is checked against.
FxSinCos sincos_fixed(const Fx& angle, const CordicParams& params);

// Full-plane arctangent and magnitude via quadrant reduction + vectoring.
Atan2Mag atan2_magnitude(double x, double y, const CordicParams& params);

}  // namespace cordic

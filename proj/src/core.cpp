#include "cordic/core.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace cordic {

namespace {

constexpr double kHalfPi = 1.5707963267948966;
constexpr double kPi = 3.141592653589793;

void validate(const CordicParams& params) {
    if (params.n < 1)
        throw std::invalid_argument("CordicParams: n must be >= 1");
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v))
        throw std::invalid_argument(std::string(what) + ": non-finite input");
}

struct RealState {
    double x, y, z;
};

RealState rotate_real(RealState s, const AtanLut& lut, int n) {
    for (int i = 0; i < n; ++i) {
        const double xs = std::ldexp(s.x, -i);
        const double ys = std::ldexp(s.y, -i);
        if (s.z < 0.0) {
            s = {s.x + ys, s.y - xs, s.z + lut.entries[i]};
        } else {
            s = {s.x - ys, s.y + xs, s.z - lut.entries[i]};
        }
    }
    return s;
}

RealState vector_real(RealState s, const AtanLut& lut, int n) {
    for (int i = 0; i < n; ++i) {
        const double xs = std::ldexp(s.x, -i);
        const double ys = std::ldexp(s.y, -i);
        if (s.y < 0.0) {
            s = {s.x - ys, s.y + xs, s.z - lut.entries[i]};
        } else {
            s = {s.x + ys, s.y - xs, s.z + lut.entries[i]};
        }
    }
    return s;
}

template <typename T, typename NegateFn>
void apply_flip(const FlipRecord& flip, T& x, T& y, NegateFn neg) {
    switch (flip.kind) {
        case FlipKind::None:
            return;
        case FlipKind::NegateBoth:
            x = neg(x);
            y = neg(y);
            return;
        case FlipKind::QuarterTurn: {
            // undo a d*pi/2 pre-rotation: (x, y) -> (-d*y, d*x)
            const T nx = (flip.d > 0) ? neg(y) : y;
            const T ny = (flip.d > 0) ? x : neg(x);
            x = nx;
            y = ny;
            return;
        }
    }
}

double neg_d(double v) { return -v; }
Fx neg_fx(const Fx& v) { return negate(v); }

}  // namespace

AtanLut build_lut(const CordicParams& params) {
    validate(params);
    AtanLut lut;
    lut.entries.reserve(params.n);
    for (int i = 0; i < params.n; ++i) {
        const long double hi = atanl(ldexpl(1.0L, -i));
        if (params.is_fixed()) {
            const QFormat& fmt = *params.fixed;
            // round the high-precision value straight into the ROM word
            const int64_t raw = static_cast<int64_t>(llrintl(ldexpl(hi, fmt.frac)));
            lut.fixed_entries.push_back(Fx{raw, fmt});
            lut.entries.push_back(to_real(lut.fixed_entries.back()));
        } else {
            lut.entries.push_back(static_cast<double>(hi));
        }
    }
    return lut;
}

GainInfo gain(int n) {
    if (n < 1)
        throw std::invalid_argument("gain: n must be >= 1");
    long double prod = 1.0L;
    for (int i = 0; i < n; ++i)
        prod *= sqrtl(1.0L + ldexpl(1.0L, -2 * i));
    return GainInfo{static_cast<double>(prod), static_cast<double>(1.0L / prod)};
}

double convergence_bound(const AtanLut& lut) {
    double sum = 0.0;
    for (double e : lut.entries) sum += e;
    return sum + lut.entries.back();
}

double wrap_angle(double theta) {
    require_finite(theta, "wrap_angle");
    double w = theta - 2.0 * kPi * std::floor((theta + kPi) / (2.0 * kPi));
    if (w >= kPi) w -= 2.0 * kPi;
    if (w < -kPi) w += 2.0 * kPi;
    return w;
}

FxTriple rotate_fixed(const FxTriple& start, const AtanLut& lut, int n) {
    FxTriple s = start;
    for (int i = 0; i < n; ++i) {
        const Fx xs = asr(s.x, i);
        const Fx ys = asr(s.y, i);
        if (s.z.raw < 0) {
            s = {add(s.x, ys), sub(s.y, xs), add(s.z, lut.fixed_entries[i])};
        } else {
            s = {sub(s.x, ys), add(s.y, xs), sub(s.z, lut.fixed_entries[i])};
        }
    }
    return s;
}

FxTriple vector_fixed(const FxTriple& start, const AtanLut& lut, int n) {
    FxTriple s = start;
    for (int i = 0; i < n; ++i) {
        const Fx xs = asr(s.x, i);
        const Fx ys = asr(s.y, i);
        if (s.y.raw < 0) {
            s = {sub(s.x, ys), add(s.y, xs), sub(s.z, lut.fixed_entries[i])};
        } else {
            s = {add(s.x, ys), sub(s.y, xs), add(s.z, lut.fixed_entries[i])};
        }
    }
    return s;
}

QuadrantReduced quadrant_reduce(double x, double y, double z, Correction policy, CordicMode mode) {
    require_finite(x, "quadrant_reduce");
    require_finite(y, "quadrant_reduce");
    require_finite(z, "quadrant_reduce");
    if (mode == CordicMode::Rotation) {
        if (std::abs(z) <= kHalfPi || policy == Correction::None)
            return {x, y, z, {FlipKind::None, 0}};
        if (policy == Correction::Pi) {
            const double zr = (z >= 0.0) ? z - kPi : z + kPi;
            return {-x, -y, zr, {FlipKind::NegateBoth, 0}};
        }
        const int d = (z >= 0.0) ? 1 : -1;
        return {-d * y, d * x, z - d * kHalfPi, {FlipKind::QuarterTurn, d}};
    }
    // vectoring
    if (x == 0.0 && y == 0.0)
        throw std::domain_error("quadrant_reduce: vectoring undefined at the origin");
    if (policy == Correction::Pi) {
        if (x >= 0.0)
            return {x, y, z, {FlipKind::None, 0}};
        const double zr = (y >= 0.0) ? z + kPi : z - kPi;
        return {-x, -y, zr, {FlipKind::NegateBoth, 0}};
    }
    if (policy == Correction::HalfPi) {
        if (x > 0.0)
            return {x, y, z, {FlipKind::None, 0}};
        const int d = (y < 0.0) ? 1 : -1;
        // a d*pi/2 pre-rotation contributes -d*pi/2 to the recovered angle
        return {-d * y, d * x, z - d * kHalfPi, {FlipKind::QuarterTurn, d}};
    }
    return {x, y, z, {FlipKind::None, 0}};
}

CordicEngine::CordicEngine(const CordicParams& params) : params_(params) {
    validate(params_);
    lut_ = build_lut(params_);
    gain_ = gain(params_.n);
    bound_real_ = convergence_bound(lut_);
    if (params_.is_fixed()) {
        const QFormat& fmt = *params_.fixed;
        for (const Fx& e : lut_.fixed_entries) bound_raw_ += e.raw;
        bound_raw_ += lut_.fixed_entries.back().raw;
        x0_rom_ = from_real(gain_.inv_an, fmt);
        pi_rom_ = from_real(kPi, fmt);
        half_pi_rom_ = from_real(kHalfPi, fmt);
    }
}

CordicState CordicEngine::rotate(double x0, double y0, double z0) const {
    require_finite(x0, "rotate");
    require_finite(y0, "rotate");
    require_finite(z0, "rotate");
    if (params_.is_fixed()) {
        const QFormat& fmt = *params_.fixed;
        const FxTriple s0{from_real(x0, fmt), from_real(y0, fmt), from_real(z0, fmt)};
        if (std::abs(s0.z.raw) > bound_raw_)
            throw std::domain_error("rotate: |z0| exceeds the convergence bound");
        const FxTriple s = rotate_fixed(s0, lut_, params_.n);
        return CordicState{to_real(s.x), to_real(s.y), to_real(s.z), params_.n};
    }
    if (std::abs(z0) > bound_real_ + 1e-9)
        throw std::domain_error("rotate: |z0| exceeds the convergence bound");
    const RealState s = rotate_real({x0, y0, z0}, lut_, params_.n);
    return CordicState{s.x, s.y, s.z, params_.n};
}

CordicState CordicEngine::vector(double x0, double y0, double z0) const {
    require_finite(x0, "vector");
    require_finite(y0, "vector");
    require_finite(z0, "vector");
    if (params_.is_fixed()) {
        const QFormat& fmt = *params_.fixed;
        const FxTriple s0{from_real(x0, fmt), from_real(y0, fmt), from_real(z0, fmt)};
        if (s0.x.raw <= 0)
            throw std::domain_error("vector: requires x0 > 0 (reduce the left half-plane first)");
        const FxTriple s = vector_fixed(s0, lut_, params_.n);
        return CordicState{to_real(s.x), to_real(s.y), to_real(s.z), params_.n};
    }
    if (x0 <= 0.0)
        throw std::domain_error("vector: requires x0 > 0 (reduce the left half-plane first)");
    const RealState s = vector_real({x0, y0, z0}, lut_, params_.n);
    return CordicState{s.x, s.y, s.z, params_.n};
}

SinCos CordicEngine::sincos(double angle) const {
    const double wrapped = wrap_angle(angle);
    if (params_.is_fixed()) {
        const FxSinCos r = sincos_fixed(from_real(wrapped, *params_.fixed));
        return SinCos{to_real(r.cos_v), to_real(r.sin_v)};
    }
    const QuadrantReduced q =
        quadrant_reduce(0.0, 0.0, wrapped, params_.correction, CordicMode::Rotation);
    if (std::abs(q.z) > bound_real_ + 1e-9)
        throw std::domain_error("sincos: angle outside convergence domain after reduction");
    RealState s = rotate_real({gain_.inv_an, 0.0, q.z}, lut_, params_.n);
    apply_flip(q.flip, s.x, s.y, neg_d);
    return SinCos{s.x, s.y};
}

FxSinCos CordicEngine::sincos_fixed(const Fx& angle) const {
    if (!params_.is_fixed())
        throw std::invalid_argument("sincos_fixed: params must use the Fixed backend");
    const QFormat& fmt = *params_.fixed;
    if (!(angle.fmt == fmt))
        throw std::invalid_argument("sincos_fixed: angle format does not match params");

    // quadrant correction on the quantized angle register; one application
    // brings any representable Q2.f value into range
    Fx z = angle;
    FlipRecord flip{FlipKind::None, 0};
    if (params_.correction != Correction::None && std::abs(z.raw) > half_pi_rom_.raw) {
        if (params_.correction == Correction::Pi) {
            z = (z.raw >= 0) ? sub(z, pi_rom_) : add(z, pi_rom_);
            flip = {FlipKind::NegateBoth, 0};
        } else {
            const int d = (z.raw >= 0) ? 1 : -1;
            z = (d > 0) ? sub(z, half_pi_rom_) : add(z, half_pi_rom_);
            flip = {FlipKind::QuarterTurn, d};
        }
    }
    if (std::abs(z.raw) > bound_raw_)
        throw std::domain_error("sincos_fixed: angle outside convergence domain after reduction");

    FxTriple s = rotate_fixed({x0_rom_, Fx{0, fmt}, z}, lut_, params_.n);
    apply_flip(flip, s.x, s.y, neg_fx);
    return FxSinCos{s.x, s.y};
}

Atan2Mag CordicEngine::atan2_magnitude(double x, double y) const {
    require_finite(x, "atan2_magnitude");
    require_finite(y, "atan2_magnitude");
    if (x == 0.0 && y == 0.0)
        throw std::domain_error("atan2_magnitude: undefined at the origin");

    // Reduce into the open right half-plane. The pi policy leaves the y axis
    // untouched and the half-pi policy maps the -x axis onto +y, so one
    // extra quarter turn covers the leftovers of either policy.
    double xr = x, yr = y, z0 = 0.0;
    if (params_.correction != Correction::None) {
        QuadrantReduced q = quadrant_reduce(xr, yr, z0, params_.correction, CordicMode::Vectoring);
        xr = q.x, yr = q.y, z0 = q.z;
        if (xr <= 0.0) {
            q = quadrant_reduce(xr, yr, z0, Correction::HalfPi, CordicMode::Vectoring);
            xr = q.x, yr = q.y, z0 = q.z;
        }
    }
    const CordicState s = vector(xr, yr, z0);
    return Atan2Mag{s.z, s.x, s.x * gain_.inv_an};
}

CordicState rotate(double x0, double y0, double z0, const CordicParams& params) {
    return CordicEngine(params).rotate(x0, y0, z0);
}

CordicState vector(double x0, double y0, double z0, const CordicParams& params) {
    return CordicEngine(params).vector(x0, y0, z0);
}

SinCos sincos(double angle, const CordicParams& params) {
    return CordicEngine(params).sincos(angle);
}

FxSinCos sincos_fixed(const Fx& angle, const CordicParams& params) {
    return CordicEngine(params).sincos_fixed(angle);
}

Atan2Mag atan2_magnitude(double x, double y, const CordicParams& params) {
    return CordicEngine(params).atan2_magnitude(x, y);
}

}  // namespace cordic

#pragma once

// Two's-complement Q-format fixed-point values with hardware-faithful
// arithmetic: exact add/sub that trap on signed overflow, and an arithmetic
// right shift that truncates toward -inf like a barrel shifter.
//
// Layout is Qm.f: one sign bit, m integer bits, f fraction bits,
// width = 1 + m + f. All binary operations require identical formats.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cordic {

struct QFormat {
    int width = 16;  // total bits, sign included
    int frac = 13;   // fraction bits

    QFormat() = default;
    QFormat(int width_, int frac_) : width(width_), frac(frac_) {
        // need sign + >= 2 integer bits: |x|,|y| reach An*sqrt(2) ~ 2.33
        // and |z| reaches pi, so the integer part must hold values < 4
        if (width < 4 || width > 60)
            throw std::invalid_argument("QFormat: width must be in [4, 60]");
        if (frac < 0 || frac > width - 3)
            throw std::invalid_argument("QFormat: frac must be in [0, width-3]");
    }

    int64_t min_raw() const { return -(int64_t{1} << (width - 1)); }
    int64_t max_raw() const { return (int64_t{1} << (width - 1)) - 1; }
    double resolution() const { return std::ldexp(1.0, -frac); }

    bool operator==(const QFormat&) const = default;

    // "Q2.13"-style name (integer bits exclude the sign bit)
    std::string name() const {
        return "Q" + std::to_string(width - frac - 1) + "." + std::to_string(frac);
    }
};

struct Fx {
    int64_t raw = 0;
    QFormat fmt;
};

namespace detail {
inline void require_same_fmt(const Fx& a, const Fx& b) {
    if (!(a.fmt == b.fmt))
        throw std::invalid_argument("Fx: mixed Q-formats in arithmetic");
}
inline Fx checked(int64_t raw, const QFormat& fmt, const char* what) {
    if (raw < fmt.min_raw() || raw > fmt.max_raw())
        throw std::overflow_error(std::string(what) + ": result outside " + fmt.name() + " range");
    return Fx{raw, fmt};
}
}  // namespace detail

// Round-to-nearest-even conversion. Conversion is the only place values are
// rounded symmetrically; it models writing a ROM constant or an input port.
inline Fx from_real(double v, const QFormat& fmt) {
    const double scaled = std::ldexp(v, fmt.frac);
    if (!std::isfinite(scaled))
        throw std::overflow_error("from_real: non-finite input");
    const double r = std::nearbyint(scaled);  // FE_TONEAREST: ties to even
    if (r < static_cast<double>(fmt.min_raw()) || r > static_cast<double>(fmt.max_raw()))
        throw std::overflow_error("from_real: value not representable in " + fmt.name());
    return Fx{static_cast<int64_t>(r), fmt};
}

inline double to_real(const Fx& a) { return std::ldexp(static_cast<double>(a.raw), -a.fmt.frac); }

// Exact two's-complement add/sub. Overflow throws: the CORDIC range analysis
// guarantees it cannot happen, so a throw means a caller bug, not saturation.
inline Fx add(const Fx& a, const Fx& b) {
    detail::require_same_fmt(a, b);
    return detail::checked(a.raw + b.raw, a.fmt, "add");
}

inline Fx sub(const Fx& a, const Fx& b) {
    detail::require_same_fmt(a, b);
    return detail::checked(a.raw - b.raw, a.fmt, "sub");
}

inline Fx negate(const Fx& a) { return detail::checked(-a.raw, a.fmt, "negate"); }

// Arithmetic right shift, sign-extending, truncating toward -inf.
// Shifts of width or more replicate the sign bit, as a hardware shifter does.
inline Fx asr(const Fx& a, int k) {
    if (k < 0)
        throw std::invalid_argument("asr: negative shift");
    if (k > 62) k = 62;
    return Fx{a.raw >> k, a.fmt};
}

// Raw value as a zero-padded lowercase hex literal, masked to `width` bits.
inline std::string to_hex(const Fx& a) {
    static const char digits[] = "0123456789abcdef";
    const int nybbles = (a.fmt.width + 3) / 4;
    const uint64_t mask = (a.fmt.width == 64) ? ~uint64_t{0} : ((uint64_t{1} << a.fmt.width) - 1);
    const uint64_t bits = static_cast<uint64_t>(a.raw) & mask;
    std::string out = "0x";
    for (int i = nybbles - 1; i >= 0; --i)
        out += digits[(bits >> (4 * i)) & 0xF];
    return out;
}

}  // namespace cordic

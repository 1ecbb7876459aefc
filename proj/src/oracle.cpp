#include "cordic/oracle.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace cordic::oracle {

SinCos ref_sincos(double angle) {
    return SinCos{std::cos(angle), std::sin(angle)};
}

std::vector<ErrorRow> table5(const std::optional<QFormat>& arithmetic) {
    constexpr std::array<double, 4> angles = {0.0, 3.141592653589793 / 6.0, 1.0,
                                              3.141592653589793};
    constexpr std::array<int, 4> depths = {5, 10, 15, 20};

    struct Cell {
        SinCos ref, tb;
    };
    std::array<Cell, angles.size() * depths.size()> cells;

#pragma omp parallel for collapse(2) schedule(static)
    for (size_t a = 0; a < angles.size(); ++a) {
        for (size_t d = 0; d < depths.size(); ++d) {
            Cell& c = cells[a * depths.size() + d];
            c.ref = ref_sincos(angles[a]);
            c.tb = sincos(angles[a], CordicParams{depths[d], arithmetic, Correction::Pi});
        }
    }

    std::vector<ErrorRow> rows;
    rows.reserve(32);
    for (const char* kind : {"sin", "cos"}) {
        for (size_t a = 0; a < angles.size(); ++a) {
            for (size_t d = 0; d < depths.size(); ++d) {
                const Cell& c = cells[a * depths.size() + d];
                const bool is_sin = kind[0] == 's';
                const double actual = is_sin ? c.ref.sin_v : c.ref.cos_v;
                const double tb = is_sin ? c.tb.sin_v : c.tb.cos_v;
                rows.push_back(ErrorRow{angles[a], depths[d], kind, actual, tb, actual - tb});
            }
        }
    }
    return rows;
}

std::string csv_row(const ErrorRow& row) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.6f,%d,%s,%.8f,%.8f,%.4e", row.angle, row.rotations,
                  row.kind.c_str(), row.actual, row.testbench, row.error);
    return buf;
}

void write_csv(std::ostream& os, const std::vector<ErrorRow>& rows) {
    os << "angle,rotations,kind,actual,testbench,error\n";
    for (const ErrorRow& r : rows) os << csv_row(r) << "\n";
}

CordicState brute_iterate(double x0, double y0, double z0, int n, CordicMode mode) {
    if (n < 0)
        throw std::invalid_argument("brute_iterate: n must be >= 0");
    long double x = x0, y = y0, z = z0;
    for (int i = 0; i < n; ++i) {
        const long double t = ldexpl(1.0L, -i);
        const long double a = atanl(t);
        long double d;
        if (mode == CordicMode::Rotation) {
            d = (z < 0.0L) ? -1.0L : 1.0L;
        } else {
            d = (y < 0.0L) ? 1.0L : -1.0L;
        }
        const long double xn = x - y * d * t;
        const long double yn = y + x * d * t;
        const long double zn = z - d * a;
        x = xn;
        y = yn;
        z = zn;
    }
    return CordicState{static_cast<double>(x), static_cast<double>(y), static_cast<double>(z), n};
}

}  // namespace cordic::oracle

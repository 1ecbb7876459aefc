#pragma once

// High-precision references and the error-analysis harness behind the
// sine/cosine comparison table (4 angles x 4 iteration depths, sin block
// then cos block, 32 rows).

#include <iosfwd>
#include <string>
#include <vector>

#include "cordic/core.hpp"

namespace cordic::oracle {

struct ErrorRow {
    double angle = 0.0;      // radians (exact value; printed with 6 decimals)
    int rotations = 0;       // iteration count n
    std::string kind;        // "sin" or "cos"
    double actual = 0.0;     // reference trigonometry
    double testbench = 0.0;  // CORDIC result
    double error = 0.0;      // actual - testbench
};

// Platform reference trigonometry at double precision.
SinCos ref_sincos(double angle);

// The 32-row comparison table: angles {0, pi/6, 1, pi}, n in {5,10,15,20},
// CORDIC against the double-precision reference. Rows are independent and
// computed in parallel, then emitted in print order. The canonical table is
// the Real-backend run (the default); passing a Q-format yields the
// fixed-point error table instead.
std::vector<ErrorRow> table5(const std::optional<QFormat>& arithmetic = std::nullopt);

// CSV: header angle,rotations,kind,actual,testbench,error; 8-decimal values,
// error in scientific notation with a 4-digit mantissa.
void write_csv(std::ostream& os, const std::vector<ErrorRow>& rows);
std::string csv_row(const ErrorRow& row);

// Deliberately naive re-implementation of the rotation/vectoring recurrences
// at extended precision. Test-only independent check against the main
// kernels; n = 0 returns the input unchanged.
CordicState brute_iterate(double x0, double y0, double z0, int n, CordicMode mode);

}  // namespace cordic::oracle

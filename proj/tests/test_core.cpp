#include <doctest.h>

#include <cmath>
#include <random>

#include "cordic/core.hpp"

using namespace cordic;

namespace {

constexpr double kPi = 3.141592653589793;
const QFormat kQ213(16, 13);

double hypot2(double x, double y) { return std::sqrt(x * x + y * y); }

}  // namespace

TEST_CASE("atan table: frozen entries and shape invariants") {
    const AtanLut lut = build_lut(CordicParams::real(24));
    CHECK(lut.entries[0] == doctest::Approx(kPi / 4.0).epsilon(1e-15));
    CHECK(lut.entries[1] == doctest::Approx(0.46364760900080609).epsilon(1e-14));
    CHECK(lut.entries[10] == doctest::Approx(0.00097656218955931946).epsilon(1e-14));
    for (int i = 0; i < lut.size(); ++i) {
        if (i > 0) CHECK(lut.entries[i] < lut.entries[i - 1]);
        if (i > 0) CHECK(lut.entries[i] < std::ldexp(1.0, -i));
    }
}

TEST_CASE("atan table: fixed entries are rounded ROM words") {
    const AtanLut lut = build_lut(CordicParams::fixed_point(kQ213, 14));
    CHECK(lut.fixed_entries[0].raw == 6434);  // round(pi/4 * 2^13)
    CHECK(lut.fixed_entries.size() == 14);
    for (int i = 0; i < lut.size(); ++i)
        CHECK(lut.entries[i] == to_real(lut.fixed_entries[i]));
}

TEST_CASE("gain: frozen values and monotonicity") {
    CHECK(gain(1).an == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(gain(5).an == doctest::Approx(1.645688915757255).epsilon(1e-14));
    CHECK(gain(20).an == doctest::Approx(1.6467602581200671).epsilon(1e-14));
    CHECK(gain(30).inv_an == doctest::Approx(0.60725293500888133).epsilon(1e-14));
    CHECK_THROWS_AS(gain(0), std::invalid_argument);
    double prev = 0.0;
    for (int n = 1; n <= 32; ++n) {
        const GainInfo g = gain(n);
        CHECK(g.an >= prev);
        CHECK(g.an * g.inv_an == doctest::Approx(1.0).epsilon(1e-15));
        prev = g.an;
    }
}

TEST_CASE("rotate: one unrolled step with the +1 tie rule at z = 0") {
    const CordicState s = rotate(1.0, 0.0, 0.0, CordicParams::real(1));
    CHECK(s.x == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.y == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.z == doctest::Approx(-kPi / 4.0).epsilon(1e-15));
    CHECK(s.i == 1);
}

TEST_CASE("rotate: golden operating points") {
    const CordicState a = rotate(gain(20).inv_an, 0.0, 0.523599, CordicParams::real(20));
    CHECK(a.x == doctest::Approx(0.86602479402697941).epsilon(1e-9));
    CHECK(a.y == doctest::Approx(0.50000105612941237).epsilon(1e-9));
    const CordicState b = rotate(gain(10).inv_an, 0.0, 1.0, CordicParams::real(10));
    CHECK(b.x == doctest::Approx(0.54134536851379877).epsilon(1e-9));
    CHECK(b.y == doctest::Approx(0.84080032825199336).epsilon(1e-9));
}

TEST_CASE("rotate: convergence domain is enforced") {
    CHECK_THROWS_AS(rotate(1.0, 0.0, 1.8, CordicParams::real(20)), std::domain_error);
    CHECK_NOTHROW(rotate(1.0, 0.0, 1.74, CordicParams::real(5)));
    CHECK_NOTHROW(rotate(1.0, 0.0, -1.74, CordicParams::real(28)));
}

TEST_CASE("vector: closed-form checks") {
    const double residual = std::atan(std::ldexp(1.0, -19));
    const CordicState a = vector(1.0, 1.0, 0.0, CordicParams::real(20));
    CHECK(std::abs(a.z - kPi / 4.0) <= residual + 1e-12);
    CHECK(a.x == doctest::Approx(gain(20).an * std::sqrt(2.0)).epsilon(1e-5));

    const CordicState b = vector(1.0, 0.0, 0.0, CordicParams::real(20));
    CHECK(std::abs(b.z) <= residual + 1e-12);
    CHECK(b.x == doctest::Approx(gain(20).an).epsilon(1e-9));

    const CordicState c = vector(3.0, 4.0, 0.0, CordicParams::real(20));
    CHECK(std::abs(c.z - 0.92729521800161219) <= 5.0 * residual + 1e-12);
    CHECK(c.x == doctest::Approx(5.0 * gain(20).an).epsilon(1e-5));
    CHECK(std::abs(c.y) <= c.x * std::ldexp(1.0, -19) + 1e-9);

    CHECK_THROWS_AS(vector(0.0, 1.0, 0.0, CordicParams::real(20)), std::domain_error);
    CHECK_THROWS_AS(vector(-1.0, 1.0, 0.0, CordicParams::real(20)), std::domain_error);
}

TEST_CASE("quadrant_reduce: rotation-mode pi policy") {
    const QuadrantReduced q =
        quadrant_reduce(gain(20).inv_an, 0.0, -kPi, Correction::Pi, CordicMode::Rotation);
    CHECK(q.x == doctest::Approx(-gain(20).inv_an));
    CHECK(q.y == 0.0);
    CHECK(q.z == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(q.flip.kind == FlipKind::NegateBoth);

    const QuadrantReduced id =
        quadrant_reduce(1.0, 2.0, 0.1, Correction::Pi, CordicMode::Rotation);
    CHECK(id.x == 1.0);
    CHECK(id.y == 2.0);
    CHECK(id.z == 0.1);
    CHECK(id.flip.kind == FlipKind::None);
}

TEST_CASE("quadrant_reduce: vectoring half-pi moves (0,1) onto the +x axis") {
    const QuadrantReduced q =
        quadrant_reduce(0.0, 1.0, 0.0, Correction::HalfPi, CordicMode::Vectoring);
    CHECK(q.x == 1.0);
    CHECK(q.y == 0.0);
    CHECK(q.z == doctest::Approx(kPi / 2.0));
    CHECK(q.flip.kind == FlipKind::QuarterTurn);
    CHECK(q.flip.d == -1);

    // vectoring from the reduced start recovers the original angle
    const CordicState s = vector(q.x, q.y, q.z, CordicParams::real(24));
    CHECK(std::abs(s.z - kPi / 2.0) <= std::atan(std::ldexp(1.0, -23)) + 1e-12);

    CHECK_THROWS_AS(quadrant_reduce(0.0, 0.0, 0.0, Correction::HalfPi, CordicMode::Vectoring),
                    std::domain_error);
}

TEST_CASE("quadrant_reduce: vectoring preserves magnitude exactly") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int t = 0; t < 500; ++t) {
        const double x = dist(rng), y = dist(rng);
        if (x == 0.0 && y == 0.0) continue;
        for (const Correction policy : {Correction::HalfPi, Correction::Pi}) {
            const QuadrantReduced q = quadrant_reduce(x, y, 0.0, policy, CordicMode::Vectoring);
            CHECK(hypot2(q.x, q.y) == hypot2(x, y));
        }
    }
}

TEST_CASE("sincos: golden table spot values") {
    const SinCos a = sincos(0.523599, CordicParams::real(15));
    CHECK(a.cos_v == doctest::Approx(0.86600286).epsilon(1e-8));
    CHECK(a.sin_v == doctest::Approx(0.50003905).epsilon(1e-8));

    const SinCos b = sincos(0.0, CordicParams::real(20));
    CHECK(b.cos_v == doctest::Approx(0.99999999999990807).epsilon(1e-12));
    CHECK(b.sin_v == doctest::Approx(-4.2874446909108704e-07).epsilon(1e-6));

    const SinCos c = sincos(1.0, CordicParams::real(20));
    CHECK(c.cos_v == doctest::Approx(0.54030094347376445).epsilon(1e-9));
    CHECK(c.sin_v == doctest::Approx(0.84147185958970749).epsilon(1e-9));

    const SinCos d = sincos(kPi, CordicParams::real(5));
    CHECK(d.cos_v == doctest::Approx(-0.99988995292152683).epsilon(1e-9));
    CHECK(d.sin_v == doctest::Approx(-0.014835162506254086).epsilon(1e-9));
}

TEST_CASE("sincos: residual bound property") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> zdist(-1.74, 1.74);
    std::uniform_int_distribution<int> ndist(5, 28);
    for (int t = 0; t < 1000; ++t) {
        const int n = ndist(rng);
        const double z0 = zdist(rng);
        const CordicState s = rotate(1.0, 0.0, z0, CordicParams::real(n));
        CHECK(std::abs(s.z) <= std::atan(std::ldexp(1.0, -(n - 1))) + 1e-12);
    }
}

TEST_CASE("micro-rotation growth: x^2+y^2 scales by 1+2^-2i each step") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> zdist(-1.7, 1.7);
    const AtanLut lut = build_lut(CordicParams::real(24));
    for (int t = 0; t < 200; ++t) {
        double x = 1.0, y = 0.0, z = zdist(rng);
        for (int i = 0; i < 24; ++i) {
            const double before = x * x + y * y;
            const double xs = std::ldexp(x, -i), ys = std::ldexp(y, -i);
            if (z < 0.0) {
                const double xn = x + ys, yn = y - xs;
                z += lut.entries[i];
                x = xn, y = yn;
            } else {
                const double xn = x - ys, yn = y + xs;
                z -= lut.entries[i];
                x = xn, y = yn;
            }
            const double growth = (x * x + y * y) / before;
            CHECK(growth == doctest::Approx(1.0 + std::ldexp(1.0, -2 * i)).epsilon(1e-12));
        }
    }
}

TEST_CASE("gain consistency: rotate(1,0,0) magnitude equals An") {
    for (const int n : {1, 2, 5, 10, 20, 28}) {
        const CordicState s = rotate(1.0, 0.0, 0.0, CordicParams::real(n));
        CHECK(hypot2(s.x, s.y) == doctest::Approx(gain(n).an).epsilon(1e-10));
    }
}

TEST_CASE("unit circle: sin^2 + cos^2 stays near 1") {
    for (const int n : {5, 12, 24}) {
        const CordicParams params = CordicParams::real(n);
        const double budget = 3.0 * std::ldexp(1.0, -(n - 1)) + 1e-9;
        for (int k = 0; k < 1000; ++k) {
            const double theta = -kPi + 2.0 * kPi * k / 1000.0;
            const SinCos r = sincos(theta, params);
            CHECK(std::abs(r.sin_v * r.sin_v + r.cos_v * r.cos_v - 1.0) <= budget);
        }
    }
}

TEST_CASE("round trip: atan2_magnitude recovers the sincos angle") {
    const int n = 20;
    const double budget = std::atan(std::ldexp(1.0, -(n - 1))) + std::ldexp(1.0, -(n - 1));
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> tdist(-1.57, 1.57);
    for (int t = 0; t < 500; ++t) {
        const double theta = tdist(rng);
        const Atan2Mag r =
            atan2_magnitude(std::cos(theta), std::sin(theta), CordicParams::real(n));
        CHECK(std::abs(r.angle - theta) <= budget);
        CHECK(r.magnitude == doctest::Approx(1.0).epsilon(1e-4));
    }
}

TEST_CASE("oracle equivalence: sincos tracks reference trigonometry") {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> tdist(-kPi, kPi);
    for (const int n : {5, 10, 20, 30}) {
        const double budget = std::ldexp(1.0, -(n - 1)) + 1e-9;
        const CordicParams params = CordicParams::real(n);
        for (int t = 0; t < 500; ++t) {
            const double theta = tdist(rng);
            const SinCos r = sincos(theta, params);
            CHECK(std::abs(r.sin_v - std::sin(theta)) <= budget);
            CHECK(std::abs(r.cos_v - std::cos(theta)) <= budget);
        }
    }
}

TEST_CASE("atan2_magnitude: full-plane behavior") {
    const CordicParams params = CordicParams::real(20);
    const double residual = std::atan(std::ldexp(1.0, -19)) + 1e-12;

    const Atan2Mag px = atan2_magnitude(1.0, 0.0, params);
    CHECK(std::abs(px.angle) <= residual);
    CHECK(px.magnitude == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(px.magnitude_scaled == doctest::Approx(gain(20).an).epsilon(1e-5));

    // the -x axis resolves to +pi, matching the common atan2 convention
    const Atan2Mag nx = atan2_magnitude(-1.0, 0.0, params);
    CHECK(nx.angle == doctest::Approx(kPi).epsilon(2e-6));

    const Atan2Mag p34 = atan2_magnitude(3.0, 4.0, params);
    CHECK(p34.angle == doctest::Approx(0.92729521800161219).epsilon(2e-6));
    CHECK(p34.magnitude == doctest::Approx(5.0).epsilon(1e-5));

    const Atan2Mag up = atan2_magnitude(0.0, 1.0, params);
    CHECK(up.angle == doctest::Approx(kPi / 2.0).epsilon(2e-6));
    const Atan2Mag dn = atan2_magnitude(0.0, -1.0, params);
    CHECK(dn.angle == doctest::Approx(-kPi / 2.0).epsilon(2e-6));

    CHECK_THROWS_AS(atan2_magnitude(0.0, 0.0, params), std::domain_error);
}

TEST_CASE("atan2_magnitude agrees with std::atan2 across quadrants") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    const CordicParams params = CordicParams::real(24);
    const double budget = std::atan(std::ldexp(1.0, -23)) + 1e-9;
    for (int t = 0; t < 1000; ++t) {
        const double x = dist(rng), y = dist(rng);
        if (std::abs(x) < 1e-6 && std::abs(y) < 1e-6) continue;
        const Atan2Mag r = atan2_magnitude(x, y, params);
        const double ref = std::atan2(y, x);
        // both conventions put the branch cut on the -x axis
        CHECK(std::abs(r.angle - ref) <= budget);
        CHECK(r.magnitude == doctest::Approx(std::hypot(x, y)).epsilon(1e-4));
    }
}

TEST_CASE("fixed backend: spot raw values and constants") {
    const CordicParams params = CordicParams::fixed_point(kQ213, 14);
    const FxSinCos a = sincos_fixed(from_real(wrap_angle(0.523599), kQ213), params);
    CHECK(a.cos_v.raw == 7098);
    CHECK(a.sin_v.raw == 4095);
    const FxSinCos b = sincos_fixed(from_real(0.0, kQ213), params);
    CHECK(b.cos_v.raw == 8194);
    CHECK(b.sin_v.raw == 2);

    // sincos(double) with fixed params goes through the same path
    const SinCos c = sincos(0.523599, params);
    CHECK(c.cos_v == to_real(a.cos_v));
    CHECK(c.sin_v == to_real(a.sin_v));
}

TEST_CASE("fixed backend: public rotate/vector quantize once and run bit-exactly") {
    const CordicParams params = CordicParams::fixed_point(kQ213, 14);
    const AtanLut lut = build_lut(params);
    const FxTriple want = rotate_fixed(
        {from_real(0.6073, kQ213), from_real(0.0, kQ213), from_real(0.5, kQ213)}, lut, 14);
    const CordicState got = rotate(0.6073, 0.0, 0.5, params);
    CHECK(got.x == to_real(want.x));
    CHECK(got.y == to_real(want.y));
    CHECK(got.z == to_real(want.z));

    const FxTriple vwant = vector_fixed(
        {from_real(1.0, kQ213), from_real(1.0, kQ213), from_real(0.0, kQ213)}, lut, 14);
    const CordicState vgot = vector(1.0, 1.0, 0.0, params);
    CHECK(vgot.x == to_real(vwant.x));
    CHECK(vgot.z == to_real(vwant.z));
    CHECK_THROWS_AS(vector(-1.0, 1.0, 0.0, params), std::domain_error);
}

TEST_CASE("fixed backend: residual bound with quantization slack") {
    std::mt19937_64 rng(91);
    std::uniform_real_distribution<double> zdist(-1.5, 1.5);
    const int n = 14;
    const CordicParams params = CordicParams::fixed_point(kQ213, n);
    const double budget = std::atan(std::ldexp(1.0, -(n - 1))) + n * std::ldexp(1.0, -13);
    for (int t = 0; t < 500; ++t) {
        const CordicState s = rotate(1.0, 0.0, zdist(rng), params);
        CHECK(std::abs(s.z) <= budget);
    }
}

TEST_CASE("fixed backend: atan2_magnitude stays near the reference") {
    const CordicParams params = CordicParams::fixed_point(kQ213, 14);
    const double slack = 16.0 * std::ldexp(1.0, -13);
    const Atan2Mag r = atan2_magnitude(0.6, 0.45, params);
    CHECK(std::abs(r.angle - std::atan2(0.45, 0.6)) <= slack);
    CHECK(std::abs(r.magnitude - 0.75) <= slack);
    const Atan2Mag left = atan2_magnitude(-0.5, 0.0, params);
    CHECK(std::abs(left.angle - kPi) <= slack);
    CHECK_THROWS_AS(atan2_magnitude(0.0, 0.0, params), std::domain_error);
}

TEST_CASE("fixed/real agreement within (n+2) lsb") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> tdist(-kPi, kPi);
    for (const auto& [w, f] : {std::pair{8, 5}, {16, 13}, {32, 29}}) {
        const QFormat fmt(w, f);
        const int n = f + 1;
        const CordicParams fixed = CordicParams::fixed_point(fmt, n);
        const CordicParams real = CordicParams::real(n);
        const double budget = (n + 2) * std::ldexp(1.0, -f);
        for (int t = 0; t < 300; ++t) {
            const double theta = tdist(rng);
            const SinCos rf = sincos(theta, fixed);
            const SinCos rr = sincos(theta, real);
            CHECK(std::abs(rf.cos_v - rr.cos_v) <= budget);
            CHECK(std::abs(rf.sin_v - rr.sin_v) <= budget);
        }
    }
}

TEST_CASE("wrapping: theta and theta + 2pi agree") {
    std::mt19937_64 rng(81);
    std::uniform_real_distribution<double> tdist(-kPi, kPi);
    const CordicParams fixed = CordicParams::fixed_point(kQ213, 14);
    const CordicParams real = CordicParams::real(20);
    for (int t = 0; t < 500; ++t) {
        const double theta = tdist(rng);
        const SinCos f1 = sincos(theta, fixed);
        const SinCos f2 = sincos(theta + 2.0 * kPi, fixed);
        CHECK(f1.cos_v == f2.cos_v);  // bit-exact after quantization
        CHECK(f1.sin_v == f2.sin_v);
        const SinCos r1 = sincos(theta, real);
        const SinCos r2 = sincos(theta + 2.0 * kPi, real);
        CHECK(r1.cos_v == doctest::Approx(r2.cos_v).epsilon(1e-12));
        CHECK(r1.sin_v == doctest::Approx(r2.sin_v).epsilon(1e-12));
    }
}

TEST_CASE("sincos covers the full circle for every policy") {
    for (const Correction policy : {Correction::Pi, Correction::HalfPi}) {
        CordicParams params = CordicParams::real(24);
        params.correction = policy;
        for (int k = 0; k < 256; ++k) {
            const double theta = -2.0 * kPi + 4.0 * kPi * k / 256.0;
            const SinCos r = sincos(theta, params);
            CHECK(std::abs(r.sin_v - std::sin(theta)) <= 1e-6);
            CHECK(std::abs(r.cos_v - std::cos(theta)) <= 1e-6);
        }
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(rotate(1.0, 0.0, 0.0, CordicParams::real(0)), std::invalid_argument);
    CHECK_THROWS_AS(sincos(std::nan(""), CordicParams::real(20)), std::invalid_argument);
    CHECK_THROWS_AS(sincos_fixed(Fx{0, QFormat(8, 5)}, CordicParams::fixed_point(kQ213, 14)),
                    std::invalid_argument);
    CHECK_THROWS_AS(sincos_fixed(Fx{0, kQ213}, CordicParams::real(14)), std::invalid_argument);
}

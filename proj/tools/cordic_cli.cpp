// Command-line front door: compute sine/cosine and vector results, dump the
// atan table, run the cycle-accurate machines with traces, and regenerate
// the error-analysis table.
//
// Exit codes: 0 success, 2 domain error, 3 overflow, 4 simulation timeout.
// Results go to stdout, diagnostics to stderr.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cordic/batch.hpp"
#include "cordic/core.hpp"
#include "cordic/microsim.hpp"
#include "cordic/oracle.hpp"

namespace {

using nlohmann::json;

constexpr double kDegToRad = 3.141592653589793 / 180.0;

struct FixedFlags {
    bool fixed = false;
    int width = 16;
    int frac = 13;
};

void add_fixed_flags(CLI::App* cmd, FixedFlags& f) {
    cmd->add_flag("--fixed", f.fixed, "use the fixed-point backend (default Q2.13)");
    cmd->add_option("--width", f.width, "total bits of the Q-format")->check(CLI::Range(4, 60));
    cmd->add_option("--frac", f.frac, "fraction bits of the Q-format")->check(CLI::Range(0, 57));
}

cordic::CordicParams make_params(const FixedFlags& f, std::optional<int> iters) {
    if (f.fixed) {
        const cordic::QFormat fmt(f.width, f.frac);
        return iters ? cordic::CordicParams::fixed_point(fmt, *iters)
                     : cordic::CordicParams::fixed_point(fmt);
    }
    return cordic::CordicParams::real(iters.value_or(20));
}

std::string fmt8(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.8f", v);
    return buf;
}

int run_sincos(double angle, bool deg, std::optional<int> iters, const FixedFlags& ff,
               bool as_json) {
    const double rad = deg ? angle * kDegToRad : angle;
    const cordic::CordicParams params = make_params(ff, iters);
    if (params.is_fixed()) {
        const cordic::Fx z = cordic::from_real(cordic::wrap_angle(rad), *params.fixed);
        const cordic::FxSinCos r = cordic::sincos_fixed(z, params);
        if (as_json) {
            json j{{"cos", cordic::to_real(r.cos_v)},
                   {"sin", cordic::to_real(r.sin_v)},
                   {"raw_cos", cordic::to_hex(r.cos_v)},
                   {"raw_sin", cordic::to_hex(r.sin_v)},
                   {"width", params.fixed->width},
                   {"frac", params.fixed->frac},
                   {"iters", params.n}};
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "cos " << fmt8(cordic::to_real(r.cos_v)) << "  sin "
                      << fmt8(cordic::to_real(r.sin_v)) << "  raw_cos " << cordic::to_hex(r.cos_v)
                      << "  raw_sin " << cordic::to_hex(r.sin_v) << "  ("
                      << params.fixed->name() << ", n=" << params.n << ")\n";
        }
        return 0;
    }
    const cordic::SinCos r = cordic::sincos(rad, params);
    if (as_json) {
        std::cout << json{{"cos", r.cos_v}, {"sin", r.sin_v}, {"iters", params.n}}.dump() << "\n";
    } else {
        std::cout << "cos " << fmt8(r.cos_v) << "  sin " << fmt8(r.sin_v) << "\n";
    }
    return 0;
}

int run_vector(double x, double y, std::optional<int> iters, bool as_json) {
    const cordic::CordicParams params = cordic::CordicParams::real(iters.value_or(20));
    const cordic::Atan2Mag r = cordic::atan2_magnitude(x, y, params);
    if (as_json) {
        json j{{"angle", r.angle},
               {"magnitude", r.magnitude},
               {"magnitude_scaled", r.magnitude_scaled},
               {"iters", params.n}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "angle " << fmt8(r.angle) << "  magnitude " << fmt8(r.magnitude) << "\n";
    }
    return 0;
}

int run_lut(std::optional<int> iters, const FixedFlags& ff, bool as_json) {
    const cordic::CordicParams params = make_params(ff, iters);
    const cordic::AtanLut lut = cordic::build_lut(params);
    if (as_json) {
        json rows = json::array();
        for (int i = 0; i < lut.size(); ++i) {
            json row{{"i", i}, {"atan", lut.entries[i]}};
            if (params.is_fixed()) row["raw"] = cordic::to_hex(lut.fixed_entries[i]);
            rows.push_back(row);
        }
        std::cout << rows.dump() << "\n";
        return 0;
    }
    for (int i = 0; i < lut.size(); ++i) {
        std::cout << "i=" << i << "  atan=" << fmt8(lut.entries[i]);
        if (params.is_fixed()) std::cout << "  raw=" << cordic::to_hex(lut.fixed_entries[i]);
        std::cout << "\n";
    }
    return 0;
}

int run_sim(const std::string& machine, double angle, std::optional<int> iters, int width,
            int frac, int64_t a, int64_t b, int max_cycles, const std::string& trace_path,
            bool as_json) {
    std::ofstream trace_file;
    cordic::sim::TraceSink sink;
    if (!trace_path.empty()) {
        trace_file.open(trace_path);
        if (!trace_file) {
            std::cerr << "cannot open trace file: " << trace_path << "\n";
            return 1;
        }
        sink = [&trace_file](const cordic::sim::TraceRecord& rec) {
            trace_file << rec.line() << "\n";
        };
    }

    if (machine == "table1") {
        const cordic::QFormat fmt(width, 0);
        const cordic::sim::Table1Result res = cordic::sim::run_table1_machine(
            cordic::Fx{a, fmt}, cordic::Fx{b, fmt}, max_cycles);
        if (sink)
            for (const auto& rec : res.trace) sink(rec);
        if (as_json) {
            json j{{"output", res.output.raw},
                   {"output_hex", cordic::to_hex(res.output)},
                   {"cycles", res.trace.size()}};
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "output " << res.output.raw << " (" << cordic::to_hex(res.output)
                      << ") after " << res.trace.size() << " cycles\n";
        }
        return 0;
    }

    const cordic::QFormat fmt(width, frac);
    const cordic::CordicParams params = iters ? cordic::CordicParams::fixed_point(fmt, *iters)
                                              : cordic::CordicParams::fixed_point(fmt);
    const cordic::Fx z = cordic::from_real(cordic::wrap_angle(angle), fmt);
    const cordic::FxSinCos r = cordic::sim::run_cordic_machine(z, params, sink);
    if (as_json) {
        json j{{"cos", cordic::to_real(r.cos_v)},
               {"sin", cordic::to_real(r.sin_v)},
               {"raw_cos", cordic::to_hex(r.cos_v)},
               {"raw_sin", cordic::to_hex(r.sin_v)},
               {"cycles", params.n + 3},
               {"width", width},
               {"frac", frac},
               {"iters", params.n}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "cos " << fmt8(cordic::to_real(r.cos_v)) << "  sin "
                  << fmt8(cordic::to_real(r.sin_v)) << "  raw_cos " << cordic::to_hex(r.cos_v)
                  << "  raw_sin " << cordic::to_hex(r.sin_v) << "  cycles " << params.n + 3
                  << "\n";
    }
    return 0;
}

int run_table5(const std::string& csv_path, const FixedFlags& ff, bool as_json) {
    const std::optional<cordic::QFormat> arithmetic =
        ff.fixed ? std::optional<cordic::QFormat>(cordic::QFormat(ff.width, ff.frac))
                 : std::nullopt;
    const std::vector<cordic::oracle::ErrorRow> rows = cordic::oracle::table5(arithmetic);
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) {
            std::cerr << "cannot open csv file: " << csv_path << "\n";
            return 1;
        }
        cordic::oracle::write_csv(out, rows);
    }
    if (as_json) {
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back(json{{"angle", r.angle},
                               {"rotations", r.rotations},
                               {"kind", r.kind},
                               {"actual", r.actual},
                               {"testbench", r.testbench},
                               {"error", r.error}});
        std::cout << arr.dump() << "\n";
        return 0;
    }
    std::printf("%-10s %-9s %-13s %-13s %s\n", "Angle", "Rotation", "Actual", "Test-Bench",
                "Error");
    for (const auto& r : rows)
        std::printf("%-10.6f %-9d %13.8f %13.8f %12.4e  %s\n", r.angle, r.rotations, r.actual,
                    r.testbench, r.error, r.kind.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fixed-point CORDIC computation kit"};
    app.require_subcommand(1);

    // sincos
    auto* sc = app.add_subcommand("sincos", "sine and cosine of an angle");
    double sc_angle = 0.0;
    bool sc_deg = false, sc_json = false;
    std::optional<int> sc_iters;
    FixedFlags sc_ff;
    sc->add_option("--angle", sc_angle, "angle in radians")->required();
    sc->add_flag("--deg", sc_deg, "interpret --angle as degrees");
    sc->add_option("--iters", sc_iters, "iteration count (default: 20 real, frac+1 fixed)");
    add_fixed_flags(sc, sc_ff);
    sc->add_flag("--json", sc_json, "emit JSON");

    // vector
    auto* vc = app.add_subcommand("vector", "full-plane arctangent and magnitude");
    double vc_x = 0.0, vc_y = 0.0;
    bool vc_json = false;
    std::optional<int> vc_iters;
    vc->add_option("--x", vc_x, "x component")->required();
    vc->add_option("--y", vc_y, "y component")->required();
    vc->add_option("--iters", vc_iters, "iteration count (default 20)");
    vc->add_flag("--json", vc_json, "emit JSON");

    // lut
    auto* lc = app.add_subcommand("lut", "dump the arctangent table");
    std::optional<int> lc_iters;
    bool lc_json = false;
    FixedFlags lc_ff;
    lc->add_option("--iters", lc_iters, "table depth (default: 20 real, frac+1 fixed)");
    add_fixed_flags(lc, lc_ff);
    lc->add_flag("--json", lc_json, "emit JSON");

    // sim
    auto* mc = app.add_subcommand("sim", "run a cycle-accurate machine");
    std::string mc_machine = "cordic", mc_trace;
    double mc_angle = 0.0;
    std::optional<int> mc_iters;
    int mc_width = 16, mc_frac = 13, mc_cycles = 10000;
    int64_t mc_a = 0, mc_b = 0;
    bool mc_json = false;
    mc->add_option("--machine", mc_machine, "table1 | cordic (default cordic)")
        ->check(CLI::IsMember({"table1", "cordic"}));
    mc->add_option("--angle", mc_angle, "angle in radians (cordic machine)");
    mc->add_option("--iters", mc_iters, "micro-rotation count (default frac+1)");
    mc->add_option("--width", mc_width, "register width in bits")->check(CLI::Range(4, 60));
    mc->add_option("--frac", mc_frac, "fraction bits (cordic machine)")->check(CLI::Range(0, 57));
    mc->add_option("--a", mc_a, "first operand, raw integer (table1 machine)");
    mc->add_option("--b", mc_b, "second operand, raw integer (table1 machine)");
    mc->add_option("--max-cycles", mc_cycles, "timeout in cycles (table1 machine)");
    mc->add_option("--trace", mc_trace, "write a per-cycle trace to this file");
    mc->add_flag("--json", mc_json, "emit JSON");

    // table5
    auto* tc = app.add_subcommand("table5", "regenerate the 32-row error table");
    std::string tc_csv;
    bool tc_json = false;
    FixedFlags tc_ff;
    tc->add_option("--csv", tc_csv, "also write the table as CSV to this file");
    add_fixed_flags(tc, tc_ff);  // fixed-point error table variant
    tc->add_flag("--json", tc_json, "emit JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sc->parsed()) return run_sincos(sc_angle, sc_deg, sc_iters, sc_ff, sc_json);
        if (vc->parsed()) return run_vector(vc_x, vc_y, vc_iters, vc_json);
        if (lc->parsed()) return run_lut(lc_iters, lc_ff, lc_json);
        if (mc->parsed())
            return run_sim(mc_machine, mc_angle, mc_iters, mc_width, mc_frac, mc_a, mc_b,
                           mc_cycles, mc_trace, mc_json);
        if (tc->parsed()) return run_table5(tc_csv, tc_ff, tc_json);
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::overflow_error& e) {
        std::cerr << "overflow: " << e.what() << "\n";
        return 3;
    } catch (const cordic::sim::timeout_error& e) {
        std::cerr << "timeout: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

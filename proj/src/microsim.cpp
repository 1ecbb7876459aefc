#include "cordic/microsim.hpp"

#include <cstdlib>

namespace cordic::sim {

std::string ControlWord::bits() const {
    std::string s;
    s.reserve(11);
    s += in_x ? '1' : '0';
    s += in_y ? '1' : '0';
    s += x_load ? '1' : '0';
    s += y_load ? '1' : '0';
    s += xy ? '1' : '0';
    s += clear ? '1' : '0';
    s += (alu & 0b100) ? '1' : '0';
    s += (alu & 0b010) ? '1' : '0';
    s += (alu & 0b001) ? '1' : '0';
    s += oe ? '1' : '0';
    s += done ? '1' : '0';
    return s;
}

FsmState fsm_next(FsmState state, bool reset, bool eq, bool neq1) {
    if (reset) return FsmState::S5;
    switch (state) {
        case FsmState::S5: return FsmState::S0;
        case FsmState::S0: return FsmState::S1;
        case FsmState::S1:
            if (eq) return FsmState::S4;
            return neq1 ? FsmState::S2 : FsmState::S3;
        case FsmState::S2: return FsmState::S1;
        case FsmState::S3: return FsmState::S1;
        case FsmState::S4: return FsmState::S4;
    }
    return FsmState::S5;
}

ControlWord control_word(FsmState state) {
    //                in_x   in_y  x_ld   y_ld   xy    clear  alu    oe    done
    switch (state) {
        case FsmState::S0: return {true, true, true, true, false, false, 0b101, false, false};
        case FsmState::S1: return {false, false, false, false, false, false, 0b101, false, false};
        case FsmState::S2: return {false, false, true, false, true, false, 0b101, false, false};
        case FsmState::S3: return {false, false, false, true, false, false, 0b101, false, false};
        case FsmState::S4: return {false, false, false, false, false, false, 0b101, true, true};
        case FsmState::S5: return {true, true, false, false, false, true, 0b101, false, false};
    }
    return {};
}

DatapathRegs DatapathRegs::zeroed(const QFormat& fmt) {
    DatapathRegs r;
    r.x = Fx{0, fmt};
    r.y = Fx{0, fmt};
    r.z = Fx{0, fmt};
    r.eq = true;
    r.gt = false;
    return r;
}

DatapathRegs step(const DatapathRegs& regs, const ControlWord& ctrl, const Fx& x_in,
                  const Fx& y_in) {
    DatapathRegs next = regs;
    if (ctrl.clear) {
        next.x = Fx{0, regs.x.fmt};
        next.y = Fx{0, regs.y.fmt};
    } else {
        // ALU output from pre-edge register values; evaluated only when a
        // register actually latches it, so idle cycles cannot overflow
        auto alu_out = [&] { return ctrl.xy ? sub(regs.x, regs.y) : sub(regs.y, regs.x); };
        if (ctrl.x_load) next.x = ctrl.in_x ? x_in : alu_out();
        if (ctrl.y_load) next.y = ctrl.in_y ? y_in : alu_out();
    }
    next.eq = next.x.raw == next.y.raw;
    next.gt = next.x.raw > next.y.raw;
    return next;
}

Fx bus_value(const DatapathRegs& regs, const ControlWord& ctrl) {
    return ctrl.oe ? regs.x : Fx{0, regs.x.fmt};
}

std::string TraceRecord::line() const {
    std::string out = "cycle=" + std::to_string(cycle);
    out += " state=S" + std::to_string(static_cast<int>(state));
    out += " ctrl=" + ctrl.bits();
    out += " X=" + to_hex(x);
    out += " Y=" + to_hex(y);
    out += " Z=" + to_hex(z);
    out += " iter=" + std::to_string(iter);
    return out;
}

namespace {
void require_in_range(const Fx& v, const char* what) {
    if (v.raw < v.fmt.min_raw() || v.raw > v.fmt.max_raw())
        throw std::invalid_argument(std::string(what) + ": raw value outside " + v.fmt.name());
}
}  // namespace

Table1Result run_table1_machine(const Fx& input_a, const Fx& input_b, int max_cycles) {
    if (max_cycles < 1)
        throw std::invalid_argument("run_table1_machine: max_cycles must be >= 1");
    if (!(input_a.fmt == input_b.fmt))
        throw std::invalid_argument("run_table1_machine: operand formats differ");
    require_in_range(input_a, "run_table1_machine");
    require_in_range(input_b, "run_table1_machine");

    Table1Result result;
    result.output = Fx{0, input_a.fmt};
    DatapathRegs regs = DatapathRegs::zeroed(input_a.fmt);
    FsmState state = FsmState::S5;  // reset asserted during cycle 0

    for (int cycle = 0; cycle < max_cycles; ++cycle) {
        const ControlWord ctrl = control_word(state);
        regs = step(regs, ctrl, input_a, input_b);
        result.trace.push_back(TraceRecord{static_cast<uint64_t>(cycle), state, ctrl, regs.x,
                                           regs.y, regs.z, regs.iter});
        if (ctrl.done) {
            result.output = bus_value(regs, ctrl);
            return result;
        }
        state = fsm_next(state, false, regs.eq, regs.gt);
    }
    throw timeout_error("run_table1_machine: done not asserted within max_cycles");
}

namespace {

// Control words of the CORDIC sequencer. Load reuses the S0 row; the
// rotate and output rows do not exist in the six-state control table because that
// machine never feeds the ALU back into both registers at once.
constexpr ControlWord kLoadWord{true, true, true, true, false, false, 0b101, false, false};
constexpr ControlWord kReduceWord{false, false, false, false, false, false, 0b101, false, false};
constexpr ControlWord kRotateWord{false, false, true, true, false, false, 0b101, false, false};

enum class Flip { None, Negate, Quarter };

}  // namespace

FxSinCos run_cordic_machine(const Fx& angle, const CordicParams& params, const TraceSink& sink) {
    if (!params.is_fixed())
        throw std::invalid_argument("run_cordic_machine: params must use the Fixed backend");
    const QFormat fmt = *params.fixed;
    if (!(angle.fmt == fmt))
        throw std::invalid_argument("run_cordic_machine: angle format does not match params");
    require_in_range(angle, "run_cordic_machine");
    const int n = params.n;

    // ROM contents: atan table, x0 seed, reduction constants
    const AtanLut lut = build_lut(params);
    const Fx x0_rom = from_real(gain(n).inv_an, fmt);
    const Fx pi_rom = from_real(3.141592653589793, fmt);
    const Fx half_pi_rom = from_real(1.5707963267948966, fmt);

    Fx X{0, fmt}, Y{0, fmt}, Z{0, fmt};
    int iter = 0;
    uint64_t cycle = 0;
    const auto emit = [&](FsmState st, const ControlWord& cw) {
        if (sink) sink(TraceRecord{cycle, st, cw, X, Y, Z, iter});
        ++cycle;
    };

    // prologue cycle 0: load operands and the x0 constant
    X = x0_rom;
    Y = Fx{0, fmt};
    Z = angle;
    iter = 0;
    emit(FsmState::S0, kLoadWord);

    // prologue cycle 1: quadrant correction on the angle register
    Flip flip = Flip::None;
    int flip_d = 0;
    if (params.correction != Correction::None && std::abs(Z.raw) > half_pi_rom.raw) {
        if (params.correction == Correction::Pi) {
            Z = (Z.raw >= 0) ? sub(Z, pi_rom) : add(Z, pi_rom);
            flip = Flip::Negate;
        } else {
            flip_d = (Z.raw >= 0) ? 1 : -1;
            Z = (flip_d > 0) ? sub(Z, half_pi_rom) : add(Z, half_pi_rom);
            flip = Flip::Quarter;
        }
    }
    emit(FsmState::S3, kReduceWord);

    int64_t bound = 0;
    for (const Fx& e : lut.fixed_entries) bound += e.raw;
    bound += lut.fixed_entries.back().raw;
    if (std::abs(Z.raw) > bound)
        throw std::domain_error("run_cordic_machine: angle outside convergence domain");

    // n micro-rotation cycles: two shifters and three add/sub units
    for (int i = 0; i < n; ++i) {
        const Fx xs = asr(X, i);
        const Fx ys = asr(Y, i);
        if (Z.raw >= 0) {
            const Fx xn = sub(X, ys);
            const Fx yn = add(Y, xs);
            Z = sub(Z, lut.fixed_entries[i]);
            X = xn;
            Y = yn;
        } else {
            const Fx xn = add(X, ys);
            const Fx yn = sub(Y, xs);
            Z = add(Z, lut.fixed_entries[i]);
            X = xn;
            Y = yn;
        }
        iter = i + 1;
        emit(FsmState::S1, kRotateWord);
    }

    // epilogue: undo the pre-rotation and present the result
    if (flip == Flip::Negate) {
        X = negate(X);
        Y = negate(Y);
    } else if (flip == Flip::Quarter) {
        const Fx nx = (flip_d > 0) ? negate(Y) : Y;
        const Fx ny = (flip_d > 0) ? X : negate(X);
        X = nx;
        Y = ny;
    }
    const bool writes_back = flip != Flip::None;
    const ControlWord out_word{false, false, writes_back, writes_back, false,
                               false, 0b101,  true,        true};
    emit(FsmState::S4, out_word);

    return FxSinCos{X, Y};
}

}  // namespace cordic::sim

#pragma once

// Cycle-accurate model of the dedicated processor: a 6-state control unit
// driving a register/mux/ALU datapath. Registers change on rising clock
// edges only; muxes, ALU and comparator are combinational.
//
// Two machines are modeled:
//
//  * run_table1_machine - the plain two-register datapath the control-word
//    table drives directly (X and Y registers, an X-Y / Y-X ALU, comparator,
//    tri-state output). Its FSM makes it a repeated-subtraction (GCD-style)
//    engine.
//
//  * run_cordic_machine - a CORDIC-capable sequencer (adds the Z angle
//    register, barrel shifters, an atan ROM and an iteration counter) whose
//    registered results are bit-exact with the software Fixed backend. The
//    two-register datapath has no shifter, Z register or ROM, so the
//    sine/cosine computation needs this wider machine.
//
// ALU function codes: only 101 is defined (subtract; the xy select picks
// X-Y when xy=1, Y-X when xy=0). Other codes are reserved and currently
// behave as 101.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cordic/core.hpp"
#include "cordic/fixed_point.hpp"

namespace cordic::sim {

struct timeout_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class FsmState : uint8_t { S0, S1, S2, S3, S4, S5 };

// The 9 control signals emitted each state.
struct ControlWord {
    bool in_x = false;   // X source: 1 = external input, 0 = ALU
    bool in_y = false;   // Y source: 1 = external input, 0 = ALU
    bool x_load = false;
    bool y_load = false;
    bool xy = false;     // ALU operand order: 1 = X-Y, 0 = Y-X
    bool clear = false;  // synchronous register clear
    uint8_t alu = 0b101;
    bool oe = false;     // gates X onto the output bus
    bool done = false;

    bool operator==(const ControlWord&) const = default;

    // 11 characters: in_x in_y x_load y_load xy clear alu2 alu1 alu0 oe done
    std::string bits() const;
};

// Next-state function. reset forces S5 from anywhere; the compare results
// eq and neq1 (greater-than) steer the S1 branch.
FsmState fsm_next(FsmState state, bool reset, bool eq, bool neq1);

// The control word for each state; the six rows are the golden table the
// fidelity tests pin bit for bit.
ControlWord control_word(FsmState state);

struct DatapathRegs {
    Fx x, y;
    Fx z;          // angle register, used by the CORDIC machine only
    int iter = 0;  // iteration counter, CORDIC machine only
    bool eq = false;
    bool gt = false;

    static DatapathRegs zeroed(const QFormat& fmt);
};

// One rising clock edge with distinct X/Y input buses.
DatapathRegs step(const DatapathRegs& regs, const ControlWord& ctrl, const Fx& x_in,
                  const Fx& y_in);

// Single shared input bus feeding both register muxes.
inline DatapathRegs step(const DatapathRegs& regs, const ControlWord& ctrl, const Fx& ext_in) {
    return step(regs, ctrl, ext_in, ext_in);
}

// Tri-state output bus: X when oe is asserted, an all-zeros sentinel
// otherwise (high impedance is not modeled).
Fx bus_value(const DatapathRegs& regs, const ControlWord& ctrl);

struct TraceRecord {
    uint64_t cycle = 0;
    FsmState state = FsmState::S5;
    ControlWord ctrl;
    Fx x, y, z;
    int iter = 0;

    std::string line() const;
};

using TraceSink = std::function<void(const TraceRecord&)>;

struct Table1Result {
    std::vector<TraceRecord> trace;
    Fx output;
};

// Reset, load both operands, then loop compare/subtract until done. Emits
// one record per cycle (cycle 0 is the reset state S5). Throws timeout_error
// if done is not reached within max_cycles.
Table1Result run_table1_machine(const Fx& input_a, const Fx& input_b, int max_cycles);

// Sine/cosine on the extended datapath: a 2-cycle load/reduce prologue,
// one micro-rotation per clock for n cycles, then one output cycle that
// undoes the quadrant flip and asserts done. Total cycles = n + 3.
// Results are bit-exact with sincos_fixed for identical params.
FxSinCos run_cordic_machine(const Fx& angle, const CordicParams& params,
                            const TraceSink& sink = {});

}  // namespace cordic::sim

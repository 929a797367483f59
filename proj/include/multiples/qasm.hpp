#pragma once

// OpenQASM 2.0 export. Gates with a qelib1.inc spelling are emitted
// directly; the rest go through decompose_controls first. QASM 2.0 has no
// global phase, so a nonzero one is written as a comment.

#include "multiples/circuit.hpp"
#include "multiples/transpile.hpp"

#include <sstream>
#include <string>

namespace qmult {

namespace detail {

inline std::string qasm_operand(const Circuit& c, std::size_t q) {
    const auto r = c.ref(q);
    return r.reg + "[" + std::to_string(r.index) + "]";
}

inline std::string qasm_angle(double a) {
    std::ostringstream os;
    os.precision(17);
    os << a;
    return os.str();
}

// qelib1 spelling for gates with at most one control, empty if none exists
inline std::string qasm_name(const Gate& g) {
    const bool ctl = g.controls.size() == 1;
    if (g.controls.size() > 1) return g.kind == GateKind::X && g.controls.size() == 2 ? "ccx" : "";
    switch (g.kind) {
    case GateKind::X: return ctl ? "cx" : "x";
    case GateKind::H: return ctl ? "ch" : "h";
    case GateKind::Z: return ctl ? "cz" : "z";
    case GateKind::P: return ctl ? "cp(" + qasm_angle(g.angle) + ")" : "p(" + qasm_angle(g.angle) + ")";
    case GateKind::RZ: return ctl ? "crz(" + qasm_angle(g.angle) + ")" : "rz(" + qasm_angle(g.angle) + ")";
    case GateKind::SX: return ctl ? "csx" : "sx";
    case GateKind::SXdg: return ctl ? "" : "sxdg";
    case GateKind::SWAP: return ctl ? "cswap" : "swap";
    }
    return "";
}

inline void emit_qasm_gate(std::ostringstream& os, const Circuit& c, const Gate& g, const std::string& name) {
    os << name << ' ';
    bool first = true;
    auto put = [&](std::size_t q) {
        if (!first) os << ',';
        os << qasm_operand(c, q);
        first = false;
    };
    for (auto q : g.controls) put(q);
    put(g.target);
    if (g.target2 != no_qubit) put(g.target2);
    os << ";\n";
}

} // namespace detail

inline std::string to_qasm(const Circuit& c) {
    std::ostringstream os;
    os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    for (const auto& r : c.registers()) os << "qreg " << r.name << '[' << r.size << "];\n";

    double phase = c.global_phase();
    for (const auto& g : c.gates()) {
        if (auto name = detail::qasm_name(g); !name.empty()) {
            detail::emit_qasm_gate(os, c, g, name);
            continue;
        }
        Circuit one(c.registers());
        one.add(g);
        const auto lowered = decompose_controls(one);
        phase += lowered.global_phase();
        for (const auto& lg : lowered.gates()) detail::emit_qasm_gate(os, c, lg, detail::qasm_name(lg));
    }
    if (std::abs(wrap_angle(phase)) > angle_epsilon) os << "// global phase: " << detail::qasm_angle(wrap_angle(phase)) << '\n';
    return os.str();
}

} // namespace qmult

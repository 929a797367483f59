#pragma once

// Gate-level circuit representation shared by every builder, the simulator
// and the depth analysis.
//
// Qubits are addressed globally: registers are laid out in declaration
// order and qubit 0 of the first register is the least significant bit of
// every basis-state index.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qmult {

struct Register {
    std::string name;
    std::size_t size = 0;
};

struct QubitRef {
    std::string reg;
    std::size_t index = 0;
};

enum class GateKind { X, H, Z, P, RZ, SX, SXdg, SWAP };

inline constexpr std::size_t no_qubit = static_cast<std::size_t>(-1);

inline std::string_view gate_name(GateKind kind) {
    switch (kind) {
    case GateKind::X: return "x";
    case GateKind::H: return "h";
    case GateKind::Z: return "z";
    case GateKind::P: return "p";
    case GateKind::RZ: return "rz";
    case GateKind::SX: return "sx";
    case GateKind::SXdg: return "sxdg";
    case GateKind::SWAP: return "swap";
    }
    return "?";
}

inline bool is_parametric(GateKind kind) {
    return kind == GateKind::P || kind == GateKind::RZ;
}

/// One primitive operation with an arbitrary (possibly empty) control set.
/// `target2` is only used by SWAP.
struct Gate {
    GateKind kind = GateKind::X;
    double angle = 0.0;
    std::size_t target = 0;
    std::size_t target2 = no_qubit;
    std::vector<std::size_t> controls;

    /// Every qubit the gate acts on: targets first, then controls.
    std::vector<std::size_t> qubits() const {
        std::vector<std::size_t> out;
        out.reserve(controls.size() + 2);
        out.push_back(target);
        if (target2 != no_qubit) out.push_back(target2);
        out.insert(out.end(), controls.begin(), controls.end());
        return out;
    }

    bool operator==(const Gate&) const = default;
};

class Circuit {
public:
    Circuit() = default;

    explicit Circuit(std::vector<Register> registers, std::string label = {})
        : registers_(std::move(registers)), label_(std::move(label)) {
        for (std::size_t i = 0; i < registers_.size(); ++i) {
            if (registers_[i].size == 0)
                throw std::invalid_argument("register '" + registers_[i].name + "' has zero size");
            for (std::size_t j = 0; j < i; ++j)
                if (registers_[j].name == registers_[i].name)
                    throw std::invalid_argument("duplicate register name '" + registers_[i].name + "'");
            num_qubits_ += registers_[i].size;
        }
    }

    std::size_t num_qubits() const { return num_qubits_; }
    const std::vector<Register>& registers() const { return registers_; }
    const std::vector<Gate>& gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }
    bool empty() const { return gates_.empty(); }

    const std::string& label() const { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

    // Not observable on its own; becomes a real phase gate under add_controls.
    double global_phase() const { return global_phase_; }
    void add_global_phase(double phi) { global_phase_ += phi; }

    const Register& reg(std::string_view name) const {
        for (const auto& r : registers_)
            if (r.name == name) return r;
        throw std::out_of_range("unknown register '" + std::string(name) + "'");
    }

    bool has_register(std::string_view name) const {
        return std::any_of(registers_.begin(), registers_.end(),
                           [&](const Register& r) { return r.name == name; });
    }

    std::size_t offset(std::string_view name) const {
        std::size_t off = 0;
        for (const auto& r : registers_) {
            if (r.name == name) return off;
            off += r.size;
        }
        throw std::out_of_range("unknown register '" + std::string(name) + "'");
    }

    std::size_t qubit(std::string_view name, std::size_t index) const {
        const auto& r = reg(name);
        if (index >= r.size)
            throw std::out_of_range("qubit " + std::string(name) + "[" + std::to_string(index) +
                                    "] out of range");
        return offset(name) + index;
    }

    std::size_t qubit(const QubitRef& ref) const { return qubit(ref.reg, ref.index); }

    /// Global indices of all qubits in a register, least significant first.
    std::vector<std::size_t> qubits(std::string_view name) const {
        std::vector<std::size_t> out(reg(name).size);
        std::iota(out.begin(), out.end(), offset(name));
        return out;
    }

    QubitRef ref(std::size_t global) const {
        std::size_t off = 0;
        for (const auto& r : registers_) {
            if (global < off + r.size) return {r.name, global - off};
            off += r.size;
        }
        throw std::out_of_range("qubit index " + std::to_string(global) + " out of range");
    }

    Circuit& add(Gate g) {
        validate(g);
        gates_.push_back(std::move(g));
        return *this;
    }

    Circuit& x(std::size_t q) { return add({GateKind::X, 0.0, q, no_qubit, {}}); }
    Circuit& h(std::size_t q) { return add({GateKind::H, 0.0, q, no_qubit, {}}); }
    Circuit& z(std::size_t q) { return add({GateKind::Z, 0.0, q, no_qubit, {}}); }
    Circuit& sx(std::size_t q) { return add({GateKind::SX, 0.0, q, no_qubit, {}}); }
    Circuit& sxdg(std::size_t q) { return add({GateKind::SXdg, 0.0, q, no_qubit, {}}); }
    Circuit& p(double theta, std::size_t q) { return add({GateKind::P, theta, q, no_qubit, {}}); }
    Circuit& rz(double theta, std::size_t q) { return add({GateKind::RZ, theta, q, no_qubit, {}}); }
    Circuit& swap(std::size_t a, std::size_t b) { return add({GateKind::SWAP, 0.0, a, b, {}}); }
    Circuit& cx(std::size_t c, std::size_t t) { return add({GateKind::X, 0.0, t, no_qubit, {c}}); }
    Circuit& cz(std::size_t c, std::size_t t) { return add({GateKind::Z, 0.0, t, no_qubit, {c}}); }
    Circuit& cp(double theta, std::size_t c, std::size_t t) {
        return add({GateKind::P, theta, t, no_qubit, {c}});
    }
    Circuit& mcx(std::vector<std::size_t> ctrls, std::size_t t) {
        return add({GateKind::X, 0.0, t, no_qubit, std::move(ctrls)});
    }
    Circuit& mcz(std::vector<std::size_t> ctrls, std::size_t t) {
        return add({GateKind::Z, 0.0, t, no_qubit, std::move(ctrls)});
    }

    /// Appends `sub`, sending its qubit i to `qubit_map[i]`.
    Circuit& append(const Circuit& sub, std::span<const std::size_t> qubit_map) {
        if (qubit_map.size() != sub.num_qubits())
            throw std::invalid_argument("qubit map size does not match appended circuit");
        for (const auto& g : sub.gates()) {
            Gate m = g;
            m.target = qubit_map[g.target];
            if (g.target2 != no_qubit) m.target2 = qubit_map[g.target2];
            for (auto& c : m.controls) c = qubit_map[c];
            add(std::move(m));
        }
        global_phase_ += sub.global_phase();
        return *this;
    }

    /// Appends a circuit whose qubits line up one-to-one with the first
    /// `sub.num_qubits()` qubits of this one.
    Circuit& append(const Circuit& sub) {
        std::vector<std::size_t> ident(sub.num_qubits());
        std::iota(ident.begin(), ident.end(), std::size_t{0});
        return append(sub, ident);
    }

private:
    void validate(const Gate& g) const {
        if (!std::isfinite(g.angle)) throw std::invalid_argument("gate angle must be finite");
        const bool is_swap = g.kind == GateKind::SWAP;
        if (is_swap != (g.target2 != no_qubit))
            throw std::invalid_argument("SWAP needs exactly two targets");
        auto qs = g.qubits();
        for (auto q : qs)
            if (q >= num_qubits_)
                throw std::out_of_range("gate touches qubit " + std::to_string(q) + " of a " +
                                        std::to_string(num_qubits_) + "-qubit circuit");
        std::sort(qs.begin(), qs.end());
        if (std::adjacent_find(qs.begin(), qs.end()) != qs.end())
            throw std::invalid_argument("gate targets and controls must be pairwise distinct");
    }

    std::vector<Register> registers_;
    std::vector<Gate> gates_;
    std::string label_;
    std::size_t num_qubits_ = 0;
    double global_phase_ = 0.0;
};

inline Circuit new_circuit(std::vector<Register> registers, std::string label = {}) {
    return Circuit(std::move(registers), std::move(label));
}

/// Controlled version of `c`: every gate gains `ctrls` as extra controls.
/// A nonzero global phase turns into a phase gate on the control set.
inline Circuit add_controls(const Circuit& c, std::span<const std::size_t> ctrls) {
    std::vector<bool> touched(c.num_qubits(), false);
    for (const auto& g : c.gates())
        for (auto q : g.qubits()) touched[q] = true;
    for (auto q : ctrls) {
        if (q >= c.num_qubits()) throw std::out_of_range("control qubit out of range");
        if (touched[q]) throw std::invalid_argument("control qubit overlaps the controlled circuit");
    }

    Circuit out(c.registers(), c.label());
    for (const auto& g : c.gates()) {
        Gate m = g;
        m.controls.insert(m.controls.end(), ctrls.begin(), ctrls.end());
        out.add(std::move(m));
    }
    if (c.global_phase() != 0.0 && !ctrls.empty()) {
        std::vector<std::size_t> rest(ctrls.begin(), ctrls.end() - 1);
        out.add({GateKind::P, c.global_phase(), ctrls.back(), no_qubit, std::move(rest)});
    } else {
        out.add_global_phase(c.global_phase());
    }
    return out;
}

inline Gate adjoint(const Gate& g) {
    Gate a = g;
    switch (g.kind) {
    case GateKind::P:
    case GateKind::RZ: a.angle = -g.angle; break;
    case GateKind::SX: a.kind = GateKind::SXdg; break;
    case GateKind::SXdg: a.kind = GateKind::SX; break;
    default: break;
    }
    return a;
}

inline Circuit inverse(const Circuit& c) {
    Circuit out(c.registers(), c.label());
    for (auto it = c.gates().rbegin(); it != c.gates().rend(); ++it) out.add(adjoint(*it));
    out.add_global_phase(-c.global_phase());
    return out;
}

/// Longest chain of gates sharing qubits (greedy per-qubit layering).
inline std::size_t structural_depth(const Circuit& c) {
    std::vector<std::size_t> layer(c.num_qubits(), 0);
    std::size_t depth = 0;
    for (const auto& g : c.gates()) {
        const auto qs = g.qubits();
        std::size_t l = 0;
        for (auto q : qs) l = std::max(l, layer[q]);
        ++l;
        for (auto q : qs) layer[q] = l;
        depth = std::max(depth, l);
    }
    return depth;
}

} // namespace qmult

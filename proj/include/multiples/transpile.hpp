#pragma once

// Decomposition into the fixed basis {RZ, SX, X, P, CX} and the depth
// sweep built on top of it.
//
// Lowering is exact, global phase included: every 1-qubit rewrite records
// its phase on the output circuit, so transpiled oracles keep their phase
// signature and stay valid under add_controls.
//
// Multi-controlled gates reduce to multi-controlled X / phase:
//  * C^m X for m >= 3 uses no ancilla: increment the register (controls,
//    target) by one, then decrement the controls alone. The carry into the
//    target fires exactly when every control is 1. Both shifts are Fourier
//    adders, whose pipelined QFTs give depth linear in m.
//  * a multi-controlled Z is H . C^m X . H on its last qubit.
//  * a multi-controlled phase of any other angle peels one control per
//    level (CP(a/2), C^m X, CP(-a/2), C^m X, then the remainder with a/2).
//    Only the small control counts produced inside the arithmetic blocks
//    hit this path.

#include "multiples/circuit.hpp"
#include "multiples/oracle.hpp"
#include "multiples/qft_arithmetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace qmult {

namespace detail {

inline bool is_pi(double theta) { return std::abs(std::abs(wrap_angle(theta)) - std::numbers::pi) < angle_epsilon; }

class Lowering {
public:
    explicit Lowering(Circuit& out) : out_(out) {}

    void lower(const Gate& g) {
        const auto& ctl = g.controls;
        const std::size_t t = g.target;
        if (ctl.empty()) {
            if (g.kind == GateKind::SWAP) {
                cx(g.target, g.target2);
                cx(g.target2, g.target);
                cx(g.target, g.target2);
            } else {
                out_.add(g);
            }
            return;
        }
        auto with_target = ctl;
        with_target.push_back(t);
        switch (g.kind) {
        case GateKind::X: mcx(ctl, t); break;
        case GateKind::Z: mcp(std::numbers::pi, with_target); break;
        case GateKind::P: mcp(g.angle, with_target); break;
        case GateKind::RZ:
            // RZ(a) = e^{-ia/2} P(a)
            mcp(g.angle, with_target);
            mcp(-g.angle / 2, ctl);
            break;
        case GateKind::H:
            // H = RY(pi/4) Z RY(-pi/4)
            ry(-std::numbers::pi / 4, t);
            mcp(std::numbers::pi, with_target);
            ry(std::numbers::pi / 4, t);
            break;
        case GateKind::SX:
        case GateKind::SXdg:
            // SX = H S H
            out_.h(t);
            mcp(g.kind == GateKind::SX ? std::numbers::pi / 2 : -std::numbers::pi / 2, with_target);
            out_.h(t);
            break;
        case GateKind::SWAP: {
            const std::size_t a = g.target, b = g.target2;
            auto c2 = ctl;
            c2.push_back(a);
            cx(b, a);
            mcx(c2, b);
            cx(b, a);
            break;
        }
        }
    }

    void cx(std::size_t c, std::size_t t) { out_.cx(c, t); }

    // exact: phase a/2 (x + y - x^y) = a xy
    void cp(double theta, std::size_t a, std::size_t b) {
        if (std::abs(wrap_angle(theta)) < angle_epsilon) return;
        out_.p(theta / 2, a);
        out_.p(theta / 2, b);
        cx(a, b);
        out_.p(-theta / 2, b);
        cx(a, b);
    }

    // SX RZ(-a) SX^dag = RY(a) exactly
    void ry(double theta, std::size_t t) {
        out_.sxdg(t);
        out_.rz(-theta, t);
        out_.sx(t);
    }

    void toffoli(std::size_t a, std::size_t b, std::size_t t) {
        constexpr double q = std::numbers::pi / 4;
        out_.h(t);
        cx(b, t);
        out_.p(-q, t);
        cx(a, t);
        out_.p(q, t);
        cx(b, t);
        out_.p(-q, t);
        cx(a, t);
        out_.p(q, b);
        out_.p(q, t);
        out_.h(t);
        cx(a, b);
        out_.p(q, a);
        out_.p(-q, b);
        cx(a, b);
    }

    // swap-free QFT over `reg` (least significant first)
    void qft(const std::vector<std::size_t>& reg, bool inverse) {
        const std::size_t L = reg.size();
        auto angle = [](std::size_t d) { return std::numbers::pi / static_cast<double>(std::uint64_t{1} << d); };
        if (!inverse) {
            for (std::size_t j = L; j-- > 0;) {
                out_.h(reg[j]);
                for (std::size_t l = j; l-- > 0;) cp(angle(j - l), reg[l], reg[j]);
            }
        } else {
            for (std::size_t j = 0; j < L; ++j) {
                for (std::size_t l = 0; l < j; ++l) cp(-angle(j - l), reg[l], reg[j]);
                out_.h(reg[j]);
            }
        }
    }

    // |v> -> |v + delta mod 2^L>
    void shift(const std::vector<std::size_t>& reg, int delta) {
        qft(reg, false);
        for (std::size_t j = 0; j < reg.size(); ++j) {
            const double theta = wrap_angle(2.0 * std::numbers::pi * delta /
                                            static_cast<double>(std::uint64_t{1} << (j + 1)));
            if (std::abs(theta) > angle_epsilon) out_.p(theta, reg[j]);
        }
        qft(reg, true);
    }

    void mcx(const std::vector<std::size_t>& ctl, std::size_t t) {
        switch (ctl.size()) {
        case 0: out_.x(t); return;
        case 1: cx(ctl[0], t); return;
        case 2: toffoli(ctl[0], ctl[1], t); return;
        default: break;
        }
        auto reg = ctl;
        reg.push_back(t);
        shift(reg, +1);
        shift(ctl, -1);
    }

    // e^{i theta} on the all-ones state of `qs`
    void mcp(double theta, const std::vector<std::size_t>& qs) {
        theta = wrap_angle(theta);
        if (std::abs(theta) < angle_epsilon) return;
        switch (qs.size()) {
        case 0: out_.add_global_phase(theta); return;
        case 1: out_.p(theta, qs[0]); return;
        default: break;
        }
        const std::size_t t = qs.back();
        std::vector<std::size_t> rest(qs.begin(), qs.end() - 1);
        // Z-type: one CX for CZ, Toffoli/MCX beyond
        if (is_pi(theta)) {
            out_.h(t);
            mcx(rest, t);
            out_.h(t);
            return;
        }
        if (qs.size() == 2) {
            cp(theta, qs[0], qs[1]);
            return;
        }
        const std::size_t c = rest.back();
        rest.pop_back();
        cp(theta / 2, c, t);
        mcx(rest, c);
        cp(-theta / 2, c, t);
        mcx(rest, c);
        rest.push_back(t);
        mcp(theta / 2, rest);
    }

private:
    Circuit& out_;
};

inline void expand_single_qubit(const Gate& g, Circuit& out) {
    const std::size_t t = g.target;
    switch (g.kind) {
    case GateKind::H:
        // H = e^{-i pi/4} S SX S
        out.p(std::numbers::pi / 2, t).sx(t).p(std::numbers::pi / 2, t);
        out.add_global_phase(-std::numbers::pi / 4);
        return;
    case GateKind::Z: out.p(std::numbers::pi, t); return;
    case GateKind::SXdg: out.sx(t).x(t); return;
    case GateKind::P: {
        const double a = wrap_angle(g.angle);
        if (std::abs(a) > angle_epsilon) out.p(a, t);
        return;
    }
    case GateKind::RZ: {
        // RZ is 4pi-periodic: RZ(a + 2pi) = -RZ(a)
        double a = wrap_angle(g.angle);
        if (std::abs(std::remainder(g.angle - a, 4.0 * std::numbers::pi)) > 1.0) out.add_global_phase(std::numbers::pi);
        if (std::abs(a) > angle_epsilon) out.rz(a, t);
        return;
    }
    default: out.add(g); return;
    }
}

} // namespace detail

/// Exact rewrite where every gate has at most one control and only CX is
/// controlled; 1-qubit gates may be any kind.
inline Circuit decompose_controls(const Circuit& c) {
    Circuit out(c.registers(), c.label());
    out.add_global_phase(c.global_phase());
    detail::Lowering low(out);
    for (const auto& g : c.gates()) low.lower(g);
    return out;
}

/// Rewrite over {RZ, SX, X, P} and CX.
inline Circuit transpile_basis(const Circuit& c) {
    const auto lowered = decompose_controls(c);
    Circuit out(c.registers(), c.label());
    out.add_global_phase(lowered.global_phase());
    for (const auto& g : lowered.gates()) {
        if (g.controls.empty())
            detail::expand_single_qubit(g, out);
        else
            out.add(g);
    }
    return out;
}

inline bool in_basis(const Circuit& c) {
    return std::all_of(c.gates().begin(), c.gates().end(), [](const Gate& g) {
        if (!g.controls.empty()) return g.kind == GateKind::X && g.controls.size() == 1;
        return g.kind == GateKind::RZ || g.kind == GateKind::SX || g.kind == GateKind::X || g.kind == GateKind::P;
    });
}

inline std::size_t transpiled_depth(const Circuit& c) { return structural_depth(transpile_basis(c)); }

inline std::size_t two_qubit_count(const Circuit& c) {
    return static_cast<std::size_t>(std::count_if(c.gates().begin(), c.gates().end(),
                                                  [](const Gate& g) { return g.qubits().size() >= 2; }));
}

struct DepthRow {
    std::uint64_t k = 0;
    std::size_t n_k = 0;
    std::size_t n = 0;
    std::size_t gates = 0;
    std::size_t cx = 0;
    std::size_t depth = 0;

    bool operator==(const DepthRow&) const = default;
};

struct DepthReport {
    std::vector<DepthRow> rows;
};

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

inline DepthRow measure_oracle_depth(std::uint64_t k, std::size_t n) {
    const auto t = transpile_basis(multiples_oracle(k, n));
    return {k, remainder_register_width(k), n, t.size(), two_qubit_count(t), structural_depth(t)};
}

/// One row per (k, n) cell, ordered by k then n. Cells are measured
/// concurrently.
inline DepthReport depth_sweep(const std::vector<std::uint64_t>& ks, const std::vector<std::size_t>& ns) {
    if (ks.empty()) throw std::invalid_argument("k list is empty");
    if (ns.empty()) throw std::invalid_argument("n list is empty");
    for (auto k : ks)
        if (k < 2) throw std::invalid_argument("every k must be at least 2");
    for (auto n : ns)
        if (n < 1) throw std::invalid_argument("every n must be at least 1");

    std::vector<std::future<DepthRow>> cells;
    cells.reserve(ks.size() * ns.size());
    for (auto k : ks)
        for (auto n : ns) cells.push_back(std::async(std::launch::async, measure_oracle_depth, k, n));
    DepthReport report;
    for (auto& f : cells) report.rows.push_back(f.get());
    return report;
}

/// Ordinary least squares; a target with zero variance has R^2 = 1.
inline FitResult least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("x and y sizes differ");
    if (xs.size() < 3) throw std::invalid_argument("need at least 3 points to fit");
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("x values are all equal");
    FitResult f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    if (syy == 0.0) {
        f.r2 = 1.0;
    } else {
        double ss_res = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double e = ys[i] - (f.slope * xs[i] + f.intercept);
            ss_res += e * e;
        }
        f.r2 = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    }
    return f;
}

/// Depth against n for the rows with the given k.
inline FitResult linear_fit(const DepthReport& report, std::uint64_t fixed_k) {
    std::vector<double> xs, ys;
    for (const auto& r : report.rows)
        if (r.k == fixed_k) {
            xs.push_back(static_cast<double>(r.n));
            ys.push_back(static_cast<double>(r.depth));
        }
    if (xs.size() < 3) throw std::invalid_argument("need at least 3 rows for k=" + std::to_string(fixed_k));
    return least_squares(xs, ys);
}

inline void write_depth_csv(std::ostream& os, const DepthReport& report) {
    os << "k,n_k,n,gates,cx,depth\n";
    for (const auto& r : report.rows)
        os << r.k << ',' << r.n_k << ',' << r.n << ',' << r.gates << ',' << r.cx << ',' << r.depth << '\n';
}

inline void write_fit(std::ostream& os, const FitResult& f) {
    const auto prec = os.precision(10);
    os << f.slope << ',' << f.intercept << ',' << f.r2;
    os.precision(prec);
}

} // namespace qmult

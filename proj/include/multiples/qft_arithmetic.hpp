#pragma once

// Fourier-basis constant addition and the `+r mod k` block.
//
// The QFT here omits the final swaps: after qft(m), qubit j carries the
// phase exp(2*pi*i*b / 2^(j+1)) of the input value b, so adding a constant
// a is one P(2*pi*a / 2^(j+1)) rotation per qubit.

#include "multiples/circuit.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace qmult {

inline constexpr double angle_epsilon = 1e-12;

/// Maps an angle into (-pi, pi].
inline double wrap_angle(double theta) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double t = std::fmod(theta, two_pi);
    if (t <= -std::numbers::pi) t += two_pi;
    if (t > std::numbers::pi) t -= two_pi;
    return t;
}

inline std::size_t bit_length(std::uint64_t v) {
    std::size_t n = 0;
    while (v) {
        ++n;
        v >>= 1;
    }
    return n;
}

struct ModAddParams {
    std::uint64_t addend = 0;  // r
    std::uint64_t modulus = 2; // k
    std::size_t width = 1;     // m, remainder-register width

    void validate() const {
        if (modulus < 2) throw std::invalid_argument("modulus must be at least 2");
        if (addend >= modulus) throw std::invalid_argument("addend must be below the modulus");
        if (width < bit_length(modulus - 1))
            throw std::invalid_argument("width too small to hold values below the modulus");
    }
};

inline Circuit qft(std::size_t m) {
    if (m == 0) throw std::invalid_argument("qft needs at least one qubit");
    Circuit c({{"q", m}}, "qft");
    for (std::size_t j = m; j-- > 0;) {
        c.h(j);
        for (std::size_t l = j; l-- > 0;)
            c.cp(std::numbers::pi / static_cast<double>(std::uint64_t{1} << (j - l)), l, j);
    }
    return c;
}

inline Circuit inverse_qft(std::size_t m) {
    auto c = inverse(qft(m));
    c.set_label("iqft");
    return c;
}

namespace detail {

// Fourier-space addition of a (mod 2^m), any sign; vanishing rotations elided.
inline Circuit phase_add(std::int64_t a, std::size_t m) {
    Circuit c({{"q", m}}, "phi_add");
    for (std::size_t j = 0; j < m; ++j) {
        const double theta =
            wrap_angle(2.0 * std::numbers::pi * static_cast<double>(a) /
                       static_cast<double>(std::uint64_t{1} << (j + 1)));
        if (std::abs(theta) > angle_epsilon) c.p(theta, j);
    }
    return c;
}

} // namespace detail

/// In the Fourier basis of an m-qubit register, adds the constant a.
inline Circuit phi_add_const(std::uint64_t a, std::size_t m) {
    if (m == 0 || m >= 63) throw std::invalid_argument("register width out of range");
    if (a >= (std::uint64_t{1} << m)) throw std::out_of_range("constant does not fit the register");
    return detail::phase_add(static_cast<std::int64_t>(a), m);
}

/// |b>|0>|0> -> |(b + r) mod k>|0>|0> for 0 <= b < k.
///
/// Registers: "val" holds m remainder qubits plus one overflow qubit on top
/// (m+1 total), "cmp" is the comparison ancilla. Built from Fourier-basis
/// constant additions: ADD(r) SUB(k), sign -> cmp, cmp-controlled ADD(k),
/// then SUB(r), inverted sign -> cmp, ADD(r) to clear the ancilla.
inline Circuit modulo_add_const(const ModAddParams& p) {
    p.validate();
    const std::size_t w = p.width + 1;
    Circuit c({{"val", p.width + 1}, {"cmp", 1}}, "add_mod");
    if (p.addend == 0) return c;

    const std::size_t msb = w - 1;
    const std::size_t cmp = w;
    const auto r = static_cast<std::int64_t>(p.addend);
    const auto k = static_cast<std::int64_t>(p.modulus);
    const auto f = qft(w);
    const auto fi = inverse_qft(w);

    c.append(f);
    c.append(detail::phase_add(r, w));
    c.append(detail::phase_add(-k, w));
    c.append(fi);
    c.cx(msb, cmp);
    c.append(f);
    const std::size_t cmp_ctrl[] = {cmp};
    c.append(add_controls(Circuit({{"val", w}, {"cmp", 1}}).append(detail::phase_add(k, w)), cmp_ctrl));
    c.append(detail::phase_add(-r, w));
    c.append(fi);
    c.x(msb);
    c.cx(msb, cmp);
    c.x(msb);
    c.append(f);
    c.append(detail::phase_add(r, w));
    c.append(fi);
    return c;
}

inline Circuit modulo_sub_const(const ModAddParams& p) {
    auto c = inverse(modulo_add_const(p));
    c.set_label("sub_mod");
    return c;
}

} // namespace qmult

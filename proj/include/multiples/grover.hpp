#pragma once

#include "multiples/circuit.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace qmult {

/// Reflection about the uniform superposition, 2|s><s| - I, on n qubits.
inline Circuit diffuser(std::size_t n) {
    if (n < 1) throw std::invalid_argument("diffuser needs at least one qubit");
    Circuit c({{"q", n}}, "diffuser");
    for (std::size_t q = 0; q < n; ++q) c.h(q);
    for (std::size_t q = 0; q < n; ++q) c.x(q);
    std::vector<std::size_t> ctrls(n - 1);
    std::iota(ctrls.begin(), ctrls.end(), std::size_t{0});
    c.mcz(ctrls, n - 1);
    for (std::size_t q = 0; q < n; ++q) c.x(q);
    for (std::size_t q = 0; q < n; ++q) c.h(q);
    // H X (CZ) X H = I - 2|s><s|
    c.add_global_phase(std::numbers::pi);
    return c;
}

struct GroverPlan {
    Circuit oracle;
    std::size_t n = 1;
    std::size_t repetitions = 1;

    void validate() const {
        if (repetitions < 1) throw std::invalid_argument("at least one repetition is required");
        if (oracle.registers().empty() || oracle.registers().front().size != n)
            throw std::invalid_argument("oracle's first register must have width n");
    }
};

/// H on the input register, then `repetitions` x [oracle; diffuser].
inline Circuit grover_circuit(const GroverPlan& plan) {
    plan.validate();
    Circuit c(plan.oracle.registers(), "grover(" + plan.oracle.label() + ")");
    for (std::size_t q = 0; q < plan.n; ++q) c.h(q);
    const auto d = diffuser(plan.n);
    for (std::size_t j = 0; j < plan.repetitions; ++j) {
        c.append(plan.oracle);
        c.append(d);
    }
    return c;
}

/// sin^2((2j+1) theta) with sin(theta) = sqrt(M/N).
inline double predicted_probability(std::uint64_t marked, std::uint64_t total, std::uint64_t reps) {
    if (marked == 0) throw std::invalid_argument("no marked states");
    if (marked > total) throw std::invalid_argument("more marked states than total");
    const double theta = std::asin(std::sqrt(static_cast<double>(marked) / static_cast<double>(total)));
    const double s = std::sin(static_cast<double>(2 * reps + 1) * theta);
    return s * s;
}

inline std::uint64_t optimal_repetitions(std::uint64_t marked, std::uint64_t total) {
    if (marked == 0) throw std::invalid_argument("no marked states");
    if (marked > total) throw std::invalid_argument("more marked states than total");
    const double theta = std::asin(std::sqrt(static_cast<double>(marked) / static_cast<double>(total)));
    const double j = std::round(std::numbers::pi / (4.0 * theta) - 0.5);
    return j < 1.0 ? 1 : static_cast<std::uint64_t>(j);
}

} // namespace qmult

#pragma once

// Dense statevector simulation, phase-signature extraction, marginal
// probabilities and seeded shot sampling.

#include "multiples/circuit.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmult {

using amplitude = std::complex<double>;

inline constexpr std::size_t max_simulated_qubits = 24;

class Statevector {
public:
    /// |index> over the registers of `layout`.
    explicit Statevector(const std::vector<Register>& registers, std::uint64_t index = 0)
        : registers_(registers) {
        for (const auto& r : registers_) num_qubits_ += r.size;
        if (num_qubits_ > max_simulated_qubits)
            throw std::length_error("statevector of " + std::to_string(num_qubits_) +
                                    " qubits exceeds the cap of " +
                                    std::to_string(max_simulated_qubits));
        amps_.assign(std::size_t{1} << num_qubits_, amplitude{0.0, 0.0});
        if (index >= amps_.size()) throw std::out_of_range("initial basis index out of range");
        amps_[index] = 1.0;
    }

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<Register>& registers() const { return registers_; }
    const std::vector<amplitude>& amplitudes() const { return amps_; }
    std::vector<amplitude>& amplitudes() { return amps_; }
    amplitude operator[](std::size_t i) const { return amps_[i]; }

    double norm_squared() const {
        double s = 0.0;
        for (const auto& a : amps_) s += std::norm(a);
        return s;
    }

    void apply(const Gate& g);

    void apply(const Circuit& c) {
        if (c.num_qubits() != num_qubits_)
            throw std::invalid_argument("circuit and statevector widths differ");
        for (const auto& g : c.gates()) apply(g);
        if (c.global_phase() != 0.0) {
            const amplitude ph = std::polar(1.0, c.global_phase());
            for (auto& a : amps_) a *= ph;
        }
    }

private:
    std::vector<Register> registers_;
    std::vector<amplitude> amps_;
    std::size_t num_qubits_ = 0;
};

namespace detail {

using mat2 = std::array<amplitude, 4>;

inline mat2 gate_matrix(const Gate& g) {
    using namespace std::complex_literals;
    constexpr double s = std::numbers::sqrt2 / 2.0;
    switch (g.kind) {
    case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::H: return {s, s, s, -s};
    case GateKind::Z: return {1.0, 0.0, 0.0, -1.0};
    case GateKind::P: return {1.0, 0.0, 0.0, std::polar(1.0, g.angle)};
    case GateKind::RZ: return {std::polar(1.0, -g.angle / 2), 0.0, 0.0, std::polar(1.0, g.angle / 2)};
    case GateKind::SX: return {0.5 + 0.5i, 0.5 - 0.5i, 0.5 - 0.5i, 0.5 + 0.5i};
    case GateKind::SXdg: return {0.5 - 0.5i, 0.5 + 0.5i, 0.5 + 0.5i, 0.5 - 0.5i};
    case GateKind::SWAP: break;
    }
    throw std::logic_error("no 2x2 matrix for SWAP");
}

} // namespace detail

inline void Statevector::apply(const Gate& g) {
    std::uint64_t cmask = 0;
    for (auto c : g.controls) cmask |= std::uint64_t{1} << c;
    const std::uint64_t tbit = std::uint64_t{1} << g.target;
    const std::uint64_t n = amps_.size();

    if (g.kind == GateKind::SWAP) {
        const std::uint64_t ubit = std::uint64_t{1} << g.target2;
        for (std::uint64_t i = 0; i < n; ++i)
            if ((i & cmask) == cmask && (i & tbit) && !(i & ubit))
                std::swap(amps_[i], amps_[(i & ~tbit) | ubit]);
        return;
    }

    const auto m = detail::gate_matrix(g);
    const bool diagonal = m[1] == 0.0 && m[2] == 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        if ((i & tbit) || (i & cmask) != cmask) continue;
        const std::uint64_t j = i | tbit;
        if (diagonal) {
            amps_[i] *= m[0];
            amps_[j] *= m[3];
        } else {
            const amplitude a0 = amps_[i], a1 = amps_[j];
            amps_[i] = m[0] * a0 + m[1] * a1;
            amps_[j] = m[2] * a0 + m[3] * a1;
        }
    }
}

inline Statevector simulate(const Circuit& c, std::optional<std::uint64_t> initial = std::nullopt) {
    Statevector s(c.registers(), initial.value_or(0));
    s.apply(c);
    return s;
}

inline Statevector simulate(const Circuit& c, Statevector initial) {
    initial.apply(c);
    return initial;
}

/// Uniform superposition over the first `n` qubits, all other qubits |0>.
inline Statevector uniform_input_state(const std::vector<Register>& registers, std::size_t n) {
    Statevector s(registers);
    if (n > s.num_qubits()) throw std::invalid_argument("input width exceeds circuit width");
    const std::size_t count = std::size_t{1} << n;
    const double a = 1.0 / std::sqrt(static_cast<double>(count));
    auto& amps = s.amplitudes();
    for (std::size_t x = 0; x < count; ++x) amps[x] = a;
    return s;
}

struct PhaseSignature {
    std::vector<int> signs;
    double leakage = 0.0;

    std::vector<std::uint64_t> marked() const {
        std::vector<std::uint64_t> out;
        for (std::size_t x = 0; x < signs.size(); ++x)
            if (signs[x] < 0) out.push_back(x);
        return out;
    }
};

/// Runs `oracle` on a uniform superposition of its first `n` qubits with the
/// remaining qubits in |0>, and reads the +-1 phase picked up by each input.
inline PhaseSignature phase_signature(const Circuit& oracle, std::size_t n) {
    if (oracle.registers().empty() || oracle.registers().front().size != n)
        throw std::invalid_argument("oracle's first register must have width n");
    auto s = simulate(oracle, uniform_input_state(oracle.registers(), n));

    const std::size_t count = std::size_t{1} << n;
    const double scale = std::sqrt(static_cast<double>(count));
    PhaseSignature sig;
    sig.signs.resize(count);
    double inside = 0.0;
    for (std::size_t x = 0; x < count; ++x) {
        const amplitude a = s[x] * scale;
        inside += std::norm(s[x]);
        if (std::abs(std::abs(a) - 1.0) > 1e-8 || std::abs(std::abs(a.real()) - 1.0) > 1e-8)
            throw std::runtime_error("not a pure phase oracle: input " + std::to_string(x) +
                                     " has normalized amplitude (" + std::to_string(a.real()) + ", " +
                                     std::to_string(a.imag()) + ")");
        sig.signs[x] = a.real() < 0 ? -1 : 1;
    }
    sig.leakage = std::max(0.0, s.norm_squared() - inside);
    return sig;
}

/// Probability mass outside the subspace where every qubit at or above
/// index `n` is |0>.
inline double aux_leakage(const Statevector& s, std::size_t n) {
    const std::size_t count = std::size_t{1} << n;
    double outside = 0.0;
    for (std::size_t i = count; i < s.dim(); ++i) outside += std::norm(s[i]);
    return outside;
}

using Distribution = std::vector<double>;

/// Marginal distribution of one register's value.
inline Distribution probabilities(const Statevector& s, std::string_view reg_name) {
    std::size_t off = 0, width = 0;
    bool found = false;
    for (const auto& r : s.registers()) {
        if (r.name == reg_name) {
            width = r.size;
            found = true;
            break;
        }
        off += r.size;
    }
    if (!found) throw std::out_of_range("unknown register '" + std::string(reg_name) + "'");

    Distribution d(std::size_t{1} << width, 0.0);
    const std::uint64_t mask = (std::uint64_t{1} << width) - 1;
    for (std::uint64_t i = 0; i < s.dim(); ++i) d[(i >> off) & mask] += std::norm(s[i]);
    return d;
}

struct Histogram {
    std::map<std::uint64_t, std::uint64_t> counts;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::string rng = "mt19937_64/inverse-cdf";
};

/// Multinomial draw of `shots` outcomes; identical (d, shots, seed) give
/// identical histograms on every platform.
inline Histogram sample(const Distribution& d, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) throw std::invalid_argument("shots must be positive");
    if (d.empty()) throw std::invalid_argument("empty distribution");
    std::vector<double> cdf(d.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] < 0.0) throw std::invalid_argument("negative probability");
        acc += d[i];
        cdf[i] = acc;
    }
    if (acc <= 0.0) throw std::invalid_argument("distribution has no mass");

    Histogram h;
    h.shots = shots;
    h.seed = seed;
    std::mt19937_64 gen(seed);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53 * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        // u < acc, so `it` is never end(); upper_bound skips zero-mass bins
        ++h.counts[static_cast<std::uint64_t>(it - cdf.begin())];
    }
    return h;
}

inline void write_distribution_csv(std::ostream& os, const Distribution& d) {
    os << "value,probability\n";
    os.precision(17);
    for (std::size_t v = 0; v < d.size(); ++v) os << v << ',' << d[v] << '\n';
}

inline void write_histogram_csv(std::ostream& os, const Histogram& h) {
    os << "value,count\n";
    for (const auto& [v, c] : h.counts) os << v << ',' << c << '\n';
}

} // namespace qmult

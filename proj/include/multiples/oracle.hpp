#pragma once

// Phase oracles over integers encoded in an n-qubit input register:
// `x mod k == r` (with r = 0 giving the multiples-of-k oracle), the
// less-than and range comparators, and their composition.
//
// Oracle circuits use three registers: "q" (input, n qubits), "rq"
// (remainder, n_k qubits) and "anc" (2 ancillas: overflow, comparison).

#include "multiples/circuit.hpp"
#include "multiples/qft_arithmetic.hpp"

#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qmult {

struct LessThan {
    std::uint64_t bound = 0; // marks x < bound
    bool operator==(const LessThan&) const = default;
};

struct Range {
    std::uint64_t lo = 0; // marks lo <= x <= hi
    std::uint64_t hi = 0;
    bool operator==(const Range&) const = default;
};

using InnerOracle = std::variant<std::monostate, LessThan, Range>;

struct OracleSpec {
    std::uint64_t k = 2;
    std::uint64_t r = 0;
    std::size_t n = 1;
    InnerOracle inner{};

    bool operator==(const OracleSpec&) const = default;

    void validate() const {
        if (k < 2) throw std::invalid_argument("k must be at least 2");
        if (r >= k) throw std::invalid_argument("r must be below k");
        if (n < 1) throw std::invalid_argument("n must be at least 1");
        if (n > 62) throw std::invalid_argument("n too large");
        const std::uint64_t N = std::uint64_t{1} << n;
        if (const auto* lt = std::get_if<LessThan>(&inner)) {
            if (lt->bound == 0) throw std::invalid_argument("less-than bound must be positive");
            if (lt->bound > N) throw std::invalid_argument("less-than bound exceeds 2^n");
        } else if (const auto* rg = std::get_if<Range>(&inner)) {
            if (rg->lo > rg->hi) throw std::invalid_argument("range lower bound exceeds upper bound");
            if (rg->hi >= N) throw std::invalid_argument("range upper bound must be below 2^n");
        }
    }
};

/// Flat key-value form, e.g. "k=9 r=5 n=5 inner=range:12:28".
inline std::string to_string(const OracleSpec& s) {
    std::ostringstream os;
    os << "k=" << s.k << " r=" << s.r << " n=" << s.n << " inner=";
    if (const auto* lt = std::get_if<LessThan>(&s.inner))
        os << "less-than:" << lt->bound;
    else if (const auto* rg = std::get_if<Range>(&s.inner))
        os << "range:" << rg->lo << ':' << rg->hi;
    else
        os << "none";
    return os.str();
}

namespace detail {

inline std::uint64_t parse_u64(std::string_view text, std::string_view what) {
    std::uint64_t v = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || text.empty())
        throw std::invalid_argument("invalid " + std::string(what) + ": '" + std::string(text) + "'");
    return v;
}

} // namespace detail

/// Parses the inner-oracle grammar: "none", "less-than:M", "range:A:B".
inline InnerOracle parse_inner(std::string_view text) {
    if (text.empty() || text == "none") return std::monostate{};
    constexpr std::string_view lt = "less-than:", rg = "range:";
    if (text.substr(0, lt.size()) == lt) return LessThan{detail::parse_u64(text.substr(lt.size()), "less-than bound")};
    if (text.substr(0, rg.size()) == rg) {
        auto rest = text.substr(rg.size());
        const auto colon = rest.find(':');
        if (colon == std::string_view::npos) throw std::invalid_argument("range needs two bounds: range:A:B");
        const Range r{detail::parse_u64(rest.substr(0, colon), "range bound"),
                      detail::parse_u64(rest.substr(colon + 1), "range bound")};
        if (r.lo > r.hi) throw std::invalid_argument("range lower bound exceeds upper bound");
        return r;
    }
    throw std::invalid_argument("unknown inner oracle '" + std::string(text) + "'");
}

inline OracleSpec parse_oracle_spec(std::string_view text) {
    OracleSpec s;
    bool have_k = false, have_n = false;
    std::istringstream is{std::string(text)};
    std::string tok;
    while (is >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("expected key=value, got '" + tok + "'");
        const std::string key = tok.substr(0, eq);
        const std::string_view val = std::string_view(tok).substr(eq + 1);
        if (key == "k") {
            s.k = detail::parse_u64(val, "k");
            have_k = true;
        } else if (key == "r") {
            s.r = detail::parse_u64(val, "r");
        } else if (key == "n") {
            s.n = detail::parse_u64(val, "n");
            have_n = true;
        } else if (key == "inner") {
            s.inner = parse_inner(val);
        } else {
            throw std::invalid_argument("unknown key '" + key + "'");
        }
    }
    if (!have_k || !have_n) throw std::invalid_argument("oracle spec needs k and n");
    s.validate();
    return s;
}

struct RemainderTable {
    std::uint64_t k = 2;
    std::vector<std::uint64_t> values; // values[i] = 2^i mod k
};

/// 2^i mod k for i < n by doubling with a conditional subtraction.
/// Generic so it can be instantiated over any integer-like type providing
/// +, -, < and construction from an integer; no division is needed.
template <class Int>
std::vector<Int> remainders_of_powers_of_two(const Int& k, std::size_t n) {
    std::vector<Int> out;
    out.reserve(n);
    if (n == 0) return out;
    Int r(1);
    out.push_back(r);
    for (std::size_t i = 1; i < n; ++i) {
        Int doubled = r + r;
        if (doubled < k)
            r = doubled;
        else
            r = doubled - k;
        out.push_back(r);
    }
    return out;
}

inline RemainderTable remainders_pow2(std::uint64_t k, std::size_t n) {
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (k > (std::uint64_t{1} << 62)) throw std::invalid_argument("k too large");
    return {k, remainders_of_powers_of_two<std::uint64_t>(k, n)};
}

/// Qubits needed to hold every remainder 0..k-1, i.e. bit length of k-1.
inline std::size_t remainder_register_width(std::uint64_t k) {
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    return bit_length(k - 1);
}

/// All x in [0, N) with x mod k == r, by direct stepping.
inline std::vector<std::uint64_t> classical_multiples(std::uint64_t k, std::uint64_t r, std::uint64_t N) {
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    if (r >= k) throw std::invalid_argument("r must be below k");
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = r; x < N; x += k) out.push_back(x);
    return out;
}

namespace detail {

inline Circuit oracle_frame(std::uint64_t k, std::size_t n, std::string label) {
    Circuit c({{"q", n}, {"rq", remainder_register_width(k)}, {"anc", 2}}, std::move(label));
    return c;
}

// Controlled +r_i mod k (or its inverse) for every input qubit q_i.
inline void accumulate_remainders(Circuit& c, std::uint64_t k, std::size_t n, bool uncompute) {
    const std::size_t nk = remainder_register_width(k);
    const auto table = remainders_pow2(k, n);

    // block qubits: val = rq[0..nk) + anc[0], cmp = anc[1]
    std::vector<std::size_t> block_map = c.qubits("rq");
    block_map.push_back(c.qubit("anc", 0));
    block_map.push_back(c.qubit("anc", 1));

    auto step = [&](std::size_t i) {
        const auto ri = table.values[i];
        if (ri == 0) return;
        const ModAddParams p{ri, k, nk};
        const auto block = uncompute ? modulo_sub_const(p) : modulo_add_const(p);
        // the block has nk+2 qubits; one extra slot for the control
        Circuit framed({{"val", nk + 1}, {"cmp", 1}, {"ctl", 1}});
        framed.append(block);
        const std::size_t ctl[] = {nk + 2};
        auto controlled = add_controls(framed, ctl);
        auto map = block_map;
        map.push_back(c.qubit("q", i));
        c.append(controlled, map);
    };
    if (uncompute)
        for (std::size_t i = n; i-- > 0;) step(i);
    else
        for (std::size_t i = 0; i < n; ++i) step(i);
}

// X on every remainder qubit whose bit in r is 0.
inline void encode_remainder_pattern(Circuit& c, std::uint64_t r) {
    const auto rq = c.qubits("rq");
    for (std::size_t j = 0; j < rq.size(); ++j)
        if (!((r >> j) & 1U)) c.x(rq[j]);
}

inline Circuit oracle_with_marking(const OracleSpec& spec, const Circuit* inner) {
    auto c = oracle_frame(spec.k, spec.n, to_string(spec));
    if (spec.k > (std::uint64_t{1} << spec.n))
        c.set_label(c.label() + " [warning: k > 2^n, only x=0 can be marked]");
    accumulate_remainders(c, spec.k, spec.n, false);

    encode_remainder_pattern(c, spec.r);
    auto rq = c.qubits("rq");
    if (inner == nullptr) {
        const std::size_t target = rq.back();
        rq.pop_back();
        c.mcz(rq, target);
    } else {
        Circuit embedded(c.registers());
        embedded.append(*inner, c.qubits("q"));
        c.append(add_controls(embedded, rq));
    }
    encode_remainder_pattern(c, spec.r);

    accumulate_remainders(c, spec.k, spec.n, true);
    return c;
}

} // namespace detail

/// Phase -1 on every input x with x mod k == 0; auxiliary registers end in |0>.
inline Circuit multiples_oracle(std::uint64_t k, std::size_t n) {
    OracleSpec spec{k, 0, n, {}};
    spec.validate();
    return detail::oracle_with_marking(spec, nullptr);
}

/// Phase -1 on every input x with x mod k == r.
inline Circuit remainder_oracle(const OracleSpec& spec) {
    spec.validate();
    if (!std::holds_alternative<std::monostate>(spec.inner))
        throw std::invalid_argument("remainder_oracle takes no inner oracle; use composed_oracle");
    return detail::oracle_with_marking(spec, nullptr);
}

/// Ancilla-free phase -1 on x < m over n qubits. [0, m) splits into one
/// dyadic block per set bit i of m: inputs agreeing with m above bit i and
/// holding 0 at bit i.
inline Circuit less_than_oracle(std::uint64_t m, std::size_t n) {
    if (n < 1 || n > 62) throw std::invalid_argument("n out of range");
    if (m == 0) throw std::invalid_argument("less-than bound must be positive");
    const std::uint64_t N = std::uint64_t{1} << n;
    if (m > N) throw std::invalid_argument("less-than bound exceeds 2^n");

    Circuit c({{"q", n}}, "less_than:" + std::to_string(m));
    if (m == N) {
        // -1 on everything: X Z X Z = -I
        c.x(0).z(0).x(0).z(0);
        return c;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!((m >> i) & 1U)) continue;
        std::vector<std::size_t> flips{i};
        std::vector<std::size_t> ctrls;
        for (std::size_t j = i + 1; j < n; ++j) {
            ctrls.push_back(j);
            if (!((m >> j) & 1U)) flips.push_back(j);
        }
        for (auto q : flips) c.x(q);
        c.mcz(ctrls, i);
        for (auto q : flips) c.x(q);
    }
    return c;
}

/// Phase -1 on lo <= x <= hi: less_than(hi + 1) followed by less_than(lo).
inline Circuit range_oracle(std::uint64_t lo, std::uint64_t hi, std::size_t n) {
    if (n < 1 || n > 62) throw std::invalid_argument("n out of range");
    if (lo > hi) throw std::invalid_argument("range lower bound exceeds upper bound");
    if (hi >= (std::uint64_t{1} << n)) throw std::invalid_argument("range upper bound must be below 2^n");
    Circuit c({{"q", n}}, "range:" + std::to_string(lo) + ":" + std::to_string(hi));
    c.append(less_than_oracle(hi + 1, n));
    if (lo > 0) c.append(less_than_oracle(lo, n));
    return c;
}

inline Circuit inner_oracle(const InnerOracle& inner, std::size_t n) {
    if (const auto* lt = std::get_if<LessThan>(&inner)) return less_than_oracle(lt->bound, n);
    if (const auto* rg = std::get_if<Range>(&inner)) return range_oracle(rg->lo, rg->hi, n);
    throw std::invalid_argument("no inner oracle");
}

/// Remainder oracle whose central marking is replaced by the inner
/// comparator, controlled on the remainder register matching r.
inline Circuit composed_oracle(const OracleSpec& spec) {
    spec.validate();
    if (std::holds_alternative<std::monostate>(spec.inner))
        throw std::invalid_argument("composed_oracle needs an inner oracle");
    const auto inner = inner_oracle(spec.inner, spec.n);
    return detail::oracle_with_marking(spec, &inner);
}

/// Dispatches on whether the spec carries an inner comparator.
inline Circuit build_oracle(const OracleSpec& spec) {
    return std::holds_alternative<std::monostate>(spec.inner) ? remainder_oracle(spec) : composed_oracle(spec);
}

/// Indicator signature (+1/-1 per input) computed classically.
inline std::vector<int> expected_signature(const OracleSpec& spec) {
    spec.validate();
    const std::uint64_t N = std::uint64_t{1} << spec.n;
    std::vector<int> sig(N, 1);
    for (auto x : classical_multiples(spec.k, spec.r, N)) {
        bool inner_ok = true;
        if (const auto* lt = std::get_if<LessThan>(&spec.inner)) inner_ok = x < lt->bound;
        else if (const auto* rg = std::get_if<Range>(&spec.inner)) inner_ok = rg->lo <= x && x <= rg->hi;
        if (inner_ok) sig[x] = -1;
    }
    return sig;
}

} // namespace qmult

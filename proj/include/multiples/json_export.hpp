#pragma once

// JSON forms of the histogram and depth report (nlohmann/json).

#include "multiples/statevector.hpp"
#include "multiples/transpile.hpp"

#include <json.hpp>

#include <ostream>

namespace qmult {

inline nlohmann::json to_json(const Histogram& h) {
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [v, c] : h.counts) counts[std::to_string(v)] = c;
    return {{"shots", h.shots}, {"seed", h.seed}, {"rng", h.rng}, {"counts", counts}};
}

inline nlohmann::json to_json(const DepthReport& report) {
    auto rows = nlohmann::json::array();
    for (const auto& r : report.rows)
        rows.push_back({{"k", r.k}, {"n_k", r.n_k}, {"n", r.n}, {"gates", r.gates}, {"cx", r.cx}, {"depth", r.depth}});
    return {{"rows", rows}};
}

inline void write_histogram_json(std::ostream& os, const Histogram& h) { os << to_json(h).dump(2) << '\n'; }

} // namespace qmult

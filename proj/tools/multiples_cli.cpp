// multiples_cli: build, simulate, measure and export "multiples of" oracles.
//
// Exit codes: 0 success, 2 invalid input, 3 I/O failure.

#include "multiples/json_export.hpp"
#include "multiples/multiples.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace qmult;

namespace {

constexpr int exit_invalid = 2;
constexpr int exit_io = 3;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::uint64_t k = 0;
    std::uint64_t r = 0;
    std::size_t n = 0;
    std::size_t reps = 1;
    std::string inner;
    std::uint64_t shots = 20000;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";

    OracleSpec spec() const {
        OracleSpec s{k, r, n, inner.empty() ? InnerOracle{} : parse_inner(inner)};
        s.validate();
        return s;
    }
};

std::string default_out_dir() {
    const char* env = std::getenv("MULTIPLES_OUT_DIR");
    return env && *env ? env : ".";
}

std::ofstream open_out(const fs::path& p) {
    std::error_code ec;
    if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
    std::ofstream f(p, std::ios::binary);
    if (!f) throw IoError("cannot write " + p.string());
    return f;
}

void close_out(std::ofstream& f, const fs::path& p) {
    f.close();
    if (!f) throw IoError("failed writing " + p.string());
}

// "4..12" or "4,6,8"
template <class T>
std::vector<T> parse_list(const std::string& text, const char* what) {
    auto num = [&](std::string_view s) { return static_cast<T>(detail::parse_u64(s, what)); };
    std::vector<T> out;
    if (auto dots = text.find(".."); dots != std::string::npos) {
        const T lo = num(std::string_view(text).substr(0, dots)), hi = num(std::string_view(text).substr(dots + 2));
        if (lo > hi) throw std::invalid_argument(std::string(what) + " range is empty");
        for (T v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(num(item));
    if (out.empty()) throw std::invalid_argument(std::string(what) + " list is empty");
    return out;
}

std::string set_text(const std::vector<std::uint64_t>& xs) {
    std::string s = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
    return s + "}";
}

int cmd_simulate(const RunConfig& cfg) {
    const auto spec = cfg.spec();
    if (cfg.reps < 1) throw std::invalid_argument("--reps must be at least 1");
    if (cfg.shots < 1) throw std::invalid_argument("--shots must be at least 1");
    if (cfg.format != "csv" && cfg.format != "json") throw std::invalid_argument("--format must be csv or json");
    const auto oracle = build_oracle(spec);
    if (oracle.num_qubits() > max_simulated_qubits)
        throw std::invalid_argument("oracle needs " + std::to_string(oracle.num_qubits()) + " qubits; the simulator caps at " +
                                    std::to_string(max_simulated_qubits));

    std::vector<std::uint64_t> marked;
    const auto sig = expected_signature(spec);
    for (std::uint64_t x = 0; x < sig.size(); ++x)
        if (sig[x] < 0) marked.push_back(x);
    const std::uint64_t N = sig.size();

    const auto dist = probabilities(simulate(grover_circuit({oracle, spec.n, cfg.reps})), "q");
    double exact = 0;
    for (auto x : marked) exact += dist[x];
    const auto hist = sample(dist, cfg.shots, cfg.seed);
    std::uint64_t hits = 0;
    for (auto x : marked)
        if (auto it = hist.counts.find(x); it != hist.counts.end()) hits += it->second;

    const fs::path dir = cfg.out.empty() ? default_out_dir() : cfg.out;
    const fs::path dpath = dir / ("distribution." + cfg.format), hpath = dir / ("histogram." + cfg.format);
    auto df = open_out(dpath);
    auto hf = open_out(hpath);
    if (cfg.format == "csv") {
        write_distribution_csv(df, dist);
        write_histogram_csv(hf, hist);
    } else {
        nlohmann::json probs = nlohmann::json::array();
        for (double p : dist) probs.push_back(p);
        df << nlohmann::json{{"spec", to_string(spec)}, {"repetitions", cfg.reps}, {"probabilities", probs}}.dump(2) << '\n';
        write_histogram_json(hf, hist);
    }
    close_out(df, dpath);
    close_out(hf, hpath);

    std::cout << "spec: " << to_string(spec) << '\n'
              << "repetitions: " << cfg.reps << '\n'
              << "marked: " << set_text(marked) << " (M=" << marked.size() << " of N=" << N << ")\n";
    std::cout.setf(std::ios::fixed);
    std::cout.precision(6);
    std::cout << "exact_probability: " << exact << '\n';
    if (marked.empty()) {
        std::cout << "predicted_probability: n/a (nothing marked)\namplification_factor: n/a\n";
    } else {
        std::cout << "predicted_probability: " << predicted_probability(marked.size(), N, cfg.reps) << '\n'
                  << "amplification_factor: " << exact / double(marked.size()) * double(N) << '\n';
    }
    std::cout << "sampled_fraction: " << double(hits) / double(cfg.shots) << " (" << cfg.shots << " shots, seed "
              << cfg.seed << ")\n"
              << "wrote: " << dpath.string() << ", " << hpath.string() << '\n';
    return 0;
}

int cmd_depth(const std::string& ks_text, const std::string& ns_text, const std::string& out) {
    const auto ks = parse_list<std::uint64_t>(ks_text, "k");
    const auto ns = parse_list<std::size_t>(ns_text, "n");
    for (auto k : ks)
        if (k < 2) throw std::invalid_argument("every k must be at least 2");
    for (auto n : ns)
        if (n < 1 || n > 40) throw std::invalid_argument("every n must be in 1..40");
    const auto report = depth_sweep(ks, ns);

    const fs::path path = out.empty() ? fs::path(default_out_dir()) / "depth.csv" : fs::path(out);
    auto f = open_out(path);
    write_depth_csv(f, report);
    close_out(f, path);

    std::cout << "rows: " << report.rows.size() << "\nwrote: " << path.string() << '\n';
    if (ns.size() >= 3) {
        std::cout << "k,slope,intercept,r2\n";
        for (auto k : ks) {
            std::cout << k << ',';
            write_fit(std::cout, linear_fit(report, k));
            std::cout << '\n';
        }
    }
    return 0;
}

int cmd_export(const RunConfig& cfg) {
    const auto spec = cfg.spec();
    const auto t = transpile_basis(build_oracle(spec));
    const fs::path path = cfg.out.empty() ? fs::path(default_out_dir()) / "oracle.qasm" : fs::path(cfg.out);
    auto f = open_out(path);
    f << "// " << to_string(spec) << '\n' << to_qasm(t);
    close_out(f, path);
    std::cout << "spec: " << to_string(spec) << "\nqubits: " << t.num_qubits() << "\ngates: " << t.size()
              << "\ndepth: " << structural_depth(t) << "\nwrote: " << path.string() << '\n';
    return 0;
}

void oracle_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--k", cfg.k, "modulus, at least 2")->required();
    sub->add_option("--r", cfg.r, "remainder to mark, below k")->capture_default_str();
    sub->add_option("--n", cfg.n, "input register width")->required();
    sub->add_option("--inner", cfg.inner, "comparator to compose with: less-than:M (x < M) or range:A:B (A <= x <= B)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phase oracles marking multiples of k (or x mod k == r), with exact simulation"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto* sim = app.add_subcommand("simulate", "run Grover search with the oracle and write distribution + histogram");
    oracle_options(sim, cfg);
    sim->add_option("--reps", cfg.reps, "Grover repetitions")->capture_default_str();
    sim->add_option("--shots", cfg.shots, "sampled shots")->capture_default_str();
    sim->add_option("--seed", cfg.seed, "sampling seed")->capture_default_str();
    sim->add_option("--format", cfg.format, "csv or json")->capture_default_str();
    sim->add_option("-o,--out", cfg.out, "output directory (default $MULTIPLES_OUT_DIR or .)");

    std::string ks_text, ns_text, depth_out;
    auto* depth = app.add_subcommand("depth", "transpiled-depth sweep over k and n, with per-k linear fits");
    depth->add_option("--k", ks_text, "k values: 3,5,6 or 3..9")->required();
    depth->add_option("--n", ns_text, "n values: 4..12 or 4,6,8")->required();
    depth->add_option("-o,--out", depth_out, "CSV path (default $MULTIPLES_OUT_DIR/depth.csv)");

    RunConfig ecfg;
    auto* exp = app.add_subcommand("export", "write the oracle, transpiled to {rz,sx,x,p,cx}, as OpenQASM 2.0");
    oracle_options(exp, ecfg);
    exp->add_option("-o,--out", ecfg.out, "QASM path (default $MULTIPLES_OUT_DIR/oracle.qasm)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_invalid;
    }

    try {
        if (*sim) return cmd_simulate(cfg);
        if (*depth) return cmd_depth(ks_text, ns_text, depth_out);
        return cmd_export(ecfg);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_invalid;
    }
}

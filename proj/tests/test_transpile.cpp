#include "test_support.hpp"

#include <gtest/gtest.h>

#include <map>
#include <sstream>

using namespace qmult;
using qmult::testing::max_abs_diff;

namespace {

// exact equality including global phase, on every basis input
void expect_same_action(const Circuit& a, const Circuit& b, double tol = 1e-9) {
    ASSERT_EQ(a.num_qubits(), b.num_qubits());
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << a.num_qubits()); ++x)
        EXPECT_LT(max_abs_diff(simulate(a, x), simulate(b, x)), tol) << "input " << x;
}

std::vector<std::uint64_t> non_powers_of_two(std::size_t nk) {
    std::vector<std::uint64_t> ks;
    for (std::uint64_t k = (std::uint64_t{1} << (nk - 1)) + 1; k < (std::uint64_t{1} << nk); ++k) ks.push_back(k);
    return ks;
}

} // namespace

TEST(Transpile, Hadamard) {
    Circuit c({{"q", 1}});
    c.h(0);
    auto t = transpile_basis(c);
    EXPECT_TRUE(in_basis(t));
    expect_same_action(c, t);
}

TEST(Transpile, ControlledZ) {
    Circuit c({{"q", 2}});
    c.cz(0, 1);
    auto t = transpile_basis(c);
    EXPECT_TRUE(in_basis(t));
    EXPECT_EQ(two_qubit_count(t), 1u);
    expect_same_action(c, t);
}

TEST(Transpile, FourControlZ) {
    Circuit c({{"q", 5}});
    c.mcz({0, 1, 2, 3}, 4);
    auto t = transpile_basis(c);
    EXPECT_TRUE(in_basis(t));
    for (std::uint64_t x = 0; x < 32; ++x) {
        auto s = simulate(t, x);
        EXPECT_LT(std::abs(s[x] - amplitude(x == 31 ? -1.0 : 1.0)), 1e-9) << x;
    }
}

TEST(Transpile, InBasis) {
    Circuit c({{"q", 2}});
    c.rz(0.3, 0).sx(1).x(0).p(0.1, 1).cx(0, 1);
    EXPECT_TRUE(in_basis(c));
    c.h(0);
    EXPECT_FALSE(in_basis(c));
    EXPECT_FALSE(in_basis(multiples_oracle(3, 2)));
}

TEST(Transpile, EveryGateKindWithUpToFourControls) {
    for (auto kind : {GateKind::X, GateKind::H, GateKind::Z, GateKind::P, GateKind::RZ, GateKind::SX, GateKind::SXdg,
                      GateKind::SWAP})
        for (std::size_t nc = 0; nc <= 4; ++nc) {
            Circuit c({{"q", nc + 2}});
            std::vector<std::size_t> ctrls(nc);
            std::iota(ctrls.begin(), ctrls.end(), std::size_t{0});
            c.add({kind, 0.7, nc, kind == GateKind::SWAP ? nc + 1 : no_qubit, ctrls});
            auto t = transpile_basis(c);
            EXPECT_TRUE(in_basis(t)) << gate_name(kind) << ' ' << nc;
            expect_same_action(c, t);
        }
}

TEST(Transpile, PropertyRandomCircuitsExact) {
    std::mt19937_64 gen(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t q = 2 + trial % 5;
        auto c = qmult::testing::random_circuit(q, 12, q - 1, gen);
        c.add_global_phase(0.25 * trial);
        auto t = transpile_basis(c);
        EXPECT_TRUE(in_basis(t));
        expect_same_action(c, t);
    }
}

TEST(Transpile, PropertyPreservesOracleSignatures) {
    for (std::size_t n = 1; n <= 5; ++n)
        for (std::uint64_t k = 2; k <= 9; ++k) {
            auto o = multiples_oracle(k, n);
            if (o.num_qubits() > 10) continue;
            auto t = transpile_basis(o);
            ASSERT_TRUE(in_basis(t));
            EXPECT_EQ(phase_signature(t, n).signs, phase_signature(o, n).signs) << k << ' ' << n;
        }
    for (auto spec : {OracleSpec{5, 0, 3, LessThan{6}}, OracleSpec{3, 1, 4, Range{2, 11}}}) {
        auto o = build_oracle(spec);
        ASSERT_LE(o.num_qubits(), 10u);
        EXPECT_EQ(phase_signature(transpile_basis(o), spec.n).signs, expected_signature(spec));
    }
}

TEST(Transpile, ControlledTranspiledCircuitStaysExact) {
    Circuit c({{"q", 3}});
    c.h(0).cz(0, 1);
    auto t = transpile_basis(c);
    std::vector<std::size_t> ctl{2};
    auto a = add_controls(c, ctl), b = add_controls(t, ctl);
    expect_same_action(a, b);
}

TEST(TranspiledDepth, Examples) {
    EXPECT_EQ(transpiled_depth(Circuit({{"q", 2}})), 0u);
    Circuit c({{"q", 2}});
    c.cx(0, 1);
    EXPECT_EQ(transpiled_depth(c), 1u);
}

TEST(TranspiledDepth, StrictlyIncreasingInInputWidth) {
    std::size_t prev = 0;
    for (std::size_t n = 4; n <= 12; ++n) {
        const auto d = transpiled_depth(multiples_oracle(5, n));
        EXPECT_GT(d, prev) << n;
        prev = d;
    }
}

// c = 2 uses the six-CX Toffoli; from 3 controls on, each extra control
// costs a constant number of layers
TEST(TranspiledDepth, MultiControlledZLinearInControls) {
    std::vector<double> cs, ds;
    for (std::size_t nc = 2; nc <= 10; ++nc) {
        Circuit c({{"q", nc + 1}});
        std::vector<std::size_t> ctrls(nc);
        std::iota(ctrls.begin(), ctrls.end(), std::size_t{0});
        c.mcz(ctrls, nc);
        cs.push_back(double(nc));
        ds.push_back(double(transpiled_depth(c)));
    }
    EXPECT_GE(least_squares(cs, ds).r2, 0.98);
    for (std::size_t i = 2; i + 1 < ds.size(); ++i) EXPECT_EQ(ds[i + 1] - ds[i], ds[2] - ds[1]);
}

TEST(DepthSweep, Cardinality) {
    auto r = depth_sweep({3}, {4, 5, 6});
    ASSERT_EQ(r.rows.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(r.rows[i].k, 3u);
        EXPECT_EQ(r.rows[i].n_k, 2u);
        EXPECT_EQ(r.rows[i].n, 4 + i);
        EXPECT_LE(r.rows[i].cx, r.rows[i].gates);
        EXPECT_LE(r.rows[i].depth, r.rows[i].gates);
    }
    auto big = depth_sweep({3, 5, 6}, {4, 6});
    ASSERT_EQ(big.rows.size(), 6u);
    EXPECT_EQ(big.rows[2].k, 5u);
    EXPECT_EQ(big.rows[3].n, 6u);
}

TEST(DepthSweep, Deterministic) {
    auto a = depth_sweep({5, 3}, {4, 5}), b = depth_sweep({5, 3}, {4, 5});
    EXPECT_EQ(a.rows, b.rows);
}

TEST(DepthSweep, Errors) {
    EXPECT_THROW(depth_sweep({3}, {}), std::invalid_argument);
    EXPECT_THROW(depth_sweep({}, {4}), std::invalid_argument);
    EXPECT_THROW(depth_sweep({1}, {4}), std::invalid_argument);
}

TEST(LinearFit, Examples) {
    DepthReport line{{{3, 2, 4, 0, 0, 10}, {3, 2, 5, 0, 0, 13}, {3, 2, 6, 0, 0, 16}}};
    auto f = linear_fit(line, 3);
    EXPECT_NEAR(f.slope, 3.0, 1e-12);
    EXPECT_NEAR(f.intercept, -2.0, 1e-12);
    EXPECT_NEAR(f.r2, 1.0, 1e-12);

    DepthReport flat{{{3, 2, 4, 0, 0, 7}, {3, 2, 5, 0, 0, 7}, {3, 2, 6, 0, 0, 7}}};
    auto g = linear_fit(flat, 3);
    EXPECT_EQ(g.slope, 0.0);
    EXPECT_EQ(g.r2, 1.0);

    EXPECT_THROW(linear_fit(line, 5), std::invalid_argument);
    DepthReport two{{{3, 2, 4, 0, 0, 7}, {3, 2, 5, 0, 0, 7}}};
    EXPECT_THROW(linear_fit(two, 3), std::invalid_argument);
}

TEST(LinearFit, DepthLinearInInputWidth) {
    auto r = depth_sweep({5}, {4, 5, 6, 7, 8, 9, 10, 11, 12});
    auto f = linear_fit(r, 5);
    EXPECT_GT(f.slope, 0.0);
    EXPECT_GE(f.r2, 0.99);
}

// depth is governed by the remainder-register width: flat inside each
// width group, rising between groups
TEST(DepthSweep, PlateausByRemainderWidth) {
    double prev_mean = 0;
    for (std::size_t nk = 3; nk <= 5; ++nk) {
        auto r = depth_sweep(non_powers_of_two(nk), {7});
        double lo = 1e300, hi = 0, mean = 0;
        for (const auto& row : r.rows) {
            EXPECT_EQ(row.n_k, nk);
            lo = std::min(lo, double(row.depth));
            hi = std::max(hi, double(row.depth));
            mean += double(row.depth);
        }
        mean /= double(r.rows.size());
        EXPECT_LT((hi - lo) / mean, 0.15) << "n_k=" << nk;
        EXPECT_GE(mean, prev_mean);
        prev_mean = mean;
    }
}

TEST(DepthExport, CsvAndFit) {
    std::ostringstream csv, fit;
    write_depth_csv(csv, {{{3, 2, 4, 10, 4, 8}}});
    EXPECT_EQ(csv.str(), "k,n_k,n,gates,cx,depth\n3,2,4,10,4,8\n");
    write_fit(fit, {2.5, -1, 0.75});
    EXPECT_EQ(fit.str(), "2.5,-1,0.75");
}

#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace qmult;

namespace {

double marked_probability(const Circuit& g, const std::vector<std::uint64_t>& marked) {
    auto d = probabilities(simulate(g), "q");
    double p = 0;
    for (auto x : marked) p += d[x];
    return p;
}

} // namespace

TEST(Diffuser, ReflectsAboutUniformState) {
    // D|0> = 2|s><s|0> - |0>
    for (std::size_t n = 1; n <= 4; ++n) {
        const double N = double(1u << n);
        auto s = simulate(diffuser(n));
        EXPECT_LT(std::abs(s[0] - amplitude(2.0 / N - 1.0)), 1e-12);
        for (std::size_t x = 1; x < s.dim(); ++x) EXPECT_LT(std::abs(s[x] - amplitude(2.0 / N)), 1e-12);
    }
}

TEST(Diffuser, FixesUniformState) {
    Circuit c({{"q", 3}});
    for (std::size_t q = 0; q < 3; ++q) c.h(q);
    c.append(diffuser(3));
    auto s = simulate(c);
    for (std::size_t x = 0; x < 8; ++x) EXPECT_LT(std::abs(s[x] - amplitude(1.0 / std::sqrt(8.0))), 1e-12);
}

TEST(Diffuser, Errors) { EXPECT_THROW(diffuser(0), std::invalid_argument); }

TEST(Grover, MultiplesOfThreeOnFourQubits) {
    auto p = marked_probability(grover_circuit({multiples_oracle(3, 4), 4, 1}), {0, 3, 6, 9, 12, 15});
    EXPECT_NEAR(p, 0.84375, 1e-9);
    EXPECT_NEAR(p, predicted_probability(6, 16, 1), 1e-9);
}

TEST(Grover, MultiplesOfFourteen) {
    const std::vector<std::uint64_t> m{0, 14, 28};
    EXPECT_NEAR(marked_probability(grover_circuit({multiples_oracle(14, 5), 5, 1}), m), 0.64599609375, 1e-9);
    EXPECT_NEAR(marked_probability(grover_circuit({multiples_oracle(14, 5), 5, 2}), m), 0.9997787475585938, 1e-9);
}

TEST(Grover, RemainderClass) {
    auto spec = OracleSpec{6, 3, 5, {}};
    EXPECT_NEAR(marked_probability(grover_circuit({build_oracle(spec), 5, 1}), classical_multiples(6, 3, 32)),
                0.88134765625, 1e-9);
}

// exact simulation agrees with the closed form across k, n, j
TEST(Grover, PropertyMatchesClosedForm) {
    for (std::size_t n = 2; n <= 6; ++n)
        for (std::uint64_t k : {2u, 3u, 5u, 6u, 7u}) {
            const std::uint64_t N = std::uint64_t{1} << n;
            auto marked = classical_multiples(k, 0, N);
            if (marked.size() * 2 > N) continue;
            const auto oracle = multiples_oracle(k, n);
            for (std::size_t j = 1; j <= 3; ++j) {
                auto d = probabilities(simulate(grover_circuit({oracle, n, j})), "q");
                double p = 0;
                for (auto x : marked) p += d[x];
                EXPECT_NEAR(p, predicted_probability(marked.size(), N, j), 1e-9) << k << ' ' << n << ' ' << j;
                // amplitude is shared equally inside the marked and unmarked sets
                for (auto x : marked) EXPECT_NEAR(d[x], d[marked[0]], 1e-10);
                const std::size_t u = marked[0] + 1;
                for (std::uint64_t x = 0; x < N; ++x)
                    if (x % k != 0) {
                        EXPECT_NEAR(d[x], d[u], 1e-10);
                    }
            }
        }
}

TEST(Grover, PlanValidation) {
    EXPECT_THROW(grover_circuit({multiples_oracle(3, 4), 4, 0}), std::invalid_argument);
    EXPECT_THROW(grover_circuit({multiples_oracle(3, 4), 5, 1}), std::invalid_argument);
}

TEST(PredictedProbability, Examples) {
    EXPECT_NEAR(predicted_probability(6, 16, 1), 0.84375, 1e-12);
    EXPECT_NEAR(predicted_probability(1, 4, 1), 1.0, 1e-12);
    EXPECT_NEAR(predicted_probability(3, 32, 0), 3.0 / 32, 1e-12);
    EXPECT_NEAR(predicted_probability(2, 32, 1), 0.47265625, 1e-12);
    EXPECT_THROW(predicted_probability(0, 16, 1), std::invalid_argument);
    EXPECT_THROW(predicted_probability(17, 16, 1), std::invalid_argument);
}

TEST(OptimalRepetitions, Examples) {
    EXPECT_EQ(optimal_repetitions(3, 32), 2u);
    EXPECT_EQ(optimal_repetitions(13, 64), 1u);
    EXPECT_EQ(optimal_repetitions(1, 4), 1u);
    EXPECT_EQ(optimal_repetitions(1, 1024), 25u);
    EXPECT_EQ(optimal_repetitions(16, 16), 1u);
}

#include <doctest.h>

#include <random>

#include "circon/dtw.hpp"

using namespace circon;

namespace {

std::vector<TimeSeries> fig2_series() {
    return {TimeSeries{{1, 10, 0, 0, 4}}, TimeSeries{{0, 2, 10, 0, 0}},
            TimeSeries{{0, 0, 0, 10, 0}}};
}

TimeSeries random_series(std::mt19937_64& rng, std::size_t max_len, int max_val) {
    const std::size_t n = 1 + rng() % max_len;
    std::vector<Rational> vals(n);
    for (auto& v : vals) v = static_cast<int>(rng() % (max_val + 1));
    return TimeSeries{std::move(vals)};
}

Rational min_cost_by_enumeration(const TimeSeries& x, const TimeSeries& y) {
    Rational best;
    bool first = true;
    enumerate_paths(x.length(), y.length(), [&](const WarpingPath& p) {
        Rational c = 0;
        for (const auto& [i, j] : p.pairs) {
            const Rational d = x.at(i) - y.at(j);
            c += d * d;
        }
        if (first || c < best) best = c, first = false;
    });
    return best;
}

}  // namespace

TEST_SUITE_BEGIN("dtw");

TEST_CASE("distance basics") {
    const TimeSeries x{{0, 1, 2}};
    CHECK(dtw_sq(x, x).first == 0);
    const TimeSeries y{{0, 3}};
    CHECK(dtw_sq(x, y).first == dtw_sq(y, x).first);
    CHECK(dtw_sq(x, y).first == 2);  // (0,0) (1,3)->4? no: warp 0|0, 1|?, 2|3
    const auto [d, path] = dtw_sq(x, y);
    CHECK(path.valid_for(3, 2));
    CHECK(path.pairs.front() == std::pair<std::size_t, std::size_t>{1, 1});
    CHECK(path.pairs.back() == std::pair<std::size_t, std::size_t>{3, 2});
}

TEST_CASE("warping path counts are Delannoy numbers") {
    CHECK(count_warping_paths(1, 1) == 1);
    CHECK(count_warping_paths(2, 2) == 3);
    CHECK(count_warping_paths(3, 3) == 13);
    CHECK(count_warping_paths(5, 5) == 321);
    CHECK(count_warping_paths(4, 2) == 7);
    for (std::size_t a = 1; a <= 4; ++a)
        for (std::size_t b = 1; b <= 4; ++b) {
            std::size_t seen = 0;
            enumerate_paths(a, b, [&](const WarpingPath& p) {
                CHECK(p.valid_for(a, b));
                ++seen;
            });
            CHECK(BigInt(seen) == count_warping_paths(a, b));
        }
}

TEST_CASE("enumeration guard trips") {
    CHECK_THROWS_AS(enumerate_paths(30, 30, [](const WarpingPath&) {}, 1000), GuardExceeded);
}

TEST_CASE("dynamic program equals path-enumeration minimum") {
    // Full enumeration at lengths <= 3, then sampled longer pairs.
    for (std::size_t la = 1; la <= 3; ++la)
        for (std::size_t lb = 1; lb <= 3; ++lb)
            for (std::size_t ca = 0; ca < std::size_t(1) << (2 * la); ++ca)
                for (std::size_t cb = 0; cb < std::size_t(1) << (2 * lb); ++cb) {
                    std::vector<Rational> va(la), vb(lb);
                    for (std::size_t i = 0; i < la; ++i) va[i] = int((ca >> (2 * i)) & 3) % 3;
                    for (std::size_t i = 0; i < lb; ++i) vb[i] = int((cb >> (2 * i)) & 3) % 3;
                    const TimeSeries x{va}, y{vb};
                    CHECK(dtw_sq(x, y).first == min_cost_by_enumeration(x, y));
                }
    std::mt19937_64 rng(61);
    for (int it = 0; it < 500; ++it) {
        const TimeSeries x = random_series(rng, 5, 2), y = random_series(rng, 5, 2);
        CHECK(dtw_sq(x, y).first == min_cost_by_enumeration(x, y));
    }
}

TEST_CASE("three series with one optimal mean of length five") {
    const auto series = fig2_series();
    const TimeSeries z{{Rational(1, 4), 1, 10, 0, Rational(4, 3)}};
    CHECK(fcost(z, series) == Rational(161, 12));

    const MeanSolution sol = solve_mean_exact(series, {.max_len = 5, .max_transitions = 50'000'000});
    CHECK(sol.cost == Rational(161, 12));
    CHECK(fcost(sol.mean, series) == sol.cost);
    for (std::size_t j = 0; j < series.size(); ++j)
        CHECK(sol.paths[j].valid_for(series[j].length(), sol.mean.length()));
}

TEST_CASE("exact mean matches the brute-force oracle") {
    std::mt19937_64 rng(67);
    for (int it = 0; it < 40; ++it) {
        std::vector<TimeSeries> inputs;
        const std::size_t k = 2 + rng() % 2;
        for (std::size_t j = 0; j < k; ++j) inputs.push_back(random_series(rng, 3, 2));
        std::size_t cap = 0;
        for (const auto& x : inputs) cap += x.length();
        const MeanSolution dp = solve_mean_exact(inputs, {.max_len = cap, .max_transitions = 50'000'000});
        const MeanSolution oracle = brute_force_mean_oracle(inputs, cap);
        CHECK(dp.cost == oracle.cost);
        CHECK(fcost(dp.mean, inputs) == dp.cost);
    }
}

TEST_CASE("alignment helpers agree with fcost on optimal paths") {
    const auto series = fig2_series();
    const MeanSolution sol = solve_mean_exact(series, {.max_len = 5, .max_transitions = 50'000'000});
    CHECK(alignment_cost(sol.mean, series, sol.paths) == sol.cost);
    const TimeSeries rebuilt =
        optimal_values_for_alignment(sol.paths, series, sol.mean.length());
    CHECK(alignment_cost(rebuilt, series, sol.paths) <= sol.cost);
}

TEST_CASE("length cap is reported") {
    const std::vector<TimeSeries> inputs = {TimeSeries{{0, 5, 0, 5}}, TimeSeries{{5, 0, 5, 0}}};
    const MeanSolution sol = solve_mean_exact(inputs, {.max_len = 1, .max_transitions = 50'000'000});
    CHECK(sol.mean.length() == 1);
    CHECK(sol.hit_length_cap);
}

TEST_SUITE_END();

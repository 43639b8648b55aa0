#include <doctest.h>

#include <random>

#include "circon/mscs.hpp"

using namespace circon;

namespace {

MscsInstance fig1_instance() {
    return MscsInstance{{BinaryString::parse("10011"), BinaryString::parse("11000"),
                         BinaryString::parse("01001")},
                        tabulate_builtin(Builtin::sigma, 3),
                        std::nullopt};
}

MscsInstance random_instance(std::mt19937_64& rng, std::size_t max_k = 4, std::size_t max_n = 6) {
    const std::size_t k = 2 + rng() % (max_k - 1);
    const std::size_t n = 2 + rng() % (max_n - 1);
    std::vector<BinaryString> strings;
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<bool> bits(n);
        for (std::size_t i = 0; i < n; ++i) bits[i] = rng() & 1;
        strings.emplace_back(std::move(bits));
    }
    const Builtin fns[] = {Builtin::sigma, Builtin::phi, Builtin::ccs, Builtin::g};
    return MscsInstance{std::move(strings), tabulate_builtin(fns[rng() % 4], k), std::nullopt};
}

// Reference minimum by plain re-evaluation of every normalized shift.
MscsSolution reference_solve(const MscsInstance& inst) {
    const std::size_t n = inst.n();
    std::vector<std::size_t> delta(inst.k(), 0);
    MscsSolution best{ShiftVector{delta}, cost_of_shift(inst, ShiftVector{delta}), true, {}};
    while (true) {
        std::size_t j = inst.k() - 1;
        while (j > 0 && delta[j] + 1 == n) delta[j--] = 0;
        if (j == 0) break;
        ++delta[j];
        const Rational c = cost_of_shift(inst, ShiftVector{delta});
        if (c < best.cost) best = {ShiftVector{delta}, c, true, {}};
    }
    return best;
}

}  // namespace

TEST_SUITE_BEGIN("mscs");

TEST_CASE("three binary strings with the quadratic cost") {
    const MscsInstance inst = fig1_instance();
    CHECK(cost_of_shift(inst, ShiftVector{{0, 2, 1}}) == Rational(4, 3));
    const MscsSolution sol = solve_exhaustive(inst);
    CHECK(sol.cost == Rational(4, 3));
    // The optimum is shared by (0,1,1) and (0,2,1); ties break low.
    CHECK(sol.delta == ShiftVector{{0, 1, 1}});
    CHECK(sol.optimal);
}

TEST_CASE("histogram agrees with per-column costs") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 50; ++it) {
        const MscsInstance inst = random_instance(rng);
        std::vector<std::size_t> d(inst.k());
        for (auto& x : d) x = rng() % inst.n();
        const ShiftVector delta{d};
        const auto hist = weight_histogram(inst, delta);
        Rational from_hist = 0;
        std::size_t cols = 0;
        for (std::size_t w = 0; w < hist.size(); ++w) {
            from_hist += Rational(hist[w]) * inst.cost.at_weight(w);
            cols += hist[w];
        }
        CHECK(cols == inst.n());
        CHECK(from_hist == cost_of_shift(inst, delta));
    }
}

TEST_CASE("cost is invariant under simultaneous rotation") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 50; ++it) {
        const MscsInstance inst = random_instance(rng);
        std::vector<std::size_t> d(inst.k());
        for (auto& x : d) x = rng() % inst.n();
        std::vector<std::size_t> rotated = d;
        const std::size_t off = rng() % inst.n();
        for (auto& x : rotated) x = (x + off) % inst.n();
        CHECK(cost_of_shift(inst, ShiftVector{d}) == cost_of_shift(inst, ShiftVector{rotated}));
    }
}

TEST_CASE("solver equals reference minimum and breaks ties low") {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 120; ++it) {
        const MscsInstance inst = random_instance(rng);
        const MscsSolution fast = solve_exhaustive(inst);
        const MscsSolution ref = reference_solve(inst);
        CHECK(fast.cost == ref.cost);
        // The reference scans shift vectors in lexicographic order, so its
        // argmin is the canonical tie-break winner.
        CHECK(fast.delta == ref.delta);
    }
}

TEST_CASE("worker count does not change the answer") {
    std::mt19937_64 rng(37);
    for (int it = 0; it < 20; ++it) {
        const MscsInstance inst = random_instance(rng, 4, 8);
        const MscsSolution one = solve_exhaustive(inst, {.stride = {}, .threads = 1});
        const MscsSolution four = solve_exhaustive(inst, {.stride = {}, .threads = 4});
        CHECK(one.cost == four.cost);
        CHECK(one.delta == four.delta);
    }
}

TEST_CASE("stride restricts the candidate set") {
    std::mt19937_64 rng(41);
    for (int it = 0; it < 40; ++it) {
        MscsInstance inst = random_instance(rng);
        while (inst.n() % 2 != 0) inst = random_instance(rng);
        const MscsSolution full = solve_exhaustive(inst);
        const MscsSolution strided = solve_exhaustive(inst, {.stride = 2, .threads = 1});
        CHECK(strided.cost >= full.cost);
        for (std::size_t dj : strided.delta.deltas) CHECK(dj % 2 == 0);
        CHECK(strided.cost == [&] {
            Rational best;
            bool first = true;
            std::vector<std::size_t> d(inst.k(), 0);
            const std::size_t cand = inst.n() / 2;
            for (std::size_t code = 0;; ++code) {
                std::size_t x = code;
                for (std::size_t j = 1; j < inst.k(); ++j, x /= cand)
                    d[j] = 2 * (x % cand);
                if (code && d == std::vector<std::size_t>(inst.k(), 0)) break;
                const Rational c = cost_of_shift(inst, ShiftVector{d});
                if (first || c < best) best = c, first = false;
                std::size_t total = 1;
                for (std::size_t j = 1; j < inst.k(); ++j) total *= cand;
                if (code + 1 == total) break;
            }
            return best;
        }());
    }
}

TEST_CASE("target bookkeeping") {
    MscsInstance inst = fig1_instance();
    inst.target = Rational(4, 3);
    CHECK(solve_exhaustive(inst).meets_target == true);
    inst.target = Rational(5, 4);
    CHECK(solve_exhaustive(inst).meets_target == false);
}

TEST_CASE("validation rejects ragged strings and wrong arity") {
    MscsInstance inst = fig1_instance();
    inst.strings[1] = BinaryString::parse("110");
    CHECK_THROWS_AS(inst.validate(), InstanceError);
    MscsInstance wrong = fig1_instance();
    wrong.cost = tabulate_builtin(Builtin::sigma, 4);
    CHECK_THROWS_AS(wrong.validate(), InstanceError);
}

TEST_SUITE_END();

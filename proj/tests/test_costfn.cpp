#include <doctest.h>

#include <algorithm>
#include <random>

#include "circon/costfn.hpp"

using namespace circon;

TEST_SUITE_BEGIN("costfn");

TEST_CASE("builtin tables at small arity") {
    const CostTable sigma3 = tabulate_builtin(Builtin::sigma, 3);
    CHECK(sigma3.values == std::vector<Rational>{0, Rational(2, 3), Rational(2, 3), 0});
    const CostTable ccs4 = tabulate_builtin(Builtin::ccs, 4);
    CHECK(ccs4.values == std::vector<Rational>{0, 1, 2, 1, 0});
    const CostTable g3 = tabulate_builtin(Builtin::g, 3);
    CHECK(g3.values == std::vector<Rational>{1, 2, 1, 0});
    const CostTable phi3 = tabulate_builtin(Builtin::phi, 3);
    CHECK(phi3.values ==
          std::vector<Rational>{0, Rational(1, 20), Rational(2, 24), Rational(3, 28)});
    const CostTable phif3 = tabulate_builtin(Builtin::phi_f, 3);
    CHECK(phif3.values ==
          std::vector<Rational>{Rational(3, 4), Rational(4, 5), Rational(5, 6), Rational(6, 7)});
}

TEST_CASE("per-1 reconstruction identity") {
    for (const auto which :
         {Builtin::sigma, Builtin::phi, Builtin::phi_f, Builtin::ccs, Builtin::g}) {
        for (std::size_t k = 2; k <= 12; ++k) {
            const CostTable t = tabulate_builtin(which, k);
            const DerivedCost dc = derive(t);
            for (std::size_t x = 1; x <= k; ++x)
                CHECK(t.at_weight(x) == t.at_weight(0) + Rational(x) * dc.fprime_at(x));
        }
    }
}

TEST_CASE("sigma closed forms for gap and range") {
    for (std::size_t k = 2; k <= 50; ++k) {
        const DerivedCost dc = derive(tabulate_builtin(Builtin::sigma, k));
        REQUIRE(dc.gap.has_value());
        CHECK(*dc.gap == Rational(1, k));
        CHECK(dc.range == Rational(k - 1, k));
        CHECK(dc.is_grouping);
    }
}

TEST_CASE("phi closed forms for gap and range") {
    for (std::size_t k = 2; k <= 50; ++k) {
        const DerivedCost dc = derive(tabulate_builtin(Builtin::phi, k));
        REQUIRE(dc.gap.has_value());
        CHECK(*dc.gap == Rational(1, BigInt(k + 1) * (2 * k) * (2 * k + 1)));
        CHECK(dc.range == Rational(1, BigInt(k + 2) * (k + 1)));
        CHECK(dc.is_grouping);
        // phi_f differs from phi by the constant f_k(0), so the derived data
        // must coincide.
        const DerivedCost shifted = derive(tabulate_builtin(Builtin::phi_f, k));
        CHECK(shifted.fprime == dc.fprime);
        CHECK(shifted.is_grouping);
    }
}

TEST_CASE("ccs is not grouping above arity 3") {
    // At k >= 4 the first two per-1 costs coincide, which kills grouping.
    for (std::size_t k = 4; k <= 50; ++k) {
        const DerivedCost dc = derive(tabulate_builtin(Builtin::ccs, k));
        CHECK(dc.fprime_at(1) == dc.fprime_at(2));
        CHECK_FALSE(dc.is_grouping);
    }
    // k = 3 is the boundary case: min(w, k-w) still has a strict drop there.
    CHECK(derive(tabulate_builtin(Builtin::ccs, 3)).is_grouping);
}

TEST_CASE("g is grouping from arity 3 on") {
    for (std::size_t k = 3; k <= 50; ++k) {
        CHECK(derive(tabulate_builtin(Builtin::g, k)).is_grouping);
    }
}

TEST_CASE("gap is empty for a constant per-1 cost") {
    CostTable linear{4, {0, 1, 2, 3, 4}, "linear"};
    const DerivedCost dc = derive(linear);
    CHECK_FALSE(dc.gap.has_value());
    CHECK(dc.range == 1);
    CHECK_FALSE(dc.is_grouping);
}

TEST_CASE("eval_local depends only on the column weight") {
    const CostTable t = tabulate_builtin(Builtin::sigma, 5);
    std::mt19937_64 rng(3);
    for (int it = 0; it < 100; ++it) {
        std::vector<bool> entries(5);
        for (auto&& e : entries) e = rng() & 1;
        Column a{1, entries, static_cast<std::size_t>(std::count(entries.begin(), entries.end(), true))};
        std::shuffle(entries.begin(), entries.end(), rng);
        Column b{2, entries, a.weight};
        CHECK(eval_local(t, a) == eval_local(t, b));
        CHECK(eval_local(t, a) == t.at_weight(a.weight));
    }
    Column wrong{1, {true, false}, 1};
    CHECK_THROWS_AS(eval_local(t, wrong), InstanceError);
}

TEST_CASE("name round-trip and validation") {
    for (const auto which :
         {Builtin::sigma, Builtin::phi, Builtin::phi_f, Builtin::ccs, Builtin::g}) {
        CHECK(builtin_from_name(builtin_name(which)) == which);
        CHECK(builtin_family(which).tabulate(4).values == tabulate_builtin(which, 4).values);
    }
    CHECK_FALSE(builtin_from_name("nope").has_value());
    CostTable bad{3, {0, 1}, "bad"};
    CHECK_THROWS_AS(validate_table(bad), InstanceError);
}

TEST_SUITE_END();

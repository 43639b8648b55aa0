#include <doctest.h>

#include "circon/rmcc.hpp"

using namespace circon;

TEST_SUITE_BEGIN("rmcc");

TEST_CASE("validator catches degree and labeling defects") {
    RmccGraph g{2, 2, 1, {{{1, 1}, {2, 1}}, {{1, 2}, {2, 2}}}};
    CHECK(validate(g).empty());
    g.edges.push_back({{1, 1}, {1, 1}});
    CHECK_FALSE(validate(g).empty());  // self-loop plus degree break
    RmccGraph range{2, 2, 1, {{{1, 1}, {3, 1}}, {{1, 2}, {2, 2}}}};
    CHECK_FALSE(validate(range).empty());
}

TEST_CASE("generated planted instances are regular and keep their clique") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const GeneratedRmcc gen = generate(3, 3, 4, true, seed);
        CHECK(validate(gen.graph).empty());
        REQUIRE(gen.planted.has_value());
        CHECK(is_multicolored_clique(gen.graph, *gen.planted));
        CHECK(solve_clique_bruteforce(gen.graph).has_value());
    }
}

TEST_CASE("unplanted generation is regular") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const GeneratedRmcc gen = generate(3, 2, 3, false, seed);
        CHECK(validate(gen.graph).empty());
        CHECK_FALSE(gen.planted.has_value());
    }
}

TEST_CASE("generation is deterministic per seed") {
    const GeneratedRmcc a = generate(4, 3, 5, true, 99);
    const GeneratedRmcc b = generate(4, 3, 5, true, 99);
    CHECK(a.graph.edges == b.graph.edges);
    CHECK(a.planted->indices == b.planted->indices);
}

TEST_CASE("infeasible parameters are rejected") {
    CHECK_THROWS_AS(generate(2, 2, 4, false, 1), InstanceError);   // d >= kn
    CHECK_THROWS_AS(generate(3, 1, 1, false, 1), InstanceError);   // odd kn*d
    CHECK_THROWS_AS(generate(4, 2, 2, true, 1), InstanceError);    // d < k-1
}

TEST_CASE("colored cycle has no multicolored clique for k = 3") {
    const RmccGraph cyc = colored_cycle(3, 2);
    CHECK(validate(cyc).empty());
    CHECK(cyc.d == 2);
    CHECK_FALSE(solve_clique_bruteforce(cyc).has_value());
}

TEST_CASE("complete multipartite graphs always contain a clique") {
    for (std::size_t k = 3; k <= 4; ++k)
        for (std::size_t n = 2; n <= 3; ++n) {
            const RmccGraph g = complete_multipartite(k, n);
            CHECK(validate(g).empty());
            const auto clique = solve_clique_bruteforce(g);
            REQUIRE(clique.has_value());
            CHECK(clique->indices == std::vector<std::size_t>(k, 1));  // lexicographically first
        }
}

TEST_CASE("clique search guard trips on large spaces") {
    const RmccGraph g = complete_multipartite(3, 2);
    CHECK_THROWS_AS(solve_clique_bruteforce(g, 2), GuardExceeded);
}

TEST_SUITE_END();

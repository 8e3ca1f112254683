#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "spectrex/bounds.hpp"

using namespace spectrex;

TEST_CASE("chvatal-hanson fixed values") {
    CHECK(chvatal_hanson(1, 2).value == 3);   // K_3
    CHECK(chvatal_hanson(1, 1).value == 1);   // one edge
    CHECK(chvatal_hanson(2, 3).value == 7);
    CHECK(chvatal_hanson(2, 2).value == 6);   // two disjoint triangles
    CHECK_THROWS_AS(chvatal_hanson(0, 1), input_error);
}

TEST_CASE("formula equals the oracle on the full tested grid") {
    for (int nu = 1; nu <= 4; ++nu)
        for (int delta = 1; delta <= 4; ++delta) {
            if (nu * (delta + 1) > 12) continue;
            brute_force_f_result oracle = brute_force_f(nu, delta);
            CHECK(oracle.max_edges == chvatal_hanson(nu, delta).value);
            CHECK_FALSE(oracle.witnesses.empty());
        }
}

TEST_CASE("relaxation f <= delta*nu + nu everywhere tested") {
    for (int nu = 1; nu <= 12; ++nu)
        for (int delta = 1; delta <= 12; ++delta) {
            chvatal_hanson_result r = chvatal_hanson(nu, delta);
            CHECK(r.value <= r.relaxation);
        }
}

TEST_CASE("raising the oracle cap by two does not improve the maximum") {
    // validates the nu*(delta+1) vertex cap on the smallest parameter pairs
    for (auto [nu, delta] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}, {1, 3}, {2, 2}}) {
        long long at_cap = brute_force_f(nu, delta).max_edges;
        long long above = brute_force_f(nu, delta, nu * (delta + 1) + 2).max_edges;
        CHECK(at_cap == above);
    }
}

TEST_CASE("oracle witnesses satisfy both constraints") {
    brute_force_f_result r = brute_force_f(2, 3);
    for (const std::string& s : r.witnesses) {
        graph g = g6::decode(s);
        CHECK(g.edge_count() == r.max_edges);
        CHECK(g.max_degree() <= 3);
        CHECK(matching_number(g) <= 2);
    }
}

TEST_CASE("brute_force_f cap") {
    CHECK_THROWS_AS(brute_force_f(4, 4), capability_error);
}

TEST_CASE("intersection bound exactness at k=2 and for equal sets") {
    std::set<int> a{1, 2, 3, 4}, b{3, 4, 5};
    CHECK(intersection_lower_bound({a, b}) == 2);  // |A| + |B| - |A u B| = |A n B|
    CHECK(intersection_lower_bound({a, a, a}) == static_cast<long long>(a.size()));
    CHECK(intersection_lower_bound({a}) == static_cast<long long>(a.size()));
    CHECK_THROWS_AS(intersection_lower_bound({}), input_error);
}

TEST_CASE("intersection bound holds on 1000 random triples") {
    std::mt19937 rng(103);
    for (int t = 0; t < 1000; ++t) {
        std::vector<std::set<int>> sets(3);
        for (auto& s : sets)
            for (int x = 0; x < 10; ++x)
                if (rng() & 1) s.insert(x);
        long long bound = intersection_lower_bound(sets);
        long long actual = 0;
        for (int x = 0; x < 10; ++x)
            if (sets[0].count(x) && sets[1].count(x) && sets[2].count(x)) ++actual;
        CHECK(bound <= actual);
    }
}

TEST_CASE("turan bounds sandwich holds up to n=500") {
    for (long long n = 0; n <= 500; ++n)
        for (long long r = 1; r <= 10; ++r) CHECK(turan_edge_bounds(n, r).satisfied);
    turan_bounds_result b62 = turan_edge_bounds(6, 2);
    CHECK(b62.exact == 9);
    CHECK(b62.lower.to_double() == Catch::Approx(8.75));
    CHECK(b62.upper.to_double() == Catch::Approx(9.0));
    turan_bounds_result b73 = turan_edge_bounds(7, 3);
    CHECK(b73.exact == 16);
    CHECK(b73.lower.to_double() == Catch::Approx(15.958333333));
    CHECK(b73.upper.to_double() == Catch::Approx(16.333333333));
    // balanced case is tight at the top
    for (long long r = 2; r <= 6; ++r) {
        turan_bounds_result b = turan_edge_bounds(6 * r, r);
        CHECK(b.exact * 2 * r == (r - 1) * 36 * r * r);
    }
}

TEST_CASE("erdos-stone estimate") {
    graph k3 = complete_graph<graph>(3);
    CHECK(erdos_stone_estimate(100, k3) == Catch::Approx(2500.0));
    graph k4 = complete_graph<graph>(4);
    CHECK(erdos_stone_estimate(100, k4) == Catch::Approx(10000.0 / 3.0));
    graph c5(5);
    for (int i = 0; i < 5; ++i) c5.set_edge(i, (i + 1) % 5, true);
    CHECK(erdos_stone_estimate(100, c5) == Catch::Approx(2500.0));
    CHECK_THROWS_AS(erdos_stone_estimate(100, graph(3)), input_error);
}

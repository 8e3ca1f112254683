#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "spectrex/enumerate.hpp"
#include "spectrex/graph6.hpp"

using namespace spectrex;

TEST_CASE("graph6 fixed encodings") {
    CHECK(g6::encode(complete_graph<graph>(3)) == "Bw");
    CHECK(g6::encode(graph(1)) == "@");
    CHECK(g6::encode(graph(0)) == "?");
    CHECK(g6::decode("Bw") == complete_graph<graph>(3));
    CHECK(g6::decode("@") == graph(1));
}

TEST_CASE("graph6 round trips") {
    CHECK(g6::decode(g6::encode(turan_graph<graph>(7, 3))) == turan_graph<graph>(7, 3));
    std::mt19937 rng(4);
    for (int t = 0; t < 60; ++t) {
        int n = 1 + t % 12;
        graph g = oracles::random_graph(n, 0.5, rng);
        CHECK(g6::decode(g6::encode(g)) == g);
    }
}

TEST_CASE("graph6 round-trips everything the enumerator produces up to n=10") {
    problem_spec k3 = problem_spec::theorem_grade(complete_graph<graph>(3), 1);
    enumerate_options opts;
    const long long triangle_free_classes[] = {1897, 12172};  // the known sequence
    for (int n = 9; n <= 10; ++n) {
        long long bad = 0, seen = 0;
        enumerate_family_free(n, k3, [&](const graph& g) {
            ++seen;
            if (g6::decode(g6::encode(g)) != g) ++bad;
        }, opts);
        CHECK(bad == 0);
        CHECK(seen == triangle_free_classes[n - 9]);
    }
}

TEST_CASE("graph6 long form for n >= 63") {
    wide_graph big = turan_graph<wide_graph>(200, 2);
    std::string s = g6::encode(big);
    CHECK(s[0] == '~');
    wide_graph back = g6::decode<8>(s);
    CHECK(back.order() == 200);
    CHECK(back.edge_count() == big.edge_count());
    CHECK(back == big);
}

TEST_CASE("graph6 parse errors carry byte offsets") {
    CHECK_THROWS_AS(g6::decode(""), g6_parse_error);
    try {
        g6::decode("B");  // K-less body: needs one data byte
        FAIL("expected parse error");
    } catch (const g6_parse_error& e) {
        CHECK(e.offset == 1);
    }
    try {
        g6::decode(std::string("B") + char(20));  // byte below 63
        FAIL("expected parse error");
    } catch (const g6_parse_error& e) {
        CHECK(e.offset == 1);
    }
    try {
        g6::decode("Bw?");  // trailing byte
        FAIL("expected parse error");
    } catch (const g6_parse_error& e) {
        CHECK(e.offset == 2);
    }
    // nonzero padding bits: K_2 is "A_" (bit 1, pad 00000)
    CHECK(g6::decode("A_") == complete_graph<graph>(2));
    CHECK_THROWS_AS(g6::decode("A`"), g6_parse_error);
    // graphs beyond the 512 capacity are a capability, not parse, error
    CHECK_THROWS_AS(g6::decode<8>("~~???"), capability_error);
}

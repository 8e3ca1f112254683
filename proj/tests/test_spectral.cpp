#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "spectrex/enumerate.hpp"
#include "spectrex/spectral.hpp"

using namespace spectrex;

TEST_CASE("spectral radius of regular graphs") {
    auto k33 = complete_multipartite<graph>(part_sizes({3, 3}));
    spectral_result r = spectral_radius(k33, 1e-10);
    CHECK(std::abs(r.rho - 3.0) <= r.residual + 1e-12);
    for (int n = 2; n <= 7; ++n) {
        spectral_result rk = spectral_radius(complete_graph<graph>(n), 1e-10);
        CHECK(std::abs(rk.rho - (n - 1)) <= rk.residual + 1e-12);
    }
}

TEST_CASE("K1 v K22 has rho 1+sqrt(5), against the dense eigensolver") {
    graph g = join(complete_graph<graph>(1), complete_multipartite<graph>(part_sizes({2, 2})));
    spectral_result r = spectral_radius(g, 1e-12);
    double expect = 1 + std::sqrt(5.0);
    CHECK(std::abs(r.rho - expect) <= r.residual + 1e-10);
    CHECK(std::abs(oracles::eigen_rho(g) - expect) < 1e-10);
}

TEST_CASE("certified enclosure versus the dense eigensolver on random graphs") {
    std::mt19937 rng(73);
    for (int t = 0; t < 120; ++t) {
        int n = 2 + t % 12;
        graph g = oracles::random_graph(n, 0.15 + 0.07 * (t % 10), rng);
        spectral_result r = spectral_radius(g, 1e-11);
        double truth = oracles::eigen_rho(g);
        CHECK(std::abs(r.rho - truth) <= r.residual + 1e-9);
        CHECK(r.residual <= 1e-11);
    }
}

TEST_CASE("disconnected graphs take the max component") {
    graph g = disjoint_copies(complete_graph<graph>(4), 2);
    spectral_result r = spectral_radius(g, 1e-10);
    CHECK(std::abs(r.rho - 3.0) <= r.residual + 1e-12);
    // union of K_4 and K_2: vector lives on the K_4
    graph mixed(6);
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) mixed.set_edge(u, v, true);
    mixed.set_edge(4, 5, true);
    spectral_result rm = spectral_radius(mixed, 1e-10);
    CHECK(std::abs(rm.rho - 3.0) <= rm.residual + 1e-12);
    CHECK(rm.vector[4] == 0.0);
    CHECK(rm.vector[5] == 0.0);
    CHECK(*std::max_element(rm.vector.begin(), rm.vector.end()) == 1.0);

    spectral_result re = spectral_radius(graph(0), 1e-10);
    CHECK(re.degenerate);
    CHECK(re.rho == 0.0);
}

TEST_CASE("perron vector positivity and max-entry normalization") {
    std::mt19937 rng(79);
    int done = 0;
    while (done < 40) {
        graph g = oracles::random_graph(7, 0.4, rng);
        if (!is_connected(g) || g.edge_count() == 0) continue;
        ++done;
        spectral_result r = spectral_radius(g, 1e-10);
        double top = 0;
        for (double x : r.vector) {
            CHECK(x > 0);
            CHECK(x <= 1.0);
            top = std::max(top, x);
        }
        CHECK(top == 1.0);
        CHECK(eigen_residual(g, r.rho, r.vector) <= 8 * r.residual + 1e-12);
    }
}

TEST_CASE("eigen_residual fixed values") {
    auto k33 = complete_multipartite<graph>(part_sizes({3, 3}));
    std::vector<double> ones(6, 1.0);
    CHECK(eigen_residual(k33, 3.0, ones) == 0.0);
    graph k3 = complete_graph<graph>(3);
    CHECK(eigen_residual(k3, 2.0, {1, 1, 1}) == 0.0);
    CHECK(eigen_residual(k3, 1.0, {1, 1, 1}) == 1.0);
    CHECK_THROWS_AS(eigen_residual(k3, 1.0, {1, 1}), input_error);
}

TEST_CASE("rayleigh quotient") {
    std::mt19937 rng(83);
    for (int t = 0; t < 50; ++t) {
        graph g = oracles::random_graph(6, 0.5, rng);
        std::vector<double> ones(6, 1.0);
        CHECK(rayleigh_quotient(g, ones) ==
              Catch::Approx(2.0 * g.edge_count() / 6.0).epsilon(1e-12));
    }
    auto k33 = complete_multipartite<graph>(part_sizes({3, 3}));
    CHECK(rayleigh_quotient(k33, std::vector<double>(6, 1.0)) == Catch::Approx(3.0));
    // at the Perron vector the quotient equals rho
    graph g = join(complete_graph<graph>(1), complete_multipartite<graph>(part_sizes({2, 2})));
    spectral_result r = spectral_radius(g, 1e-12);
    CHECK(rayleigh_quotient(g, r.vector) == Catch::Approx(r.rho).margin(1e-9));
    // rayleigh never exceeds rho
    std::vector<double> v{0.3, 1.0, 0.2, 0.8, 0.5};
    CHECK(rayleigh_quotient(g, v) <= r.rho + r.residual + 1e-12);
    CHECK_THROWS_AS(rayleigh_quotient(g, std::vector<double>(5, 0.0)), input_error);
    CHECK_THROWS_AS(rayleigh_quotient(g, std::vector<double>{1, -1, 0, 0, 0}), input_error);
}

TEST_CASE("degree sandwich and the all-ones lower bound for joins") {
    for (int n = 8; n <= 60; n += 13)
        for (int r = 2; r <= 3; ++r)
            for (int k = 1; k <= 3; ++k) {
                wide_graph h = join(complete_graph<wide_graph>(k - 1),
                                    turan_graph<wide_graph>(n - k + 1, r));
                spectral_result s = spectral_radius(h, 1e-10);
                CHECK(h.min_degree() <= s.rho + s.residual);
                CHECK(s.rho - s.residual <= h.max_degree());
                CHECK(s.rho + s.residual >= 2.0 * h.edge_count() / h.order() - 1e-9);
            }
}

TEST_CASE("strict subgraph monotonicity on small connected graphs") {
    accept_all_predicate all;
    for (int n = 3; n <= 5; ++n) {
        enumerate_classes(n, all, [&](const graph& g) {
            if (!is_connected(g)) return;
            spectral_result rg = spectral_radius(g, 1e-11);
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) {
                    if (!g.has_edge(u, v)) continue;
                    graph h = remove_edge(g, u, v);
                    if (!is_connected(h)) continue;
                    spectral_result rh = spectral_radius(h, 1e-11);
                    CHECK(rg.rho - rh.rho > rg.residual + rh.residual);
                }
        });
    }
}

TEST_CASE("quotient rho closed cases") {
    CHECK(quotient_rho({part_sizes({3, 3}), 0}).rho == Catch::Approx(3.0).margin(1e-10));
    CHECK(quotient_rho({part_sizes({2, 2}), 1}).rho ==
          Catch::Approx(1 + std::sqrt(5.0)).margin(1e-10));
    CHECK(quotient_rho({part_sizes({1, 1}), 0}).rho == Catch::Approx(1.0).margin(1e-10));
    // K_3 as clique=1 over sizes (1,1): all entries 1
    quotient_result q = quotient_rho({part_sizes({1, 1}), 1});
    CHECK(q.rho == Catch::Approx(2.0).margin(1e-10));
    CHECK(perron_formula_check({part_sizes({1, 1}), 1}) < 1e-10);
}

TEST_CASE("quotient rho equals the expanded graph's rho") {
    std::mt19937 rng(89);
    for (int t = 0; t < 40; ++t) {
        int r = 1 + t % 4;
        std::vector<int> sizes;
        for (int i = 0; i < r; ++i) sizes.push_back(1 + static_cast<int>(rng() % 12));
        int clique = t % 3;
        quotient_spec spec{part_sizes(sizes), clique};
        quotient_result q = quotient_rho(spec, 1e-12);
        wide_graph big = expand_quotient<wide_graph>(spec);
        spectral_result s = spectral_radius(big, 1e-11);
        CHECK(std::abs(q.rho - s.rho) <= q.residual + s.residual + 1e-9);
        CHECK(std::abs(q.rho - oracles::eigen_rho(big)) < 1e-8);
    }
}

TEST_CASE("perron formula sweep for two balanced parts") {
    for (int m = 1; m <= 50; ++m) {
        CHECK(perron_formula_check({part_sizes({m, m}), 1}, 1e-12) < 1e-8);
    }
    CHECK(perron_formula_check({part_sizes({2, 2}), 1}, 1e-12) < 1e-10);
    CHECK_THROWS_AS(perron_formula_check({part_sizes({2, 2}), 0}), input_error);
}

TEST_CASE("batch spectral radius is keyed by index") {
    std::vector<graph> gs;
    for (int n = 2; n <= 9; ++n) gs.push_back(complete_graph<graph>(n));
    auto serial = batch_spectral_radius(gs, 1e-10, 1);
    auto parallel = batch_spectral_radius(gs, 1e-10, 4);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].rho == parallel[i].rho);
        CHECK(std::abs(serial[i].rho - (static_cast<double>(i) + 1)) <= serial[i].residual + 1e-12);
    }
}

TEST_CASE("non-convergence surfaces as an error with the best residual") {
    // P_3 has rho = sqrt(2): the Collatz-Wielandt ratios of any double
    // vector never coincide exactly, so 1e-300 is unreachable.
    try {
        detail_spectral::power_iterate(
            3,
            [&](const std::vector<double>& x, std::vector<double>& z) {
                z[0] = x[1];
                z[1] = x[0] + x[2];
                z[2] = x[1];
            },
            1e-300, true, 200);
        FAIL("expected convergence_error");
    } catch (const convergence_error& e) {
        CHECK(e.best_residual < 1e-9);
        CHECK(e.iterations == 200);
    }
}

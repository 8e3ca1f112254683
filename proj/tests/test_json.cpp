#include <catch2/catch_amalgamated.hpp>

#include <fstream>

#include "spectrex/json_io.hpp"

using namespace spectrex;

namespace {

json load_schema(const std::string& name) {
    std::string path = std::string(SPECTREX_SCHEMA_DIR) + "/" + name;
    std::ifstream is(path);
    REQUIRE(is);
    return json::parse(is);
}

problem_spec k3_twice() { return problem_spec::theorem_grade(complete_graph<graph>(3), 2, 0LL); }

} // namespace

TEST_CASE("catalog JSON validates and round-trips") {
    search_outcome out = edge_extremal(6, k3_twice());
    json j = to_json(out.catalog);
    CHECK(j.at("schema_version").get<int>() == schema_version);
    auto err = schema_violation(load_schema("catalog.schema.json"), j);
    INFO(err.value_or(""));
    CHECK_FALSE(err.has_value());

    extremal_catalog back = catalog_from_json(j);
    CHECK(back.n == out.catalog.n);
    CHECK(back.edge_value == out.catalog.edge_value);
    CHECK(back.graphs == out.catalog.graphs);
    CHECK(back.family.f_g6 == out.catalog.family.f_g6);
}

TEST_CASE("spectral catalog JSON validates") {
    problem_spec spec = problem_spec::theorem_grade(complete_graph<graph>(3), 1);
    spectral_search_outcome out = spectral_extremal(5, spec, 1e-10);
    json j = to_json(out.base.catalog);
    auto err = schema_violation(load_schema("catalog.schema.json"), j);
    INFO(err.value_or(""));
    CHECK_FALSE(err.has_value());
    extremal_catalog back = catalog_from_json(j);
    CHECK(back.rho_value == out.base.catalog.rho_value);
    CHECK(back.details.size() == out.base.catalog.details.size());
}

TEST_CASE("checkpoint JSON validates and round-trips the frontier") {
    search_options opts;
    opts.abort_after = 50;
    search_outcome partial = edge_extremal(7, k3_twice(), opts);
    REQUIRE_FALSE(partial.complete);
    REQUIRE(partial.checkpoint.has_value());
    json j = to_json(*partial.checkpoint);
    auto err = schema_violation(load_schema("checkpoint.schema.json"), j);
    INFO(err.value_or(""));
    CHECK_FALSE(err.has_value());
    search_checkpoint back = checkpoint_from_json(j);
    CHECK(back.frontier.path == partial.checkpoint->frontier.path);
    CHECK(back.frontier.resume_mask == partial.checkpoint->frontier.resume_mask);
    CHECK(back.best_edges == partial.checkpoint->best_edges);
    CHECK(back.stats.accepted == partial.checkpoint->stats.accepted);

    // resuming from the deserialized checkpoint matches the full run
    search_options resume_opts;
    resume_opts.resume = &back;
    search_outcome resumed = edge_extremal(7, k3_twice(), resume_opts);
    search_outcome full = edge_extremal(7, k3_twice());
    CHECK(resumed.catalog.graphs == full.catalog.graphs);
}

TEST_CASE("verify reports validate against their schemas") {
    problem_spec k3 = problem_spec::theorem_grade(complete_graph<graph>(3), 1, 0LL);
    edge_verify_report er = verify_edge_theorem(3, 5, k3);
    auto err = schema_violation(load_schema("verify-edge.schema.json"), to_json(er));
    INFO(err.value_or(""));
    CHECK_FALSE(err.has_value());

    spectral_verify_report sr = verify_spectral_theorem(4, 5, k3, 1e-10);
    auto err2 = schema_violation(load_schema("verify-spectral.schema.json"), to_json(sr));
    INFO(err2.value_or(""));
    CHECK_FALSE(err2.has_value());
}

TEST_CASE("spectral and quotient result JSON validate") {
    graph g = join(complete_graph<graph>(1), complete_multipartite<graph>(part_sizes({2, 2})));
    spectral_result r = spectral_radius(g, 1e-10);
    auto err = schema_violation(load_schema("spectral-result.schema.json"), to_json(r, g.order()));
    INFO(err.value_or(""));
    CHECK_FALSE(err.has_value());

    quotient_spec qs{part_sizes({2, 2}), 1};
    quotient_result q = quotient_rho(qs);
    json jq = to_json(q, qs, perron_formula_check(qs));
    auto err2 = schema_violation(load_schema("quotient-result.schema.json"), jq);
    INFO(err2.value_or(""));
    CHECK_FALSE(err2.has_value());
}

TEST_CASE("bounds report JSON validates") {
    json j = bounds_report_json("chvatal-hanson", json{{"nu", 2}, {"delta", 3}}, 7, 7, true, "eq",
                                json{{"relaxation", 8}});
    auto err = schema_violation(load_schema("bounds-report.schema.json"), j);
    INFO(err.value_or(""));
    CHECK_FALSE(err.has_value());
}

TEST_CASE("schema validator catches violations") {
    json schema = load_schema("catalog.schema.json");
    json bad = base_report("spectrex-catalog");
    CHECK(schema_violation(schema, bad).has_value());  // missing required keys
    search_outcome out = edge_extremal(5, k3_twice());
    json j = to_json(out.catalog);
    j["kind"] = "bogus";
    CHECK(schema_violation(schema, j).has_value());
    j = to_json(out.catalog);
    j["graphs"] = json::array({17});
    CHECK(schema_violation(schema, j).has_value());
}

TEST_CASE("serial and parallel catalogs serialize byte-identically") {
    search_options serial, parallel;
    serial.workers = 1;
    parallel.workers = 4;
    std::string a = to_json(edge_extremal(7, k3_twice(), serial).catalog, false).dump();
    std::string b = to_json(edge_extremal(7, k3_twice(), parallel).catalog, false).dump();
    CHECK(a == b);
}

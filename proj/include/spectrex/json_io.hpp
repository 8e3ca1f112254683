#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "spectrex/bounds.hpp"
#include "spectrex/search.hpp"
#include "spectrex/spectral.hpp"
#include "spectrex/version.hpp"

namespace spectrex {

using nlohmann::json;

inline json base_report(const std::string& schema_name) {
    return json{{"schema", schema_name},
                {"schema_version", schema_version},
                {"engine_version", engine_version}};
}

inline json to_json(const family_descriptor& f) {
    json j{{"F_graph6", f.f_g6}, {"k", f.k}, {"r", f.r}};
    j["a"] = f.a ? json(*f.a) : json(nullptr);
    return j;
}

inline family_descriptor family_from_json(const json& j) {
    family_descriptor f;
    f.f_g6 = j.at("F_graph6").get<std::string>();
    f.k = j.at("k").get<int>();
    f.r = j.at("r").get<int>();
    if (j.contains("a") && !j.at("a").is_null()) f.a = j.at("a").get<long long>();
    return f;
}

inline json to_json(const spectral_entry& e) {
    return json{{"graph6", e.graph6},
                {"rho", e.rho},
                {"residual", e.residual},
                {"iterations", e.iterations}};
}

inline spectral_entry spectral_entry_from_json(const json& j) {
    return {j.at("graph6").get<std::string>(), j.at("rho").get<double>(),
            j.at("residual").get<double>(), j.at("iterations").get<std::uint64_t>()};
}

/// `include_volatile` keeps wall-clock time out of the bytes when callers
/// need run-to-run identical output.
inline json to_json(const extremal_catalog& c, bool include_volatile = true) {
    json j = base_report("spectrex-catalog");
    j["n"] = c.n;
    j["family"] = to_json(c.family);
    j["kind"] = c.kind == catalog_kind::edge ? "edge" : "spectral";
    if (c.kind == catalog_kind::edge)
        j["value"] = c.edge_value;
    else
        j["value"] = c.rho_value;
    j["graphs"] = c.graphs;
    if (c.kind == catalog_kind::spectral) {
        json details = json::array();
        for (const auto& d : c.details) details.push_back(to_json(d));
        j["details"] = details;
        j["tol"] = c.tol;
        j["ambiguous"] = c.ambiguous;
    }
    j["stats"] = json{{"nodes_visited", c.stats.enumeration.accepted},
                      {"pruned", c.stats.enumeration.pruned_total()},
                      {"wall_ms", include_volatile ? c.stats.wall_ms : 0.0}};
    return j;
}

inline extremal_catalog catalog_from_json(const json& j) {
    extremal_catalog c;
    c.n = j.at("n").get<int>();
    c.family = family_from_json(j.at("family"));
    c.kind = j.at("kind").get<std::string>() == "edge" ? catalog_kind::edge : catalog_kind::spectral;
    if (c.kind == catalog_kind::edge)
        c.edge_value = j.at("value").get<long long>();
    else
        c.rho_value = j.at("value").get<double>();
    c.graphs = j.at("graphs").get<std::vector<std::string>>();
    if (c.kind == catalog_kind::spectral) {
        for (const auto& d : j.at("details")) c.details.push_back(spectral_entry_from_json(d));
        c.tol = j.at("tol").get<double>();
        c.ambiguous = j.at("ambiguous").get<bool>();
    }
    c.stats.enumeration.accepted = j.at("stats").at("nodes_visited").get<std::uint64_t>();
    c.stats.enumeration.pruned_predicate = j.at("stats").at("pruned").get<std::uint64_t>();
    c.stats.wall_ms = j.at("stats").at("wall_ms").get<double>();
    return c;
}

inline json to_json(const search_checkpoint& ck) {
    json j = base_report("spectrex-checkpoint");
    j["kind"] = ck.kind == catalog_kind::edge ? "edge" : "spectral";
    j["n"] = ck.n;
    j["family"] = to_json(ck.family);
    j["tol"] = ck.tol;
    j["frontier"] = json{{"path", ck.frontier.path}, {"resume_mask", ck.frontier.resume_mask}};
    json partial;
    partial["best_edges"] = ck.best_edges;
    partial["graphs"] = ck.best_graphs;
    json cands = json::array();
    for (const auto& e : ck.candidates) cands.push_back(to_json(e));
    partial["candidates"] = cands;
    partial["pruned_best"] = json{{"graph6", ck.pruned_best_g6},
                                  {"rho", ck.pruned_best_rho},
                                  {"residual", ck.pruned_best_residual}};
    partial["stats"] = json{{"accepted", ck.stats.accepted},
                            {"pruned_predicate", ck.stats.pruned_predicate},
                            {"pruned_noncanonical", ck.stats.pruned_noncanonical}};
    partial["elapsed_ms"] = ck.elapsed_ms;
    j["partial"] = partial;
    return j;
}

inline search_checkpoint checkpoint_from_json(const json& j) {
    if (j.at("schema").get<std::string>() != "spectrex-checkpoint")
        throw input_error("not a spectrex checkpoint file");
    search_checkpoint ck;
    ck.kind = j.at("kind").get<std::string>() == "edge" ? catalog_kind::edge
                                                        : catalog_kind::spectral;
    ck.n = j.at("n").get<int>();
    ck.family = family_from_json(j.at("family"));
    ck.tol = j.at("tol").get<double>();
    ck.frontier.path = j.at("frontier").at("path").get<std::vector<std::uint64_t>>();
    ck.frontier.resume_mask = j.at("frontier").at("resume_mask").get<std::uint64_t>();
    const json& p = j.at("partial");
    ck.best_edges = p.at("best_edges").get<long long>();
    ck.best_graphs = p.at("graphs").get<std::vector<std::string>>();
    for (const auto& e : p.at("candidates")) ck.candidates.push_back(spectral_entry_from_json(e));
    ck.pruned_best_g6 = p.at("pruned_best").at("graph6").get<std::string>();
    ck.pruned_best_rho = p.at("pruned_best").at("rho").get<double>();
    ck.pruned_best_residual = p.at("pruned_best").at("residual").get<double>();
    ck.stats.accepted = p.at("stats").at("accepted").get<std::uint64_t>();
    ck.stats.pruned_predicate = p.at("stats").at("pruned_predicate").get<std::uint64_t>();
    ck.stats.pruned_noncanonical = p.at("stats").at("pruned_noncanonical").get<std::uint64_t>();
    ck.elapsed_ms = p.at("elapsed_ms").get<double>();
    return ck;
}

inline json to_json(const edge_verify_report& r) {
    json j = base_report("spectrex-verify-edge");
    j["family"] = to_json(r.family);
    j["n_lo"] = r.n_lo;
    j["n_hi"] = r.n_hi;
    j["equal_from"] = r.equal_from ? json(*r.equal_from) : json(nullptr);
    json entries = json::array();
    for (const auto& e : r.entries) {
        json je{{"n", e.n},
                {"value", e.extremal_value},
                {"verdict", to_string(e.verdict)},
                {"extremal", e.extremal_graphs},
                {"construction", e.construction_graphs}};
        je["lower_bound"] = e.lower_bound ? json(*e.lower_bound) : json(nullptr);
        entries.push_back(je);
    }
    j["entries"] = entries;
    return j;
}

inline json to_json(const spectral_verify_report& r) {
    json j = base_report("spectrex-verify-spectral");
    j["family"] = to_json(r.family);
    j["n_lo"] = r.n_lo;
    j["n_hi"] = r.n_hi;
    j["tol"] = r.tol;
    j["all_contained"] = r.all_contained;
    json entries = json::array();
    for (const auto& e : r.entries) {
        json je{{"n", e.n},
                {"contained", e.contained},
                {"rho", e.rho},
                {"residual", e.residual},
                {"spectral", e.spectral_graphs},
                {"edge", e.edge_graphs},
                {"gap_certified", e.gap_certified},
                {"ambiguous", e.ambiguous}};
        je["runner_up"] = e.runner_up.rho >= 0 ? to_json(e.runner_up) : json(nullptr);
        entries.push_back(je);
    }
    j["entries"] = entries;
    return j;
}

inline json to_json(const spectral_result& r, int n) {
    json j = base_report("spectrex-spectral-result");
    j["n"] = n;
    j["rho"] = r.rho;
    j["residual"] = r.residual;
    j["iterations"] = r.iterations;
    j["degenerate"] = r.degenerate;
    j["vector"] = r.vector;
    return j;
}

inline json to_json(const quotient_result& q, const quotient_spec& spec,
                    std::optional<double> perron_deviation) {
    json j = base_report("spectrex-quotient-result");
    j["sizes"] = spec.sizes.values();
    j["clique"] = spec.clique;
    j["rho"] = q.rho;
    j["residual"] = q.residual;
    j["iterations"] = q.iterations;
    j["part_values"] = q.part_values;
    j["perron_deviation"] = perron_deviation ? json(*perron_deviation) : json(nullptr);
    return j;
}

inline json bounds_report_json(const std::string& name, json inputs, json bound_value,
                               json witness_value, bool satisfied, const std::string& relation,
                               json extra = json::object()) {
    json j = base_report("spectrex-bounds-report");
    j["name"] = name;
    j["inputs"] = std::move(inputs);
    j["bound_value"] = std::move(bound_value);
    j["witness_value"] = std::move(witness_value);
    j["satisfied"] = satisfied;
    j["relation"] = relation;
    j["extra"] = std::move(extra);
    return j;
}

/// Checks `value` against the subset of JSON Schema the shipped schemas
/// use: type (string or array of strings), required, properties, items,
/// enum. Returns a description of the first violation, or nullopt.
inline std::optional<std::string> schema_violation(const json& schema, const json& value,
                                                   const std::string& where = "$") {
    auto type_matches = [&](const std::string& t) {
        if (t == "object") return value.is_object();
        if (t == "array") return value.is_array();
        if (t == "string") return value.is_string();
        if (t == "integer") return value.is_number_integer() || value.is_number_unsigned();
        if (t == "number") return value.is_number();
        if (t == "boolean") return value.is_boolean();
        if (t == "null") return value.is_null();
        return false;
    };
    if (schema.contains("type")) {
        const json& t = schema.at("type");
        bool ok = false;
        if (t.is_string())
            ok = type_matches(t.get<std::string>());
        else
            for (const auto& one : t)
                if (type_matches(one.get<std::string>())) ok = true;
        if (!ok) return where + ": type mismatch (expected " + t.dump() + ")";
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& e : schema.at("enum"))
            if (e == value) ok = true;
        if (!ok) return where + ": value not in enum";
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema.at("required"))
                if (!value.contains(key.get<std::string>()))
                    return where + ": missing required key " + key.get<std::string>();
        if (schema.contains("properties"))
            for (auto it = schema.at("properties").begin(); it != schema.at("properties").end();
                 ++it)
                if (value.contains(it.key()))
                    if (auto err = schema_violation(it.value(), value.at(it.key()),
                                                    where + "." + it.key()))
                        return err;
    }
    if (value.is_array() && schema.contains("items")) {
        std::size_t i = 0;
        for (const auto& item : value) {
            if (auto err = schema_violation(schema.at("items"), item,
                                            where + "[" + std::to_string(i) + "]"))
                return err;
            ++i;
        }
    }
    return std::nullopt;
}

} // namespace spectrex

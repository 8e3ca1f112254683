#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "spectrex/canonical.hpp"
#include "spectrex/enumerate.hpp"
#include "spectrex/errors.hpp"
#include "spectrex/graph.hpp"
#include "spectrex/graph6.hpp"
#include "spectrex/problem.hpp"
#include "spectrex/spectral.hpp"

namespace spectrex {

enum class catalog_kind { edge, spectral };

struct family_descriptor {
    std::string f_g6;
    int k = 1;
    int r = 2;
    std::optional<long long> a;

    static family_descriptor of(const problem_spec& spec) {
        return {spec.pattern_g6(), spec.k(), spec.r(), spec.excess()};
    }
    bool matches(const family_descriptor& o) const {
        return f_g6 == o.f_g6 && k == o.k && r == o.r;
    }
};

struct search_stats {
    enum_stats enumeration;
    double wall_ms = 0;
};

struct spectral_entry {
    std::string graph6;
    double rho = 0;
    double residual = 0;
    std::uint64_t iterations = 0;
};

/// Search output for one (n, family, kind): the extremal value and every
/// extremal class in canonical graph6 form, duplicate-free and sorted.
struct extremal_catalog {
    int n = 0;
    family_descriptor family;
    catalog_kind kind = catalog_kind::edge;
    long long edge_value = -1;            // edge kind
    double rho_value = 0;                 // spectral kind
    double tol = 0;                       // spectral kind
    bool ambiguous = false;               // spectral ties unresolved at min tol
    std::vector<std::string> graphs;      // canonical graph6, sorted
    std::vector<spectral_entry> details;  // spectral kind, parallel to graphs
    search_stats stats;

    double value() const { return kind == catalog_kind::edge ? static_cast<double>(edge_value) : rho_value; }
};

/// Frozen mid-run state: the enumeration frontier plus the partial
/// accumulators, enough to reproduce the uninterrupted catalog on resume.
struct search_checkpoint {
    catalog_kind kind = catalog_kind::edge;
    int n = 0;
    family_descriptor family;
    double tol = 0;  // spectral kind
    enum_frontier frontier;
    long long best_edges = -1;
    std::vector<std::string> best_graphs;
    std::vector<spectral_entry> candidates;  // spectral survivors so far
    double pruned_best_rho = -1, pruned_best_residual = 0;
    std::string pruned_best_g6;
    enum_stats stats;
    double elapsed_ms = 0;
};

struct search_options {
    int workers = 1;
    int max_order = default_enumeration_cap;
    int split_order = -1;  // parallel split level; -1 picks n-2
    std::uint64_t checkpoint_every = 0;
    std::function<void(const search_checkpoint&)> checkpoint_sink;
    std::uint64_t abort_after = 0;  // stop after this many candidates (testing hook)
    const search_checkpoint* resume = nullptr;
    std::function<void(const graph&)> pruned_hook;
};

struct search_outcome {
    extremal_catalog catalog;
    bool complete = true;
    std::optional<search_checkpoint> checkpoint;  // set when aborted mid-run
};

/// Options safe to forward into searches run on behalf of another
/// operation: abort/checkpoint/resume state belongs to one search only.
inline search_options inner_options(const search_options& o) {
    search_options inner;
    inner.workers = o.workers;
    inner.max_order = o.max_order;
    inner.split_order = o.split_order;
    return inner;
}

namespace detail_search {

using clock = std::chrono::steady_clock;

inline double ms_since(clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
}

struct subtree_root {
    graph g;
    bool rigid = true;
};

/// Serial prefix of the augmentation tree down to `split`; the returned
/// roots, processed in any order, partition the order-n classes.
template <class Pred>
std::vector<subtree_root> collect_roots(int split, const Pred& pred, enum_stats& stats) {
    std::vector<subtree_root> roots;
    auto emit = [&](const graph& g, bool rigid) { roots.push_back({g, rigid}); };
    detail_enum::augmenter<Pred, decltype(emit)> aug(split, pred, emit, stats);
    aug.run();
    return roots;
}

/// Runs `make_sink(worker)` over the subtrees with a pool; each sink sees a
/// disjoint set of order-n classes, so merging is order-independent.
template <class Pred, class Sink>
enum_stats run_parallel(int n, const Pred& pred, int workers, int split,
                        std::vector<Sink>& sinks) {
    enum_stats prefix_stats;
    std::vector<subtree_root> roots = collect_roots(split, pred, prefix_stats);
    std::atomic<std::size_t> next{0};
    std::vector<enum_stats> worker_stats(static_cast<std::size_t>(workers));
    auto work = [&](int w) {
        Pred local = pred;
        auto emit = [&sinks, w](const graph& g, bool) { sinks[static_cast<std::size_t>(w)](g); };
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= roots.size()) break;
            detail_enum::augmenter<Pred, decltype(emit)> aug(
                n, local, emit, worker_stats[static_cast<std::size_t>(w)]);
            aug.run_subtree(roots[i].g, roots[i].rigid);
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
    enum_stats total = prefix_stats;
    for (const auto& s : worker_stats) total.merge(s);
    return total;
}

inline int effective_split(int n, int requested) {
    if (requested >= 1 && requested < n) return requested;
    return std::max(1, n - 2);
}

} // namespace detail_search

/// Exact ex(n, kF) with every extremal class. Parallel runs split the
/// augmentation tree; serial and parallel runs produce identical catalogs.
inline search_outcome edge_extremal(int n, const problem_spec& spec,
                                    const search_options& opts = {}) {
    auto t0 = detail_search::clock::now();
    if (n > opts.max_order)
        throw capability_error("search order " + std::to_string(n) + " exceeds the cap " +
                               std::to_string(opts.max_order) +
                               "; raise it with --max-n if intentional");
    family_free_predicate pred{spec.pattern(), spec.k()};

    search_outcome out;
    extremal_catalog& cat = out.catalog;
    cat.n = n;
    cat.family = family_descriptor::of(spec);
    cat.kind = catalog_kind::edge;

    long long best = -1;
    std::vector<std::string> best_graphs;
    enum_stats stats;
    double elapsed_base = 0;

    bool serial = opts.workers <= 1 || opts.checkpoint_every > 0 || opts.abort_after > 0 ||
                  opts.resume != nullptr || n < 3;
    if (serial) {
        enum_frontier resume_frontier;
        enumerate_options eopts;
        eopts.max_order = opts.max_order;
        eopts.pruned_hook = opts.pruned_hook;
        if (opts.resume) {
            const search_checkpoint& ck = *opts.resume;
            if (ck.kind != catalog_kind::edge || ck.n != n || !ck.family.matches(cat.family))
                throw input_error("checkpoint does not match this search");
            best = ck.best_edges;
            best_graphs = ck.best_graphs;
            stats = ck.stats;
            elapsed_base = ck.elapsed_ms;
            resume_frontier = ck.frontier;
            eopts.resume = &resume_frontier;
        }
        std::uint64_t seen = 0;
        auto snapshot = [&](const enum_frontier& fr) {
            search_checkpoint ck;
            ck.kind = catalog_kind::edge;
            ck.n = n;
            ck.family = cat.family;
            ck.frontier = fr;
            ck.best_edges = best;
            ck.best_graphs = best_graphs;
            ck.stats = stats;
            ck.elapsed_ms = elapsed_base + detail_search::ms_since(t0);
            return ck;
        };
        enum_control control = [&](const enum_frontier& fr) {
            ++seen;
            if (opts.abort_after && seen > opts.abort_after) return false;
            if (opts.checkpoint_every && seen % opts.checkpoint_every == 0 && opts.checkpoint_sink)
                opts.checkpoint_sink(snapshot(fr));
            return true;
        };
        if (opts.abort_after || opts.checkpoint_every) eopts.control = &control;

        auto consume = [&](const graph& g) {
            long long e = g.edge_count();
            if (e > best) {
                best = e;
                best_graphs.clear();
            }
            if (e == best) best_graphs.push_back(g6::encode(g));
        };
        enum_frontier stopped_at;
        bool completed = true;
        enumerate_family_free(n, spec, consume, eopts, &stopped_at, &completed, &stats);
        if (!completed) {
            out.complete = false;
            out.checkpoint = snapshot(stopped_at);
            if (opts.checkpoint_sink) opts.checkpoint_sink(*out.checkpoint);
        }
    } else {
        int split = detail_search::effective_split(n, opts.split_order);
        struct acc {
            long long best = -1;
            std::vector<std::string> graphs;
            void operator()(const graph& g) {
                long long e = g.edge_count();
                if (e > best) {
                    best = e;
                    graphs.clear();
                }
                if (e == best) graphs.push_back(g6::encode(g));
            }
        };
        std::vector<acc> sinks(static_cast<std::size_t>(opts.workers));
        stats = detail_search::run_parallel(n, pred, opts.workers, split, sinks);
        for (const auto& s : sinks) best = std::max(best, s.best);
        for (const auto& s : sinks)
            if (s.best == best)
                best_graphs.insert(best_graphs.end(), s.graphs.begin(), s.graphs.end());
    }

    std::sort(best_graphs.begin(), best_graphs.end());
    cat.edge_value = best;
    cat.graphs = std::move(best_graphs);
    cat.stats.enumeration = stats;
    cat.stats.wall_ms = elapsed_base + detail_search::ms_since(t0);
    return out;
}

namespace detail_search {

struct spectral_acc {
    double tol = 0;
    double best_lower = -std::numeric_limits<double>::infinity();
    std::vector<spectral_entry> survivors;
    spectral_entry pruned_best{"", -1, 0, 0};

    void note_pruned(const spectral_entry& e) {
        // graph6 tie-break keeps the report schedule-independent
        if (e.rho > pruned_best.rho ||
            (e.rho == pruned_best.rho && e.graph6 < pruned_best.graph6))
            pruned_best = e;
    }

    void operator()(const graph& g) {
        spectral_result r = spectral_radius(g, tol);
        spectral_entry e{g6::encode(g), r.rho, r.residual, r.iterations};
        if (e.rho + e.residual < best_lower) {
            note_pruned(e);
            return;
        }
        best_lower = std::max(best_lower, e.rho - e.residual);
        survivors.push_back(std::move(e));
        if (survivors.size() > 4096) compact();
    }

    void compact() {
        std::vector<spectral_entry> keep;
        for (auto& e : survivors) {
            if (e.rho + e.residual >= best_lower)
                keep.push_back(std::move(e));
            else
                note_pruned(e);
        }
        survivors = std::move(keep);
    }
};

} // namespace detail_search

/// Certified spectral-extremal catalog: every class whose rho interval
/// overlaps the maximum after adaptive tightening. The runner-up outside
/// the winner set is kept for gap reporting.
struct spectral_search_outcome {
    search_outcome base;
    spectral_entry runner_up{"", -1, 0, 0};  // best class outside the winners
};

inline spectral_search_outcome spectral_extremal(int n, const problem_spec& spec, double tol,
                                                 const search_options& opts = {}) {
    if (tol <= 0) throw input_error("tolerance must be positive");
    auto t0 = detail_search::clock::now();
    if (n > opts.max_order)
        throw capability_error("search order " + std::to_string(n) + " exceeds the cap " +
                               std::to_string(opts.max_order) +
                               "; raise it with --max-n if intentional");
    family_free_predicate pred{spec.pattern(), spec.k()};

    spectral_search_outcome sout;
    search_outcome& out = sout.base;
    extremal_catalog& cat = out.catalog;
    cat.n = n;
    cat.family = family_descriptor::of(spec);
    cat.kind = catalog_kind::spectral;
    cat.tol = tol;

    detail_search::spectral_acc merged;
    merged.tol = tol;
    enum_stats stats;
    double elapsed_base = 0;

    bool serial = opts.workers <= 1 || opts.checkpoint_every > 0 || opts.abort_after > 0 ||
                  opts.resume != nullptr || n < 3;
    if (serial) {
        enum_frontier resume_frontier;
        enumerate_options eopts;
        eopts.max_order = opts.max_order;
        eopts.pruned_hook = opts.pruned_hook;
        if (opts.resume) {
            const search_checkpoint& ck = *opts.resume;
            if (ck.kind != catalog_kind::spectral || ck.n != n || !ck.family.matches(cat.family))
                throw input_error("checkpoint does not match this search");
            merged.survivors = ck.candidates;
            merged.pruned_best = {ck.pruned_best_g6, ck.pruned_best_rho, ck.pruned_best_residual, 0};
            for (const auto& e : merged.survivors)
                merged.best_lower = std::max(merged.best_lower, e.rho - e.residual);
            stats = ck.stats;
            elapsed_base = ck.elapsed_ms;
            resume_frontier = ck.frontier;
            eopts.resume = &resume_frontier;
        }
        std::uint64_t seen = 0;
        auto snapshot = [&](const enum_frontier& fr) {
            search_checkpoint ck;
            ck.kind = catalog_kind::spectral;
            ck.n = n;
            ck.family = cat.family;
            ck.tol = tol;
            ck.frontier = fr;
            ck.candidates = merged.survivors;
            ck.pruned_best_rho = merged.pruned_best.rho;
            ck.pruned_best_residual = merged.pruned_best.residual;
            ck.pruned_best_g6 = merged.pruned_best.graph6;
            ck.stats = stats;
            ck.elapsed_ms = elapsed_base + detail_search::ms_since(t0);
            return ck;
        };
        enum_control control = [&](const enum_frontier& fr) {
            ++seen;
            if (opts.abort_after && seen > opts.abort_after) return false;
            if (opts.checkpoint_every && seen % opts.checkpoint_every == 0 && opts.checkpoint_sink)
                opts.checkpoint_sink(snapshot(fr));
            return true;
        };
        if (opts.abort_after || opts.checkpoint_every) eopts.control = &control;

        enum_frontier stopped_at;
        bool completed = true;
        enumerate_family_free(
            n, spec, [&](const graph& g) { merged(g); }, eopts, &stopped_at, &completed, &stats);
        if (!completed) {
            out.complete = false;
            out.checkpoint = snapshot(stopped_at);
            if (opts.checkpoint_sink) opts.checkpoint_sink(*out.checkpoint);
            cat.stats.enumeration = stats;
            cat.stats.wall_ms = elapsed_base + detail_search::ms_since(t0);
            return sout;
        }
    } else {
        int split = detail_search::effective_split(n, opts.split_order);
        std::vector<detail_search::spectral_acc> sinks(static_cast<std::size_t>(opts.workers));
        for (auto& s : sinks) s.tol = tol;
        stats = detail_search::run_parallel(n, pred, opts.workers, split, sinks);
        for (const auto& s : sinks) {
            merged.best_lower = std::max(merged.best_lower, s.best_lower);
            merged.note_pruned(s.pruned_best);
        }
        for (auto& s : sinks)
            for (auto& e : s.survivors) {
                if (e.rho + e.residual >= merged.best_lower)
                    merged.survivors.push_back(std::move(e));
                else
                    merged.note_pruned(e);
            }
    }

    merged.compact();
    std::vector<spectral_entry> finalists = std::move(merged.survivors);

    // Adaptive tightening of near-ties.
    double cur_tol = tol;
    while (finalists.size() > 1 && cur_tol > 1e-13) {
        cur_tol = std::max(cur_tol / 1000, 1e-13);
        double lower = -std::numeric_limits<double>::infinity();
        for (auto& e : finalists) {
            graph g = g6::decode(e.graph6);
            spectral_result r = spectral_radius(g, cur_tol);
            e.rho = r.rho;
            e.residual = r.residual;
            e.iterations = r.iterations;
            lower = std::max(lower, e.rho - e.residual);
        }
        std::vector<spectral_entry> keep;
        for (auto& e : finalists) {
            if (e.rho + e.residual >= lower)
                keep.push_back(std::move(e));
            else
                merged.note_pruned(e);
        }
        bool shrunk = keep.size() < finalists.size();
        finalists = std::move(keep);
        if (!shrunk) break;
    }

    std::sort(finalists.begin(), finalists.end(),
              [](const spectral_entry& a, const spectral_entry& b) { return a.graph6 < b.graph6; });
    cat.ambiguous = finalists.size() > 1;
    cat.rho_value = 0;
    for (const auto& e : finalists) cat.rho_value = std::max(cat.rho_value, e.rho);
    for (const auto& e : finalists) cat.graphs.push_back(e.graph6);
    cat.details = std::move(finalists);
    sout.runner_up = merged.pruned_best;
    cat.stats.enumeration = stats;
    cat.stats.wall_ms = elapsed_base + detail_search::ms_since(t0);
    return sout;
}

/// e(T_{n-k+1,r}) + (k-1)n + a - k(k-1)/2, the join construction's size.
inline long long lower_bound_edges(int n, const problem_spec& spec) {
    long long a = spec.excess_or_throw();
    long long k = spec.k();
    return turan_edge_count(n - k + 1, spec.r()) + (k - 1) * n + a - k * (k - 1) / 2;
}

/// K_{k-1} joined to each member of EX(n-k+1, F); each result is verified
/// kF-free before it is returned.
inline std::vector<graph> construct_candidates(int n, const problem_spec& spec,
                                               const search_options& opts = {}) {
    int k = spec.k();
    int nf = spec.pattern().order();
    // Below k*|V(F)| every graph is kF-free and the construction says
    // nothing; below k-1+|V(F)| it does not even fit.
    int threshold = std::max(k - 1 + nf, k * nf);
    if (n < threshold)
        throw input_error("construction needs n >= " + std::to_string(threshold) +
                          " for this family");
    problem_spec base = problem_spec::raw(spec.pattern(), 1);
    search_outcome ex = edge_extremal(n - k + 1, base, inner_options(opts));
    std::vector<graph> out;
    for (const std::string& s : ex.catalog.graphs) {
        graph g = g6::decode(s);
        graph joined = join(complete_graph<graph>(k - 1), g);
        if (!is_family_free(joined, spec))
            throw std::logic_error("construction produced a graph that is not family-free");
        out.push_back(std::move(joined));
    }
    return out;
}

enum class edge_verdict { equal, construction_among_extremal, differs };

inline const char* to_string(edge_verdict v) {
    switch (v) {
        case edge_verdict::equal: return "EQUAL";
        case edge_verdict::construction_among_extremal: return "CONSTRUCTION_AMONG_EXTREMAL";
        default: return "DIFFERS";
    }
}

struct edge_verify_entry {
    int n = 0;
    long long extremal_value = -1;
    std::optional<long long> lower_bound;  // formula value when `a` is known
    std::vector<std::string> extremal_graphs;
    std::vector<std::string> construction_graphs;
    edge_verdict verdict = edge_verdict::differs;
};

struct edge_verify_report {
    family_descriptor family;
    int n_lo = 0, n_hi = 0;
    std::vector<edge_verify_entry> entries;
    std::optional<int> equal_from;  // smallest n with EQUAL through the end
};

inline edge_verify_report verify_edge_theorem(int n_lo, int n_hi, const problem_spec& spec,
                                              const search_options& opts = {}) {
    if (n_lo > n_hi) throw input_error("empty n range");
    edge_verify_report report;
    report.family = family_descriptor::of(spec);
    report.n_lo = n_lo;
    report.n_hi = n_hi;
    search_options run = inner_options(opts);
    for (int n = n_lo; n <= n_hi; ++n) {
        edge_verify_entry entry;
        entry.n = n;
        search_outcome ex = edge_extremal(n, spec, run);
        entry.extremal_value = ex.catalog.edge_value;
        entry.extremal_graphs = ex.catalog.graphs;
        if (spec.excess()) entry.lower_bound = lower_bound_edges(n, spec);
        for (const graph& g : construct_candidates(n, spec, run))
            entry.construction_graphs.push_back(canonical_g6(g));
        std::sort(entry.construction_graphs.begin(), entry.construction_graphs.end());
        bool subset = std::includes(entry.extremal_graphs.begin(), entry.extremal_graphs.end(),
                                    entry.construction_graphs.begin(),
                                    entry.construction_graphs.end());
        if (subset && entry.construction_graphs == entry.extremal_graphs)
            entry.verdict = edge_verdict::equal;
        else if (subset)
            entry.verdict = edge_verdict::construction_among_extremal;
        else
            entry.verdict = edge_verdict::differs;
        report.entries.push_back(std::move(entry));
    }
    for (std::size_t i = report.entries.size(); i-- > 0;) {
        if (report.entries[i].verdict != edge_verdict::equal) break;
        report.equal_from = report.entries[i].n;
    }
    return report;
}

struct spectral_verify_entry {
    int n = 0;
    bool contained = false;
    std::vector<std::string> spectral_graphs;
    std::vector<std::string> edge_graphs;
    double rho = 0;
    double residual = 0;
    spectral_entry runner_up;
    bool gap_certified = false;  // winner's lower bound beats runner-up's upper
    bool ambiguous = false;
};

struct spectral_verify_report {
    family_descriptor family;
    int n_lo = 0, n_hi = 0;
    double tol = 0;
    std::vector<spectral_verify_entry> entries;
    bool all_contained = true;
};

inline spectral_verify_report verify_spectral_theorem(int n_lo, int n_hi,
                                                      const problem_spec& spec, double tol,
                                                      const search_options& opts = {}) {
    if (n_lo > n_hi) throw input_error("empty n range");
    spectral_verify_report report;
    report.family = family_descriptor::of(spec);
    report.n_lo = n_lo;
    report.n_hi = n_hi;
    report.tol = tol;
    search_options run = inner_options(opts);
    for (int n = n_lo; n <= n_hi; ++n) {
        spectral_verify_entry entry;
        entry.n = n;
        search_outcome ex = edge_extremal(n, spec, run);
        spectral_search_outcome sp = spectral_extremal(n, spec, tol, run);
        entry.edge_graphs = ex.catalog.graphs;
        entry.spectral_graphs = sp.base.catalog.graphs;
        entry.rho = sp.base.catalog.rho_value;
        entry.ambiguous = sp.base.catalog.ambiguous;
        for (const auto& d : sp.base.catalog.details)
            entry.residual = std::max(entry.residual, d.residual);
        entry.runner_up = sp.runner_up;
        entry.contained = std::includes(entry.edge_graphs.begin(), entry.edge_graphs.end(),
                                        entry.spectral_graphs.begin(),
                                        entry.spectral_graphs.end());
        if (sp.runner_up.rho >= 0 && !sp.base.catalog.details.empty()) {
            const auto& win = sp.base.catalog.details;
            double win_lower = std::numeric_limits<double>::infinity();
            for (const auto& d : win) win_lower = std::min(win_lower, d.rho - d.residual);
            entry.gap_certified =
                win_lower > sp.runner_up.rho + sp.runner_up.residual;
        } else {
            entry.gap_certified = sp.runner_up.rho < 0;  // no competitor at all
        }
        report.all_contained = report.all_contained && entry.contained;
        report.entries.push_back(std::move(entry));
    }
    return report;
}

struct excess_measurement {
    long long a = 0;
    std::vector<std::pair<int, long long>> per_n;
    bool constant_on_top_half = false;
};

/// Measures a(n) = ex(n, F) - e(T_{n,r}) over a range and checks constancy
/// on the top half, the desk-scale stand-in for "a is eventually constant".
inline excess_measurement measure_excess(const problem_spec& spec, int n_lo, int n_hi,
                                         const search_options& opts = {}) {
    if (n_lo > n_hi) throw input_error("empty n range");
    problem_spec base = problem_spec::raw(spec.pattern(), 1);
    excess_measurement m;
    search_options run = inner_options(opts);
    for (int n = n_lo; n <= n_hi; ++n) {
        search_outcome ex = edge_extremal(n, base, run);
        m.per_n.emplace_back(n, ex.catalog.edge_value - turan_edge_count(n, spec.r()));
    }
    m.a = m.per_n.back().second;
    int half_from = (n_lo + n_hi + 1) / 2;
    m.constant_on_top_half = true;
    for (const auto& [n, a] : m.per_n)
        if (n >= half_from && a != m.a) m.constant_on_top_half = false;
    return m;
}

} // namespace spectrex

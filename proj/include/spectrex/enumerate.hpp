#pragma once

#include <cstdint>
#include <functional>
#include <unordered_set>
#include <vector>

#include "spectrex/canonical.hpp"
#include "spectrex/errors.hpp"
#include "spectrex/graph.hpp"
#include "spectrex/problem.hpp"
#include "spectrex/subgraph.hpp"

namespace spectrex {

struct enum_stats {
    std::uint64_t accepted = 0;           // canonical classes visited, all orders
    std::uint64_t pruned_predicate = 0;   // candidates the predicate rejected
    std::uint64_t pruned_noncanonical = 0;

    std::uint64_t pruned_total() const { return pruned_predicate + pruned_noncanonical; }
    void merge(const enum_stats& o) {
        accepted += o.accepted;
        pruned_predicate += o.pruned_predicate;
        pruned_noncanonical += o.pruned_noncanonical;
    }
};

/// Position in the augmentation tree: the subset masks chosen from the
/// 1-vertex root down to the interrupted node, and the next mask to process
/// there. Enumeration order is deterministic, so this fully identifies the
/// resume point.
struct enum_frontier {
    std::vector<std::uint64_t> path;
    std::uint64_t resume_mask = 0;
};

/// Called before each candidate with the would-be frontier; returning false
/// aborts the run and leaves that frontier recorded for resumption.
using enum_control = std::function<bool(const enum_frontier&)>;

/// One representative (the smallest mask) per Aut(g)-orbit of the vertex
/// subsets passing `filter`, ascending. Exact: subsets are grouped by the
/// canonical value of (g, subset) as a marked graph. The filter must be
/// Aut(g)-invariant so orbits are either wholly kept or wholly dropped.
template <class Filter>
std::vector<std::uint64_t> subset_orbit_reps_if(const graph& g, Filter&& filter) {
    int m = g.order();
    std::vector<std::uint64_t> reps;
    std::unordered_set<std::string> seen;
    std::uint64_t limit = std::uint64_t{1} << m;
    for (std::uint64_t mask = 0; mask < limit; ++mask)
        if (filter(mask) && seen.insert(colored_canonical_value(g, mask)).second)
            reps.push_back(mask);
    return reps;
}

inline std::vector<std::uint64_t> subset_orbit_reps(const graph& g) {
    return subset_orbit_reps_if(g, [](std::uint64_t) { return true; });
}

/// Predicate rejecting graphs with k or more disjoint copies of a pattern.
/// Incremental: the parent is already family-free, so k disjoint copies in
/// the candidate must use one copy through the new vertex plus a
/// (k-1)-packing among the parent's copies that avoids it.
struct family_free_predicate {
    graph f;
    int k = 1;

    struct context {
        std::vector<std::uint64_t> parent_copies;
    };

    context prepare(const graph& parent) const { return {copy_masks(parent, f)}; }

    /// No useful cheap test: any neighbourhood can stay family-free.
    bool mask_viable(const context&, const graph&, std::uint64_t) const { return true; }

    bool admits(const context& ctx, const graph&, const graph& candidate, int new_vertex) const {
        auto through = copy_masks(candidate, f, new_vertex);
        if (through.empty()) return true;
        if (k == 1) return false;
        std::vector<std::uint64_t> free_copies;
        for (std::uint64_t c : through) {
            free_copies.clear();
            for (std::uint64_t p : ctx.parent_copies)
                if (!(p & c)) free_copies.push_back(p);
            if (detail_subgraph::pack_masks(free_copies, k - 1) >= k - 1) return false;
        }
        return true;
    }
};

struct accept_all_predicate {
    struct context {};
    context prepare(const graph&) const { return {}; }
    bool mask_viable(const context&, const graph&, std::uint64_t) const { return true; }
    bool admits(const context&, const graph&, const graph&, int) const { return true; }
};

namespace detail_enum {

inline graph extend(const graph& g, std::uint64_t neighbors) {
    int m = g.order();
    graph h(m + 1);
    for (int u = 0; u < m; ++u)
        for (int v = u + 1; v < m; ++v)
            if (g.has_edge(u, v)) h.set_edge(u, v, true);
    for (int u = 0; u < m; ++u)
        if ((neighbors >> u) & 1) h.set_edge(u, m, true);
    return h;
}

/// Isomorph-free exhaustive generation by canonical augmentation: a
/// candidate parent+vertex is accepted exactly when the new vertex lies in
/// the automorphism orbit of the canonical labeling's last vertex, and
/// augmentation subsets are deduplicated per parent by exact subset orbits.
/// Emits each isomorphism class of predicate-satisfying graphs on `target`
/// vertices exactly once, as its canonical representative.
template <class Pred, class Emit>
class augmenter {
public:
    augmenter(int target, const Pred& pred, Emit& emit, enum_stats& stats)
        : target_(target), pred_(&pred), emit_(&emit), stats_(&stats) {}

    void set_control(const enum_control* c) { control_ = c; }
    void set_resume(const enum_frontier& f) {
        replay_ = f;
        replaying_ = true;
    }
    void set_pruned_hook(std::function<void(const graph&)> h) { pruned_hook_ = std::move(h); }

    bool run() {
        if (target_ == 0) {
            ++stats_->accepted;
            (*emit_)(graph(0), true);
            return true;
        }
        if (!replaying_) ++stats_->accepted;  // the 1-vertex root class
        return node(graph(1), true, 0);
    }

    /// Continue from an already-accepted class of order < target.
    bool run_subtree(const graph& root, bool rigid) { return node(root, rigid, 0); }

    const enum_frontier& frontier() const { return frontier_; }
    bool aborted() const { return aborted_; }

private:
    bool node(const graph& g, bool rigid, std::size_t depth) {
        int m = g.order();
        if (m == target_) {
            (*emit_)(g, rigid);
            return true;
        }
        typename Pred::context ctx = pred_->prepare(g);
        const std::uint64_t limit = std::uint64_t{1} << m;
        // Subset-orbit dedup only among masks the predicate finds viable;
        // viability is isomorphism-invariant, so orbits stay intact.
        std::unordered_set<std::uint64_t> rep_set;
        if (!rigid) {
            auto reps = subset_orbit_reps_if(
                g, [&](std::uint64_t mask) { return pred_->mask_viable(ctx, g, mask); });
            rep_set.insert(reps.begin(), reps.end());
        }

        std::uint64_t start = 0;
        if (replaying_) {
            if (depth < replay_.path.size()) {
                // Re-descend the recorded spine without re-counting it.
                std::uint64_t mask = replay_.path[depth];
                graph cand = extend(g, mask);
                canon_result co = canonical_form(cand);
                path_.push_back(mask);
                bool ok = node(co.canonical, !co.nontrivial_automorphism, depth + 1);
                path_.pop_back();
                if (!ok) return false;
                start = mask + 1;
            } else {
                start = replay_.resume_mask;
                replaying_ = false;
            }
        }

        for (std::uint64_t mask = start; mask < limit; ++mask) {
            if (!rigid && pred_->mask_viable(ctx, g, mask) && !rep_set.count(mask))
                continue;  // orbit-duplicate of an earlier viable mask
            if (!process(g, ctx, mask, depth)) return false;
        }
        return true;
    }

    bool process(const graph& g, const typename Pred::context& ctx, std::uint64_t mask,
                 std::size_t depth) {
        int m = g.order();
        if (control_ && !(*control_)(enum_frontier{path_, mask})) {
            frontier_.path = path_;
            frontier_.resume_mask = mask;
            aborted_ = true;
            return false;
        }
        if (!pred_->mask_viable(ctx, g, mask)) {
            ++stats_->pruned_predicate;
            return true;
        }
        graph cand = extend(g, mask);
        if (!pred_->admits(ctx, g, cand, m)) {
            ++stats_->pruned_predicate;
            if (pruned_hook_) pruned_hook_(cand);
            return true;
        }
        canon_result co = canonical_form(cand);
        int last = -1;
        for (int v = 0; v <= m; ++v)
            if (co.labels[static_cast<std::size_t>(v)] == m) {
                last = v;
                break;
            }
        bool accept;
        if (last == m)
            accept = true;
        else if (!co.nontrivial_automorphism)
            accept = false;  // rigid candidate: orbits are singletons
        else if (co.orbit_of[static_cast<std::size_t>(last)] ==
                 co.orbit_of[static_cast<std::size_t>(m)])
            accept = true;
        else
            accept = same_orbit(cand, last, m);
        if (!accept) {
            ++stats_->pruned_noncanonical;
            return true;
        }
        ++stats_->accepted;
        path_.push_back(mask);
        bool ok = node(co.canonical, !co.nontrivial_automorphism, depth + 1);
        path_.pop_back();
        return ok;
    }

    int target_;
    const Pred* pred_;
    Emit* emit_;
    enum_stats* stats_;
    const enum_control* control_ = nullptr;
    std::function<void(const graph&)> pruned_hook_;
    enum_frontier replay_;
    bool replaying_ = false;
    enum_frontier frontier_;
    bool aborted_ = false;
    std::vector<std::uint64_t> path_;
};

} // namespace detail_enum

inline constexpr int default_enumeration_cap = 11;

struct enumerate_options {
    int max_order = default_enumeration_cap;
    const enum_control* control = nullptr;
    const enum_frontier* resume = nullptr;
    std::function<void(const graph&)> pruned_hook;
};

/// Streams one canonical representative per isomorphism class of graphs on
/// n vertices satisfying the hereditary predicate. Returns the stats; when
/// `out_frontier` is given and the control aborted the run, the interrupted
/// position is stored there and the function returns early.
template <class Pred, class Fn>
enum_stats enumerate_classes(int n, const Pred& pred, Fn&& fn, const enumerate_options& opts = {},
                             enum_frontier* out_frontier = nullptr, bool* completed = nullptr,
                             enum_stats* live_stats = nullptr) {
    if (n < 0) throw input_error("enumeration order must be nonnegative");
    if (n > opts.max_order)
        throw capability_error("enumeration order " + std::to_string(n) +
                               " exceeds the configured cap " + std::to_string(opts.max_order) +
                               "; raise the cap (--max-n) if this is intentional");
    // `live_stats` lets checkpoint snapshots observe counters mid-run and
    // lets resumed runs continue from the recorded baseline.
    enum_stats local;
    enum_stats& stats = live_stats ? *live_stats : local;
    auto emit = [&](const graph& g, bool) { fn(g); };
    detail_enum::augmenter<Pred, decltype(emit)> aug(n, pred, emit, stats);
    if (opts.control) aug.set_control(opts.control);
    if (opts.resume) aug.set_resume(*opts.resume);
    if (opts.pruned_hook) aug.set_pruned_hook(opts.pruned_hook);
    bool ok = aug.run();
    if (completed) *completed = ok;
    if (!ok && out_frontier) *out_frontier = aug.frontier();
    return stats;
}

/// Stream of canonical n-vertex kF-free graphs, one per isomorphism class.
template <class Fn>
enum_stats enumerate_family_free(int n, const problem_spec& spec, Fn&& fn,
                                 const enumerate_options& opts = {},
                                 enum_frontier* out_frontier = nullptr, bool* completed = nullptr,
                                 enum_stats* live_stats = nullptr) {
    family_free_predicate pred{spec.pattern(), spec.k()};
    return enumerate_classes(n, pred, std::forward<Fn>(fn), opts, out_frontier, completed,
                             live_stats);
}

} // namespace spectrex

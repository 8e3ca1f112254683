#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "spectrex/errors.hpp"
#include "spectrex/graph.hpp"

namespace spectrex {

/// Map vertex -> part index in [0, r).
struct partition_assignment {
    std::vector<int> part_of;
    int parts = 0;

    long long internal_edges(const graph& g) const {
        long long e = 0;
        for (int u = 0; u < g.order(); ++u)
            for (int v = u + 1; v < g.order(); ++v)
                if (g.has_edge(u, v) &&
                    part_of[static_cast<std::size_t>(u)] == part_of[static_cast<std::size_t>(v)])
                    ++e;
        return e;
    }

    long long crossing_edges(const graph& g) const { return g.edge_count() - internal_edges(g); }

    std::vector<int> part_sizes_vector() const {
        std::vector<int> sizes(static_cast<std::size_t>(parts), 0);
        for (int p : part_of) ++sizes[static_cast<std::size_t>(p)];
        return sizes;
    }
};

enum class partition_mode { exact, local };

namespace detail_partition {

inline void check_exact_budget(int n, int r) {
    double work = 1;
    for (int i = 0; i < n; ++i) {
        work *= r;
        if (work > 1e8)
            throw capability_error("exact partition search needs r^n <= 1e8; use local mode");
    }
}

/// DFS over restricted-growth assignments, parts ascending, so the first
/// optimum found is the lexicographically smallest assignment vector.
/// `Score` accumulates per-assignment gains; maximizes when maximize=true.
class rgs_search {
public:
    rgs_search(const graph& g, int r) : g_(&g), n_(g.order()), r_(r) {
        below_deg_.resize(static_cast<std::size_t>(n_));
        std::uint64_t below = 0;
        for (int v = 0; v < n_; ++v) {
            below_deg_[static_cast<std::size_t>(v)] = g.degree_in(v, below);
            below |= std::uint64_t{1} << v;
        }
        cnt_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(r_), 0);
        assign_.assign(static_cast<std::size_t>(n_), -1);
        prefix_edges_.assign(static_cast<std::size_t>(n_) + 1, 0);
        for (int v = 0; v < n_; ++v)
            prefix_edges_[static_cast<std::size_t>(v) + 1] =
                prefix_edges_[static_cast<std::size_t>(v)] + below_deg_[static_cast<std::size_t>(v)];
    }

    int& cnt(int v, int p) { return cnt_[static_cast<std::size_t>(v) * r_ + p]; }

    // Maximize crossing edges.
    partition_assignment max_crossing() {
        best_ = -1;
        total_edges_ = g_->edge_count();
        dfs_crossing(0, -1, 0);
        return {best_assign_, r_};
    }

    // Minimize internal edges over balanced part sizes; returns the minimum.
    long long min_internal_balanced(partition_assignment& witness) {
        best_ = -1;
        big_ = (n_ + r_ - 1) / r_;
        small_ = n_ / r_;
        nbig_ = n_ % r_;
        sizes_.assign(static_cast<std::size_t>(r_), 0);
        dfs_balanced(0, -1, 0);
        witness = {best_assign_, r_};
        return best_;
    }

private:
    void enter(int v, int p) {
        assign_[static_cast<std::size_t>(v)] = p;
        g_->for_each_neighbor(v, [&](int w) {
            if (w > v) ++cnt(w, p);
        });
    }
    void leave(int v, int p) {
        assign_[static_cast<std::size_t>(v)] = -1;
        g_->for_each_neighbor(v, [&](int w) {
            if (w > v) --cnt(w, p);
        });
    }

    void dfs_crossing(int v, int max_used, long long crossing) {
        if (v == n_) {
            if (crossing > best_) {
                best_ = crossing;
                best_assign_ = assign_;
            }
            return;
        }
        // Every not-yet-decided edge could still cross.
        long long bound = crossing + total_edges_ - prefix_edges_[static_cast<std::size_t>(v)];
        if (best_ >= 0 && bound <= best_) return;
        int limit = std::min(max_used + 1, r_ - 1);
        for (int p = 0; p <= limit; ++p) {
            long long gain = below_deg_[static_cast<std::size_t>(v)] - cnt(v, p);
            enter(v, p);
            dfs_crossing(v + 1, std::max(max_used, p), crossing + gain);
            leave(v, p);
        }
    }

    void dfs_balanced(int v, int max_used, long long internal) {
        if (best_ >= 0 && internal >= best_) return;
        if (v == n_) {
            int used_big = 0;
            for (int p = 0; p < r_; ++p) {
                int s = sizes_[static_cast<std::size_t>(p)];
                if (s != small_ && s != big_) return;
                if (s == big_ && big_ != small_) ++used_big;
            }
            if (big_ != small_ && used_big != nbig_) return;
            best_ = internal;
            best_assign_ = assign_;
            return;
        }
        int limit = std::min(max_used + 1, r_ - 1);
        for (int p = 0; p <= limit; ++p) {
            if (sizes_[static_cast<std::size_t>(p)] == big_) continue;
            ++sizes_[static_cast<std::size_t>(p)];
            enter(v, p);
            dfs_balanced(v + 1, std::max(max_used, p), internal + cnt(v, p));
            leave(v, p);
            --sizes_[static_cast<std::size_t>(p)];
        }
    }

    const graph* g_;
    int n_, r_;
    std::vector<int> below_deg_, cnt_, assign_, best_assign_, sizes_;
    std::vector<long long> prefix_edges_;
    long long best_ = -1, total_edges_ = 0;
    int big_ = 0, small_ = 0, nbig_ = 0;
};

} // namespace detail_partition

/// Partition of V(G) into r parts maximizing the number of crossing edges.
/// Exact mode returns the lexicographically smallest maximizer; local mode
/// returns a partition stable under single-vertex moves, so every vertex
/// ends with internal degree <= deg/r.
inline partition_assignment max_crossing_partition(const graph& g, int r, partition_mode mode) {
    if (r < 1) throw input_error("max_crossing_partition needs r >= 1");
    int n = g.order();
    if (mode == partition_mode::exact) {
        detail_partition::check_exact_budget(n, r);
        detail_partition::rgs_search search(g, r);
        return search.max_crossing();
    }
    partition_assignment pa;
    pa.parts = r;
    pa.part_of.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) pa.part_of[static_cast<std::size_t>(v)] = v % r;
    bool moved = true;
    while (moved) {
        moved = false;
        for (int v = 0; v < n; ++v) {
            std::vector<int> d(static_cast<std::size_t>(r), 0);
            g.for_each_neighbor(v, [&](int u) { ++d[static_cast<std::size_t>(pa.part_of[static_cast<std::size_t>(u)])]; });
            int cur = pa.part_of[static_cast<std::size_t>(v)];
            int best = cur;
            for (int p = 0; p < r; ++p)
                if (d[static_cast<std::size_t>(p)] < d[static_cast<std::size_t>(best)]) best = p;
            if (d[static_cast<std::size_t>(best)] < d[static_cast<std::size_t>(cur)]) {
                pa.part_of[static_cast<std::size_t>(v)] = best;
                moved = true;
            }
        }
    }
    return pa;
}

/// W: vertices with internal degree >= 2*theta*n in their own part.
/// L: vertices with total degree <= (1 - 1/r - eps)*n. Diagnostic only.
inline std::pair<std::vector<int>, std::vector<int>> classify_low_and_dense(
    const graph& g, const partition_assignment& pa, double theta, double eps) {
    if (!(theta > 0 && theta < 1) || !(eps > 0 && eps < 1))
        throw input_error("theta and eps must lie strictly between 0 and 1");
    int n = g.order();
    int r = pa.parts;
    std::vector<int> dense, low;
    for (int v = 0; v < n; ++v) {
        int internal = 0;
        g.for_each_neighbor(v, [&](int u) {
            if (pa.part_of[static_cast<std::size_t>(u)] == pa.part_of[static_cast<std::size_t>(v)])
                ++internal;
        });
        if (internal >= 2.0 * theta * n) dense.push_back(v);
        if (g.degree(v) <= (1.0 - 1.0 / r - eps) * n) low.push_back(v);
    }
    return {dense, low};
}

struct peel_step {
    int vertex;       // original label
    int degree;       // degree at deletion time
    int order_before; // order of the graph it was deleted from
};

struct peel_trace {
    std::vector<peel_step> steps;
    std::vector<int> surviving; // original labels, ascending
    graph terminal;
};

/// Repeatedly deletes the smallest-labelled vertex of degree at most
/// (1 - 1/r - eps) * (current order) until no vertex qualifies.
inline peel_trace low_degree_peel(const graph& g, int r, double eps) {
    if (r < 1) throw input_error("low_degree_peel needs r >= 1");
    if (!(eps > 0 && eps < 1)) throw input_error("eps must lie strictly between 0 and 1");
    int n = g.order();
    std::uint64_t alive = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    peel_trace trace;
    int m = n;
    while (m > 0) {
        double threshold = (1.0 - 1.0 / r - eps) * m;
        int pick = -1, pick_deg = 0;
        for (int v = 0; v < n; ++v) {
            if (!((alive >> v) & 1)) continue;
            int d = g.degree_in(v, alive);
            if (d <= threshold) {
                pick = v;
                pick_deg = d;
                break;
            }
        }
        if (pick < 0) break;
        trace.steps.push_back({pick, pick_deg, m});
        alive &= ~(std::uint64_t{1} << pick);
        --m;
    }
    for (int v = 0; v < n; ++v)
        if ((alive >> v) & 1) trace.surviving.push_back(v);
    trace.terminal = induced_subgraph(g, trace.surviving);
    return trace;
}

struct edit_distance_result {
    long long distance = 0;
    partition_assignment witness;
};

/// Minimum edge edits (deletions of internal edges plus insertions of
/// missing crossing edges) turning G into a balanced complete r-partite
/// graph, minimized over balanced r-partitions.
inline edit_distance_result edit_distance_to_turan(const graph& g, int r, partition_mode mode) {
    if (r < 1) throw input_error("edit_distance_to_turan needs r >= 1");
    int n = g.order();
    long long cross_pairs = turan_edge_count(n, r);
    if (mode == partition_mode::exact) {
        detail_partition::check_exact_budget(n, r);
        detail_partition::rgs_search search(g, r);
        partition_assignment witness;
        long long internal = search.min_internal_balanced(witness);
        return {cross_pairs - g.edge_count() + 2 * internal, witness};
    }
    // Balanced start, then first-improvement swaps and balance-preserving
    // moves from a large part to a small part.
    partition_assignment pa;
    pa.parts = r;
    pa.part_of.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) pa.part_of[static_cast<std::size_t>(v)] = v % r;
    int big = (n + r - 1) / r;
    auto internal_deg = [&](int v, int p) {
        int d = 0;
        g.for_each_neighbor(v, [&](int u) {
            if (pa.part_of[static_cast<std::size_t>(u)] == p) ++d;
        });
        return d;
    };
    std::vector<int> sizes(static_cast<std::size_t>(r), 0);
    for (int v = 0; v < n; ++v) ++sizes[static_cast<std::size_t>(pa.part_of[static_cast<std::size_t>(v)])];
    bool improved = true;
    while (improved) {
        improved = false;
        for (int u = 0; u < n && !improved; ++u) {
            int pu = pa.part_of[static_cast<std::size_t>(u)];
            if (sizes[static_cast<std::size_t>(pu)] == big && big != n / r) {
                for (int p = 0; p < r && !improved; ++p) {
                    if (sizes[static_cast<std::size_t>(p)] >= big) continue;
                    if (internal_deg(u, p) < internal_deg(u, pu)) {
                        pa.part_of[static_cast<std::size_t>(u)] = p;
                        --sizes[static_cast<std::size_t>(pu)];
                        ++sizes[static_cast<std::size_t>(p)];
                        improved = true;
                    }
                }
            }
            for (int v = u + 1; v < n && !improved; ++v) {
                int pv = pa.part_of[static_cast<std::size_t>(v)];
                if (pv == pu) continue;
                int adj = g.has_edge(u, v) ? 1 : 0;
                long long delta = (internal_deg(u, pv) - adj) + (internal_deg(v, pu) - adj) -
                                  internal_deg(u, pu) - internal_deg(v, pv);
                if (delta < 0) {
                    pa.part_of[static_cast<std::size_t>(u)] = pv;
                    pa.part_of[static_cast<std::size_t>(v)] = pu;
                    improved = true;
                }
            }
        }
    }
    return {cross_pairs - g.edge_count() + 2 * pa.internal_edges(g), pa};
}

} // namespace spectrex

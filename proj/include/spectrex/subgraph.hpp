#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "spectrex/graph.hpp"

namespace spectrex {

namespace detail_subgraph {

/// Pattern vertices ordered for the backtracking embedder: highest degree
/// first, then vertices with the most already-placed neighbours.
inline std::vector<int> embedding_order(const graph& f) {
    int nf = f.order();
    std::vector<int> order;
    std::vector<bool> placed(static_cast<std::size_t>(nf), false);
    for (int step = 0; step < nf; ++step) {
        int best = -1, best_back = -1, best_deg = -1;
        for (int v = 0; v < nf; ++v) {
            if (placed[static_cast<std::size_t>(v)]) continue;
            int back = 0;
            f.for_each_neighbor(v, [&](int u) {
                if (placed[static_cast<std::size_t>(u)]) ++back;
            });
            int deg = f.degree(v);
            if (back > best_back || (back == best_back && deg > best_deg)) {
                best = v;
                best_back = back;
                best_deg = deg;
            }
        }
        order.push_back(best);
        placed[static_cast<std::size_t>(best)] = true;
    }
    return order;
}

/// Extends a partial embedding of `f` into `g`; `allowed` restricts the
/// image vertex set.
inline bool embed(const graph& g, const graph& f, const std::vector<int>& order, std::size_t step,
                  std::vector<int>& image, std::uint64_t used, std::uint64_t allowed) {
    if (step == order.size()) return true;
    int fv = order[step];
    std::uint64_t candidates = allowed & ~used;
    f.for_each_neighbor(fv, [&](int fu) {
        int gi = image[static_cast<std::size_t>(fu)];
        if (gi >= 0) candidates &= g.row_bits(gi);
    });
    int degf = f.degree(fv);
    while (candidates) {
        int gv = std::countr_zero(candidates);
        candidates &= candidates - 1;
        if (g.degree(gv) < degf) continue;
        image[static_cast<std::size_t>(fv)] = gv;
        if (embed(g, f, order, step + 1, image, used | (std::uint64_t{1} << gv), allowed))
            return true;
        image[static_cast<std::size_t>(fv)] = -1;
    }
    return false;
}

} // namespace detail_subgraph

/// Does g contain a (not necessarily induced) copy of f? If `witness` is
/// given it receives an injective map pattern vertex -> host vertex
/// preserving the pattern's edges.
inline bool contains_subgraph(const graph& g, const graph& f,
                              std::vector<int>* witness = nullptr) {
    if (f.order() > g.order()) return false;
    if (f.edge_count() > g.edge_count()) return false;
    if (f.order() == 0) {
        if (witness) witness->clear();
        return true;
    }
    auto order = detail_subgraph::embedding_order(f);
    std::vector<int> image(static_cast<std::size_t>(f.order()), -1);
    std::uint64_t all = g.order() == 64 ? ~std::uint64_t{0}
                                        : ((std::uint64_t{1} << g.order()) - 1);
    if (!detail_subgraph::embed(g, f, order, 0, image, 0, all)) return false;
    if (witness) *witness = image;
    return true;
}

/// Is there an embedding of f into g whose image is exactly `mask`?
inline bool spans_subgraph(const graph& g, const graph& f, std::uint64_t mask) {
    if (std::popcount(mask) != f.order()) return false;
    auto order = detail_subgraph::embedding_order(f);
    std::vector<int> image(static_cast<std::size_t>(f.order()), -1);
    return detail_subgraph::embed(g, f, order, 0, image, 0, mask);
}

/// Vertex sets of exactly |V(f)| vertices of g that host a spanning copy of
/// f, ascending as bitmasks. `through` (if >= 0) restricts to sets
/// containing that vertex.
inline std::vector<std::uint64_t> copy_masks(const graph& g, const graph& f, int through = -1) {
    std::vector<std::uint64_t> out;
    int n = g.order(), nf = f.order();
    if (nf == 0 || nf > n) return out;
    int picked0 = through >= 0 ? 1 : 0;
    std::uint64_t mask0 = through >= 0 ? (std::uint64_t{1} << through) : 0;
    if (picked0 > nf) return out;
    auto rec = [&](auto&& self, int from, int picked, std::uint64_t mask) -> void {
        if (picked == nf) {
            if (spans_subgraph(g, f, mask)) out.push_back(mask);
            return;
        }
        int need = nf - picked;
        for (int v = from; v + need <= n; ++v) {
            if (v == through) continue;
            self(self, v + 1, picked + 1, mask | (std::uint64_t{1} << v));
        }
    };
    rec(rec, 0, picked0, mask0);
    return out;
}

namespace detail_subgraph {

/// Max number of pairwise disjoint masks selectable from `masks`, capped.
inline int pack_masks(const std::vector<std::uint64_t>& masks, int cap) {
    if (cap <= 0) return 0;
    int best = 0;
    auto rec = [&](auto&& self, std::size_t idx, std::uint64_t used, int count) -> void {
        if (count > best) best = count;
        if (best >= cap) return;
        for (std::size_t i = idx; i < masks.size(); ++i) {
            if (masks[i] & used) continue;
            self(self, i + 1, used | masks[i], count + 1);
            if (best >= cap) return;
        }
    };
    rec(rec, 0, 0, 0);
    return best;
}

} // namespace detail_subgraph

/// min(cap, maximum number of pairwise vertex-disjoint copies of f in g).
inline int max_disjoint_copies(const graph& g, const graph& f, int cap) {
    if (cap <= 0) return 0;
    if (f.order() == 0 || f.order() > g.order()) return 0;
    int trivial_cap = g.order() / f.order();
    cap = std::min(cap, trivial_cap);
    if (cap <= 0) return 0;
    auto masks = copy_masks(g, f);
    return detail_subgraph::pack_masks(masks, cap);
}

} // namespace spectrex

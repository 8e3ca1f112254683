#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "spectrex/errors.hpp"
#include "spectrex/graph.hpp"

namespace spectrex {

namespace detail_coloring {

inline bool colorable(const graph& g, const std::vector<int>& order, int k) {
    int n = g.order();
    std::vector<int> color(static_cast<std::size_t>(n), -1);
    auto rec = [&](auto&& self, int step, int used) -> bool {
        if (step == n) return true;
        int v = order[static_cast<std::size_t>(step)];
        // Colors beyond used+1 are symmetric, skip them.
        int limit = std::min(k, used + 1);
        for (int c = 0; c < limit; ++c) {
            bool ok = true;
            g.for_each_neighbor(v, [&](int u) {
                if (color[static_cast<std::size_t>(u)] == c) ok = false;
            });
            if (!ok) continue;
            color[static_cast<std::size_t>(v)] = c;
            if (self(self, step + 1, std::max(used, c + 1))) return true;
            color[static_cast<std::size_t>(v)] = -1;
        }
        return false;
    };
    return rec(rec, 0, 0);
}

} // namespace detail_coloring

/// Exact chromatic number by iterated k-colorability with backtracking.
/// Desk scale only: orders above 16 are refused.
inline int chromatic_number(const graph& g) {
    int n = g.order();
    if (n == 0) return 0;
    if (n > 16) throw capability_error("chromatic_number supports at most 16 vertices");
    if (g.edge_count() == 0) return 1;
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        int da = g.degree(a), db = g.degree(b);
        return da != db ? da > db : a < b;
    });
    for (int k = 2; k < n; ++k)
        if (detail_coloring::colorable(g, order, k)) return k;
    return n;
}

} // namespace spectrex

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "spectrex/errors.hpp"

namespace spectrex {

/// Undirected simple graph over contiguous 0-based vertex labels.
/// Adjacency is one fixed-width bitset row per vertex; `Words` 64-bit words
/// per row bound the capacity. Symmetry and irreflexivity are maintained by
/// the mutators, so loops and multi-edges are unrepresentable.
///
/// Values are cheap to copy and never mutated by the algorithms in this
/// library; every operation takes graphs by const reference and returns new
/// values, so sharing across threads is safe.
template <std::size_t Words>
class basic_graph {
public:
    static constexpr int max_vertices = static_cast<int>(Words) * 64;
    using row_type = std::array<std::uint64_t, Words>;

    basic_graph() = default;

    explicit basic_graph(int n) : n_(n) {
        if (n < 0) throw input_error("graph order must be nonnegative");
        if (n > max_vertices)
            throw capability_error("graph order " + std::to_string(n) + " exceeds capacity " +
                                   std::to_string(max_vertices));
        rows_.assign(static_cast<std::size_t>(n), row_type{});
    }

    int order() const noexcept { return n_; }

    bool has_edge(int u, int v) const {
        return (rows_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v) >> 6] >>
                (static_cast<unsigned>(v) & 63u)) &
               1u;
    }

    const row_type& row(int v) const { return rows_[static_cast<std::size_t>(v)]; }

    int degree(int v) const {
        int d = 0;
        for (std::uint64_t w : rows_[static_cast<std::size_t>(v)]) d += std::popcount(w);
        return d;
    }

    long long edge_count() const {
        long long twice = 0;
        for (int v = 0; v < n_; ++v) twice += degree(v);
        return twice / 2;
    }

    int min_degree() const {
        int d = n_ > 0 ? degree(0) : 0;
        for (int v = 1; v < n_; ++v) d = std::min(d, degree(v));
        return d;
    }

    int max_degree() const {
        int d = 0;
        for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
        return d;
    }

    void set_edge(int u, int v, bool present) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw input_error("self-loops are not representable");
        write_bit(u, v, present);
        write_bit(v, u, present);
    }

    /// Number of neighbours of `v` inside the vertex subset `mask`
    /// (single-word graphs only).
    int degree_in(int v, std::uint64_t mask) const
        requires(Words == 1)
    {
        return std::popcount(rows_[static_cast<std::size_t>(v)][0] & mask);
    }

    std::uint64_t row_bits(int v) const
        requires(Words == 1)
    {
        return rows_[static_cast<std::size_t>(v)][0];
    }

    /// Calls `fn(u)` for every neighbour u of v, ascending.
    template <class Fn>
    void for_each_neighbor(int v, Fn&& fn) const {
        const row_type& r = rows_[static_cast<std::size_t>(v)];
        for (std::size_t w = 0; w < Words; ++w) {
            std::uint64_t bits = r[w];
            while (bits) {
                int u = static_cast<int>(w * 64) + std::countr_zero(bits);
                fn(u);
                bits &= bits - 1;
            }
        }
    }

    friend bool operator==(const basic_graph& a, const basic_graph& b) {
        return a.n_ == b.n_ && a.rows_ == b.rows_;
    }

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= n_)
            throw input_error("vertex " + std::to_string(v) + " out of range for order " +
                              std::to_string(n_));
    }

    void write_bit(int u, int v, bool present) {
        std::uint64_t& word = rows_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v) >> 6];
        std::uint64_t bit = std::uint64_t{1} << (static_cast<unsigned>(v) & 63u);
        if (present)
            word |= bit;
        else
            word &= ~bit;
    }

    int n_ = 0;
    std::vector<row_type> rows_;
};

/// Default working type: enumeration, invariants and catalogs never need
/// more than 64 vertices.
using graph = basic_graph<1>;

/// Wide rows for the spectral sweeps over expanded quotient graphs (n <= 512).
using wide_graph = basic_graph<8>;

/// Ordered part sizes of a complete multipartite graph; every entry >= 1.
class part_sizes {
public:
    part_sizes() = default;
    explicit part_sizes(std::vector<int> sizes) : sizes_(std::move(sizes)) {
        for (int s : sizes_)
            if (s < 1) throw input_error("part sizes must be positive");
    }

    int parts() const noexcept { return static_cast<int>(sizes_.size()); }
    int total() const { return std::accumulate(sizes_.begin(), sizes_.end(), 0); }
    int operator[](int i) const { return sizes_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& values() const noexcept { return sizes_; }

private:
    std::vector<int> sizes_;
};

template <class G = graph>
G add_edge(const G& g, int u, int v) {
    G out = g;
    out.set_edge(u, v, true);
    return out;
}

template <class G = graph>
G remove_edge(const G& g, int u, int v) {
    G out = g;
    out.set_edge(u, v, false);
    return out;
}

template <class G = graph>
G complete_graph(int r) {
    G g(r);
    for (int u = 0; u < r; ++u)
        for (int v = u + 1; v < r; ++v) g.set_edge(u, v, true);
    return g;
}

template <class G = graph>
G complete_multipartite(const part_sizes& sizes) {
    G g(sizes.total());
    std::vector<int> part_of;
    for (int p = 0; p < sizes.parts(); ++p)
        for (int i = 0; i < sizes[p]; ++i) part_of.push_back(p);
    int n = g.order();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (part_of[static_cast<std::size_t>(u)] != part_of[static_cast<std::size_t>(v)])
                g.set_edge(u, v, true);
    return g;
}

/// Balanced part sizes of the Turan graph, largest parts first.
inline part_sizes turan_part_sizes(int n, int r) {
    if (r < 1) throw input_error("Turan graph needs r >= 1");
    if (n < 0) throw input_error("Turan graph needs n >= 0");
    std::vector<int> sizes;
    int q = n / r, b = n % r;
    for (int i = 0; i < b; ++i) sizes.push_back(q + 1);
    for (int i = b; i < r && q > 0; ++i) sizes.push_back(q);
    if (sizes.empty()) return part_sizes{};  // n == 0
    return part_sizes(std::move(sizes));
}

template <class G = graph>
G turan_graph(int n, int r) {
    part_sizes sizes = turan_part_sizes(n, r);
    if (sizes.parts() == 0) return G(n);  // n == 0, or nothing to connect
    G g = complete_multipartite<G>(sizes);
    // n < r leaves fewer than r (singleton) parts; the graph is still K_n.
    return g;
}

/// e(T_{n,r}) in closed form, no graph built.
inline long long turan_edge_count(long long n, long long r) {
    if (r < 1) throw input_error("turan_edge_count needs r >= 1");
    long long q = n / r, b = n % r;
    long long internal = b * (q + 1) * q / 2 + (r - b) * q * (q - 1) / 2;
    return n * (n - 1) / 2 - internal;
}

/// Join: all of `a`, then all of `b`, plus every cross edge.
template <class G>
G join(const G& a, const G& b) {
    int na = a.order(), nb = b.order();
    G g(na + nb);
    for (int u = 0; u < na; ++u)
        for (int v = u + 1; v < na; ++v)
            if (a.has_edge(u, v)) g.set_edge(u, v, true);
    for (int u = 0; u < nb; ++u)
        for (int v = u + 1; v < nb; ++v)
            if (b.has_edge(u, v)) g.set_edge(na + u, na + v, true);
    for (int u = 0; u < na; ++u)
        for (int v = 0; v < nb; ++v) g.set_edge(u, na + v, true);
    return g;
}

/// k vertex-disjoint copies of `f`, consecutive blocks of labels.
template <class G>
G disjoint_copies(const G& f, int k) {
    if (k < 1) throw input_error("disjoint_copies needs k >= 1");
    int nf = f.order();
    G g(nf * k);
    for (int c = 0; c < k; ++c)
        for (int u = 0; u < nf; ++u)
            for (int v = u + 1; v < nf; ++v)
                if (f.has_edge(u, v)) g.set_edge(c * nf + u, c * nf + v, true);
    return g;
}

/// Subgraph induced by `vertices`; label i of the result is vertices[i].
template <class G>
G induced_subgraph(const G& g, const std::vector<int>& vertices) {
    for (int v : vertices)
        if (v < 0 || v >= g.order())
            throw input_error("induced_subgraph: vertex " + std::to_string(v) + " out of range");
    int m = static_cast<int>(vertices.size());
    G out(m);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (g.has_edge(vertices[static_cast<std::size_t>(i)],
                           vertices[static_cast<std::size_t>(j)]))
                out.set_edge(i, j, true);
    return out;
}

template <class G>
G delete_vertices(const G& g, const std::vector<int>& doomed) {
    std::vector<bool> gone(static_cast<std::size_t>(g.order()), false);
    for (int v : doomed) {
        if (v < 0 || v >= g.order())
            throw input_error("delete_vertices: vertex " + std::to_string(v) + " out of range");
        gone[static_cast<std::size_t>(v)] = true;
    }
    std::vector<int> keep;
    for (int v = 0; v < g.order(); ++v)
        if (!gone[static_cast<std::size_t>(v)]) keep.push_back(v);
    return induced_subgraph(g, keep);
}

/// Connected components as ascending vertex lists, ordered by first vertex.
template <class G>
std::vector<std::vector<int>> components(const G& g) {
    int n = g.order();
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<std::vector<int>> comps;
    for (int s = 0; s < n; ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        std::vector<int> comp, stack{s};
        seen[static_cast<std::size_t>(s)] = true;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            g.for_each_neighbor(v, [&](int u) {
                if (!seen[static_cast<std::size_t>(u)]) {
                    seen[static_cast<std::size_t>(u)] = true;
                    stack.push_back(u);
                }
            });
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

template <class G>
bool is_connected(const G& g) {
    return g.order() <= 1 || components(g).size() == 1;
}

} // namespace spectrex

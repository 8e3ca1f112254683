#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "spectrex/graph.hpp"
#include "spectrex/graph6.hpp"

namespace spectrex {

/// Canonical labeling of a graph on at most 64 vertices.
///
/// The labeling maximizes the packed upper-triangle adjacency bits (graph6
/// bit order) over all leaves of an equitable-refinement/individualization
/// search tree, optionally together with a marked vertex set. Two graphs
/// (or (graph, marked set) pairs) are isomorphic exactly when their packed
/// canonical values are equal.
struct canon_result {
    graph canonical;                      // relabeled representative
    std::vector<int> labels;              // labels[v] = canonical position of v
    std::string value;                    // packed canonical bits, comparable
    bool nontrivial_automorphism = false; // false certifies Aut(G) trivial
    std::vector<int> orbit_of;            // classes merged by found automorphisms
};

namespace detail_canon {

struct union_find {
    std::vector<int> parent;
    explicit union_find(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        parent[static_cast<std::size_t>(b)] = a;
    }
};

class searcher {
public:
    searcher(const graph& g, std::uint64_t mark) : g_(&g), n_(g.order()), mark_(mark), uf_(n_) {}

    void run() {
        if (n_ == 0) return;
        std::vector<int> lab;
        std::vector<char> cell_end(static_cast<std::size_t>(n_), 0);
        cell_end[static_cast<std::size_t>(n_ - 1)] = 1;
        std::uint64_t all = n_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1);
        std::vector<std::uint64_t> work;
        std::uint64_t m = mark_ & all;
        if (m != 0 && m != all) {
            for (int v = 0; v < n_; ++v)
                if ((m >> v) & 1) lab.push_back(v);
            if (!lab.empty()) cell_end[lab.size() - 1] = 1;
            for (int v = 0; v < n_; ++v)
                if (!((m >> v) & 1)) lab.push_back(v);
            work.push_back(m);
            work.push_back(all & ~m);
        } else {
            lab.resize(static_cast<std::size_t>(n_));
            std::iota(lab.begin(), lab.end(), 0);
            work.push_back(all);
        }
        descend(std::move(lab), std::move(cell_end), std::move(work), 0);
    }

    canon_result take_result() {
        canon_result r;
        r.value = std::move(best_value_);
        r.labels = std::move(best_labels_);
        r.nontrivial_automorphism = found_automorphism_;
        r.canonical = graph(n_);
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v)
                if (g_->has_edge(u, v))
                    r.canonical.set_edge(r.labels[static_cast<std::size_t>(u)],
                                         r.labels[static_cast<std::size_t>(v)], true);
        r.orbit_of.resize(static_cast<std::size_t>(n_));
        for (int v = 0; v < n_; ++v) r.orbit_of[static_cast<std::size_t>(v)] = uf_.find(v);
        return r;
    }

private:
    void refine(std::vector<int>& lab, std::vector<char>& cell_end,
                std::vector<std::uint64_t>& work) {
        std::vector<std::pair<int, int>> tmp;  // (count, vertex)
        while (!work.empty()) {
            std::uint64_t splitter = work.back();
            work.pop_back();
            int s = 0;
            while (s < n_) {
                int e = s;
                while (!cell_end[static_cast<std::size_t>(e)]) ++e;
                ++e;
                if (e - s >= 2) {
                    int base = g_->degree_in(lab[static_cast<std::size_t>(s)], splitter);
                    bool uniform = true;
                    for (int i = s + 1; i < e; ++i)
                        if (g_->degree_in(lab[static_cast<std::size_t>(i)], splitter) != base) {
                            uniform = false;
                            break;
                        }
                    if (!uniform) {
                        tmp.clear();
                        for (int i = s; i < e; ++i) {
                            int v = lab[static_cast<std::size_t>(i)];
                            tmp.emplace_back(g_->degree_in(v, splitter), v);
                        }
                        std::stable_sort(tmp.begin(), tmp.end(),
                                         [](auto& a, auto& b) { return a.first < b.first; });
                        std::uint64_t frag = 0;
                        for (int i = s; i < e; ++i) {
                            auto [c, v] = tmp[static_cast<std::size_t>(i - s)];
                            lab[static_cast<std::size_t>(i)] = v;
                            frag |= std::uint64_t{1} << v;
                            bool last_of_frag =
                                i + 1 == e || tmp[static_cast<std::size_t>(i - s + 1)].first != c;
                            cell_end[static_cast<std::size_t>(i)] = last_of_frag ? 1 : 0;
                            if (last_of_frag) {
                                work.push_back(frag);
                                frag = 0;
                            }
                        }
                    }
                }
                s = e;
            }
        }
    }

    void descend(std::vector<int> lab, std::vector<char> cell_end,
                 std::vector<std::uint64_t> work, int depth) {
        refine(lab, cell_end, work);
        int target_s = -1, target_e = -1;
        for (int s = 0; s < n_;) {
            int e = s;
            while (!cell_end[static_cast<std::size_t>(e)]) ++e;
            ++e;
            if (e - s >= 2) {
                target_s = s;
                target_e = e;
                break;
            }
            s = e;
        }
        if (target_s < 0) {
            leaf(lab);
            return;
        }
        std::vector<int> cand(lab.begin() + target_s, lab.begin() + target_e);
        std::sort(cand.begin(), cand.end());
        std::vector<int> explored;
        for (int v : cand) {
            bool skip = false;
            // A sibling that is a twin of an explored one admits the
            // transposition (u v) as an automorphism; it fixes every other
            // vertex, including the individualized prefix, so the skipped
            // subtree repeats the explored one at any depth. Record the
            // automorphism so skips never hide one.
            for (int u : explored) {
                std::uint64_t pair = (std::uint64_t{1} << u) | (std::uint64_t{1} << v);
                if ((g_->row_bits(u) & ~pair) == (g_->row_bits(v) & ~pair) &&
                    ((mark_ >> u) & 1) == ((mark_ >> v) & 1)) {
                    found_automorphism_ = true;
                    uf_.merge(u, v);
                    skip = true;
                    break;
                }
            }
            if (!skip && depth == 0) {
                // At the first branching node nothing is individualized yet,
                // so any discovered automorphism justifies skipping orbit
                // mates among the siblings.
                for (int u : explored)
                    if (uf_.find(u) == uf_.find(v)) {
                        skip = true;
                        break;
                    }
            }
            if (skip) continue;
            std::vector<int> clab = lab;
            std::vector<char> cend = cell_end;
            auto first = clab.begin() + target_s;
            auto at = std::find(first, clab.begin() + target_e, v);
            std::rotate(first, at, at + 1);
            cend[static_cast<std::size_t>(target_s)] = 1;
            descend(std::move(clab), std::move(cend), {std::uint64_t{1} << v}, depth + 1);
            explored.push_back(v);
        }
    }

    void leaf(const std::vector<int>& lab) {
        std::string value = pack(lab);
        std::vector<int> pos_of(static_cast<std::size_t>(n_));
        for (int p = 0; p < n_; ++p) pos_of[static_cast<std::size_t>(lab[static_cast<std::size_t>(p)])] = p;
        auto it = seen_.find(value);
        if (it != seen_.end()) {
            // Equal packed values of two distinct labelings witness an
            // automorphism: send x to the vertex the earlier leaf put at
            // the position x occupies here.
            const std::vector<int>& prev = it->second;
            std::vector<int> prev_at(static_cast<std::size_t>(n_));
            for (int x = 0; x < n_; ++x) prev_at[static_cast<std::size_t>(prev[static_cast<std::size_t>(x)])] = x;
            found_automorphism_ = true;
            for (int x = 0; x < n_; ++x)
                uf_.merge(x, prev_at[static_cast<std::size_t>(pos_of[static_cast<std::size_t>(x)])]);
        } else {
            seen_.emplace(value, pos_of);
        }
        if (best_labels_.empty() || value > best_value_) {
            best_value_ = std::move(value);
            best_labels_ = std::move(pos_of);
        }
    }

    std::string pack(const std::vector<int>& lab) const {
        std::string out;
        out.reserve(static_cast<std::size_t>(n_ * (n_ - 1) / 2 + n_) / 6 + 2);
        int acc = 0, nb = 0;
        auto push_bit = [&](int b) {
            acc = (acc << 1) | b;
            if (++nb == 6) {
                out.push_back(static_cast<char>(acc));
                acc = 0;
                nb = 0;
            }
        };
        for (int v = 1; v < n_; ++v)
            for (int u = 0; u < v; ++u)
                push_bit(g_->has_edge(lab[static_cast<std::size_t>(u)],
                                      lab[static_cast<std::size_t>(v)])
                             ? 1
                             : 0);
        for (int p = 0; p < n_; ++p)
            push_bit(static_cast<int>((mark_ >> lab[static_cast<std::size_t>(p)]) & 1));
        if (nb > 0) out.push_back(static_cast<char>(acc << (6 - nb)));
        return out;
    }

    const graph* g_;
    int n_;
    std::uint64_t mark_;
    union_find uf_;
    std::unordered_map<std::string, std::vector<int>> seen_;
    std::string best_value_;
    std::vector<int> best_labels_;
    bool found_automorphism_ = false;
};

} // namespace detail_canon

inline canon_result canonical_form(const graph& g) {
    if (g.order() > 64) throw capability_error("canonical_form supports at most 64 vertices");
    detail_canon::searcher s(g, 0);
    s.run();
    canon_result r = s.take_result();
    if (g.order() == 0) r.canonical = graph(0);
    return r;
}

/// Packed canonical value of (g, marked set): equal values <=> an
/// isomorphism maps one marked set onto the other.
inline std::string colored_canonical_value(const graph& g, std::uint64_t mark) {
    detail_canon::searcher s(g, mark);
    s.run();
    return s.take_result().value;
}

inline std::string canonical_value(const graph& g) { return colored_canonical_value(g, 0); }

inline std::string canonical_g6(const graph& g) {
    return g6::encode(canonical_form(g).canonical);
}

inline bool is_isomorphic(const graph& a, const graph& b) {
    if (a.order() != b.order() || a.edge_count() != b.edge_count()) return false;
    return canonical_value(a) == canonical_value(b);
}

/// Exact orbit query by individualize-and-canonize.
inline bool same_orbit(const graph& g, int u, int v) {
    if (u == v) return true;
    return colored_canonical_value(g, std::uint64_t{1} << u) ==
           colored_canonical_value(g, std::uint64_t{1} << v);
}

} // namespace spectrex

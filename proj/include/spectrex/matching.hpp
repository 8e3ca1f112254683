#pragma once

#include <algorithm>
#include <vector>

#include "spectrex/graph.hpp"

namespace spectrex {

namespace detail_matching {

/// Edmonds' augmenting-path search with blossom contraction, queue-based.
class blossom_matcher {
public:
    explicit blossom_matcher(const graph& g)
        : g_(&g), n_(g.order()), match_(static_cast<std::size_t>(n_), -1) {}

    int run() {
        int matched = 0;
        for (int v = 0; v < n_; ++v)
            if (match_[static_cast<std::size_t>(v)] < 0 && find_augmenting_path(v)) ++matched;
        return matched;
    }

private:
    bool find_augmenting_path(int root) {
        parent_.assign(static_cast<std::size_t>(n_), -1);
        base_.resize(static_cast<std::size_t>(n_));
        for (int v = 0; v < n_; ++v) base_[static_cast<std::size_t>(v)] = v;
        in_queue_.assign(static_cast<std::size_t>(n_), false);
        queue_.clear();
        push(root);
        for (std::size_t head = 0; head < queue_.size(); ++head) {
            int v = queue_[head];
            bool done = false;
            g_->for_each_neighbor(v, [&](int u) {
                if (done) return;
                if (base_[static_cast<std::size_t>(v)] == base_[static_cast<std::size_t>(u)] ||
                    match_[static_cast<std::size_t>(v)] == u)
                    return;
                if (u == root ||
                    (match_[static_cast<std::size_t>(u)] >= 0 &&
                     parent_[static_cast<std::size_t>(match_[static_cast<std::size_t>(u)])] >= 0)) {
                    contract_blossom(v, u);
                } else if (parent_[static_cast<std::size_t>(u)] < 0) {
                    parent_[static_cast<std::size_t>(u)] = v;
                    if (match_[static_cast<std::size_t>(u)] < 0) {
                        augment(u);
                        done = true;
                    } else {
                        push(match_[static_cast<std::size_t>(u)]);
                    }
                }
            });
            if (done) return true;
        }
        return false;
    }

    void push(int v) {
        if (!in_queue_[static_cast<std::size_t>(v)]) {
            in_queue_[static_cast<std::size_t>(v)] = true;
            queue_.push_back(v);
        }
    }

    int lowest_common_base(int a, int b) {
        std::vector<bool> used(static_cast<std::size_t>(n_), false);
        int x = a;
        while (true) {
            x = base_[static_cast<std::size_t>(x)];
            used[static_cast<std::size_t>(x)] = true;
            if (match_[static_cast<std::size_t>(x)] < 0) break;  // reached the root
            x = parent_[static_cast<std::size_t>(match_[static_cast<std::size_t>(x)])];
        }
        int y = b;
        while (true) {
            y = base_[static_cast<std::size_t>(y)];
            if (used[static_cast<std::size_t>(y)]) return y;
            y = parent_[static_cast<std::size_t>(match_[static_cast<std::size_t>(y)])];
        }
    }

    void mark_path(int v, int b, int child) {
        while (base_[static_cast<std::size_t>(v)] != b) {
            int mv = match_[static_cast<std::size_t>(v)];
            blossom_[static_cast<std::size_t>(base_[static_cast<std::size_t>(v)])] = true;
            blossom_[static_cast<std::size_t>(base_[static_cast<std::size_t>(mv)])] = true;
            parent_[static_cast<std::size_t>(v)] = child;
            child = mv;
            v = parent_[static_cast<std::size_t>(mv)];
        }
    }

    void contract_blossom(int v, int u) {
        int b = lowest_common_base(v, u);
        blossom_.assign(static_cast<std::size_t>(n_), false);
        mark_path(v, b, u);
        mark_path(u, b, v);
        for (int x = 0; x < n_; ++x)
            if (blossom_[static_cast<std::size_t>(base_[static_cast<std::size_t>(x)])]) {
                base_[static_cast<std::size_t>(x)] = b;
                push(x);
            }
    }

    void augment(int u) {
        while (u >= 0) {
            int pv = parent_[static_cast<std::size_t>(u)];
            int next = match_[static_cast<std::size_t>(pv)];
            match_[static_cast<std::size_t>(u)] = pv;
            match_[static_cast<std::size_t>(pv)] = u;
            u = next;
        }
    }

    const graph* g_;
    int n_;
    std::vector<int> match_;
    std::vector<int> parent_, base_, queue_;
    std::vector<bool> in_queue_, blossom_;
};

} // namespace detail_matching

/// Exact maximum matching size of a general (possibly non-bipartite) graph.
inline int matching_number(const graph& g) {
    return detail_matching::blossom_matcher(g).run();
}

} // namespace spectrex

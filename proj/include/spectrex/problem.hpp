#pragma once

#include <optional>
#include <string>
#include <utility>

#include "spectrex/canonical.hpp"
#include "spectrex/coloring.hpp"
#include "spectrex/errors.hpp"
#include "spectrex/graph.hpp"
#include "spectrex/graph6.hpp"
#include "spectrex/subgraph.hpp"

namespace spectrex {

/// The forbidden family kF: a pattern F, a multiplicity k, the chromatic
/// parameter r = chi(F) - 1, and (optionally) the excess `a` with
/// ex(n, F) = e(T_{n,r}) + a on the range the caller verified it on.
///
/// Theorem-grade specs require chi(F) >= 3 (r >= 2); `raw` skips that gate
/// for plain searches over families the theorems do not cover.
class problem_spec {
public:
    static problem_spec theorem_grade(graph f, int k, std::optional<long long> a = {}) {
        problem_spec s(std::move(f), k, a);
        if (s.r() < 2)
            throw input_error(
                "forbidden pattern has chromatic number " + std::to_string(s.chi()) +
                "; the theorems need chi(F) >= 3 (use a raw search for bipartite patterns)");
        return s;
    }

    static problem_spec raw(graph f, int k, std::optional<long long> a = {}) {
        return problem_spec(std::move(f), k, a);
    }

    const graph& pattern() const noexcept { return f_; }
    const std::string& pattern_g6() const noexcept { return f_g6_; }
    int k() const noexcept { return k_; }
    int chi() const noexcept { return chi_; }
    int r() const noexcept { return chi_ - 1; }
    bool theorem_ready() const noexcept { return chi_ >= 3; }

    std::optional<long long> excess() const noexcept { return a_; }
    void set_excess(long long a) { a_ = a; }
    long long excess_or_throw() const {
        if (!a_)
            throw input_error("the excess `a` is unset; pass it explicitly or measure it first");
        return *a_;
    }

private:
    problem_spec(graph f, int k, std::optional<long long> a) : f_(std::move(f)), k_(k), a_(a) {
        if (k_ < 1) throw input_error("multiplicity k must be >= 1");
        if (f_.order() < 1 || f_.edge_count() < 1)
            throw input_error("forbidden pattern needs at least one edge");
        chi_ = chromatic_number(f_);
        f_g6_ = canonical_g6(f_);
    }

    graph f_;
    std::string f_g6_;
    int k_ = 1;
    int chi_ = 0;
    std::optional<long long> a_;
};

/// kF-free <=> fewer than k pairwise disjoint copies of F.
inline bool is_family_free(const graph& g, const problem_spec& spec) {
    return max_disjoint_copies(g, spec.pattern(), spec.k()) < spec.k();
}

} // namespace spectrex

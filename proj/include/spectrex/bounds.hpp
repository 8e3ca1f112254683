#pragma once

#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "spectrex/coloring.hpp"
#include "spectrex/enumerate.hpp"
#include "spectrex/errors.hpp"
#include "spectrex/graph.hpp"
#include "spectrex/graph6.hpp"
#include "spectrex/matching.hpp"

namespace spectrex {

/// Exact rational with small terms; enough for the Turan bound arithmetic.
struct rational {
    long long num = 0;
    long long den = 1;

    rational() = default;
    rational(long long n, long long d) : num(n), den(d) {
        if (den == 0) throw input_error("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator<=(const rational& a, const rational& b) {
        return a.num * b.den <= b.num * a.den;
    }
    friend bool operator<=(const rational& a, long long b) { return a.num <= b * a.den; }
    friend bool operator<=(long long a, const rational& b) { return a * b.den <= b.num; }
};

struct chvatal_hanson_result {
    long long value = 0;       // Delta*nu + floor(Delta/2) * floor(nu / ceil(Delta/2))
    long long relaxation = 0;  // Delta*nu + nu, always >= value
};

/// Closed-form maximum edge count over graphs with matching number <= nu
/// and maximum degree <= delta.
inline chvatal_hanson_result chvatal_hanson(long long nu, long long delta) {
    if (nu < 1 || delta < 1) throw input_error("chvatal_hanson needs nu, delta >= 1");
    long long half_down = delta / 2;
    long long half_up = (delta + 1) / 2;
    chvatal_hanson_result r;
    r.value = delta * nu + half_down * (nu / half_up);
    r.relaxation = delta * nu + nu;
    if (r.value > r.relaxation) throw std::logic_error("Chvatal-Hanson relaxation violated");
    return r;
}

struct brute_force_f_result {
    long long max_edges = 0;
    std::vector<std::string> witnesses;  // canonical g6 of the maximizers
};

/// Hereditary predicate for the f(nu, delta) oracle enumeration.
struct bounded_nu_delta_predicate {
    int nu = 1;
    int delta = 1;
    struct context {
        std::vector<int> degrees;
    };
    context prepare(const graph& parent) const {
        context ctx;
        for (int v = 0; v < parent.order(); ++v) ctx.degrees.push_back(parent.degree(v));
        return ctx;
    }
    // Degree caps are automorphism-invariant, so this may prefilter subsets
    // before orbit grouping.
    bool mask_viable(const context& ctx, const graph&, std::uint64_t mask) const {
        if (std::popcount(mask) > delta) return false;
        while (mask) {
            int v = std::countr_zero(mask);
            mask &= mask - 1;
            if (ctx.degrees[static_cast<std::size_t>(v)] + 1 > delta) return false;
        }
        return true;
    }
    bool admits(const context&, const graph&, const graph& cand, int) const {
        return matching_number(cand) <= nu;
    }
};

/// Exhaustive maximum of e(G) over graphs with nu(G) <= nu, Delta(G) <= delta
/// on up to nu*(delta+1) vertices (adding isolated vertices changes nothing,
/// so enumerating exactly that order covers every smaller graph).
inline brute_force_f_result brute_force_f(int nu, int delta, int order_override = 0) {
    if (nu < 1 || delta < 1) throw input_error("brute_force_f needs nu, delta >= 1");
    int order = order_override > 0 ? order_override : nu * (delta + 1);
    if (order > 12 && order_override == 0)
        throw capability_error("brute_force_f oracle capped at nu*(delta+1) <= 12");
    if (order > 14) throw capability_error("brute_force_f oracle capped at 14 vertices");
    bounded_nu_delta_predicate pred{nu, delta};
    brute_force_f_result result;
    enumerate_options opts;
    opts.max_order = order;
    enumerate_classes(
        order, pred,
        [&](const graph& g) {
            long long e = g.edge_count();
            if (e > result.max_edges) {
                result.max_edges = e;
                result.witnesses.clear();
            }
            if (e == result.max_edges) result.witnesses.push_back(g6::encode(g));
        },
        opts);
    std::sort(result.witnesses.begin(), result.witnesses.end());
    return result;
}

/// sum |V_i| - (k-1) |union V_i| <= |intersection V_i|.
inline long long intersection_lower_bound(const std::vector<std::set<int>>& sets) {
    if (sets.empty()) throw input_error("intersection_lower_bound needs at least one set");
    std::set<int> all;
    long long sum = 0;
    for (const auto& s : sets) {
        sum += static_cast<long long>(s.size());
        all.insert(s.begin(), s.end());
    }
    return sum - static_cast<long long>(sets.size() - 1) * static_cast<long long>(all.size());
}

struct turan_bounds_result {
    rational lower;   // (1 - 1/r) n^2/2 - r/8
    rational upper;   // (1 - 1/r) n^2/2
    long long exact;  // e(T_{n,r})
    bool satisfied = false;
};

inline turan_bounds_result turan_edge_bounds(long long n, long long r) {
    if (r < 1) throw input_error("turan_edge_bounds needs r >= 1");
    if (n < 0) throw input_error("turan_edge_bounds needs n >= 0");
    turan_bounds_result res;
    res.upper = rational((r - 1) * n * n, 2 * r);
    res.lower = rational(4 * (r - 1) * n * n - r * r, 8 * r);
    res.exact = turan_edge_count(n, r);
    res.satisfied = res.lower <= res.exact && res.exact <= res.upper;
    return res;
}

/// Leading Erdos-Stone term (1 - 1/(chi(F)-1)) n^2 / 2; an estimate only,
/// never compared at tolerances finer than o(n^2).
inline double erdos_stone_estimate(long long n, const graph& f) {
    int chi = chromatic_number(f);
    if (chi <= 1) throw input_error("erdos_stone_estimate needs a pattern with an edge");
    return (1.0 - 1.0 / (chi - 1)) * static_cast<double>(n) * static_cast<double>(n) / 2.0;
}

} // namespace spectrex

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <thread>
#include <vector>

#include "spectrex/errors.hpp"
#include "spectrex/graph.hpp"

namespace spectrex {

/// Certified spectral radius estimate. The enclosure comes from the
/// Collatz-Wielandt ratios of the final positive iterate, so
/// |rho - true spectral radius| <= residual holds rigorously for the
/// component the result was computed on.
struct spectral_result {
    double rho = 0.0;
    double residual = 0.0;
    std::uint64_t iterations = 0;
    std::vector<double> vector; // per-vertex entries, max entry exactly 1
    bool degenerate = false;    // empty graph convention rho = 0
};

inline constexpr std::uint64_t spectral_iteration_cap = 1'000'000;

namespace detail_spectral {

/// Power iteration on a nonnegative matrix given as `matvec`, shifted by +I
/// so bipartite-style +/- eigenvalue pairs cannot stall convergence.
/// Iterates stay strictly positive from the all-ones start, which makes the
/// Collatz-Wielandt ratios of (x, Ax) a rigorous enclosure of the Perron
/// root. `symmetric` switches the point estimate to the Rayleigh quotient.
template <class MatVec>
spectral_result power_iterate(int n, MatVec&& matvec, double tol, bool symmetric,
                              std::uint64_t cap = spectral_iteration_cap) {
    if (tol <= 0) throw input_error("tolerance must be positive");
    spectral_result out;
    if (n == 0) return out;
    std::vector<double> x(static_cast<std::size_t>(n), 1.0), z(static_cast<std::size_t>(n));
    double best_residual = std::numeric_limits<double>::infinity();
    for (std::uint64_t it = 1; it <= cap; ++it) {
        matvec(x, z);
        double cw_lo = std::numeric_limits<double>::infinity(), cw_hi = 0.0;
        for (int i = 0; i < n; ++i) {
            double ratio = z[static_cast<std::size_t>(i)] / x[static_cast<std::size_t>(i)];
            cw_lo = std::min(cw_lo, ratio);
            cw_hi = std::max(cw_hi, ratio);
        }
        double rho;
        if (symmetric) {
            double num = 0, den = 0;
            for (int i = 0; i < n; ++i) {
                num += x[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(i)];
                den += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
            }
            rho = num / den;
        } else {
            rho = (cw_lo + cw_hi) / 2;
        }
        double residual = std::max(rho - cw_lo, cw_hi - rho);
        best_residual = std::min(best_residual, residual);
        if (residual <= tol) {
            double top = *std::max_element(x.begin(), x.end());
            for (double& v : x) v /= top;
            out.rho = rho;
            out.residual = residual;
            out.iterations = it;
            out.vector = std::move(x);
            return out;
        }
        double top = 0;
        for (int i = 0; i < n; ++i) {
            z[static_cast<std::size_t>(i)] += x[static_cast<std::size_t>(i)]; // +I shift
            top = std::max(top, z[static_cast<std::size_t>(i)]);
        }
        for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)] / top;
    }
    throw convergence_error("power iteration did not reach the requested residual", best_residual,
                            cap);
}

template <class G>
spectral_result component_radius(const G& g, const std::vector<int>& comp, double tol) {
    int m = static_cast<int>(comp.size());
    if (m == 1) {
        spectral_result r;
        r.vector = {1.0};
        return r;
    }
    G sub = induced_subgraph(g, comp);
    auto matvec = [&sub, m](const std::vector<double>& x, std::vector<double>& z) {
        for (int i = 0; i < m; ++i) {
            double s = 0;
            sub.for_each_neighbor(i, [&](int j) { s += x[static_cast<std::size_t>(j)]; });
            z[static_cast<std::size_t>(i)] = s;
        }
    };
    return power_iterate(m, matvec, tol, /*symmetric=*/true);
}

} // namespace detail_spectral

/// Certified spectral radius of g. Disconnected graphs are handled per
/// component; the returned vector carries the winning component's Perron
/// entries and zeros elsewhere, and the residual covers the whole graph.
template <class G>
spectral_result spectral_radius(const G& g, double tol) {
    if (g.order() == 0) {
        spectral_result r;
        r.degenerate = true;
        return r;
    }
    auto comps = components(g);
    std::vector<spectral_result> partials;
    partials.reserve(comps.size());
    for (const auto& comp : comps) partials.push_back(detail_spectral::component_radius(g, comp, tol));
    std::size_t winner = 0;
    for (std::size_t i = 1; i < partials.size(); ++i)
        if (partials[i].rho > partials[winner].rho) winner = i;

    spectral_result out;
    out.rho = partials[winner].rho;
    out.iterations = partials[winner].iterations;
    double upper = 0, lower = 0;
    for (const auto& p : partials) {
        upper = std::max(upper, p.rho + p.residual);
        lower = std::max(lower, p.rho - p.residual);
    }
    out.residual = std::max({partials[winner].residual, upper - out.rho, out.rho - lower});
    out.vector.assign(static_cast<std::size_t>(g.order()), 0.0);
    for (std::size_t i = 0; i < comps[winner].size(); ++i)
        out.vector[static_cast<std::size_t>(comps[winner][i])] = partials[winner].vector[i];
    return out;
}

/// max_i | rho * x_i - sum_{ij in E} x_j |.
template <class G>
double eigen_residual(const G& g, double rho, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != g.order())
        throw input_error("eigen_residual: vector dimension does not match graph order");
    double worst = 0;
    for (int i = 0; i < g.order(); ++i) {
        double s = 0;
        g.for_each_neighbor(i, [&](int j) { s += x[static_cast<std::size_t>(j)]; });
        worst = std::max(worst, std::abs(rho * x[static_cast<std::size_t>(i)] - s));
    }
    return worst;
}

/// 2 * sum_{ij in E} x_i x_j / sum x_i^2 for nonnegative nonzero x.
template <class G>
double rayleigh_quotient(const G& g, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != g.order())
        throw input_error("rayleigh_quotient: vector dimension does not match graph order");
    double den = 0;
    for (double v : x) {
        if (v < 0) throw input_error("rayleigh_quotient expects nonnegative entries");
        den += v * v;
    }
    if (den == 0) throw input_error("rayleigh_quotient needs a nonzero vector");
    double num = 0;
    for (int u = 0; u < g.order(); ++u)
        g.for_each_neighbor(u, [&](int v) {
            if (v > u) num += x[static_cast<std::size_t>(u)] * x[static_cast<std::size_t>(v)];
        });
    return 2 * num / den;
}

/// K_{clique} joined to the complete multipartite graph with the given part
/// sizes; a zero clique leaves the plain multipartite graph.
struct quotient_spec {
    part_sizes sizes;
    int clique = 0;

    int total_order() const { return sizes.total() + clique; }
};

struct quotient_result {
    double rho = 0.0;
    double residual = 0.0;
    std::uint64_t iterations = 0;
    std::vector<double> part_values; // one entry per part
    bool has_clique = false;         // when true the clique entry is 1
};

/// Largest eigenvalue of the equitable-partition quotient matrix of
/// clique ∨ multipartite, with the part-constant eigenvector entries.
inline quotient_result quotient_rho(const quotient_spec& spec, double tol = 1e-12) {
    int r = spec.sizes.parts();
    if (spec.clique < 0) throw input_error("clique size must be nonnegative");
    if (spec.total_order() < 1) throw input_error("quotient spec needs at least one vertex");
    int dim = r + (spec.clique >= 1 ? 1 : 0);
    std::vector<double> m(static_cast<std::size_t>(dim) * dim, 0.0);
    auto at = [&](int i, int j) -> double& { return m[static_cast<std::size_t>(i) * dim + j]; };
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if (i != j) at(i, j) = spec.sizes[j];
    if (spec.clique >= 1) {
        for (int i = 0; i < r; ++i) at(i, r) = spec.clique;
        for (int j = 0; j < r; ++j) at(r, j) = spec.sizes[j];
        at(r, r) = spec.clique - 1;
    }
    auto matvec = [&](const std::vector<double>& x, std::vector<double>& z) {
        for (int i = 0; i < dim; ++i) {
            double s = 0;
            for (int j = 0; j < dim; ++j) s += at(i, j) * x[static_cast<std::size_t>(j)];
            z[static_cast<std::size_t>(i)] = s;
        }
    };
    spectral_result base = detail_spectral::power_iterate(dim, matvec, tol, /*symmetric=*/false);
    quotient_result out;
    out.rho = base.rho;
    out.residual = base.residual;
    out.iterations = base.iterations;
    out.has_clique = spec.clique >= 1;
    double scale = out.has_clique ? base.vector[static_cast<std::size_t>(r)]
                                  : *std::max_element(base.vector.begin(), base.vector.end());
    out.part_values.resize(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i)
        out.part_values[static_cast<std::size_t>(i)] = base.vector[static_cast<std::size_t>(i)] / scale;
    return out;
}

/// Max deviation of the computed part entries from (rho+1)/(rho+n_i) with
/// the clique entry normalized to 1.
inline double perron_formula_check(const quotient_spec& spec, double tol = 1e-12) {
    if (spec.clique < 1)
        throw input_error("perron_formula_check needs a nonempty clique block");
    quotient_result q = quotient_rho(spec, tol);
    double worst = 0;
    for (int i = 0; i < spec.sizes.parts(); ++i) {
        double predicted = (q.rho + 1) / (q.rho + spec.sizes[i]);
        worst = std::max(worst, std::abs(q.part_values[static_cast<std::size_t>(i)] - predicted));
    }
    return worst;
}

/// The graph the quotient matrix abstracts, clique vertices first.
template <class G = wide_graph>
G expand_quotient(const quotient_spec& spec) {
    G multi = complete_multipartite<G>(spec.sizes);
    if (spec.clique == 0) return multi;
    return join(complete_graph<G>(spec.clique), multi);
}

/// spectral_radius over a list of graphs with a worker pool; results are
/// keyed by input index so the outcome is schedule-independent.
template <class G>
std::vector<spectral_result> batch_spectral_radius(const std::vector<G>& graphs, double tol,
                                                   int workers) {
    std::vector<spectral_result> results(graphs.size());
    if (workers <= 1 || graphs.size() <= 1) {
        for (std::size_t i = 0; i < graphs.size(); ++i) results[i] = spectral_radius(graphs[i], tol);
        return results;
    }
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= graphs.size()) break;
            results[i] = spectral_radius(graphs[i], tol);
        }
    };
    std::vector<std::thread> pool;
    int count = std::min<int>(workers, static_cast<int>(graphs.size()));
    pool.reserve(static_cast<std::size_t>(count));
    for (int t = 0; t < count; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    return results;
}

} // namespace spectrex

#pragma once

// Exact / iterative reference computations: power-iteration PageRank, exact
// personalized PageRank, SALSA, personalized SALSA, personalized HITS,
// COSINE, and exact visit expectations of short walks.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "walkrank/graph.hpp"

namespace walkrank {
namespace oracle {

struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
          residual(residual) {}
    double residual;
};

// Global PageRank by power iteration; dangling mass is redistributed
// uniformly.
inline std::vector<double> power_iteration_pagerank(const Graph& g, double epsilon,
                                                    double tol = 1e-12,
                                                    std::size_t max_iter = 100000) {
    const std::size_t n = g.node_count();
    if (n == 0) return {};
    std::vector<double> pi(n, 1.0 / double(n)), next(n);
    double residual = 0.0;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        double dangling = 0.0;
        for (NodeId u = 0; u < n; ++u)
            if (g.out_degree(u) == 0) dangling += pi[u];
        const double base = epsilon / double(n) + (1.0 - epsilon) * dangling / double(n);
        std::fill(next.begin(), next.end(), base);
        for (NodeId u = 0; u < n; ++u) {
            const auto& nb = g.out_neighbors(u);
            if (nb.empty()) continue;
            const double share = pi[u] * (1.0 - epsilon) / double(nb.size());
            for (NodeId v : nb) next[v] += share;
        }
        residual = 0.0;
        for (std::size_t v = 0; v < n; ++v) residual += std::abs(next[v] - pi[v]);
        pi.swap(next);
        if (residual < tol) return pi;
    }
    throw ConvergenceError("power_iteration_pagerank: no convergence", residual);
}

// Personalized PageRank: all reset mass goes to the seed; a dangling node
// jumps to the seed (matching the walk engine's dangling policy).
inline std::vector<double> exact_personalized_pagerank(const Graph& g, NodeId seed,
                                                       double epsilon, double tol = 1e-12,
                                                       std::size_t max_iter = 100000) {
    const std::size_t n = g.node_count();
    std::vector<double> pi(n, 0.0), next(n);
    pi[seed] = 1.0;
    double residual = 0.0;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        std::fill(next.begin(), next.end(), 0.0);
        for (NodeId u = 0; u < n; ++u) {
            const auto& nb = g.out_neighbors(u);
            if (nb.empty()) {
                next[seed] += pi[u];
                continue;
            }
            next[seed] += pi[u] * epsilon;
            const double share = pi[u] * (1.0 - epsilon) / double(nb.size());
            for (NodeId v : nb) next[v] += share;
        }
        residual = 0.0;
        for (std::size_t v = 0; v < n; ++v) residual += std::abs(next[v] - pi[v]);
        pi.swap(next);
        if (residual < tol) return pi;
    }
    throw ConvergenceError("exact_personalized_pagerank: no convergence", residual);
}

// E[X_{s,v}]: expected visits to v in the first s steps of the seed-reset
// chain, by dense transition-matrix powers. Small graphs only.
inline std::vector<double> exact_visit_expectation(const Graph& g, NodeId seed, double epsilon,
                                                   std::uint64_t s, std::size_t max_n = 12) {
    const std::size_t n = g.node_count();
    if (n > max_n)
        throw std::invalid_argument("exact_visit_expectation: graph too large for dense powers");
    std::vector<double> dist(n, 0.0), next(n), expect(n, 0.0);
    dist[seed] = 1.0;
    for (std::uint64_t step = 0; step < s; ++step) {
        for (std::size_t v = 0; v < n; ++v) expect[v] += dist[v];
        std::fill(next.begin(), next.end(), 0.0);
        for (NodeId u = 0; u < n; ++u) {
            const auto& nb = g.out_neighbors(u);
            if (nb.empty()) {
                next[seed] += dist[u];
                continue;
            }
            next[seed] += dist[u] * epsilon;
            const double share = dist[u] * (1.0 - epsilon) / double(nb.size());
            for (NodeId v : nb) next[v] += share;
        }
        dist.swap(next);
    }
    return expect;
}

struct HubAuthority {
    std::vector<double> hub;
    std::vector<double> authority;
};

namespace detail {

inline void normalize_l1(std::vector<double>& v) {
    double total = 0.0;
    for (double x : v) total += x;
    if (total > 0.0)
        for (double& x : v) x /= total;
}

inline void normalize_l2(std::vector<double>& v) {
    double total = 0.0;
    for (double x : v) total += x * x;
    total = std::sqrt(total);
    if (total > 0.0)
        for (double& x : v) x /= total;
}

}  // namespace detail

// Alternating SALSA updates; pass personalize=true with a seed for the
// personalized form (reset term on the hub equation only). 0/0 terms are 0.
inline HubAuthority salsa_scores_impl(const Graph& g, std::size_t iters, bool personalize,
                                      NodeId seed, double epsilon) {
    const std::size_t n = g.node_count();
    HubAuthority ha;
    ha.hub.assign(n, n ? 1.0 / double(n) : 0.0);
    ha.authority.assign(n, n ? 1.0 / double(n) : 0.0);
    for (std::size_t it = 0; it < iters; ++it) {
        std::vector<double> h(n, 0.0);
        for (NodeId v = 0; v < n; ++v) {
            double acc = 0.0;
            for (NodeId x : g.out_neighbors(v)) acc += ha.authority[x] / double(g.in_degree(x));
            h[v] = personalize ? epsilon * (v == seed ? 1.0 : 0.0) + (1.0 - epsilon) * acc : acc;
        }
        detail::normalize_l1(h);
        ha.hub.swap(h);
        std::vector<double> a(n, 0.0);
        for (NodeId v = 0; v < n; ++v) {
            const auto& nb = g.out_neighbors(v);
            if (nb.empty()) continue;
            const double share = ha.hub[v] / double(nb.size());
            for (NodeId x : nb) a[x] += share;
        }
        detail::normalize_l1(a);
        ha.authority.swap(a);
    }
    return ha;
}

inline HubAuthority salsa_scores(const Graph& g, std::size_t iters = 10) {
    return salsa_scores_impl(g, iters, false, 0, 0.0);
}

inline HubAuthority personalized_salsa(const Graph& g, NodeId seed, double epsilon,
                                       std::size_t iters = 10) {
    return salsa_scores_impl(g, iters, true, seed, epsilon);
}

// Personalized HITS (unnormalized sums, L2 per round).
inline HubAuthority personalized_hits(const Graph& g, NodeId seed, double epsilon,
                                      std::size_t iters = 10) {
    const std::size_t n = g.node_count();
    HubAuthority ha;
    ha.hub.assign(n, n ? 1.0 / double(n) : 0.0);
    ha.authority.assign(n, n ? 1.0 / double(n) : 0.0);
    for (std::size_t it = 0; it < iters; ++it) {
        std::vector<double> h(n, 0.0);
        for (NodeId v = 0; v < n; ++v) {
            double acc = 0.0;
            for (NodeId x : g.out_neighbors(v)) acc += ha.authority[x];
            h[v] = epsilon * (v == seed ? 1.0 : 0.0) + (1.0 - epsilon) * acc;
        }
        detail::normalize_l2(h);
        ha.hub.swap(h);
        std::vector<double> a(n, 0.0);
        for (NodeId v = 0; v < n; ++v)
            for (NodeId x : g.out_neighbors(v)) a[x] += ha.hub[v];
        detail::normalize_l2(a);
        ha.authority.swap(a);
    }
    return ha;
}

// COSINE: hub of v is the cosine similarity of out-neighbor sets of seed and
// v; authority is the hub-weighted in-neighbor sum.
inline HubAuthority cosine_scores(const Graph& g, NodeId seed, std::size_t iters = 10) {
    (void)iters;  // hub scores are closed-form; kept for protocol symmetry
    const std::size_t n = g.node_count();
    HubAuthority ha;
    ha.hub.assign(n, 0.0);
    ha.authority.assign(n, 0.0);
    const auto& seed_nb = g.out_neighbors(seed);
    std::vector<char> in_seed(n, 0);
    for (NodeId x : seed_nb) in_seed[x] = 1;
    if (!seed_nb.empty()) {
        for (NodeId v = 0; v < n; ++v) {
            const auto& nb = g.out_neighbors(v);
            if (nb.empty()) continue;
            std::size_t common = 0;
            for (NodeId x : nb) common += in_seed[x];
            ha.hub[v] = double(common) / std::sqrt(double(seed_nb.size()) * double(nb.size()));
        }
    }
    for (NodeId v = 0; v < n; ++v)
        for (NodeId x : g.out_neighbors(v)) ha.authority[x] += ha.hub[v];
    return ha;
}

}  // namespace oracle
}  // namespace walkrank

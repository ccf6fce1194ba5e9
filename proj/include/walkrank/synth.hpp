#pragma once

// Synthetic graph and arrival-stream generators. Deterministic under a fixed
// seed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "walkrank/graph.hpp"

namespace walkrank {

enum class EventKind { add, remove };

struct StreamEvent {
    EventKind kind;
    DirectedEdge edge;
};

using ArrivalStream = std::vector<StreamEvent>;

inline ArrivalStream random_permutation_stream(std::vector<DirectedEdge> edges, Rng& rng) {
    std::shuffle(edges.begin(), edges.end(), rng);
    ArrivalStream stream;
    stream.reserve(edges.size());
    for (DirectedEdge e : edges) stream.push_back({EventKind::add, e});
    return stream;
}

// Source of the t-th edge drawn with Pr[u] = (d_u(t-1)+1)/(t-1+n); the
// destination is uniform over the other nodes, retrying on duplicates.
inline ArrivalStream dirichlet_stream(std::size_t n, std::size_t m, Rng& rng) {
    if (n < 2 || m < 1) throw std::invalid_argument("dirichlet_stream: need n >= 2, m >= 1");
    ArrivalStream stream;
    stream.reserve(m);
    std::vector<NodeId> past_sources;  // one entry per arrival: degree-weighted pool
    std::unordered_set<std::uint64_t> live;
    std::uniform_int_distribution<NodeId> any_node(0, NodeId(n - 1));
    for (std::size_t t = 1; t <= m; ++t) {
        // the source law must not be distorted by destination rejections, so
        // a saturated source is re-drawn but a bad destination is retried
        for (int src_attempt = 0; src_attempt < 1000 && stream.size() != t; ++src_attempt) {
            std::uniform_int_distribution<std::size_t> mix(0, t - 1 + n - 1);
            const std::size_t r = mix(rng);
            const NodeId src = r < past_sources.size() ? past_sources[r] : any_node(rng);
            for (int dst_attempt = 0; dst_attempt < 200; ++dst_attempt) {
                const NodeId dst = any_node(rng);
                if (dst == src) continue;
                const std::uint64_t key = (std::uint64_t(src) << 32) | dst;
                if (live.count(key)) continue;
                live.insert(key);
                past_sources.push_back(src);
                stream.push_back({EventKind::add, {src, dst}});
                break;
            }
        }
        if (stream.size() != t)
            throw std::runtime_error("dirichlet_stream: could not place a fresh edge");
    }
    return stream;
}

// The adversarial construction: a directed N-cycle v_1..v_N, a hub u fed by
// every v_j and by every x_j (and feeding every x_j), plus petals y_j around
// v_1. n = 3N+1. The returned trigger edge (u, v_1) is not added.
inline std::pair<Graph, DirectedEdge> example1_graph(std::size_t N) {
    if (N < 1) throw std::invalid_argument("example1_graph: N must be >= 1");
    // v_j = j-1 (0-based), u = N, x_j = N+1+j-1, y_j = 2N+1+j-1
    Graph g(3 * N + 1);
    const NodeId u = NodeId(N);
    const NodeId v1 = 0;
    for (std::size_t j = 0; j < N; ++j) {
        const NodeId vj = NodeId(j);
        const NodeId xj = NodeId(N + 1 + j);
        const NodeId yj = NodeId(2 * N + 1 + j);
        if (N > 1) g.add_edge({vj, NodeId((j + 1) % N)}, false);
        g.add_edge({vj, u}, false);
        g.add_edge({u, xj}, false);
        g.add_edge({xj, u}, false);
        g.add_edge({v1, yj}, false);
        g.add_edge({yj, v1}, false);
    }
    return {std::move(g), DirectedEdge{u, v1}};
}

// Grouped actor/item graph for link-prediction experiments. Actors follow a
// pool of items local to their group (both directions, so walks can come
// back), plus a handful of globally popular celebrity items that attract
// every group. Layout: actors first (group-major), then per-group items,
// then celebrities.
struct CommunityGraph {
    Graph graph;
    std::size_t groups = 0;
    std::size_t members = 0;  // actors per group
    std::size_t items = 0;    // items per group
    NodeId actor(std::size_t group, std::size_t i) const { return NodeId(group * members + i); }
    NodeId item(std::size_t group, std::size_t j) const {
        return NodeId(groups * members + group * items + j);
    }
    NodeId celebrity(std::size_t c) const { return NodeId(groups * (members + items) + c); }
};

inline CommunityGraph community_graph(std::size_t groups, std::size_t members,
                                      std::size_t items, std::size_t follows_per_actor,
                                      std::size_t celebrities, Rng& rng) {
    if (groups < 1 || members < 2 || items <= follows_per_actor)
        throw std::invalid_argument("community_graph: need items > follows_per_actor");
    CommunityGraph cg;
    cg.groups = groups;
    cg.members = members;
    cg.items = items;
    cg.graph = Graph(groups * (members + items) + celebrities);
    Graph& g = cg.graph;
    std::vector<std::size_t> pool(items);
    for (std::size_t grp = 0; grp < groups; ++grp) {
        for (std::size_t i = 0; i < members; ++i) {
            const NodeId a = cg.actor(grp, i);
            std::iota(pool.begin(), pool.end(), 0);
            std::shuffle(pool.begin(), pool.end(), rng);
            for (std::size_t f = 0; f < follows_per_actor; ++f) {
                const NodeId it = cg.item(grp, pool[f]);
                g.add_edge({a, it}, false);
                if (!g.has_edge({it, a})) g.add_edge({it, a}, false);
            }
            for (std::size_t c = 0; c < celebrities; ++c)
                g.add_edge({a, cg.celebrity(c)}, false);
        }
    }
    return cg;
}

// Directed graph whose sorted in-degree sequence decays like j^-alpha.
// In-degrees are prescribed by rank; sources are uniform random. Simple, no
// self-loops.
inline Graph powerlaw_graph(std::size_t n, double target_alpha, Rng& rng,
                            double avg_degree = 10.0) {
    if (!(target_alpha > 0.0 && target_alpha < 1.0))
        throw std::invalid_argument("powerlaw_graph: alpha must be in (0,1)");
    if (n < 2) throw std::invalid_argument("powerlaw_graph: n must be >= 2");
    const double m_target = std::min(avg_degree * double(n), double(n) * double(n - 1) / 4.0);
    double weight_sum = 0.0;
    for (std::size_t j = 1; j <= n; ++j) weight_sum += std::pow(double(j), -target_alpha);
    const double scale = m_target / weight_sum;
    Graph g(n);
    std::uniform_int_distribution<NodeId> any_node(0, NodeId(n - 1));
    for (std::size_t j = 1; j <= n; ++j) {
        const NodeId target = NodeId(j - 1);
        auto want = std::uint64_t(std::llround(scale * std::pow(double(j), -target_alpha)));
        want = std::min<std::uint64_t>(want, (n - 1) / 2);
        std::uint64_t placed = 0;
        for (int attempt = 0; placed < want && attempt < int(want) * 50 + 100; ++attempt) {
            const NodeId src = any_node(rng);
            if (src == target || g.has_edge({src, target})) continue;
            g.add_edge({src, target}, false);
            ++placed;
        }
    }
    return g;
}

}  // namespace walkrank

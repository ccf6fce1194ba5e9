#pragma once

// Top-k personalized queries by stitching stored walk segments, with fetch
// accounting. Queries are read-only over the graph and walk stores; caches
// and segment pools are query-local.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "walkrank/engine.hpp"
#include "walkrank/graph.hpp"
#include "walkrank/walk_store.hpp"

namespace walkrank {

struct FetchStats {
    std::uint64_t fetches = 0;
    std::uint64_t cache_hits = 0;
    std::uint64_t segment_reuses = 0;
};

struct StitchedWalk {
    NodeId seed = 0;
    std::vector<NodeId> path;  // resets appear as explicit visits to seed
    std::uint64_t resets = 0;
};

struct QueryConfig {
    double epsilon = 0.2;
    double alpha = 0.76;   // power-law exponent used for walk sizing
    double c = 5.0;        // expected sightings of the k-th node
    bool light_fetch = false;  // fetch returns one sampled out-edge instead of all
};

struct TopKEntry {
    NodeId node;
    std::uint64_t count;
};

struct TopKResult {
    std::vector<TopKEntry> ranked;
    bool truncated = false;  // fewer than k candidates were available
};

// Minimum walk length to see each of the top k nodes c times in expectation,
// under a power-law score vector with exponent alpha.
inline std::uint64_t walk_length_for_top_k(std::uint64_t k, std::uint64_t n, double alpha,
                                           double c) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("walk_length_for_top_k: alpha must be in (0,1)");
    if (k < 1 || k > n) throw std::domain_error("walk_length_for_top_k: need 1 <= k <= n");
    if (c < 1.0) throw std::domain_error("walk_length_for_top_k: c must be >= 1");
    const double s =
        c / (1.0 - alpha) * double(k) * std::pow(double(n) / double(k), 1.0 - alpha);
    return std::uint64_t(std::ceil(s));
}

// Expected-fetch upper bound for a stitched walk of length s.
inline double theoretical_fetch_bound(double s, double n, double R, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("theoretical_fetch_bound: alpha must be in (0,1)");
    if (R < 1.0) throw std::domain_error("theoretical_fetch_bound: R must be >= 1");
    return 1.0 + std::pow(2.0 * (1.0 - alpha) / (n * R), 1.0 / alpha - 1.0) *
                     std::pow(s, 1.0 / alpha);
}

// Expected fetches to find the top k nodes.
inline double corollary_fetch_bound(std::uint64_t k, double R, double alpha, double c) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("corollary_fetch_bound: alpha must be in (0,1)");
    if (R < 1.0) throw std::domain_error("corollary_fetch_bound: R must be >= 1");
    if (c < 1.0) throw std::domain_error("corollary_fetch_bound: c must be >= 1");
    return 1.0 + std::pow(c, 1.0 / alpha) /
                     ((1.0 - alpha) * std::pow(R / 2.0, 1.0 / alpha - 1.0)) *
                     double(k);
}

// Query-lifetime fetch session: first access to a node is a fetch, repeats
// are cache hits. In light mode a fetch carries one sampled out-edge instead
// of the full neighbor list, and every further edge request costs a fetch.
struct FetchSession {
    struct Entry {
        std::vector<NodeId> out_neighbors;
        std::vector<SegmentId> segments;
        std::size_t next_unused = 0;
        bool has_sampled_edge = false;
        NodeId sampled_edge = 0;
    };

    const Graph& g;
    const WalkStore& ws;
    bool light;
    FetchStats stats;
    std::unordered_map<NodeId, Entry> entries;

    FetchSession(const Graph& g, const WalkStore& ws, bool light = false)
        : g(g), ws(ws), light(light) {}

    Entry* lookup(NodeId u) {
        auto it = entries.find(u);
        return it == entries.end() ? nullptr : &it->second;
    }

    Entry& fetch(NodeId u, Rng& rng) {
        auto it = entries.find(u);
        if (it != entries.end() && !light) {
            ++stats.cache_hits;
            return it->second;
        }
        if (it == entries.end()) {
            ++stats.fetches;
            Entry e;
            e.segments = ws.segments_from(u);
            if (light) {
                auto s = g.sample_out_edge(u, rng);
                e.has_sampled_edge = s.has_value();
                if (s) e.sampled_edge = *s;
            } else {
                e.out_neighbors = g.out_neighbors(u);
            }
            it = entries.emplace(u, std::move(e)).first;
            return it->second;
        }
        // light mode: a repeat request for an out-edge costs another fetch
        ++stats.cache_hits;
        return it->second;
    }

    // One uniform random out-edge of a fetched node, or nullopt if dangling.
    std::optional<NodeId> random_out_edge(NodeId u, Entry& e, Rng& rng) {
        if (!light) {
            if (e.out_neighbors.empty()) return std::nullopt;
            std::uniform_int_distribution<std::size_t> pick(0, e.out_neighbors.size() - 1);
            return e.out_neighbors[pick(rng)];
        }
        if (e.has_sampled_edge) {
            e.has_sampled_edge = false;
            return e.sampled_edge;
        }
        ++stats.fetches;  // re-fetch for a fresh sample
        auto s = g.sample_out_edge(u, rng);
        return s;
    }
};

// Stitches a personalized walk of length >= L from the stored segments.
//
// At the walk endpoint u: an unused fetched segment of u is consumed first
// (its internal randomness already carries the reset draw at u and its
// terminal reset becomes the jump back to the seed); otherwise an unfetched u
// is fetched; otherwise a fresh reset draw is made and the walk steps along a
// uniform random out-edge. A dangling endpoint with no segments resets to the
// seed.
inline std::pair<StitchedWalk, FetchStats> stitch_walk(const Graph& g, const WalkStore& ws,
                                                       NodeId seed, std::uint64_t L,
                                                       const QueryConfig& cfg, Rng& rng) {
    StitchedWalk walk;
    walk.seed = seed;
    walk.path.push_back(seed);
    FetchSession cache(g, ws, cfg.light_fetch);
    const std::uint64_t hard_cap = 100 * L + 1000;
    std::uint64_t iterations = 0;
    while (walk.path.size() < L) {
        if (++iterations > hard_cap)
            throw std::runtime_error("stitch_walk: iteration cap exceeded");
        const NodeId u = walk.path.back();
        auto* entry = cache.lookup(u);
        if (entry != nullptr && entry->next_unused < entry->segments.size()) {
            const WalkSegment& seg = ws.segment(entry->segments[entry->next_unused++]);
            ++cache.stats.segment_reuses;
            walk.path.insert(walk.path.end(), seg.path.begin() + 1, seg.path.end());
            walk.path.push_back(seed);  // the segment ended at its first reset
            ++walk.resets;
            continue;
        }
        if (entry == nullptr) {
            cache.fetch(u, rng);
            continue;  // no advance; the endpoint now has segments in memory
        }
        if (coin(cfg.epsilon, rng)) {
            walk.path.push_back(seed);
            ++walk.resets;
            continue;
        }
        auto next = cache.random_out_edge(u, *entry, rng);
        if (!next) {
            walk.path.push_back(seed);  // dangling endpoint, out of segments
            ++walk.resets;
            continue;
        }
        walk.path.push_back(*next);
    }
    return {std::move(walk), cache.stats};
}

// As stitch_walk, but records the cumulative fetch count each time the walk
// length first reaches one of the (ascending) checkpoints.
inline std::vector<std::uint64_t> stitch_walk_fetch_profile(
    const Graph& g, const WalkStore& ws, NodeId seed,
    const std::vector<std::uint64_t>& checkpoints, const QueryConfig& cfg, Rng& rng) {
    std::vector<std::uint64_t> fetches_at;
    if (checkpoints.empty()) return fetches_at;
    const std::uint64_t L = checkpoints.back();
    StitchedWalk walk;
    walk.seed = seed;
    walk.path.push_back(seed);
    FetchSession cache(g, ws, cfg.light_fetch);
    std::size_t next_cp = 0;
    auto record = [&] {
        while (next_cp < checkpoints.size() && walk.path.size() >= checkpoints[next_cp]) {
            fetches_at.push_back(cache.stats.fetches);
            ++next_cp;
        }
    };
    record();
    while (walk.path.size() < L) {
        const NodeId u = walk.path.back();
        auto* entry = cache.lookup(u);
        if (entry != nullptr && entry->next_unused < entry->segments.size()) {
            const WalkSegment& seg = ws.segment(entry->segments[entry->next_unused++]);
            walk.path.insert(walk.path.end(), seg.path.begin() + 1, seg.path.end());
            walk.path.push_back(seed);
        } else if (entry == nullptr) {
            cache.fetch(u, rng);
        } else if (coin(cfg.epsilon, rng)) {
            walk.path.push_back(seed);
        } else {
            auto next = cache.random_out_edge(u, *entry, rng);
            walk.path.push_back(next ? *next : seed);
        }
        record();
    }
    return fetches_at;
}

// Runs a stitched walk sized by walk_length_for_top_k and returns the k most
// visited nodes, excluding the seed and the exclusion set. Ties break toward
// the lower node id.
inline std::pair<TopKResult, FetchStats> top_k(const Graph& g, const WalkStore& ws, NodeId seed,
                                               std::uint64_t k, const QueryConfig& cfg,
                                               const std::vector<NodeId>& exclusions, Rng& rng) {
    double alpha = cfg.alpha;
    if (alpha >= 1.0) alpha = 0.99;  // fitted exponents above 1 are clamped
    const std::uint64_t L = walk_length_for_top_k(k, g.node_count(), alpha, cfg.c);
    auto [walk, stats] = stitch_walk(g, ws, seed, L, cfg, rng);

    std::unordered_map<NodeId, std::uint64_t> counts;
    for (NodeId v : walk.path) ++counts[v];
    counts.erase(seed);
    for (NodeId v : exclusions) counts.erase(v);

    TopKResult result;
    result.ranked.reserve(counts.size());
    for (const auto& [node, count] : counts) result.ranked.push_back({node, count});
    std::sort(result.ranked.begin(), result.ranked.end(),
              [](const TopKEntry& a, const TopKEntry& b) {
                  return a.count != b.count ? a.count > b.count : a.node < b.node;
              });
    if (result.ranked.size() < k) result.truncated = true;
    if (result.ranked.size() > k) result.ranked.resize(k);
    return {std::move(result), stats};
}

}  // namespace walkrank

#pragma once

// Monte Carlo engine: builds walk segments, turns visit counts into
// PageRank/SALSA estimates, and repairs stored segments incrementally as
// edges arrive or leave.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "walkrank/graph.hpp"
#include "walkrank/walk_store.hpp"

namespace walkrank {

enum class Mode { pagerank, salsa };

struct EngineConfig {
    double epsilon = 0.2;            // reset probability
    std::uint32_t walks_per_node = 5;  // R
    Mode mode = Mode::pagerank;
    std::uint64_t rng_seed = 1;
};

struct UpdateCost {
    std::uint64_t arrival_index = 0;
    std::uint64_t segments_rerouted = 0;
    std::uint64_t rewalk_steps = 0;  // nodes appended during repair
};

struct SalsaEstimate {
    std::vector<double> hub;
    std::vector<double> authority;
};

inline bool coin(double p, Rng& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

// --- PageRank segments ---------------------------------------------------

// Appends the continuation of a walk whose current endpoint is `from`.
// The reset check runs before each step, so the endpoint itself has already
// consumed its reset draw. Returns the number of appended nodes.
inline std::uint64_t continue_pagerank_walk(const Graph& g, NodeId from, double epsilon,
                                            Rng& rng, std::vector<NodeId>& out) {
    std::uint64_t appended = 0;
    NodeId cur = from;
    while (!coin(epsilon, rng)) {
        auto next = g.sample_out_edge(cur, rng);
        if (!next) break;  // dangling terminates the segment
        cur = *next;
        out.push_back(cur);
        ++appended;
    }
    return appended;
}

inline WalkSegment generate_segment(const Graph& g, NodeId source, const EngineConfig& cfg,
                                    Rng& rng) {
    WalkSegment seg;
    seg.source = source;
    seg.kind = SegmentKind::pagerank;
    seg.path.push_back(source);
    continue_pagerank_walk(g, source, cfg.epsilon, rng, seg.path);
    return seg;
}

inline std::vector<double> estimate_pagerank(const WalkStore& ws, std::size_t n,
                                             const EngineConfig& cfg) {
    const double scale = cfg.epsilon / (double(n) * cfg.walks_per_node);
    std::vector<double> pi(n, 0.0);
    for (NodeId v = 0; v < n; ++v) pi[v] = double(ws.visit_count(v)) * scale;
    return pi;
}

inline WalkStore build_walk_store(const Graph& g, const EngineConfig& cfg, Rng& rng) {
    WalkStore ws;
    SegmentId next = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        for (std::uint32_t r = 0; r < cfg.walks_per_node; ++r) {
            WalkSegment seg = generate_segment(g, v, cfg, rng);
            seg.id = next++;
            ws.put_segment(std::move(seg));
        }
    }
    return ws;
}

inline std::pair<WalkStore, std::vector<double>> build_all(const Graph& g,
                                                           const EngineConfig& cfg, Rng& rng) {
    WalkStore ws = build_walk_store(g, cfg, rng);
    std::vector<double> pi = estimate_pagerank(ws, g.node_count(), cfg);
    return {std::move(ws), std::move(pi)};
}

// Probability 1 - (1 - 1/d)^W that at least one of W visiting segments
// reroutes onto a new out-edge of a degree-d node.
inline bool should_notify(std::uint64_t d, std::uint64_t W, Rng& rng) {
    if (d == 0) throw std::invalid_argument("should_notify: d must be >= 1");
    if (W == 0) return false;
    if (d == 1) return true;
    const double p = 1.0 - std::pow(1.0 - 1.0 / double(d), double(W));
    return coin(p, rng);
}

// Repairs stored segments after edge e has been added to g.
// Each non-terminal visit at e.src reroutes independently with probability
// 1/outdeg(src); the first firing visit wins per segment. A terminal visit is
// a stored reset and is left alone, unless the node was dangling when the
// segment stopped there (outdeg now 1), in which case the forced stop is
// replaced by a fresh continuation with the reset draw applied first.
inline UpdateCost on_edge_arrival(const Graph& g, WalkStore& ws, DirectedEdge e,
                                  const EngineConfig& cfg, Rng& rng) {
    UpdateCost cost;
    cost.arrival_index = g.arrival_index();
    const std::uint64_t d = g.out_degree(e.src);
    std::vector<NodeId> suffix;
    SegmentId current = SegmentId(-1);
    bool skip_rest = false;
    for (const VisitRef& ref : ws.segments_visiting(e.src)) {
        if (ref.segment != current) {
            current = ref.segment;
            skip_rest = false;
        }
        if (skip_rest) continue;
        const WalkSegment& seg = ws.segment(ref.segment);
        const bool terminal = ref.position + 1 == seg.path.size();
        bool fire;
        if (terminal) {
            fire = (d == 1) && coin(1.0 - cfg.epsilon, rng);
        } else {
            fire = coin(1.0 / double(d), rng);
        }
        if (!fire) continue;
        suffix.clear();
        suffix.push_back(e.dst);
        continue_pagerank_walk(g, e.dst, cfg.epsilon, rng, suffix);
        ws.truncate_and_replace(ref.segment, ref.position, suffix);
        ++cost.segments_rerouted;
        cost.rewalk_steps += suffix.size();
        skip_rest = true;  // later positions of this segment no longer exist
    }
    return cost;
}

// Repairs stored segments after edge e has been removed from g. Every stored
// traversal of exactly (src,dst) is forced to re-sample its step among the
// remaining out-edges of src; conditioned on the walk having stepped, the
// surviving choices stay uniform, so untouched steps need no repair.
inline UpdateCost on_edge_removal(const Graph& g, WalkStore& ws, DirectedEdge e,
                                  const EngineConfig& cfg, Rng& rng) {
    UpdateCost cost;
    std::vector<NodeId> suffix;
    SegmentId current = SegmentId(-1);
    bool skip_rest = false;
    for (const VisitRef& ref : ws.segments_visiting(e.src)) {
        if (ref.segment != current) {
            current = ref.segment;
            skip_rest = false;
        }
        if (skip_rest) continue;
        const WalkSegment& seg = ws.segment(ref.segment);
        if (ref.position + 1 >= seg.path.size()) continue;
        if (seg.path[ref.position + 1] != e.dst) continue;
        suffix.clear();
        auto next = g.sample_out_edge(e.src, rng);
        if (next) {
            suffix.push_back(*next);
            continue_pagerank_walk(g, *next, cfg.epsilon, rng, suffix);
        }
        ws.truncate_and_replace(ref.segment, ref.position, suffix);
        ++cost.segments_rerouted;
        cost.rewalk_steps += suffix.size();
        skip_rest = true;
    }
    return cost;
}

}  // namespace walkrank

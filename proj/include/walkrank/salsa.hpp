#pragma once

// SALSA walk segments: forward/backward alternating walks with resets drawn
// at forward steps only. 2R segments per node (R forward-start, R
// backward-start). Hub mass lives at forward-stepping positions, authority
// mass at backward-stepping positions.

#include <cstdint>
#include <vector>

#include "walkrank/engine.hpp"
#include "walkrank/graph.hpp"
#include "walkrank/walk_store.hpp"

namespace walkrank {

// Position parity determines the side a visit counts toward.
// forward-start: even positions are hub-side; backward-start: even are
// authority-side.
inline bool is_hub_side(SegmentKind kind, std::uint32_t position) {
    const bool even = (position % 2) == 0;
    return kind == SegmentKind::salsa_forward_start ? even : !even;
}

// Appends the alternating continuation of a walk. `forward_next` says which
// direction the next step takes; the reset draw happens immediately after
// each forward step. A node lacking the required edge direction ends the
// segment. Returns the number of appended nodes.
inline std::uint64_t continue_salsa_walk(const Graph& g, NodeId from, bool forward_next,
                                         double epsilon, Rng& rng, std::vector<NodeId>& out) {
    std::uint64_t appended = 0;
    NodeId cur = from;
    for (;;) {
        if (forward_next) {
            auto next = g.sample_out_edge(cur, rng);
            if (!next) break;
            cur = *next;
            out.push_back(cur);
            ++appended;
            if (coin(epsilon, rng)) break;
        } else {
            auto next = g.sample_in_edge(cur, rng);
            if (!next) break;
            cur = *next;
            out.push_back(cur);
            ++appended;
        }
        forward_next = !forward_next;
    }
    return appended;
}

inline WalkSegment generate_salsa_segment(const Graph& g, NodeId source, SegmentKind kind,
                                          double epsilon, Rng& rng) {
    WalkSegment seg;
    seg.source = source;
    seg.kind = kind;
    seg.path.push_back(source);
    continue_salsa_walk(g, source, kind == SegmentKind::salsa_forward_start, epsilon, rng,
                        seg.path);
    return seg;
}

inline WalkStore build_salsa(const Graph& g, const EngineConfig& cfg, Rng& rng) {
    WalkStore ws;
    SegmentId next = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        for (std::uint32_t r = 0; r < cfg.walks_per_node; ++r) {
            WalkSegment seg =
                generate_salsa_segment(g, v, SegmentKind::salsa_forward_start, cfg.epsilon, rng);
            seg.id = next++;
            ws.put_segment(std::move(seg));
        }
        for (std::uint32_t r = 0; r < cfg.walks_per_node; ++r) {
            WalkSegment seg =
                generate_salsa_segment(g, v, SegmentKind::salsa_backward_start, cfg.epsilon, rng);
            seg.id = next++;
            ws.put_segment(std::move(seg));
        }
    }
    return ws;
}

// Side-specific visit counts, each side normalized to sum 1.
inline SalsaEstimate estimate_salsa(const WalkStore& ws, std::size_t n,
                                    const EngineConfig& cfg) {
    (void)cfg;
    SalsaEstimate est;
    est.hub.assign(n, 0.0);
    est.authority.assign(n, 0.0);
    for (SegmentId id = 0; id < ws.segment_count(); ++id) {
        const WalkSegment& seg = ws.segment(id);
        for (std::uint32_t i = 0; i < seg.path.size(); ++i) {
            if (is_hub_side(seg.kind, i))
                est.hub[seg.path[i]] += 1.0;
            else
                est.authority[seg.path[i]] += 1.0;
        }
    }
    for (auto* side : {&est.hub, &est.authority}) {
        double total = 0.0;
        for (double x : *side) total += x;
        if (total > 0.0)
            for (double& x : *side) x /= total;
    }
    return est;
}

// Repairs SALSA segments after edge e has been added to g. Forward traversals
// through e.src reroute with probability 1/outdeg(src); backward traversals
// through e.dst with probability 1/indeg(dst). Terminal visits were forced
// stops or resets: a hub-side stop means the node had no out-edge, an
// authority-side stop with prior indeg 0 gets the pending reset draw applied
// before continuing backward.
inline UpdateCost on_edge_arrival_salsa(const Graph& g, WalkStore& ws, DirectedEdge e,
                                        const EngineConfig& cfg, Rng& rng) {
    UpdateCost cost;
    cost.arrival_index = g.arrival_index();
    const std::uint64_t dout = g.out_degree(e.src);
    const std::uint64_t din = g.in_degree(e.dst);

    std::vector<VisitRef> refs = ws.segments_visiting(e.src);
    if (e.dst != e.src) {
        std::vector<VisitRef> more = ws.segments_visiting(e.dst);
        refs.insert(refs.end(), more.begin(), more.end());
        std::sort(refs.begin(), refs.end(), [](const VisitRef& a, const VisitRef& b) {
            return a.segment != b.segment ? a.segment < b.segment : a.position < b.position;
        });
    }

    std::vector<NodeId> suffix;
    SegmentId current = SegmentId(-1);
    bool skip_rest = false;
    for (const VisitRef& ref : refs) {
        if (ref.segment != current) {
            current = ref.segment;
            skip_rest = false;
        }
        if (skip_rest) continue;
        const WalkSegment& seg = ws.segment(ref.segment);
        const NodeId at = seg.path[ref.position];
        const bool hub_side = is_hub_side(seg.kind, ref.position);
        const bool terminal = ref.position + 1 == seg.path.size();

        bool fire = false;
        bool forward_repair = false;
        if (hub_side && at == e.src) {
            forward_repair = true;
            if (terminal)
                fire = (dout == 1);  // forced stop: the forward step now exists
            else
                fire = coin(1.0 / double(dout), rng);
        } else if (!hub_side && at == e.dst) {
            if (terminal)
                fire = (din == 1) && coin(1.0 - cfg.epsilon, rng);
            else
                fire = coin(1.0 / double(din), rng);
        }
        if (!fire) continue;

        suffix.clear();
        if (forward_repair) {
            suffix.push_back(e.dst);
            if (!coin(cfg.epsilon, rng))
                continue_salsa_walk(g, e.dst, false, cfg.epsilon, rng, suffix);
        } else {
            suffix.push_back(e.src);
            continue_salsa_walk(g, e.src, true, cfg.epsilon, rng, suffix);
        }
        ws.truncate_and_replace(ref.segment, ref.position, suffix);
        ++cost.segments_rerouted;
        cost.rewalk_steps += suffix.size();
        skip_rest = true;
    }
    return cost;
}

}  // namespace walkrank

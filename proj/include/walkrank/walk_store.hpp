#pragma once

// Storage for random-walk segments, indexed by every node they visit.
// Maintains per-node total visit counts X_v and distinct-segment counts W(v).

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "walkrank/graph.hpp"

namespace walkrank {

using SegmentId = std::uint64_t;

enum class SegmentKind { pagerank, salsa_forward_start, salsa_backward_start };

struct WalkSegment {
    SegmentId id = 0;
    NodeId source = 0;
    SegmentKind kind = SegmentKind::pagerank;
    std::vector<NodeId> path;  // path[0] == source
};

struct VisitRef {
    SegmentId segment;
    std::uint32_t position;
};

class WalkStore {
public:
    void put_segment(WalkSegment seg) {
        if (seg.path.empty() || seg.path.front() != seg.source)
            throw std::invalid_argument("put_segment: path must begin at source");
        if (seg.id != segments_.size())
            throw std::invalid_argument("put_segment: ids must be dense and unique");
        for (std::uint32_t i = 0; i < seg.path.size(); ++i) add_entry(seg.path[i], seg.id, i);
        total_visits_ += seg.path.size();
        if (by_source_.size() <= seg.source) by_source_.resize(seg.source + 1);
        by_source_[seg.source].push_back(seg.id);
        segments_.push_back(std::move(seg));
    }

    // path becomes path[0..=cut_position] ++ new_suffix.
    void truncate_and_replace(SegmentId id, std::uint32_t cut_position,
                              const std::vector<NodeId>& new_suffix) {
        WalkSegment& seg = segments_.at(id);
        if (cut_position >= seg.path.size())
            throw std::out_of_range("truncate_and_replace: bad cut position");
        for (std::uint32_t i = cut_position + 1; i < seg.path.size(); ++i)
            remove_entry(seg.path[i], id, i);
        total_visits_ -= seg.path.size() - (cut_position + 1);
        seg.path.resize(cut_position + 1);
        for (NodeId v : new_suffix) {
            add_entry(v, id, std::uint32_t(seg.path.size()));
            seg.path.push_back(v);
        }
        total_visits_ += new_suffix.size();
    }

    std::uint64_t visit_count(NodeId v) const {  // X_v
        return v < visit_count_.size() ? visit_count_[v] : 0;
    }

    std::uint64_t distinct_segments_visiting(NodeId v) const {  // W(v)
        return v < index_.size() ? index_[v].size() : 0;
    }

    // Sorted by (segment, position); deterministic scan order for repairs.
    std::vector<VisitRef> segments_visiting(NodeId v) const {
        std::vector<VisitRef> out;
        if (v >= index_.size()) return out;
        for (const auto& [seg, positions] : index_[v])
            for (std::uint32_t p : positions) out.push_back({seg, p});
        std::sort(out.begin(), out.end(), [](const VisitRef& a, const VisitRef& b) {
            return a.segment != b.segment ? a.segment < b.segment : a.position < b.position;
        });
        return out;
    }

    const WalkSegment& segment(SegmentId id) const { return segments_.at(id); }
    std::size_t segment_count() const { return segments_.size(); }
    std::uint64_t total_visits() const { return total_visits_; }

    const std::vector<SegmentId>& segments_from(NodeId source) const {
        static const std::vector<SegmentId> empty;
        return source < by_source_.size() ? by_source_[source] : empty;
    }

private:
    void add_entry(NodeId v, SegmentId id, std::uint32_t pos) {
        if (v >= index_.size()) {
            index_.resize(v + 1);
            visit_count_.resize(v + 1, 0);
        }
        index_[v][id].push_back(pos);
        ++visit_count_[v];
    }

    void remove_entry(NodeId v, SegmentId id, std::uint32_t pos) {
        auto& per_seg = index_[v];
        auto it = per_seg.find(id);
        auto& positions = it->second;
        positions.erase(std::find(positions.begin(), positions.end(), pos));
        if (positions.empty()) per_seg.erase(it);
        --visit_count_[v];
    }

    std::vector<WalkSegment> segments_;
    std::vector<std::unordered_map<SegmentId, std::vector<std::uint32_t>>> index_;
    std::vector<std::uint64_t> visit_count_;
    std::vector<std::vector<SegmentId>> by_source_;
    std::uint64_t total_visits_ = 0;
};

}  // namespace walkrank

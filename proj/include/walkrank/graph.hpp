#pragma once

// In-memory directed graph with random-access adjacency, degree counters
// and uniform out/in-edge sampling. Mutations are serialized by the caller;
// concurrent reads between mutations are safe.

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace walkrank {

using NodeId = std::uint32_t;
using Rng = std::mt19937_64;

struct DirectedEdge {
    NodeId src;
    NodeId dst;
    friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

struct DuplicateEdgeError : std::runtime_error {
    explicit DuplicateEdgeError(const std::string& what) : std::runtime_error(what) {}
};

struct MissingEdgeError : std::runtime_error {
    explicit MissingEdgeError(const std::string& what) : std::runtime_error(what) {}
};

struct NodeRangeError : std::runtime_error {
    explicit NodeRangeError(const std::string& what) : std::runtime_error(what) {}
};

class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : out_(n), in_(n) {}

    std::size_t node_count() const { return out_.size(); }
    std::uint64_t edge_count() const { return m_; }
    std::uint64_t arrival_index() const { return arrivals_; }

    void ensure_node(NodeId v) {
        if (v >= out_.size()) {
            out_.resize(v + 1);
            in_.resize(v + 1);
        }
    }

    bool has_edge(DirectedEdge e) const { return keys_.count(key(e)) != 0; }

    // Returns the 1-based arrival index t of this edge.
    std::uint64_t add_edge(DirectedEdge e, bool auto_grow = true) {
        if (auto_grow) {
            ensure_node(std::max(e.src, e.dst));
        } else if (e.src >= out_.size() || e.dst >= out_.size()) {
            throw NodeRangeError("add_edge: node id out of range: " +
                                 std::to_string(e.src) + "->" + std::to_string(e.dst));
        }
        if (!keys_.insert(key(e)).second) {
            throw DuplicateEdgeError("add_edge: edge already present: " +
                                     std::to_string(e.src) + "->" + std::to_string(e.dst));
        }
        out_[e.src].push_back(e.dst);
        in_[e.dst].push_back(e.src);
        ++m_;
        return ++arrivals_;
    }

    void remove_edge(DirectedEdge e) {
        if (keys_.erase(key(e)) == 0) {
            throw MissingEdgeError("remove_edge: edge not present: " +
                                   std::to_string(e.src) + "->" + std::to_string(e.dst));
        }
        erase_one(out_[e.src], e.dst);
        erase_one(in_[e.dst], e.src);
        --m_;
    }

    std::uint64_t out_degree(NodeId v) const { return out_.at(v).size(); }
    std::uint64_t in_degree(NodeId v) const { return in_.at(v).size(); }

    const std::vector<NodeId>& out_neighbors(NodeId v) const { return out_.at(v); }
    const std::vector<NodeId>& in_neighbors(NodeId v) const { return in_.at(v); }

    // nullopt signals a dangling node; callers decide the policy.
    std::optional<NodeId> sample_out_edge(NodeId u, Rng& rng) const {
        const auto& nb = out_.at(u);
        if (nb.empty()) return std::nullopt;
        std::uniform_int_distribution<std::size_t> pick(0, nb.size() - 1);
        return nb[pick(rng)];
    }

    std::optional<NodeId> sample_in_edge(NodeId u, Rng& rng) const {
        const auto& nb = in_.at(u);
        if (nb.empty()) return std::nullopt;
        std::uniform_int_distribution<std::size_t> pick(0, nb.size() - 1);
        return nb[pick(rng)];
    }

    std::vector<DirectedEdge> edges() const {
        std::vector<DirectedEdge> out;
        out.reserve(m_);
        for (NodeId u = 0; u < out_.size(); ++u)
            for (NodeId v : out_[u]) out.push_back({u, v});
        return out;
    }

private:
    static std::uint64_t key(DirectedEdge e) {
        return (std::uint64_t(e.src) << 32) | e.dst;
    }

    static void erase_one(std::vector<NodeId>& v, NodeId x) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] == x) {
                v.erase(v.begin() + i);
                return;
            }
        }
    }

    std::vector<std::vector<NodeId>> out_;
    std::vector<std::vector<NodeId>> in_;
    std::unordered_set<std::uint64_t> keys_;
    std::uint64_t m_ = 0;
    std::uint64_t arrivals_ = 0;
};

}  // namespace walkrank

#pragma once

// Statistical estimators behind the stream-validation and retrieval-quality
// experiments: rank/frequency power-law fitting, the arrival statistic mX,
// degree CDFs, and 11-point interpolated precision.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "walkrank/graph.hpp"
#include "walkrank/oracle.hpp"
#include "walkrank/synth.hpp"

namespace walkrank {

struct PowerLawFit {
    double alpha = 0.0;
    std::size_t window_lo = 0;  // 1-based ranks, inclusive
    std::size_t window_hi = 0;
    double r_squared = 0.0;
    bool degenerate = false;  // constant values in the window
};

// Least-squares slope of log(value) vs log(rank) over ranks [lo, hi];
// alpha = -slope. Values must be sorted non-increasing.
inline PowerLawFit fit_powerlaw(const std::vector<double>& sorted_values, std::size_t lo,
                                std::size_t hi) {
    if (lo < 1 || lo >= hi || hi > sorted_values.size())
        throw std::invalid_argument("fit_powerlaw: bad window");
    std::vector<double> xs, ys;
    for (std::size_t j = lo; j <= hi; ++j) {
        const double v = sorted_values[j - 1];
        if (v <= 0.0) continue;
        xs.push_back(std::log(double(j)));
        ys.push_back(std::log(v));
    }
    if (xs.size() < 10) throw std::invalid_argument("fit_powerlaw: window too small");
    const std::size_t k = xs.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < k; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= double(k);
    my /= double(k);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    PowerLawFit fit;
    fit.window_lo = lo;
    fit.window_hi = hi;
    const auto [ymin, ymax] = std::minmax_element(ys.begin(), ys.end());
    if (*ymax - *ymin < 1e-12) {  // constant values
        fit.alpha = 0.0;
        fit.degenerate = true;
        return fit;
    }
    const double slope = sxy / sxx;
    fit.alpha = -slope;
    fit.r_squared = (sxy * sxy) / (sxx * syy);
    return fit;
}

// Mean over arrivals of t * pi(u_t) / outdeg(u_t) after t edges, with the
// PageRank vector recomputed at checkpoints (it drifts slowly, a full
// per-arrival recomputation would be quadratic). Equals 1 in expectation
// under random-order arrivals.
inline double mx_statistic(const ArrivalStream& stream, double epsilon,
                           std::size_t checkpoints = 50) {
    std::size_t node_count = 0;
    for (const StreamEvent& ev : stream)
        node_count = std::max<std::size_t>({node_count, ev.edge.src + 1ul, ev.edge.dst + 1ul});
    Graph g(node_count);
    const std::size_t m = stream.size();
    const std::size_t interval = std::max<std::size_t>(1, m / checkpoints);
    std::vector<double> pi;
    double acc = 0.0;
    std::size_t terms = 0;
    std::uint64_t t = 0;
    for (const StreamEvent& ev : stream) {
        if (ev.kind != EventKind::add)
            throw std::invalid_argument("mx_statistic: stream must be additions only");
        t = g.add_edge(ev.edge);
        if (pi.empty() || (t - 1) % interval == 0)
            pi = oracle::power_iteration_pagerank(g, epsilon, 1e-10);
        acc += double(t) * pi[ev.edge.src] / double(g.out_degree(ev.edge.src));
        ++terms;
    }
    return terms ? acc / double(terms) : 0.0;
}

struct DegreeCdfs {
    std::vector<std::uint64_t> degree;  // ascending observed degrees
    std::vector<double> arrival;        // a(d)
    std::vector<double> existing;       // e(d)
};

// a(d): fraction of the given arrivals whose source has out-degree <= d in g.
// e(d): fraction of edge mass at sources of out-degree <= d.
inline DegreeCdfs degree_cdfs(const Graph& g, const std::vector<DirectedEdge>& recent_arrivals) {
    std::vector<std::uint64_t> degrees;
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (g.out_degree(v) > 0) degrees.push_back(g.out_degree(v));
    std::sort(degrees.begin(), degrees.end());
    degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());

    DegreeCdfs cdfs;
    cdfs.degree = degrees;
    const double m = double(g.edge_count());
    const double a_total = double(recent_arrivals.size());
    for (std::uint64_t d : degrees) {
        double mass = 0.0;
        for (NodeId v = 0; v < g.node_count(); ++v)
            if (g.out_degree(v) <= d) mass += double(g.out_degree(v));
        std::size_t arrivals_at_most = 0;
        for (const DirectedEdge& e : recent_arrivals)
            if (g.out_degree(e.src) <= d) ++arrivals_at_most;
        cdfs.existing.push_back(m > 0 ? mass / m : 0.0);
        cdfs.arrival.push_back(a_total > 0 ? double(arrivals_at_most) / a_total : 0.0);
    }
    return cdfs;
}

inline double cdf_sup_distance(const DegreeCdfs& cdfs) {
    double sup = 0.0;
    for (std::size_t i = 0; i < cdfs.degree.size(); ++i)
        sup = std::max(sup, std::abs(cdfs.arrival[i] - cdfs.existing[i]));
    return sup;
}

// Power-law exponent of a seed's personalized score vector, fitted over the
// index window [2f, 20f] with f = outdeg(seed); falls back to the full range
// (and finally to `fallback`) when the window is unusable on small graphs.
inline double fitted_personalized_alpha(const Graph& g, NodeId seed, double epsilon,
                                        double fallback = 0.76) {
    std::vector<double> pi;
    try {
        pi = oracle::exact_personalized_pagerank(g, seed, epsilon, 1e-10);
    } catch (const oracle::ConvergenceError&) {
        return fallback;
    }
    std::sort(pi.begin(), pi.end(), std::greater<>());
    while (!pi.empty() && pi.back() <= 0.0) pi.pop_back();
    const std::size_t f = std::max<std::uint64_t>(1, g.out_degree(seed));
    std::size_t lo = 2 * f, hi = std::min(20 * f, pi.size());
    if (lo < 1 || lo + 10 > hi) {
        lo = 1;
        hi = pi.size();
    }
    if (hi < lo + 10) return fallback;
    auto fit = fit_powerlaw(pi, lo, hi);
    if (fit.degenerate || !(fit.alpha > 0.0)) return fallback;
    return fit.alpha;
}

// Nodes ranked by score (descending, ties toward the lower id), skipping the
// excluded set, truncated to k.
inline std::vector<NodeId> top_nodes_by_score(const std::vector<double>& scores, std::size_t k,
                                              const std::unordered_set<NodeId>& excluded) {
    std::vector<NodeId> order;
    for (NodeId v = 0; v < scores.size(); ++v)
        if (!excluded.count(v)) order.push_back(v);
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        return scores[a] != scores[b] ? scores[a] > scores[b] : a < b;
    });
    if (order.size() > k) order.resize(k);
    return order;
}

inline std::size_t capture_count(const std::vector<NodeId>& ranked,
                                 const std::unordered_set<NodeId>& held_out) {
    std::size_t captured = 0;
    for (NodeId v : ranked) captured += held_out.count(v);
    return captured;
}

// 11-point interpolated precision of a ranked retrieved list against a
// ground-truth relevant set, at recall levels 0, 0.1, ..., 1.0.
inline std::vector<double> interpolated_precision_11pt(const std::vector<NodeId>& truth,
                                                       const std::vector<NodeId>& retrieved) {
    if (truth.empty()) throw std::invalid_argument("interpolated_precision_11pt: empty truth");
    std::unordered_set<NodeId> relevant(truth.begin(), truth.end());
    std::vector<double> recall_at, precision_at;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < retrieved.size(); ++i) {
        if (relevant.count(retrieved[i])) ++hits;
        recall_at.push_back(double(hits) / double(relevant.size()));
        precision_at.push_back(double(hits) / double(i + 1));
    }
    std::vector<double> out(11, 0.0);
    for (int level = 0; level <= 10; ++level) {
        const double r = double(level) / 10.0;
        double best = 0.0;
        for (std::size_t i = 0; i < retrieved.size(); ++i)
            if (recall_at[i] >= r) best = std::max(best, precision_at[i]);
        out[level] = best;
    }
    return out;
}

}  // namespace walkrank

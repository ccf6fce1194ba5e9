#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "walkrank/engine.hpp"
#include "walkrank/oracle.hpp"
#include "walkrank/synth.hpp"

using namespace walkrank;

namespace {

Graph two_cycle() {
    Graph g;
    g.add_edge({0, 1});
    g.add_edge({1, 0});
    return g;
}

Graph diamond3() {  // {0->1, 1->2, 2->0, 0->2}
    Graph g;
    g.add_edge({0, 1});
    g.add_edge({1, 2});
    g.add_edge({2, 0});
    g.add_edge({0, 2});
    return g;
}

}  // namespace

TEST_CASE("generate_segment terminates immediately at epsilon 1") {
    Graph g = two_cycle();
    EngineConfig cfg;
    cfg.epsilon = 1.0;
    Rng rng(1);
    for (int i = 0; i < 50; ++i)
        REQUIRE(generate_segment(g, 0, cfg, rng).path == std::vector<NodeId>{0});
}

TEST_CASE("generate_segment stops at a dangling source") {
    Graph g;
    g.add_edge({1, 0});  // node 0 is dangling
    EngineConfig cfg;
    cfg.epsilon = 0.2;
    Rng rng(2);
    for (int i = 0; i < 50; ++i)
        REQUIRE(generate_segment(g, 0, cfg, rng).path == std::vector<NodeId>{0});
}

TEST_CASE("segment length is geometric with mean 1/epsilon") {
    Graph g = two_cycle();
    EngineConfig cfg;
    cfg.epsilon = 0.2;
    Rng rng(3);
    const int count = 100000;
    double total = 0;
    for (int i = 0; i < count; ++i) total += double(generate_segment(g, 0, cfg, rng).path.size());
    REQUIRE(total / count == Catch::Approx(5.0).margin(0.05));
}

TEST_CASE("estimate_pagerank applies the visit-count formula") {
    WalkStore ws;
    WalkSegment a;
    a.id = 0;
    a.source = 0;
    a.path = {0, 1, 0};
    ws.put_segment(a);
    WalkSegment b;
    b.id = 1;
    b.source = 1;
    b.path = {1};  // X = (2, 2)... adjust below
    ws.put_segment(b);
    // X = (2, 2): pi = X * eps / (n R)
    EngineConfig cfg;
    cfg.epsilon = 0.5;
    cfg.walks_per_node = 1;
    auto pi = estimate_pagerank(ws, 3, cfg);
    REQUIRE(pi[0] == Catch::Approx(2 * 0.5 / 3.0));
    REQUIRE(pi[1] == Catch::Approx(2 * 0.5 / 3.0));
    REQUIRE(pi[2] == 0.0);  // never visited
}

TEST_CASE("all mass lands on a single self-loop node") {
    Graph g;
    g.add_edge({0, 0});
    EngineConfig cfg;
    cfg.walks_per_node = 2000;
    Rng rng(4);
    auto [ws, pi] = build_all(g, cfg, rng);
    REQUIRE(ws.segment_count() == 2000);
    REQUIRE(pi[0] == Catch::Approx(1.0).margin(0.1));
}

TEST_CASE("two-cycle estimate is symmetric") {
    Graph g = two_cycle();
    EngineConfig cfg;
    cfg.walks_per_node = 2000;
    Rng rng(5);
    auto [ws, pi] = build_all(g, cfg, rng);
    REQUIRE(pi[0] == Catch::Approx(0.5).margin(0.03));
    REQUIRE(pi[1] == Catch::Approx(0.5).margin(0.03));
}

TEST_CASE("estimate matches the power-iteration oracle on a 3-node graph") {
    Graph g = diamond3();
    EngineConfig cfg;
    cfg.walks_per_node = 2000;
    Rng rng(6);
    auto [ws, pi] = build_all(g, cfg, rng);
    auto truth = oracle::power_iteration_pagerank(g, cfg.epsilon, 1e-12);
    for (NodeId v = 0; v < 3; ++v) REQUIRE(pi[v] == Catch::Approx(truth[v]).margin(0.01));
}

TEST_CASE("estimator is unbiased across rebuilds") {
    Graph g;
    g.add_edge({0, 1});
    g.add_edge({1, 2});
    g.add_edge({2, 3});
    g.add_edge({3, 4});
    g.add_edge({4, 0});
    g.add_edge({0, 2});
    g.add_edge({2, 4});
    EngineConfig cfg;
    cfg.walks_per_node = 10;
    Rng rng(7);
    const int rebuilds = 200;
    std::vector<std::vector<double>> samples;
    for (int i = 0; i < rebuilds; ++i) samples.push_back(build_all(g, cfg, rng).second);
    auto truth = oracle::power_iteration_pagerank(g, cfg.epsilon, 1e-12);
    for (NodeId v = 0; v < 5; ++v) {
        double mean = 0, var = 0;
        for (const auto& s : samples) mean += s[v];
        mean /= rebuilds;
        for (const auto& s : samples) var += (s[v] - mean) * (s[v] - mean);
        var /= (rebuilds - 1);
        const double sigma = std::sqrt(var / rebuilds);
        REQUIRE(std::abs(mean - truth[v]) < 3 * sigma + 1e-9);
    }
}

TEST_CASE("arrival with no indexed visits reroutes nothing") {
    Graph g = two_cycle();
    EngineConfig cfg;
    Rng rng(8);
    WalkStore ws;  // empty store
    g.add_edge({0, 2});
    auto cost = on_edge_arrival(g, ws, {0, 2}, cfg, rng);
    REQUIRE(cost.segments_rerouted == 0);
    REQUIRE(cost.rewalk_steps == 0);
}

TEST_CASE("single-visit reroute fires with probability 1/outdeg") {
    EngineConfig cfg;
    Rng rng(9);
    int rerouted = 0;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
        Graph g;
        g.add_edge({0, 1});
        WalkStore ws;
        WalkSegment seg;
        seg.id = 0;
        seg.source = 0;
        seg.path = {0, 1};
        ws.put_segment(seg);
        g.add_edge({0, 2});
        auto cost = on_edge_arrival(g, ws, {0, 2}, cfg, rng);
        rerouted += int(cost.segments_rerouted);
        if (cost.segments_rerouted) REQUIRE(ws.segment(0).path[1] == NodeId(2));
    }
    REQUIRE(double(rerouted) / trials == Catch::Approx(0.5).margin(0.015));
}

TEST_CASE("terminal visits are stored resets and stay put") {
    EngineConfig cfg;
    Rng rng(10);
    Graph g;
    g.add_edge({0, 1});
    WalkStore ws;
    WalkSegment seg;
    seg.id = 0;
    seg.source = 1;
    seg.path = {1, 0};  // ends at 0, which already had an out-edge
    ws.put_segment(seg);
    g.add_edge({0, 2});
    for (int i = 0; i < 100; ++i) {
        auto cost = on_edge_arrival(g, ws, {0, 2}, cfg, rng);
        REQUIRE(cost.segments_rerouted == 0);
    }
    REQUIRE(ws.segment(0).path == std::vector<NodeId>{1, 0});
}

TEST_CASE("a first out-edge revives forced stops with probability 1-epsilon") {
    EngineConfig cfg;
    cfg.epsilon = 0.2;
    Rng rng(11);
    int revived = 0;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
        Graph g(3);
        g.add_edge({1, 0});  // 0 dangling
        WalkStore ws;
        WalkSegment seg;
        seg.id = 0;
        seg.source = 1;
        seg.path = {1, 0};  // stopped at 0 because 0 had no out-edge
        ws.put_segment(seg);
        g.add_edge({0, 2});
        auto cost = on_edge_arrival(g, ws, {0, 2}, cfg, rng);
        revived += int(cost.segments_rerouted);
    }
    REQUIRE(double(revived) / trials == Catch::Approx(0.8).margin(0.015));
}

TEST_CASE("removal leaves non-traversing segments alone and repairs traversals") {
    EngineConfig cfg;
    Rng rng(12);
    Graph g;
    g.add_edge({0, 1});
    g.add_edge({0, 2});
    g.add_edge({1, 0});
    g.add_edge({2, 0});
    WalkStore ws;
    WalkSegment a;
    a.id = 0;
    a.source = 0;
    a.path = {0, 2, 0};  // never traverses (0,1)
    ws.put_segment(a);
    WalkSegment b;
    b.id = 1;
    b.source = 0;
    b.path = {0, 1, 0};  // traverses (0,1)
    ws.put_segment(b);
    g.remove_edge({0, 1});
    auto cost = on_edge_removal(g, ws, {0, 1}, cfg, rng);
    REQUIRE(cost.segments_rerouted == 1);
    REQUIRE(ws.segment(0).path == std::vector<NodeId>{0, 2, 0});
    REQUIRE(ws.segment(1).path.size() >= 2);
    REQUIRE(ws.segment(1).path[1] == NodeId(2));  // only remaining out-edge of 0
}

TEST_CASE("should_notify matches its closed form") {
    Rng rng(13);
    REQUIRE_FALSE(should_notify(5, 0, rng));
    for (int i = 0; i < 50; ++i) REQUIRE(should_notify(1, 3, rng));
    REQUIRE_THROWS_AS(should_notify(0, 1, rng), std::invalid_argument);
    int yes = 0;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) yes += should_notify(2, 1, rng);
    REQUIRE(double(yes) / trials == Catch::Approx(0.5).margin(0.015));
}

TEST_CASE("incremental maintenance tracks a fresh-build error profile") {
    // build by arrivals with repairs, then compare the error to rebuilds
    const std::size_t n = 100;
    EngineConfig cfg;
    cfg.walks_per_node = 10;
    Rng rng(14);
    Graph full = powerlaw_graph(n, 0.7, rng, 6.0);
    auto stream = random_permutation_stream(full.edges(), rng);

    Graph g(n);
    WalkStore ws = build_walk_store(g, cfg, rng);
    for (const StreamEvent& ev : stream) {
        g.add_edge(ev.edge);
        on_edge_arrival(g, ws, ev.edge, cfg, rng);
    }
    auto truth = oracle::power_iteration_pagerank(g, cfg.epsilon, 1e-12);
    auto err = [&](const std::vector<double>& pi) {
        double worst = 0;
        for (std::size_t v = 0; v < n; ++v) worst = std::max(worst, std::abs(pi[v] - truth[v]));
        return worst;
    };
    const double incremental_err = err(estimate_pagerank(ws, n, cfg));
    double rebuild_err = 0;
    const int rebuilds = 10;
    for (int i = 0; i < rebuilds; ++i) rebuild_err += err(build_all(g, cfg, rng).second);
    rebuild_err /= rebuilds;
    REQUIRE(incremental_err < 2.0 * rebuild_err + 1e-6);
}

TEST_CASE("random removals keep the fresh-build error profile") {
    const std::size_t n = 100;
    EngineConfig cfg;
    cfg.walks_per_node = 10;
    Rng rng(15);
    Graph g = powerlaw_graph(n, 0.7, rng, 8.0);
    WalkStore ws = build_walk_store(g, cfg, rng);
    auto edges = g.edges();
    std::shuffle(edges.begin(), edges.end(), rng);
    for (std::size_t i = 0; i < edges.size() / 4; ++i) {
        g.remove_edge(edges[i]);
        on_edge_removal(g, ws, edges[i], cfg, rng);
    }
    auto truth = oracle::power_iteration_pagerank(g, cfg.epsilon, 1e-12);
    auto err = [&](const std::vector<double>& pi) {
        double worst = 0;
        for (std::size_t v = 0; v < n; ++v) worst = std::max(worst, std::abs(pi[v] - truth[v]));
        return worst;
    };
    const double incremental_err = err(estimate_pagerank(ws, n, cfg));
    double rebuild_err = 0;
    const int rebuilds = 10;
    for (int i = 0; i < rebuilds; ++i) rebuild_err += err(build_all(g, cfg, rng).second);
    rebuild_err /= rebuilds;
    REQUIRE(incremental_err < 2.0 * rebuild_err + 1e-6);
}

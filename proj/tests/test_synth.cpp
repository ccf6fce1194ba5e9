#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "walkrank/stats.hpp"
#include "walkrank/synth.hpp"

using namespace walkrank;

TEST_CASE("permutation streams preserve the edge multiset") {
    std::vector<DirectedEdge> edges{{0, 1}, {1, 2}, {2, 0}};
    Rng rng(1);
    std::map<std::vector<std::uint64_t>, int> order_counts;
    const int trials = 600;
    for (int i = 0; i < trials; ++i) {
        auto stream = random_permutation_stream(edges, rng);
        REQUIRE(stream.size() == 3);
        std::set<std::uint64_t> seen;
        std::vector<std::uint64_t> order;
        for (const auto& ev : stream) {
            REQUIRE(ev.kind == EventKind::add);
            const std::uint64_t key = (std::uint64_t(ev.edge.src) << 32) | ev.edge.dst;
            seen.insert(key);
            order.push_back(key);
        }
        REQUIRE(seen.size() == 3);
        ++order_counts[order];
    }
    REQUIRE(order_counts.size() == 6);  // all 3! orders occur
    for (const auto& [order, count] : order_counts)
        REQUIRE(double(count) / trials == Catch::Approx(1.0 / 6).margin(0.05));
}

TEST_CASE("dirichlet stream draws the first source uniformly") {
    Rng rng(2);
    const int trials = 10000;
    std::map<NodeId, int> first_src;
    for (int i = 0; i < trials; ++i) ++first_src[dirichlet_stream(3, 1, rng)[0].edge.src];
    for (NodeId v = 0; v < 3; ++v)
        REQUIRE(double(first_src[v]) / trials == Catch::Approx(1.0 / 3).margin(0.02));
}

TEST_CASE("dirichlet stream reinforces past sources") {
    // Pr[src_2 == src_1] = 1/(n+1) + n/(n+1) * 1/n = 2/(n+1); 1/2 for n=3
    Rng rng(3);
    const int trials = 10000;
    int repeats = 0;
    for (int i = 0; i < trials; ++i) {
        auto s = dirichlet_stream(3, 2, rng);
        repeats += s[0].edge.src == s[1].edge.src;
    }
    REQUIRE(double(repeats) / trials == Catch::Approx(0.5).margin(0.02));
}

TEST_CASE("dirichlet streams are simple and loop-free") {
    Rng rng(4);
    auto stream = dirichlet_stream(20, 150, rng);
    REQUIRE(stream.size() == 150);
    std::set<std::uint64_t> seen;
    for (const auto& ev : stream) {
        REQUIRE(ev.edge.src != ev.edge.dst);
        REQUIRE(seen.insert((std::uint64_t(ev.edge.src) << 32) | ev.edge.dst).second);
    }
    REQUIRE_THROWS_AS(dirichlet_stream(1, 5, rng), std::invalid_argument);
}

TEST_CASE("the adversarial example has its documented shape") {
    auto [g1, t1] = example1_graph(1);
    REQUIRE(g1.node_count() == 4);
    REQUIRE(g1.edge_count() == 5);
    REQUIRE(t1.src == NodeId(1));  // the hub
    REQUIRE(t1.dst == NodeId(0));
    REQUIRE_FALSE(g1.has_edge(t1));

    const std::size_t N = 5;
    auto [g, trigger] = example1_graph(N);
    REQUIRE(g.node_count() == 3 * N + 1);
    REQUIRE(g.edge_count() == 6 * N);
    const NodeId u = NodeId(N), v1 = 0;
    REQUIRE(trigger.src == u);
    REQUIRE(trigger.dst == v1);
    REQUIRE(g.out_degree(u) == N);       // u -> x_j
    REQUIRE(g.in_degree(u) == 2 * N);    // from every v_j and x_j
    REQUIRE(g.out_degree(v1) == 2 + N);  // cycle + hub + petals
    for (std::size_t j = 0; j < N; ++j) {
        REQUIRE(g.has_edge({NodeId(j), u}));
        REQUIRE(g.has_edge({NodeId(2 * N + 1 + j), v1}));  // y_j -> v_1
    }
    REQUIRE_THROWS_AS(example1_graph(0), std::invalid_argument);
}

TEST_CASE("powerlaw graphs hit the requested in-degree exponent") {
    Rng rng(5);
    Graph g = powerlaw_graph(2000, 0.7, rng, 8.0);
    std::vector<double> indeg;
    for (NodeId v = 0; v < g.node_count(); ++v) indeg.push_back(double(g.in_degree(v)));
    std::sort(indeg.begin(), indeg.end(), std::greater<>());
    auto fit = fit_powerlaw(indeg, 5, 300);
    REQUIRE_FALSE(fit.degenerate);
    REQUIRE(fit.alpha == Catch::Approx(0.7).margin(0.1));
    REQUIRE_THROWS_AS(powerlaw_graph(2000, 1.5, rng), std::invalid_argument);
    REQUIRE_THROWS_AS(powerlaw_graph(1, 0.5, rng), std::invalid_argument);
}

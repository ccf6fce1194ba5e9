#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "walkrank/stats.hpp"

using namespace walkrank;

TEST_CASE("fit_powerlaw recovers exact synthetic exponents") {
    for (double alpha : {0.76, 0.5}) {
        std::vector<double> values;
        for (std::size_t j = 1; j <= 500; ++j) values.push_back(7.3 * std::pow(double(j), -alpha));
        auto fit = fit_powerlaw(values, 1, 500);
        REQUIRE(fit.alpha == Catch::Approx(alpha).margin(1e-9));
        REQUIRE(fit.r_squared == Catch::Approx(1.0).margin(1e-9));
        REQUIRE_FALSE(fit.degenerate);
    }
}

TEST_CASE("fit_powerlaw is scale invariant") {
    std::vector<double> a, b;
    for (std::size_t j = 1; j <= 100; ++j) {
        a.push_back(std::pow(double(j), -0.6));
        b.push_back(1000.0 * a.back());
    }
    REQUIRE(fit_powerlaw(a, 1, 100).alpha ==
            Catch::Approx(fit_powerlaw(b, 1, 100).alpha).margin(1e-12));
}

TEST_CASE("fit_powerlaw flags constant windows and rejects bad ones") {
    std::vector<double> flat(50, 3.0);
    auto fit = fit_powerlaw(flat, 1, 50);
    REQUIRE(fit.degenerate);
    REQUIRE(fit.alpha == 0.0);

    std::vector<double> tiny(5, 1.0);
    REQUIRE_THROWS_AS(fit_powerlaw(tiny, 1, 5), std::invalid_argument);
    REQUIRE_THROWS_AS(fit_powerlaw(flat, 0, 50), std::invalid_argument);
    REQUIRE_THROWS_AS(fit_powerlaw(flat, 10, 10), std::invalid_argument);
    REQUIRE_THROWS_AS(fit_powerlaw(flat, 1, 51), std::invalid_argument);
}

TEST_CASE("mx of a single arrival is the source's pagerank") {
    ArrivalStream stream{{EventKind::add, {0, 1}}};
    Graph g;
    g.add_edge({0, 1});
    auto pi = oracle::power_iteration_pagerank(g, 0.2, 1e-10);
    REQUIRE(mx_statistic(stream, 0.2) == Catch::Approx(pi[0]).margin(1e-9));

    ArrivalStream bad{{EventKind::remove, {0, 1}}};
    REQUIRE_THROWS_AS(mx_statistic(bad, 0.2), std::invalid_argument);
}

TEST_CASE("mx is near one for random-order arrivals") {
    Rng rng(6);
    Graph g = powerlaw_graph(80, 0.6, rng, 6.0);
    double acc = 0;
    const int trials = 5;
    for (int i = 0; i < trials; ++i)
        acc += mx_statistic(random_permutation_stream(g.edges(), rng), 0.2);
    REQUIRE(acc / trials == Catch::Approx(1.0).margin(0.35));
}

TEST_CASE("degree cdfs on a two-degree graph") {
    Graph g;
    g.add_edge({0, 1});
    g.add_edge({2, 0});
    g.add_edge({2, 1});
    auto cdfs = degree_cdfs(g, {{0, 1}});
    REQUIRE(cdfs.degree == std::vector<std::uint64_t>{1, 2});
    REQUIRE(cdfs.existing[0] == Catch::Approx(1.0 / 3));
    REQUIRE(cdfs.existing[1] == Catch::Approx(1.0));
    REQUIRE(cdfs.arrival[0] == Catch::Approx(1.0));  // source 0 has degree 1
    REQUIRE(cdfs.arrival[1] == Catch::Approx(1.0));
    REQUIRE(cdf_sup_distance(cdfs) == Catch::Approx(2.0 / 3));
}

TEST_CASE("interpolated precision over eleven recall levels") {
    // truth {0,2}, retrieved [0, 9, 2]: precision 1 until recall 0.5, then 2/3
    auto p = interpolated_precision_11pt({0, 2}, {0, 9, 2});
    for (int level = 0; level <= 5; ++level) REQUIRE(p[level] == Catch::Approx(1.0));
    for (int level = 6; level <= 10; ++level) REQUIRE(p[level] == Catch::Approx(2.0 / 3));

    auto perfect = interpolated_precision_11pt({4}, {4});
    for (double x : perfect) REQUIRE(x == Catch::Approx(1.0));

    auto nothing = interpolated_precision_11pt({4}, {});
    for (double x : nothing) REQUIRE(x == Catch::Approx(0.0));

    REQUIRE_THROWS_AS(interpolated_precision_11pt({}, {1}), std::invalid_argument);
}

// Command-line harness: builds stores, replays streams, runs queries and the
// benchmark/validation experiments, emitting CSV (header row + a leading
// comment row with the full run configuration).

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "walkrank/engine.hpp"
#include "walkrank/io.hpp"
#include "walkrank/oracle.hpp"
#include "walkrank/query.hpp"
#include "walkrank/salsa.hpp"
#include "walkrank/stats.hpp"
#include "walkrank/synth.hpp"

namespace fs = std::filesystem;
using namespace walkrank;

namespace {

struct Opts {
    std::string input;
    std::string out;
    double epsilon = 0.2;
    std::uint32_t walks_per_node = 5;
    std::string mode = "pagerank";
    double alpha = 0.0;  // 0 = fit from the data
    double cc = 5.0;
    std::uint64_t k = 100;
    std::uint64_t seed = 1;
    std::string stream = "permutation";
    std::uint64_t n = 1000;
    std::uint64_t m = 20000;
    std::uint64_t trials = 5;
    std::uint64_t source = 0;
    bool light = false;
};

std::string config_comment(const Opts& o, const std::string& subcommand) {
    std::ostringstream s;
    s << "# subcommand=" << subcommand << " epsilon=" << o.epsilon
      << " walks_per_node=" << o.walks_per_node << " mode=" << o.mode << " alpha=" << o.alpha
      << " cc=" << o.cc << " k=" << o.k << " seed=" << o.seed << " stream=" << o.stream
      << " n=" << o.n << " m=" << o.m << " trials=" << o.trials << " source=" << o.source
      << " light=" << o.light;
    if (!o.input.empty()) s << " input=" << o.input;
    return s.str();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

EngineConfig engine_config(const Opts& o) {
    EngineConfig cfg;
    cfg.epsilon = o.epsilon;
    cfg.walks_per_node = o.walks_per_node;
    cfg.mode = o.mode == "salsa" ? Mode::salsa : Mode::pagerank;
    cfg.rng_seed = o.seed;
    return cfg;
}

Graph graph_from_file(const std::string& path) {
    Graph g;
    for (const DirectedEdge& e : read_edge_file(path)) g.add_edge(e);
    return g;
}

void write_scores(const Opts& o, const std::string& subcommand, const Graph& g,
                  const WalkStore& ws, const EngineConfig& cfg, const std::string& path) {
    auto out = open_out(path);
    out << config_comment(o, subcommand) << '\n';
    if (cfg.mode == Mode::pagerank) {
        auto pi = estimate_pagerank(ws, g.node_count(), cfg);
        out << "node,score\n";
        for (NodeId v = 0; v < g.node_count(); ++v) out << v << ',' << pi[v] << '\n';
    } else {
        auto est = estimate_salsa(ws, g.node_count(), cfg);
        out << "node,hub,authority\n";
        for (NodeId v = 0; v < g.node_count(); ++v)
            out << v << ',' << est.hub[v] << ',' << est.authority[v] << '\n';
    }
}

ArrivalStream make_stream(const Opts& o, Rng& rng, std::size_t& n_out) {
    if (o.stream == "permutation") {
        Graph base = powerlaw_graph(o.n, 0.76, rng, double(o.m) / double(o.n));
        n_out = base.node_count();
        return random_permutation_stream(base.edges(), rng);
    }
    if (o.stream == "dirichlet") {
        n_out = o.n;
        return dirichlet_stream(o.n, o.m, rng);
    }
    if (o.stream == "example1") {
        auto [g, trigger] = example1_graph(o.n);  // --n is the construction size N
        n_out = g.node_count();
        ArrivalStream stream;
        for (const DirectedEdge& e : g.edges()) stream.push_back({EventKind::add, e});
        stream.push_back({EventKind::add, trigger});
        return stream;
    }
    if (o.stream == "file") {
        if (o.input.empty()) throw std::runtime_error("--stream file requires an input path");
        ArrivalStream stream;
        std::size_t n = 0;
        for (const DirectedEdge& e : read_edge_file(o.input)) {
            stream.push_back({EventKind::add, e});
            n = std::max<std::size_t>({n, e.src + 1ul, e.dst + 1ul});
        }
        n_out = n;
        return stream;
    }
    throw std::runtime_error("unknown stream model: " + o.stream);
}

int cmd_build(const Opts& o) {
    fs::create_directories(o.out);
    Graph g = graph_from_file(o.input);
    EngineConfig cfg = engine_config(o);
    Rng rng(o.seed);
    WalkStore ws = cfg.mode == Mode::pagerank ? build_walk_store(g, cfg, rng)
                                              : build_salsa(g, cfg, rng);
    write_scores(o, "build", g, ws, cfg,
                 (fs::path(o.out) / (cfg.mode == Mode::pagerank ? "pagerank.csv" : "salsa.csv"))
                     .string());
    auto dump = open_out((fs::path(o.out) / "segments.tsv").string());
    write_segment_dump(dump, ws);
    return 0;
}

int cmd_ingest(const Opts& o) {
    fs::create_directories(o.out);
    auto edges = read_edge_file(o.input);
    std::size_t n = 0;
    for (const DirectedEdge& e : edges) n = std::max<std::size_t>({n, e.src + 1ul, e.dst + 1ul});
    EngineConfig cfg = engine_config(o);
    Rng rng(o.seed);
    Graph g(n);
    WalkStore ws =
        cfg.mode == Mode::pagerank ? build_walk_store(g, cfg, rng) : build_salsa(g, cfg, rng);
    auto out = open_out((fs::path(o.out) / "updates.csv").string());
    out << config_comment(o, "ingest") << '\n';
    out << "t,src,dst,segments_rerouted,rewalk_steps,cumulative_steps\n";
    std::uint64_t cumulative = 0;
    for (const DirectedEdge& e : edges) {
        const std::uint64_t t = g.add_edge(e);
        const UpdateCost cost = cfg.mode == Mode::pagerank
                                    ? on_edge_arrival(g, ws, e, cfg, rng)
                                    : on_edge_arrival_salsa(g, ws, e, cfg, rng);
        cumulative += cost.rewalk_steps;
        out << t << ',' << e.src << ',' << e.dst << ',' << cost.segments_rerouted << ','
            << cost.rewalk_steps << ',' << cumulative << '\n';
    }
    write_scores(o, "ingest", g, ws, cfg,
                 (fs::path(o.out) / (cfg.mode == Mode::pagerank ? "pagerank.csv" : "salsa.csv"))
                     .string());
    auto dump = open_out((fs::path(o.out) / "segments.tsv").string());
    write_segment_dump(dump, ws);
    return 0;
}

int cmd_query_topk(Opts o) {
    Graph g = graph_from_file(o.input);
    if (o.source >= g.node_count()) throw std::runtime_error("--source node not in graph");
    EngineConfig cfg = engine_config(o);
    Rng rng(o.seed);
    WalkStore ws = build_walk_store(g, cfg, rng);
    QueryConfig qcfg;
    qcfg.epsilon = o.epsilon;
    qcfg.c = o.cc;
    qcfg.light_fetch = o.light;
    qcfg.alpha = o.alpha > 0.0 ? o.alpha : fitted_personalized_alpha(g, NodeId(o.source), o.epsilon);
    o.alpha = qcfg.alpha;  // record the value actually used
    auto [result, stats] = top_k(g, ws, NodeId(o.source), o.k, qcfg, {}, rng);
    auto out = open_out(o.out);
    out << config_comment(o, "query-topk") << " fetches=" << stats.fetches
        << " cache_hits=" << stats.cache_hits << " truncated=" << result.truncated << '\n';
    out << "rank,node,count\n";
    for (std::size_t i = 0; i < result.ranked.size(); ++i)
        out << (i + 1) << ',' << result.ranked[i].node << ',' << result.ranked[i].count << '\n';
    std::cout << "query-topk: " << result.ranked.size() << " results, " << stats.fetches
              << " fetches\n";
    return 0;
}

int cmd_bench_updates(const Opts& o) {
    EngineConfig cfg = engine_config(o);
    auto out = open_out(o.out);
    out << config_comment(o, "bench-updates") << '\n';
    out << "trial,t,src,dst,segments_rerouted,rewalk_steps,cumulative_steps,theory_per_arrival\n";
    for (std::uint64_t trial = 0; trial < o.trials; ++trial) {
        Rng rng(o.seed + trial);
        std::size_t n = 0;
        ArrivalStream stream = make_stream(o, rng, n);
        Graph g(n);
        WalkStore ws =
            cfg.mode == Mode::pagerank ? build_walk_store(g, cfg, rng) : build_salsa(g, cfg, rng);
        std::uint64_t cumulative = 0;
        for (const StreamEvent& ev : stream) {
            if (ev.kind != EventKind::add) throw std::runtime_error("streams are add-only");
            const std::uint64_t t = g.add_edge(ev.edge);
            const UpdateCost cost = cfg.mode == Mode::pagerank
                                        ? on_edge_arrival(g, ws, ev.edge, cfg, rng)
                                        : on_edge_arrival_salsa(g, ws, ev.edge, cfg, rng);
            cumulative += cost.rewalk_steps;
            const double theory =
                double(n) * cfg.walks_per_node / (double(t) * cfg.epsilon * cfg.epsilon);
            out << trial << ',' << t << ',' << ev.edge.src << ',' << ev.edge.dst << ','
                << cost.segments_rerouted << ',' << cost.rewalk_steps << ',' << cumulative << ','
                << theory << '\n';
        }
    }
    return 0;
}

int cmd_bench_fetches(const Opts& o) {
    const std::vector<std::uint64_t> lengths{100, 250, 630, 1600, 4000, 10000, 25000, 50000};
    auto out = open_out(o.out);
    out << config_comment(o, "bench-fetches") << '\n';
    out << "R,s,measured_fetches,theoretical_bound\n";
    Rng graph_rng(o.seed);
    Graph g = powerlaw_graph(o.n, 0.76, graph_rng, 10.0);
    std::uniform_int_distribution<NodeId> any_node(0, NodeId(g.node_count() - 1));
    for (std::uint32_t R : {5u, 10u, 20u}) {
        EngineConfig cfg = engine_config(o);
        cfg.walks_per_node = R;
        Rng rng(o.seed + R);
        WalkStore ws = build_walk_store(g, cfg, rng);
        std::vector<double> mean_fetches(lengths.size(), 0.0), mean_bound(lengths.size(), 0.0);
        for (std::uint64_t trial = 0; trial < o.trials; ++trial) {
            const NodeId seed_node = any_node(rng);
            QueryConfig qcfg;
            qcfg.epsilon = o.epsilon;
            const double alpha =
                std::min(0.99, o.alpha > 0.0 ? o.alpha
                                             : fitted_personalized_alpha(g, seed_node, o.epsilon));
            auto profile = stitch_walk_fetch_profile(g, ws, seed_node, lengths, qcfg, rng);
            for (std::size_t i = 0; i < lengths.size(); ++i) {
                mean_fetches[i] += double(profile[i]) / double(o.trials);
                mean_bound[i] += theoretical_fetch_bound(double(lengths[i]),
                                                         double(g.node_count()), R, alpha) /
                                 double(o.trials);
            }
        }
        for (std::size_t i = 0; i < lengths.size(); ++i)
            out << R << ',' << lengths[i] << ',' << mean_fetches[i] << ',' << mean_bound[i]
                << '\n';
    }
    return 0;
}

int cmd_fit_powerlaw(const Opts& o) {
    Graph g = graph_from_file(o.input);
    auto out = open_out(o.out);
    out << config_comment(o, "fit-powerlaw") << '\n';
    out << "quantity,alpha,r_squared,window_lo,window_hi,degenerate\n";
    auto emit = [&](const std::string& name, std::vector<double> values) {
        std::sort(values.begin(), values.end(), std::greater<>());
        while (!values.empty() && values.back() <= 0.0) values.pop_back();
        auto fit = fit_powerlaw(values, 1, values.size());
        out << name << ',' << fit.alpha << ',' << fit.r_squared << ',' << fit.window_lo << ','
            << fit.window_hi << ',' << fit.degenerate << '\n';
    };
    std::vector<double> indeg;
    for (NodeId v = 0; v < g.node_count(); ++v) indeg.push_back(double(g.in_degree(v)));
    emit("indegree", std::move(indeg));
    emit("pagerank", oracle::power_iteration_pagerank(g, o.epsilon, 1e-10));
    return 0;
}

int cmd_verify_stream(const Opts& o) {
    Rng rng(o.seed);
    std::size_t n = 0;
    ArrivalStream stream = make_stream(o, rng, n);
    const double mx = mx_statistic(stream, o.epsilon);
    Graph g(n);
    for (const StreamEvent& ev : stream) g.add_edge(ev.edge);
    std::vector<DirectedEdge> recent;
    const std::size_t tail = std::max<std::size_t>(1, stream.size() / 10);
    for (std::size_t i = stream.size() - tail; i < stream.size(); ++i)
        recent.push_back(stream[i].edge);
    auto cdfs = degree_cdfs(g, recent);
    const double sup = cdf_sup_distance(cdfs);
    auto out = open_out(o.out);
    out << config_comment(o, "verify-stream") << " mx=" << mx << " cdf_sup_distance=" << sup
        << '\n';
    out << "d,arrival_cdf,existing_cdf\n";
    for (std::size_t i = 0; i < cdfs.degree.size(); ++i)
        out << cdfs.degree[i] << ',' << cdfs.arrival[i] << ',' << cdfs.existing[i] << '\n';
    std::cout << "verify-stream: mx=" << mx << " cdf_sup_distance=" << sup << '\n';
    return 0;
}

int cmd_eval_linkpred(const Opts& o) {
    Rng rng(o.seed);
    CommunityGraph cg = community_graph(8, 25, 40, 12, 3, rng);
    auto out = open_out(o.out);
    out << config_comment(o, "eval-linkpred") << '\n';
    out << "trial,seed_node,held_out,ppr,salsa,hits,cosine\n";
    for (std::uint64_t trial = 0; trial < o.trials; ++trial) {
        const std::size_t grp = trial % cg.groups;
        std::uniform_int_distribution<std::size_t> member(0, cg.members - 1);
        const NodeId seed_node = cg.actor(grp, member(rng));
        Graph g = cg.graph;
        // hold out half of the seed's group-item follows
        std::vector<NodeId> own_items;
        for (NodeId v : g.out_neighbors(seed_node))
            if (v >= cg.item(0, 0) && v < cg.celebrity(0)) own_items.push_back(v);
        std::shuffle(own_items.begin(), own_items.end(), rng);
        std::unordered_set<NodeId> held_out(own_items.begin(),
                                            own_items.begin() + own_items.size() / 2);
        for (NodeId v : held_out) g.remove_edge({seed_node, v});
        std::unordered_set<NodeId> excluded{seed_node};
        for (NodeId v : g.out_neighbors(seed_node)) excluded.insert(v);
        auto ppr = oracle::exact_personalized_pagerank(g, seed_node, o.epsilon, 1e-10);
        auto salsa = oracle::personalized_salsa(g, seed_node, o.epsilon);
        auto hits = oracle::personalized_hits(g, seed_node, o.epsilon);
        auto cosine = oracle::cosine_scores(g, seed_node);
        out << trial << ',' << seed_node << ',' << held_out.size();
        for (const auto* scores : {&ppr, &salsa.authority, &hits.authority, &cosine.authority})
            out << ','
                << capture_count(top_nodes_by_score(*scores, o.k, excluded), held_out);
        out << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo PageRank/SALSA over dynamic graphs"};
    app.require_subcommand(1);
    Opts o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--epsilon", o.epsilon, "reset probability")->check(CLI::Range(1e-9, 1.0));
        sub->add_option("--walks-per-node", o.walks_per_node, "stored walks per node (R)");
        sub->add_option("--mode", o.mode, "pagerank|salsa")
            ->check(CLI::IsMember({"pagerank", "salsa"}));
        sub->add_option("--alpha", o.alpha, "power-law exponent (0 = fit from data)");
        sub->add_option("--cc", o.cc, "expected sightings constant c");
        sub->add_option("--k", o.k, "result size");
        sub->add_option("--seed", o.seed, "RNG seed");
        sub->add_option("--stream", o.stream, "permutation|dirichlet|example1|file")
            ->check(CLI::IsMember({"permutation", "dirichlet", "example1", "file"}));
        sub->add_option("--n", o.n, "node count / construction size");
        sub->add_option("--m", o.m, "edge count for generated streams");
        sub->add_option("--trials", o.trials, "independent trials / seeds");
        return sub;
    };

    auto* build = add_common(app.add_subcommand("build", "build stores from an edge file"));
    build->add_option("input", o.input, "edge file")->required();
    build->add_option("--out", o.out, "output directory")->required();

    auto* ingest =
        add_common(app.add_subcommand("ingest", "replay an edge file with incremental repair"));
    ingest->add_option("input", o.input, "edge file")->required();
    ingest->add_option("--out", o.out, "output directory")->required();

    auto* query = add_common(app.add_subcommand("query-topk", "personalized top-k query"));
    query->add_option("input", o.input, "edge file")->required();
    query->add_option("--source", o.source, "query seed node")->required();
    query->add_option("--out", o.out, "output CSV")->required();
    query->add_flag("--light", o.light, "light fetches (single sampled edge)");

    auto* bu = add_common(app.add_subcommand("bench-updates", "per-arrival repair costs"));
    bu->add_option("--input", o.input, "edge file for --stream file");
    bu->add_option("--out", o.out, "output CSV")->required();

    auto* bf = add_common(app.add_subcommand("bench-fetches", "fetch counts vs bound"));
    bf->add_option("--out", o.out, "output CSV")->required();

    auto* fp = add_common(app.add_subcommand("fit-powerlaw", "fit degree/score exponents"));
    fp->add_option("input", o.input, "edge file")->required();
    fp->add_option("--out", o.out, "output CSV")->required();

    auto* vs = add_common(app.add_subcommand("verify-stream", "arrival-model statistics"));
    vs->add_option("--input", o.input, "edge file for --stream file");
    vs->add_option("--out", o.out, "output CSV")->required();

    auto* lp = add_common(app.add_subcommand("eval-linkpred", "held-out link prediction"));
    lp->add_option("--out", o.out, "output CSV")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return cmd_build(o);
        if (ingest->parsed()) return cmd_ingest(o);
        if (query->parsed()) return cmd_query_topk(o);
        if (bu->parsed()) return cmd_bench_updates(o);
        if (bf->parsed()) return cmd_bench_fetches(o);
        if (fp->parsed()) return cmd_fit_powerlaw(o);
        if (vs->parsed()) return cmd_verify_stream(o);
        if (lp->parsed()) return cmd_eval_linkpred(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

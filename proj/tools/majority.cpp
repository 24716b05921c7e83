#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "majority/adversary.hpp"
#include "majority/bounds.hpp"
#include "majority/constructions.hpp"
#include "majority/errors.hpp"
#include "majority/generate.hpp"
#include "majority/graph_solver.hpp"
#include "majority/nondet.hpp"
#include "majority/suites.hpp"
#include "majority/weighted.hpp"

using namespace majority;
using nlohmann::json;

namespace {

bool g_json = false;

// An existing file is read as a graph; anything else is an instance spec such as path:7.
Graph load_graph(const std::string& arg)
{
    if (std::filesystem::is_regular_file(arg)) {
        std::ifstream in(arg);
        std::stringstream buf;
        buf << in.rdbuf();
        return Graph::parse(buf.str());
    }
    const auto graphs = generate(InstanceSpec::parse(arg));
    if (graphs.size() != 1) throw InvalidInput("'" + arg + "' names " + std::to_string(graphs.size()) + " graphs, expected one");
    return graphs.front();
}

GraphSolverOptions solver_options(const std::string& canonical, std::size_t cap)
{
    GraphSolverOptions o;
    if (canonical == "path") o.canonical = CanonicalMode::Path;
    else if (canonical != "generic") throw InvalidInput("canonical mode must be path or generic");
    o.table_cap = cap;
    return o;
}

std::unique_ptr<Querier> make_querier(const std::string& name, const Graph& g, const GraphSolverOptions& options)
{
    if (name == "optimal") return optimal_querier(g, options);
    if (name == "spanning") return std::make_unique<SpanningTreeQuerier>(g);
    if (name.rfind("random:", 0) == 0) return std::make_unique<RandomQuerier>(std::stoull(name.substr(7)));
    if (name == "random") return std::make_unique<RandomQuerier>(0);
    if (name.rfind("minedge:", 0) == 0) return minedge_querier(std::stoi(name.substr(8)));
    throw InvalidInput("unknown querier: " + name);
}

json edge_json(Edge e) { return json::array({e.u, e.v}); }

json edges_json(const std::vector<Edge>& edges)
{
    json out = json::array();
    for (Edge e : edges) out.push_back(edge_json(e));
    return out;
}

void emit(const json& j, const std::string& text)
{
    if (g_json) std::cout << j.dump() << '\n';
    else std::cout << text;
}

std::string weights_line(const QueryState& s)
{
    std::string out;
    for (const auto& c : s.components()) {
        out += out.empty() ? "" : " ";
        out += "{";
        for (std::size_t i = 0; i < c.first.size(); ++i) out += (i ? "," : "") + std::to_string(c.first[i]);
        if (!c.second.empty()) {
            out += " |";
            for (std::size_t i = 0; i < c.second.size(); ++i) out += (i ? "," : " ") + std::to_string(c.second[i]);
        }
        out += "}:" + std::to_string(c.weight());
    }
    return out;
}

// Parses "3..13" into an inclusive range.
std::pair<int, int> parse_range(const std::string& text)
{
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const int v = std::stoi(text);
        return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact search, bounds and strategies for the majority problem with pairwise color comparisons"};
    app.require_subcommand(1);
    app.add_flag("--json", g_json, "machine-readable JSON output");

    // solve-weighted
    std::string weights_arg;
    auto* solve_w = app.add_subcommand("solve-weighted", "exact value of the weighted game");
    solve_w->add_option("weights", weights_arg, "comma-separated weights, e.g. 3,3,7,8,9")->required();
    bool with_strategy = false;
    solve_w->add_flag("--best-query", with_strategy, "also print an optimal first query");

    // solve-graph
    std::string graph_arg, canonical = "generic";
    std::size_t table_cap = GraphSolverOptions{}.table_cap;
    bool transcript_flag = false;
    std::string against;
    auto* solve_g = app.add_subcommand("solve-graph", "exact value of the graph game");
    solve_g->add_option("graph", graph_arg, "graph file or instance spec")->required();
    solve_g->add_option("--canonical", canonical, "generic or path")->check(CLI::IsMember({"generic", "path"}));
    solve_g->add_option("--table-cap", table_cap, "transposition table entry cap");
    solve_g->add_option("--transcript", against, "play the optimal querier against this adversary and print the transcript");

    // bounds / certify
    auto* bounds = app.add_subcommand("bounds", "counting lower bounds and the exact value");
    bounds->add_option("weights", weights_arg)->required();
    auto* certify = app.add_subcommand("certify", "lemma-based lower-bound certificates");
    certify->add_option("weights", weights_arg)->required();

    // adversary
    std::string adv_name, vs = "optimal";
    AdversaryOptions adv_options;
    std::string cover_arg;
    auto* adversary = app.add_subcommand("adversary", "play an adversary strategy against a querier");
    adversary->add_option("name", adv_name, "same, diff, coloring:<RB..>, eventrees, treelemma, lefogo1, oddpath, lefogo2")->required();
    adversary->add_option("graph", graph_arg)->required();
    adversary->add_option("--stride", adv_options.stride);
    adversary->add_option("--p", adv_options.p);
    adversary->add_option("--cover", cover_arg, "comma-separated cover vertices for lefogo1");
    adversary->add_option("--vs", vs, "optimal, spanning or random:<seed>");
    adversary->add_option("--canonical", canonical)->check(CLI::IsMember({"generic", "path"}));

    // construct
    std::string what, emit_kind = "graph";
    int size_n = 0;
    auto* construct = app.add_subcommand("construct", "sparse graphs with value n-b(n)");
    construct->add_option("what", what)->required()->check(CLI::IsMember({"minedge"}));
    construct->add_option("n", size_n)->required();
    construct->add_option("--emit", emit_kind)->check(CLI::IsMember({"graph", "strategy", "verify"}));

    // verify
    std::string querier_name = "optimal";
    int budget = -1;
    auto* verify = app.add_subcommand("verify", "check a querier against every answer sequence");
    verify->add_option("graph", graph_arg)->required();
    verify->add_option("--querier", querier_name, "optimal, spanning, random:<seed> or minedge:<n>");
    verify->add_option("--budget", budget, "query budget, default the exact value");

    // nondet
    std::string coloring_arg, odd_range = "3..13";
    auto* nondet = app.add_subcommand("nondet", "certificate sizes when the coloring is known");
    nondet->require_subcommand(1);
    auto* nd_cert = nondet->add_subcommand("cert", "smallest certifying query set for a coloring");
    nd_cert->add_option("graph", graph_arg)->required();
    nd_cert->add_option("coloring", coloring_arg)->required();
    auto* nd_mnd = nondet->add_subcommand("mnd", "worst certificate size over all colorings");
    nd_mnd->add_option("graph", graph_arg)->required();
    auto* nd_table = nondet->add_subcommand("path-table", "TSV of m_nd on odd paths");
    nd_table->add_option("--odd-n", odd_range, "inclusive range such as 3..13");
    auto* nd_path = nondet->add_subcommand("path-cert", "linear-time certificate on a path");
    nd_path->add_option("coloring", coloring_arg)->required();

    // generate
    std::string spec_arg;
    auto* gen = app.add_subcommand("generate", "emit graphs in the text format");
    gen->add_option("spec", spec_arg, "path:5, free-trees:6, random-tree:10:7, random-graph:8:0.3:7, minedge:8")->required();

    // play
    auto* play_cmd = app.add_subcommand("play", "interactive transcript REPL against an adversary");
    play_cmd->add_option("name", adv_name)->required();
    play_cmd->add_option("graph", graph_arg)->required();
    play_cmd->add_option("--stride", adv_options.stride);
    play_cmd->add_option("--p", adv_options.p);

    // run-suite
    std::string suite_name, only_case;
    std::uint64_t seed = 0;
    int threads = 0;
    auto* suite = app.add_subcommand("run-suite", "run an acceptance suite");
    suite->add_option("suite", suite_name)->required()->check(CLI::IsMember(suite_names()));
    suite->add_option("--case", only_case, "run a single case by name");
    suite->add_option("--seed", seed);
    suite->add_option("--threads", threads, "worker threads, default MAJORITY_THREADS or all cores");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve_w) {
            const WeightVector w = WeightVector::parse(weights_arg);
            const int m = solve_weighted(w);
            json j{{"weights", w.to_string()}, {"value", m}};
            std::string text = "m(" + w.to_string() + ") = " + std::to_string(m) + "\n";
            if (with_strategy) {
                if (const auto q = shared_weighted_solver().best_query(w)) {
                    j["best_query"] = json::array({q->first, q->second});
                    text += "best query: balls " + std::to_string(q->first) + " and " + std::to_string(q->second) + " (sorted order)\n";
                }
            }
            emit(j, text);
        } else if (*solve_g) {
            const Graph g = load_graph(graph_arg);
            const auto options = solver_options(canonical, table_cap);
            GraphSolver solver(g, options);
            const auto t0 = std::chrono::steady_clock::now();
            const int value = solver.solve();
            const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
            json j{{"n", g.n()}, {"m", g.edge_count()}, {"value", value}, {"nodes_expanded", solver.nodes_expanded()}, {"runtime_ms", ms}};
            std::string text = j.dump() + "\n";
            if (!against.empty()) {
                auto q = optimal_querier(g, options);
                auto a = make_adversary(against, g);
                const Transcript t = play(g, *q, *a);
                j["transcript"] = t.to_text();
                text += t.to_text();
            }
            if (g_json) std::cout << j.dump() << '\n';
            else std::cout << text;
        } else if (*bounds) {
            const WeightVector w = WeightVector::parse(weights_arg);
            const Certificate dt = dectree_bound(w);
            const Valuation v = mu(static_cast<std::uint64_t>(w.total()));
            json j{{"weights", w.to_string()},
                   {"value", solve_weighted(w)},
                   {"balanced_colorings", count_balanced(w).str()},
                   {"mu_total", v.infinite ? json("inf") : json(v.value)},
                   {"dectree", to_json(dt)},
                   {"best_certified", best_certified_bound(w)},
                   {"hardness_target", hardness_target(w)}};
            std::ostringstream text;
            text << "weights            " << w.to_string() << '\n'
                 << "exact value        " << j["value"] << '\n'
                 << "balanced colorings " << count_balanced(w).str() << '\n'
                 << "mu(total)          " << (v.infinite ? std::string("inf") : std::to_string(v.value)) << '\n'
                 << "decision-tree      " << dt.bound << " (" << to_string(dt.source) << ")\n"
                 << "best certified     " << j["best_certified"] << '\n'
                 << "hardness target    " << j["hardness_target"] << '\n';
            emit(j, text.str());
        } else if (*certify) {
            const WeightVector w = WeightVector::parse(weights_arg);
            json arr = json::array();
            for (const auto& c : certify_lower_bound(w)) arr.push_back(to_json(c));
            // Certificates are always JSON records; --json only compacts them onto one line.
            std::cout << (g_json ? arr.dump() : arr.dump(2)) << '\n';
        } else if (*adversary) {
            const Graph g = load_graph(graph_arg);
            if (!cover_arg.empty()) {
                std::stringstream ss(cover_arg);
                for (std::string part; std::getline(ss, part, ',');) adv_options.cover.push_back(std::stoi(part));
            }
            auto a = make_adversary(adv_name, g, adv_options);
            auto q = make_querier(vs, g, solver_options(canonical, table_cap));
            const Transcript t = play(g, *q, *a);
            json j{{"adversary", a->name()}, {"querier", q->name()}, {"queries", t.length()},
                   {"transcript", t.to_text()}, {"violations", a->violations()}};
            std::string text = t.to_text() + "queries: " + std::to_string(t.length()) + "\nviolations: " +
                               std::to_string(a->violations().size()) + "\n";
            for (const auto& v : a->violations()) text += "  " + v + "\n";
            emit(j, text);
            return a->violations().empty() ? 0 : 1;
        } else if (*construct) {
            MinEdgeQuerier q(size_n);
            const Graph& g = q.construction().graph;
            if (emit_kind == "graph") {
                emit(json{{"n", g.n()}, {"edges", edges_json(g.edges())}}, g.to_text());
            } else if (emit_kind == "strategy") {
                ConstantAdversary same(Answer::Same);
                const Transcript t = play(g, q, same);
                emit(json{{"querier", q.name()}, {"transcript_all_same", t.to_text()}}, t.to_text());
            } else {
                const int b = binary_ones(static_cast<std::uint64_t>(size_n));
                const VerifyReport r = verify_querier(g, q, size_n - b);
                json j{{"max_queries", r.max_queries}, {"budget", r.budget}, {"pass", r.pass}, {"leaves_checked", r.leaves_checked}};
                if (!r.failure.empty()) j["failure"] = r.failure;
                std::cout << j.dump() << '\n';
                return r.pass ? 0 : 1;
            }
        } else if (*verify) {
            const Graph g = load_graph(graph_arg);
            auto q = make_querier(querier_name, g, {});
            const int limit = budget >= 0 ? budget : solve_graph(g);
            const VerifyReport r = verify_querier(g, *q, limit);
            json j{{"max_queries", r.max_queries}, {"budget", r.budget}, {"pass", r.pass}, {"leaves_checked", r.leaves_checked}};
            if (!r.failure.empty()) j["failure"] = r.failure;
            std::cout << j.dump() << '\n';
            return r.pass ? 0 : 1;
        } else if (*nd_cert) {
            const Graph g = load_graph(graph_arg);
            const CertReport r = cert(g, Coloring::parse(coloring_arg));
            emit(json{{"size", r.size}, {"queries", edges_json(r.queries)}, {"outcome", to_string(r.outcome)}},
                 "cert size " + std::to_string(r.size) + ", outcome " + to_string(r.outcome) + "\n");
        } else if (*nd_path) {
            const CertReport r = path_cert(Coloring::parse(coloring_arg));
            emit(json{{"size", r.size}, {"queries", edges_json(r.queries)}, {"outcome", to_string(r.outcome)}},
                 "cert size " + std::to_string(r.size) + ", outcome " + to_string(r.outcome) + "\n");
        } else if (*nd_mnd) {
            const Graph g = load_graph(graph_arg);
            const int v = m_nd(g);
            emit(json{{"n", g.n()}, {"m_nd", v}}, "m_nd = " + std::to_string(v) + "\n");
        } else if (*nd_table) {
            const auto [lo, hi] = parse_range(odd_range);
            json rows = json::array();
            std::string text = "n\tm_nd\tn-m_nd\n";
            for (int n = lo; n <= hi; ++n) {
                if (n % 2 == 0) continue;
                const int v = m_nd(Graph::path(n));
                rows.push_back({{"n", n}, {"m_nd", v}, {"gap", n - v}});
                text += std::to_string(n) + "\t" + std::to_string(v) + "\t" + std::to_string(n - v) + "\n";
            }
            emit(rows, text);
        } else if (*gen) {
            const auto graphs = generate(InstanceSpec::parse(spec_arg));
            if (g_json) {
                for (const auto& g : graphs) std::cout << json{{"n", g.n()}, {"edges", edges_json(g.edges())}}.dump() << '\n';
            } else {
                for (std::size_t i = 0; i < graphs.size(); ++i) std::cout << (i ? "\n" : "") << graphs[i].to_text();
            }
        } else if (*play_cmd) {
            const Graph g = load_graph(graph_arg);
            auto a = make_adversary(adv_name, g, adv_options);
            QueryState s(std::make_shared<const Graph>(g));
            std::cout << "adversary " << a->name() << " on " << g.n() << " vertices; type 'u v' to query, 'quit' to stop\n"
                      << weights_line(s) << '\n';
            int queries = 0;
            std::string line;
            while (!terminal_outcome(s) && std::cout << "> " << std::flush && std::getline(std::cin, line)) {
                if (line == "quit" || line == "q") break;
                std::istringstream in(line);
                Vertex u = 0, v = 0;
                if (!(in >> u >> v)) {
                    std::cout << "expected two vertex numbers\n";
                    continue;
                }
                try {
                    const Edge e(u, v);
                    bool legal = false;
                    for (Edge f : s.legal_queries()) legal = legal || f == e;
                    if (!legal) throw IllegalQuery("not a legal query here: " + std::to_string(u) + " " + std::to_string(v));
                    const Answer ans = a->answer(s, e);
                    s = apply_query(s, e, ans);
                    ++queries;
                    std::cout << "QUERY " << e.u << ' ' << e.v << " -> " << to_string(ans) << '\n' << weights_line(s) << '\n';
                } catch (const std::exception& ex) {
                    std::cout << ex.what() << '\n';
                }
            }
            if (const auto o = terminal_outcome(s)) std::cout << "OUTCOME " << to_string(*o) << " after " << queries << " queries\n";
            for (const auto& v : a->violations()) std::cout << "violation: " << v << '\n';
        } else if (*suite) {
            SuiteOptions options;
            options.seed = seed;
            options.threads = threads;
            options.only_case = only_case;
            const SuiteReport r = run_suite(suite_name, options);
            if (g_json) std::cout << r.to_json().dump() << '\n';
            else std::cout << r.table();
            return r.pass() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

#include <map>
#include <random>

#include "doctest.h"
#include "majority/bounds.hpp"
#include "majority/errors.hpp"
#include "majority/graph_solver.hpp"
#include "majority/weighted.hpp"

using namespace majority;

namespace {

// Plain minimax over every legal edge, keyed on the full state encoding.
int oracle_value(const QueryState& s, std::map<std::pair<std::vector<Vertex>, std::vector<std::uint8_t>>, int>& memo)
{
    if (terminal_outcome(s)) {
        return 0;
    }
    auto key = std::make_pair(s.labels(), s.sides());
    if (auto it = memo.find(key); it != memo.end()) {
        return it->second;
    }
    int best = 1 << 20;
    for (const Edge& e : s.legal_queries()) {
        const int a = oracle_value(apply_query(s, e, Answer::Same), memo);
        const int b = oracle_value(apply_query(s, e, Answer::Diff), memo);
        best = std::min(best, 1 + std::max(a, b));
    }
    memo.emplace(std::move(key), best);
    return best;
}

int oracle_value(const Graph& g)
{
    std::map<std::pair<std::vector<Vertex>, std::vector<std::uint8_t>>, int> memo;
    return oracle_value(QueryState(std::make_shared<const Graph>(g)), memo);
}

Graph random_tree(std::mt19937_64& rng, int n)
{
    std::vector<Edge> edges;
    for (int v = 1; v < n; ++v) {
        edges.emplace_back(static_cast<Vertex>(rng() % static_cast<std::uint64_t>(v)), v);
    }
    return Graph(n, edges);
}

Graph random_connected(std::mt19937_64& rng, int n, int extra)
{
    std::vector<Edge> edges = random_tree(rng, n).edges();
    for (int t = 0; t < extra; ++t) {
        const Edge e(static_cast<Vertex>(rng() % n), static_cast<Vertex>(rng() % n));
        if (e.u != e.v && std::find(edges.begin(), edges.end(), e) == edges.end()) {
            edges.push_back(e);
        }
    }
    return Graph(n, edges);
}

// Follows the querier down every answer branch; returns the deepest branch.
int explore(const QueryState& s, const Querier& q)
{
    if (auto out = terminal_outcome(s)) {
        for_each_consistent_coloring(s, [&](const Coloring& c) { CHECK(outcome_valid_for(*out, c)); });
        return 0;
    }
    auto qc = q.clone();
    const Edge e = qc->next_query(s);
    return 1 + std::max(explore(apply_query(s, e, Answer::Same), *qc), explore(apply_query(s, e, Answer::Diff), *qc));
}

}  // namespace

TEST_CASE("known values")
{
    CHECK(solve_graph(Graph::complete(4)) == 3);
    CHECK(solve_graph(Graph::path(2)) == 1);
    for (int n = 3; n <= 13; n += 2) {
        CHECK(solve_graph(Graph::path(n)) == n - binary_ones(static_cast<unsigned>(n)));
        CHECK(solve_graph(Graph::path(n), {CanonicalMode::Path}) == n - binary_ones(static_cast<unsigned>(n)));
    }
    for (int n = 2; n <= 14; n += 2) {
        CHECK(solve_graph(Graph::path(n), {CanonicalMode::Path}) == n - 1);
    }
    CHECK(solve_graph(Graph::path(15), {CanonicalMode::Path}) == 12);
}

TEST_CASE("complete graphs agree with the weighted game")
{
    for (int n = 1; n <= 10; ++n) {
        const int v = solve_graph(Graph::complete(n));
        CHECK(v == n - binary_ones(static_cast<unsigned>(n)));
        CHECK(v == solve_weighted(WeightVector(std::vector<int>(static_cast<std::size_t>(n), 1))));
    }
}

TEST_CASE("random even trees are hard")
{
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 40; ++iter) {
        const int n = 2 * (1 + static_cast<int>(rng() % 5));
        CHECK(solve_graph(random_tree(rng, n)) == n - 1);
    }
}

TEST_CASE("solver agrees with plain minimax")
{
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 60; ++iter) {
        const int n = 2 + static_cast<int>(rng() % 6);
        const Graph g = random_connected(rng, n, static_cast<int>(rng() % 6));
        CHECK_MESSAGE(solve_graph(g) == oracle_value(g), g.to_text());
    }
    // Odd order with two components.
    const Graph two(5, {Edge(0, 1), Edge(1, 2), Edge(3, 4)});
    CHECK(solve_graph(two) == oracle_value(two));
}

TEST_CASE("window and edge monotonicity")
{
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 200; ++iter) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const Graph g = random_connected(rng, n, static_cast<int>(rng() % 5));
        std::vector<Edge> more = g.edges();
        for (int t = 0; t < 3; ++t) {
            const Edge e(static_cast<Vertex>(rng() % n), static_cast<Vertex>(rng() % n));
            if (e.u != e.v && std::find(more.begin(), more.end(), e) == more.end()) {
                more.push_back(e);
            }
        }
        const Graph h(n, more);
        const int vg = solve_graph(g);
        const int vh = solve_graph(h);
        CHECK(vh <= vg);
        CHECK(vg >= n - binary_ones(static_cast<unsigned>(n)));
        CHECK(vg <= (n % 2 == 0 ? n - 1 : n - 2));
    }
}

TEST_CASE("canonical key ignores splits")
{
    auto g = std::make_shared<const Graph>(Graph::path(4));
    QueryState s(g);
    const QueryState a = apply_query(apply_query(s, Edge(0, 1), Answer::Same), Edge(2, 3), Answer::Diff);
    const QueryState b = apply_query(apply_query(s, Edge(0, 1), Answer::Same), Edge(2, 3), Answer::Diff);
    const QueryState c = apply_query(apply_query(s, Edge(0, 1), Answer::Same), Edge(2, 3), Answer::Same);
    CHECK(canonical_key(a) == canonical_key(b));
    CHECK_FALSE(canonical_key(a) == canonical_key(c));
}

TEST_CASE("errors")
{
    CHECK_THROWS_AS(solve_graph(Graph(4, {Edge(0, 1), Edge(2, 3)})), Unsolvable);
    CHECK_THROWS_AS(solve_graph(Graph(5, {Edge(0, 1)})), Unsolvable);
    CHECK_THROWS_AS(solve_graph(Graph::path(17)), InvalidInput);
    CHECK_THROWS_AS(GraphSolver(Graph::star(5), {CanonicalMode::Path}), InvalidInput);
}

TEST_CASE("optimal querier is sound on every answer path")
{
    for (const Graph& g : {Graph::path(4), Graph::complete(4), Graph::path(7), Graph::star(6)}) {
        auto q = optimal_querier(g);
        const int depth = explore(QueryState(std::make_shared<const Graph>(g)), *q);
        CHECK(depth == solve_graph(g));
    }
    std::mt19937_64 rng(23);
    for (int iter = 0; iter < 20; ++iter) {
        const Graph g = random_connected(rng, 3 + static_cast<int>(rng() % 6), 3);
        auto q = optimal_querier(g);
        CHECK(explore(QueryState(std::make_shared<const Graph>(g)), *q) == solve_graph(g));
    }
}

TEST_CASE("play and transcripts")
{
    {
        const Graph g = Graph::path(2);
        SpanningTreeQuerier q(g);
        ConstantAdversary a(Answer::Diff);
        const Transcript t = play(g, q, a);
        CHECK(t.length() == 1);
        CHECK(t.to_text() == "QUERY 0 1 -> DIFF\nOUTCOME NONE\n");
        CHECK(replay_valid(g, t));
    }
    {
        const Graph g = Graph::path(4);
        SpanningTreeQuerier q(g);
        ColoringAdversary a(Coloring::parse("RBBR"));
        const Transcript t = play(g, q, a);
        CHECK(t.length() == 3);
        CHECK(replay_valid(g, t));
        CHECK(Transcript::parse(t.to_text()).to_text() == t.to_text());
        Transcript bad = t;
        bad.outcome = Outcome::majority(0);
        CHECK_FALSE(replay_valid(g, bad));
    }
    {
        const Graph g = Graph::path(6);
        auto q = optimal_querier(g);
        ConstantAdversary a(Answer::Diff);
        const Transcript t = play(g, *q, a);
        CHECK(replay_valid(g, t));
        CHECK(t.length() <= 5);
    }
    CHECK_THROWS_AS(Transcript::parse("QUERY 0 1 -> MAYBE\nOUTCOME NONE\n"), InvalidInput);
    CHECK_THROWS_AS(Transcript::parse("QUERY 0 1 -> SAME\n"), InvalidInput);
}

TEST_CASE("forced queries")
{
    // SAME on 0-1 and 1-2 leaves weights (3,1,1), already decided.
    CHECK(forced_queries(Graph::path(5), ConstantAdversary(Answer::Same)) == 2);
    CHECK(forced_queries(Graph::path(2), ConstantAdversary(Answer::Same)) == 1);
    std::mt19937_64 rng(29);
    for (int iter = 0; iter < 30; ++iter) {
        const int n = 2 + static_cast<int>(rng() % 6);
        const Graph g = random_connected(rng, n, 2);
        const int v = solve_graph(g);
        CHECK(forced_queries(g, ConstantAdversary(Answer::Same)) <= v);
        CHECK(forced_queries(g, ConstantAdversary(Answer::Diff)) <= v);
        const Coloring c = Coloring::from_mask(n, rng() & ((1ULL << n) - 1));
        CHECK(forced_queries(g, ColoringAdversary(c)) <= v);
    }
}

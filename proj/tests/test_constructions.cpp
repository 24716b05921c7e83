#include <algorithm>
#include <functional>
#include <map>

#include "doctest.h"
#include "majority/bounds.hpp"
#include "majority/constructions.hpp"
#include "majority/errors.hpp"
#include "majority/graph_solver.hpp"

using namespace majority;

namespace {

// Plain minimax over every legal edge, independent of the solver's pruning and keys.
int oracle_value(const QueryState& s, std::map<std::pair<std::vector<Vertex>, std::vector<std::uint8_t>>, int>& memo)
{
    if (terminal_outcome(s)) return 0;
    auto key = std::make_pair(s.labels(), s.sides());
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    int best = 1 << 20;
    for (const Edge& e : s.legal_queries())
        best = std::min(best, 1 + std::max(oracle_value(apply_query(s, e, Answer::Same), memo),
                                           oracle_value(apply_query(s, e, Answer::Diff), memo)));
    memo.emplace(std::move(key), best);
    return best;
}

int budget_of(int n) { return n - binary_ones(static_cast<std::uint64_t>(n)); }

bool power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

// Runs the fragment under every answer sequence; calls leaf(state, queries) when it stops.
void walk_fragment(const DoublingFragment& f, const QueryState& s, int depth,
                   const std::function<void(const QueryState&, int)>& step,
                   const std::function<void(const QueryState&, int)>& leaf)
{
    step(s, depth);
    auto e = f.next(s);
    if (!e) {
        leaf(s, depth);
        return;
    }
    for (Answer a : {Answer::Same, Answer::Diff}) walk_fragment(f, apply_query(s, *e, a), depth + 1, step, leaf);
}

QueryState start(const Graph& g) { return QueryState(std::make_shared<const Graph>(g)); }

}  // namespace

TEST_CASE("F_k shape")
{
    CHECK(build_F(1) == Graph(2, {{0, 1}}));
    // u1 v1 v2 u2 is the path 2-0-1-3.
    CHECK(build_F(2) == Graph(4, {{0, 1}, {0, 2}, {1, 3}}));
    const Graph f4 = build_F(4);
    CHECK(f4.n() == 8);
    CHECK(f4.edge_count() == 7);
    CHECK(f4.is_tree());
    std::vector<int> degrees;
    for (Vertex v = 0; v < 8; ++v) degrees.push_back(f4.degree(v));
    CHECK(degrees == std::vector<int>{2, 3, 3, 2, 1, 1, 1, 1});
    CHECK_THROWS_AS(build_F(0), InvalidInput);
}

TEST_CASE("minedge construction labeling and edge budget")
{
    for (int n = 2; n <= 64; ++n) {
        CAPTURE(n);
        const auto c = build_minedge_graph(n);
        const int k = n / 2;
        const int b = binary_ones(static_cast<std::uint64_t>(n));
        CHECK(c.graph.n() == n);
        CHECK(static_cast<int>(c.graph.edge_count()) <= n * (1 + b));
        CHECK(c.path.size() == static_cast<std::size_t>(k));
        CHECK(c.leftover.has_value() == (n % 2 == 1));
        CHECK(static_cast<int>(c.hubs.size()) == std::min(b, k));
        for (int i = 0; i < k; ++i) {
            CHECK(c.path[i] == i);
            CHECK(c.leaves[i] == k + i);
            CHECK(c.graph.has_edge(c.path[i], c.leaves[i]));
            if (i + 1 < k) CHECK(c.graph.has_edge(c.path[i], c.path[i + 1]));
        }
        for (Vertex h : c.hubs) {
            CHECK(h >= k - b);
            CHECK(c.graph.degree(h) == n - 1);
        }
        CHECK(c.graph.is_connected());
    }
    CHECK(build_minedge_graph(4).graph.edge_count() <= 8);
    CHECK(build_minedge_graph(8).graph.edge_count() <= 16);
    CHECK(build_minedge_graph(6).graph.edge_count() <= 18);
}

TEST_CASE("doubling fragment on F_1, F_2, F_4")
{
    DoublingFragment a1({{0, 1}});
    CHECK(a1.order() == std::vector<Edge>{Edge(0, 1)});

    const Graph f2 = build_F(2);
    DoublingFragment a2({{0, 2}, {1, 3}});
    int leaves = 0;
    walk_fragment(a2, start(f2), 0, [](const QueryState&, int) {},
                  [&](const QueryState& s, int q) {
                      ++leaves;
                      CHECK(q <= 3);
                      // Either a balanced component exists, or the whole copy is one monochromatic block.
                      const bool balanced = a2.ended_balanced(s);
                      const bool mono = s.component_count() == 1 && s.component_weight(0) == 4;
                      CHECK(balanced != mono);
                  });
    CHECK(leaves == 4);  // SAME-SAME-{SAME,DIFF}, SAME-DIFF, DIFF

    const Graph f4 = build_F(4);
    DoublingFragment a4({{0, 4}, {1, 5}, {2, 6}, {3, 7}});
    QueryState s = start(f4);
    while (auto e = a4.next(s)) s = apply_query(s, *e, Answer::Same);
    CHECK(s.component_count() == 1);
    CHECK(s.component_weight(0) == 8);
    CHECK(s.queried().size() == 7);
}

TEST_CASE("doubling fragment stops at a DIFF between equal monochromatic blocks and keeps a prefix")
{
    const int l = 8;
    const Graph f = build_F(l);
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (int i = 0; i < l; ++i) pairs.emplace_back(i, l + i);
    DoublingFragment a(pairs);
    int leaves = 0;
    walk_fragment(
        a, start(f), 0,
        [&](const QueryState& s, int) {
            // Touched pairs form a prefix, and the untouched rest is connected in F_l.
            int j = 0;
            while (j < l && s.component_size(s.component_of(j)) > 1) ++j;
            for (int i = j; i < l; ++i) {
                if (s.component_size(s.component_of(i)) > 1 && i != j) FAIL("touched pair after the prefix");
                if (i > j) CHECK(s.component_size(s.component_of(l + i)) == 1);
            }
            // Every merge so far joined equal-size monochromatic blocks.
            for (const auto& c : s.components()) CHECK(power_of_two(c.size()));
        },
        [&](const QueryState& s, int q) {
            ++leaves;
            CHECK(q <= 2 * l - 1);
            if (a.ended_balanced(s)) {
                int balanced = 0;
                for (const auto& c : s.components())
                    if (c.weight() == 0) ++balanced;
                CHECK(balanced == 1);
            } else {
                CHECK(s.component_count() == 1);
                CHECK(s.component_weight(0) == 2 * l);
            }
        });
    CHECK(leaves == 2 * l);
}

TEST_CASE("doubling fragment rejects bad input")
{
    CHECK_THROWS_AS(DoublingFragment({{0, 3}, {1, 4}, {2, 5}}), InvalidInput);
    CHECK_THROWS_AS(DoublingFragment({}), InvalidInput);
    DoublingFragment a2({{0, 2}, {1, 3}});
    CHECK_THROWS_AS(a2.next(start(Graph::path(4))), InvalidInput);
    DoublingQuerier q(2);
    CHECK(q.next_query(start(build_F(2))) == Edge(0, 2));
}

TEST_CASE("minedge querier verified exhaustively for n = 4..16")
{
    for (int n = 4; n <= 16; ++n) {
        CAPTURE(n);
        MinEdgeQuerier q(n);
        const auto report = verify_querier(q.construction().graph, q, budget_of(n));
        CHECK(report.pass);
        CHECK(report.max_queries == budget_of(n));
        CHECK(report.failure.empty());
        CHECK(report.leaves_checked > 0);
    }
}

TEST_CASE("minedge leaves keep at least b(n) components")
{
    for (int n : {6, 9, 13, 14}) {
        CAPTURE(n);
        MinEdgeQuerier root(n);
        const int b = binary_ones(static_cast<std::uint64_t>(n));
        std::function<void(const QueryState&, Querier&)> walk = [&](const QueryState& s, Querier& q) {
            if (terminal_outcome(s)) {
                CHECK(s.component_count() >= b);
                return;
            }
            const Edge e = q.next_query(s);
            for (Answer a : {Answer::Same, Answer::Diff}) {
                auto branch = q.clone();
                walk(apply_query(s, e, a), *branch);
            }
        };
        walk(start(root.construction().graph), root);
    }
}

TEST_CASE("verify_querier reports failures")
{
    MinEdgeQuerier q8(8);
    const auto tight = verify_querier(q8.construction().graph, q8, 7);
    CHECK(tight.pass);
    CHECK(tight.max_queries == 7);
    const auto short_budget = verify_querier(q8.construction().graph, q8, 6);
    CHECK_FALSE(short_budget.pass);
    CHECK(short_budget.failure.find("QUERY") != std::string::npos);

    CHECK(verify_querier(Graph::path(4), SpanningTreeQuerier(Graph::path(4)), 3).pass);
    CHECK(verify_querier(build_minedge_graph(4).graph, MinEdgeQuerier(4), 3).pass);
}

TEST_CASE("minedge querier rejects foreign graphs")
{
    MinEdgeQuerier q(6);
    CHECK_THROWS_AS(q.next_query(start(Graph::path(6))), InvalidInput);
}

TEST_CASE("all-SAME playback on n = 8")
{
    MinEdgeQuerier q(8);
    ConstantAdversary same(Answer::Same);
    const Transcript t = play(q.construction().graph, q, same);
    CHECK(t.length() <= 7);
    CHECK(t.outcome.has_majority());
    CHECK(replay_valid(q.construction().graph, t));
}

TEST_CASE("minedge graphs attain n - b(n)")
{
    for (int n = 2; n <= 8; ++n) {
        CAPTURE(n);
        std::map<std::pair<std::vector<Vertex>, std::vector<std::uint8_t>>, int> memo;
        CHECK(oracle_value(start(build_minedge_graph(n).graph), memo) == budget_of(n));
    }
    for (int n = 2; n <= 12; ++n) {
        CAPTURE(n);
        CHECK(solve_graph(build_minedge_graph(n).graph) == budget_of(n));
    }
}

#include <random>

#include "doctest.h"
#include "majority/core.hpp"
#include "majority/errors.hpp"

using namespace majority;

namespace {

std::shared_ptr<const Graph> share(Graph g)
{
    return std::make_shared<const Graph>(std::move(g));
}

struct Record {
    Edge e;
    Answer a;
};

// Colorings of all 2^n vertex colorings that agree with every recorded answer.
std::vector<Coloring> brute_consistent(int n, const std::vector<Record>& log)
{
    std::vector<Coloring> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        Coloring c = Coloring::from_mask(n, mask);
        bool ok = true;
        for (const auto& r : log) {
            ok = ok && answer_for(c, r.e) == r.a;
        }
        if (ok) {
            out.push_back(c);
        }
    }
    return out;
}

// Whether one outcome is valid for every consistent coloring.
bool brute_determined(int n, const std::vector<Coloring>& cs)
{
    bool all_balanced = true;
    for (const auto& c : cs) {
        all_balanced = all_balanced && c.is_balanced();
    }
    if (all_balanced) {
        return true;
    }
    for (Vertex v = 0; v < n; ++v) {
        bool ok = true;
        for (const auto& c : cs) {
            ok = ok && outcome_valid_for(Outcome::majority(v), c);
        }
        if (ok) {
            return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("graph validation and text format")
{
    CHECK_THROWS_AS(Graph(3, {Edge(0, 0)}), InvalidInput);
    CHECK_THROWS_AS(Graph(3, {Edge(0, 3)}), InvalidInput);
    CHECK_THROWS_AS(Graph(3, {Edge(0, 1), Edge(1, 0)}), InvalidInput);
    const Graph p = Graph::path(4);
    CHECK(p.is_tree());
    CHECK(p.is_labeled_path());
    CHECK(Graph::parse(p.to_text()) == p);
    CHECK_THROWS_AS(Graph::parse("3 2\n0 1\n"), InvalidInput);
    CHECK(Graph::complete(4).edge_count() == 6);
    CHECK(Graph(5, {Edge(0, 1), Edge(2, 3), Edge(3, 4)}).is_solvable());
    CHECK_FALSE(Graph(4, {Edge(0, 1), Edge(2, 3)}).is_solvable());
}

TEST_CASE("coloring text format")
{
    const Coloring c = Coloring::parse("RRBRB");
    CHECK(c.to_string() == "RRBRB");
    CHECK(c.red_count() == 3);
    CHECK_FALSE(c.is_balanced());
    CHECK(true_outcome(c) == Outcome::majority(0));
    CHECK(true_outcome(Coloring::parse("RB")) == Outcome::none());
    CHECK_THROWS_AS(Coloring::parse("RXB"), InvalidInput);
}

TEST_CASE("apply_query merges by the side rule")
{
    auto g = share(Graph::path(4));
    QueryState s(g);

    SUBCASE("SAME on two singletons gives weight 2")
    {
        auto t = apply_query(s, Edge(0, 1), Answer::Same);
        auto comps = t.components();
        REQUIRE(comps.size() == 3);
        CHECK(comps[0].first == std::vector<Vertex>{0, 1});
        CHECK(comps[0].second.empty());
        CHECK(comps[0].weight() == 2);
    }
    SUBCASE("DIFF on two singletons gives weight 0")
    {
        auto t = apply_query(s, Edge(0, 1), Answer::Diff);
        auto comps = t.components();
        CHECK(comps[0].first == std::vector<Vertex>{0});
        CHECK(comps[0].second == std::vector<Vertex>{1});
        CHECK(comps[0].weight() == 0);
    }
    SUBCASE("weight-2 and weight-0 components joined by DIFF")
    {
        auto t = apply_query(s, Edge(0, 1), Answer::Same);
        t = apply_query(t, Edge(2, 3), Answer::Diff);
        t = apply_query(t, Edge(1, 2), Answer::Diff);
        auto comps = t.components();
        REQUIRE(comps.size() == 1);
        CHECK(comps[0].first == std::vector<Vertex>{0, 1, 3});
        CHECK(comps[0].second == std::vector<Vertex>{2});
        CHECK(component_weights(t) == WeightVector{2});
        // Agreement with enumeration of the recorded answers.
        auto cs = brute_consistent(4, {{Edge(0, 1), Answer::Same}, {Edge(2, 3), Answer::Diff}, {Edge(1, 2), Answer::Diff}});
        REQUIRE(cs.size() == 2);
        for (const auto& c : cs) {
            CHECK(c[0] == c[1]);
            CHECK(c[0] == c[3]);
            CHECK(c[0] != c[2]);
        }
    }
    SUBCASE("rejections")
    {
        auto t = apply_query(s, Edge(0, 1), Answer::Same);
        CHECK_THROWS_AS(apply_query(t, Edge(0, 1), Answer::Same), IllegalQuery);
        CHECK_THROWS_AS(apply_query(s, Edge(0, 2), Answer::Same), IllegalQuery);
    }
}

TEST_CASE("component weights and consistent colorings")
{
    auto g5 = share(Graph::path(5));
    CHECK(component_weights(QueryState(g5)) == WeightVector{1, 1, 1, 1, 1});
    auto g4 = share(Graph::path(4));
    QueryState s(g4);
    for (int i = 0; i < 3; ++i) {
        s = apply_query(s, Edge(i, i + 1), Answer::Same);
    }
    CHECK(component_weights(s) == WeightVector{4});
    CHECK(consistent_coloring_count(s) == 2);

    auto g3 = share(Graph::complete(3));
    QueryState s3(g3);
    CHECK(consistent_coloring_count(s3) == 8);
    int seen = 0;
    for_each_consistent_coloring(s3, [&](const Coloring&) { ++seen; });
    CHECK(seen == 8);
    s3 = apply_query(s3, Edge(0, 1), Answer::Diff);
    CHECK(consistent_coloring_count(s3) == 4);
}

TEST_CASE("terminal outcome on weight patterns")
{
    // Six vertices answered into components of weights (0,0,0): three DIFF pairs.
    auto g = share(Graph::path(6));
    QueryState s(g);
    s = apply_query(s, Edge(0, 1), Answer::Diff);
    s = apply_query(s, Edge(2, 3), Answer::Diff);
    s = apply_query(s, Edge(4, 5), Answer::Diff);
    CHECK(terminal_outcome(s) == Outcome::none());

    // Weights (5,1,1,1): a SAME chain of five plus three singletons.
    auto g8 = share(Graph::path(8));
    QueryState t(g8);
    for (int i = 0; i < 4; ++i) {
        t = apply_query(t, Edge(i, i + 1), Answer::Same);
    }
    CHECK(terminal_outcome(t) == Outcome::majority(0));

    // Weights (2,1,1) are undecided.
    auto g4 = share(Graph::path(4));
    QueryState u = apply_query(QueryState(g4), Edge(0, 1), Answer::Same);
    CHECK_FALSE(terminal_outcome(u).has_value());
    auto cs = brute_consistent(4, {{Edge(0, 1), Answer::Same}});
    CHECK_FALSE(brute_determined(4, cs));
}

TEST_CASE("random query sequences agree with enumeration")
{
    std::mt19937_64 rng(7);
    for (int round = 0; round < 300; ++round) {
        const int n = 2 + static_cast<int>(rng() % 9);
        std::vector<Edge> edges;
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                if (rng() % 3 == 0 || b == a + 1) {
                    edges.emplace_back(a, b);
                }
            }
        }
        auto g = share(Graph(n, edges));
        QueryState s(g);
        std::vector<Record> log;
        while (true) {
            // Sum parity.
            CHECK(component_weights(s).total() % 2 == n % 2);
            CHECK(s.canonicalized() == s);
            auto cs = brute_consistent(n, log);
            CHECK(BigInt(cs.size()) == consistent_coloring_count(s));
            const auto term = terminal_outcome(s);
            CHECK(term.has_value() == brute_determined(n, cs));
            if (term) {
                for (const auto& c : cs) {
                    CHECK(outcome_valid_for(*term, c));
                }
            }
            auto legal = s.legal_queries();
            if (legal.empty()) {
                break;
            }
            const Edge e = legal[rng() % legal.size()];
            // Merge algebra: the two answers realize w(X)+w(Y) and |w(X)-w(Y)|.
            const int wx = s.component_weight(s.component_of(e.u));
            const int wy = s.component_weight(s.component_of(e.v));
            const int same = s.merged_weight(e, Answer::Same);
            const int diff = s.merged_weight(e, Answer::Diff);
            CHECK(std::min(same, diff) == std::abs(wx - wy));
            CHECK(std::max(same, diff) == wx + wy);
            const Answer a = rng() % 2 ? Answer::Same : Answer::Diff;
            s = apply_query(s, e, a);
            log.push_back({e, a});
        }
    }
}

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>

#include "doctest.h"
#include "majority/adversary.hpp"
#include "majority/bounds.hpp"
#include "majority/errors.hpp"
#include "majority/generate.hpp"
#include "majority/graph_solver.hpp"

using namespace majority;

namespace {

QueryState start(const Graph& g) { return QueryState(std::make_shared<const Graph>(g)); }

int total_weight(const QueryState& s) { return component_weights(s).total(); }

int floor_log2(int n) { return std::bit_width(static_cast<unsigned>(n)) - 1; }

// Number of red vertices minus blue vertices over one side of the tree with edge e removed.
bool cut_is_balanced(const Graph& t, const Coloring& c, Edge e)
{
    std::vector<char> seen(static_cast<std::size_t>(t.n()), 0);
    std::vector<Vertex> stack{e.u};
    seen[e.u] = 1;
    int diff = 0;
    while (!stack.empty()) {
        const Vertex x = stack.back();
        stack.pop_back();
        diff += c[x] == Color::Red ? 1 : -1;
        for (Vertex y : t.neighbors(x))
            if (!seen[y] && !(x == e.u && y == e.v)) {
                seen[y] = 1;
                stack.push_back(y);
            }
    }
    return diff == 0;
}

// Weight conditions for every proper component: odd size has weight 1, even
// size has twice the parity of its boundary edge count.
bool lemma_conditions_hold(const QueryState& s)
{
    for (const auto& comp : s.components()) {
        if (static_cast<int>(comp.size()) == s.n()) continue;
        if (comp.size() % 2 == 1) {
            if (comp.weight() != 1) return false;
        } else {
            std::vector<char> in(static_cast<std::size_t>(s.n()), 0);
            for (Vertex v : comp.vertices()) in[v] = 1;
            if (comp.weight() != 2 * (s.graph().boundary_edges(in) % 2)) return false;
        }
    }
    return true;
}

// Visits every reachable (state, adversary) pair under all query orders.
void explore_all(const QueryState& s, const Adversary& a, std::set<std::string>& seen,
                 const std::function<void(const QueryState&, const Adversary&)>& visit)
{
    std::string key;
    for (Vertex l : s.labels()) key.push_back(static_cast<char>(l));
    for (auto x : s.sides()) key.push_back(static_cast<char>(x));
    key += a.digest();
    if (!seen.insert(key).second) return;
    visit(s, a);
    if (terminal_outcome(s)) return;
    for (const Edge& e : s.legal_queries()) {
        auto next = a.clone();
        const Answer ans = next->answer(s, e);
        explore_all(apply_query(s, e, ans), *next, seen, visit);
    }
}

// One play against a random querier. `observe` sees the state before and
// after each answer together with whether the endgame produced the answer.
template <typename A>
void random_play(const Graph& g, A& adversary, std::uint64_t seed,
                 const std::function<void(const QueryState&, const QueryState&, bool, const A&)>& observe)
{
    RandomQuerier q(seed);
    QueryState s = start(g);
    while (!terminal_outcome(s)) {
        const Edge e = q.next_query(s);
        const QueryState next = apply_query(s, e, adversary.answer(s, e));
        observe(s, next, adversary.last_answer_from_endgame(), adversary);
        s = next;
    }
}

std::vector<Graph> odd_random_trees(int count, int lo, int hi, std::uint64_t seed)
{
    std::vector<Graph> out;
    std::mt19937_64 rng(seed);
    while (static_cast<int>(out.size()) < count) {
        const int n = uniform_int(rng, lo, hi) | 1;
        out.push_back(random_tree(n, rng()));
    }
    return out;
}

Graph complete_bipartite_two(int n)
{
    std::vector<Edge> edges;
    for (Vertex v = 2; v < n; ++v) {
        edges.emplace_back(0, v);
        edges.emplace_back(1, v);
    }
    return Graph(n, edges);
}

}  // namespace

TEST_CASE("eventrees coloring examples")
{
    const auto p4 = eventrees_coloring(Graph::path(4)).to_string();
    CHECK((p4 == "RRBB" || p4 == "BBRR"));
    const Coloring star = eventrees_coloring(Graph::star(4));
    int sharing = 0;
    for (Vertex v = 1; v < 4; ++v) sharing += star[v] == star[0] ? 1 : 0;
    CHECK(sharing == 1);
    const auto p2 = eventrees_coloring(Graph::path(2)).to_string();
    CHECK((p2 == "RB" || p2 == "BR"));
    CHECK_THROWS_AS(eventrees_coloring(Graph::path(5)), InvalidInput);
    CHECK_THROWS_AS(eventrees_coloring(Graph::complete(4)), InvalidInput);
}

TEST_CASE("eventrees coloring leaves every edge cut unbalanced on all even free trees up to 12")
{
    for (int n = 2; n <= 12; n += 2) {
        for (const Graph& t : free_trees(n)) {
            const Coloring c = eventrees_coloring(t);
            CHECK(c.is_balanced());
            for (const Edge& e : t.edges()) CHECK_FALSE(cut_is_balanced(t, c, e));
        }
    }
}

TEST_CASE("eventrees coloring forces n - 1 queries on even trees up to 8")
{
    for (int n = 2; n <= 8; n += 2)
        for (const Graph& t : free_trees(n)) CHECK(forced_queries(t, ColoringAdversary(eventrees_coloring(t))) == n - 1);
}

TEST_CASE("treelemma examples")
{
    // On P4 the pair {0,1} has one boundary edge, so its weight must be 2.
    const Graph p4 = Graph::path(4);
    TreeLemmaAdversary a(p4);
    const QueryState s = start(p4);
    CHECK(a.answer(s, Edge(0, 1)) == Answer::Same);
    // Odd + odd with even boundary parity must give weight 0.
    const Graph star = Graph(4, {{1, 0}, {1, 2}, {1, 3}});
    TreeLemmaAdversary b(star);
    // {1,0} has boundary edges 1-2 and 1-3: parity 0, so weight 0.
    CHECK(b.answer(start(star), Edge(0, 1)) == Answer::Diff);
    CHECK(b.violations().empty());
}

TEST_CASE("treelemma conditions under every query order on trees up to 8")
{
    for (int n = 2; n <= 8; ++n) {
        for (const Graph& t : free_trees(n)) {
            std::set<std::string> seen;
            explore_all(start(t), TreeLemmaAdversary(t), seen, [&](const QueryState& s, const Adversary& a) {
                CHECK(lemma_conditions_hold(s));
                CHECK(a.violations().empty());
                if (terminal_outcome(s) && n % 2 == 0) {
                    // The game only ends with at most one unbalanced component: a full spanning merge.
                    CHECK(s.component_count() == 1);
                    CHECK(s.component_weight(0) > 0);
                }
            });
        }
    }
}

TEST_CASE("treelemma conditions under random orders on trees up to 14")
{
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const int n = 9 + static_cast<int>(seed % 6);
        const Graph t = random_tree(n, seed);
        TreeLemmaAdversary a(t);
        random_play<TreeLemmaAdversary>(t, a, seed, [&](const QueryState&, const QueryState& after, bool, const auto&) {
            CHECK(lemma_conditions_hold(after));
        });
        CHECK(a.violations().empty());
    }
}

TEST_CASE("treelemma forces n - 1 on every even free tree up to 10")
{
    for (int n = 2; n <= 10; n += 2)
        for (const Graph& t : free_trees(n)) CHECK(forced_queries(t, TreeLemmaAdversary(t)) == n - 1);
}

TEST_CASE("cover adversary preconditions")
{
    CHECK_THROWS_AS(CoverAdversary(Graph::complete(4), {0}), InvalidInput);  // edge 1-2 misses the cover
    CHECK_THROWS_AS(CoverAdversary(Graph::star(3), {0}), InvalidInput);      // 4|U| > 2^k
    CHECK_THROWS_AS(CoverAdversary(Graph::star(6), {0, 0}), InvalidInput);
    CHECK_THROWS_AS(CoverAdversary(Graph::star(6), {}), InvalidInput);
    CHECK_THROWS_AS(CoverAdversary(complete_bipartite_two(7), {0, 1}), InvalidInput);  // needs 8 <= 2^k
    CHECK_NOTHROW(CoverAdversary(Graph::star(4), {0}));
}

TEST_CASE("cover adversary forces the hardness target")
{
    for (int n = 4; n <= 12; ++n) {
        CAPTURE(n);
        const int target = n % 2 == 0 ? n - 1 : n - 2;
        CHECK(forced_queries(Graph::star(n), CoverAdversary(Graph::star(n), {0})) == target);
        if (n >= 8 && n <= 10) {
            const Graph g = complete_bipartite_two(n);
            CHECK(forced_queries(g, CoverAdversary(g, {0, 1})) == target);
        }
    }
}

TEST_CASE("cover adversary invariants along random plays")
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const int n = 8 + static_cast<int>(seed % 9);
        const Graph g = complete_bipartite_two(n);
        const int k = floor_log2(n);
        CoverAdversary a(g, {0, 1});
        random_play<CoverAdversary>(g, a, seed, [&](const QueryState& before, const QueryState& after, bool endgame,
                                                    const CoverAdversary& adv) {
            if (!endgame) {
                const int drop = total_weight(before) - total_weight(after);
                CHECK(drop >= 0);
                CHECK(drop <= 2);
                for (Vertex u : {0, 1}) CHECK(after.component_weight(after.component_of(u)) > 0);
            }
            if (adv.in_endgame()) {
                const int sw = *adv.switch_total();
                CHECK((sw == (1 << k) || sw == (1 << k) + 1));
            }
        });
        CHECK(a.violations().empty());
    }
}

TEST_CASE("oddpath marked sets and preconditions")
{
    CHECK(oddpath_marked(21, 9) == std::vector<Vertex>{1, 10, 19});
    CHECK(oddpath_marked(21, 8) == std::vector<Vertex>{1, 9, 17, 19});
    CHECK(oddpath_marked(9, 9) == std::vector<Vertex>{1, 7});
    CHECK_THROWS_AS(OddPathAdversary(Graph::path(8), 9), InvalidInput);
    CHECK_THROWS_AS(OddPathAdversary(Graph::path(9), 7), InvalidInput);
    CHECK_THROWS_AS(OddPathAdversary(Graph::star(9), 9), InvalidInput);
}

TEST_CASE("oddpath forced values on small odd paths")
{
    // Achieved values; the optimum is n - b(n) up to 13 and 12 on P15.
    const std::map<int, int> achieved{{3, 1}, {5, 3}, {7, 4}, {9, 7}, {11, 8}, {13, 9}};
    for (const auto& [n, value] : achieved) {
        CAPTURE(n);
        for (int stride : {8, 9}) {
            const int f = forced_queries(Graph::path(n), OddPathAdversary(Graph::path(n), stride));
            CHECK(f == value);
            CHECK(f <= n - binary_ones(static_cast<std::uint64_t>(n)));
        }
    }
    CHECK(forced_queries(Graph::path(9), OddPathAdversary(Graph::path(9), 9)) >= 9 - binary_ones(9));
}

TEST_CASE("oddpath invariants along random plays")
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const int n = 2 * (8 + static_cast<int>(seed % 20)) + 1;
        const Graph p = Graph::path(n);
        OddPathAdversary a(p, seed % 2 == 0 ? 9 : 8);
        std::vector<char> marked(static_cast<std::size_t>(n), 0);
        for (Vertex v : a.marked()) marked[v] = 1;
        random_play<OddPathAdversary>(p, a, seed, [&](const QueryState& before, const QueryState& after, bool endgame,
                                                      const OddPathAdversary& adv) {
            if (endgame) return;
            const int drop = total_weight(before) - total_weight(after);
            CHECK(drop >= 0);
            CHECK(drop <= 4);
            for (const auto& comp : after.components()) {
                int m = 0;
                for (Vertex v : comp.vertices()) m += marked[v];
                if (m == 0) CHECK(comp.weight() <= 1);
                else CHECK((comp.weight() >= 1 && comp.weight() <= 2 * m));
            }
            if (adv.in_endgame()) CHECK(*adv.switch_total() <= (1 << floor_log2(n)) + 1);
        });
        CHECK(a.violations().empty());
    }
}

TEST_CASE("centroid decomposition bounds")
{
    auto check = [](const Graph& t, int p, const std::vector<Vertex>& u) {
        CHECK(static_cast<int>(u.size()) * p <= 2 * t.n());
        std::vector<char> in(static_cast<std::size_t>(t.n()), 0);
        for (Vertex v : u) in[v] = 1;
        std::vector<char> seen(static_cast<std::size_t>(t.n()), 0);
        for (Vertex s = 0; s < t.n(); ++s) {
            if (in[s] || seen[s]) continue;
            // Edges of the residual component, counting edges into U.
            int edges2 = 0;  // inner edges counted twice, edges into U twice
            std::vector<Vertex> stack{s};
            seen[s] = 1;
            while (!stack.empty()) {
                const Vertex x = stack.back();
                stack.pop_back();
                for (Vertex y : t.neighbors(x)) {
                    edges2 += in[y] ? 2 : 1;
                    if (!in[y] && !seen[y]) {
                        seen[y] = 1;
                        stack.push_back(y);
                    }
                }
            }
            CHECK(edges2 / 2 <= p);
        }
    };
    CHECK(centroid_decomposition(Graph::path(9), 8).empty());
    CHECK(centroid_decomposition(Graph::star(10), 9).empty());
    const auto p9 = centroid_decomposition(Graph::path(9), 4);
    CHECK(p9.size() <= 4);
    check(Graph::path(9), 4, p9);
    CHECK(centroid_decomposition(Graph::star(7), 1) == std::vector<Vertex>{0});
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const Graph t = random_tree(10 + static_cast<int>(seed % 50), seed);
        const int p = 1 + static_cast<int>(seed % 8);
        check(t, p, centroid_decomposition(t, p));
    }
    CHECK_THROWS_AS(centroid_decomposition(Graph::complete(4), 2), InvalidInput);
    CHECK_THROWS_AS(centroid_decomposition(Graph::path(4), 0), InvalidInput);
}

TEST_CASE("tree parts: connecting vertices separate cover vertices, hanging parts attach once")
{
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const Graph t = random_tree(25, seed);
        const auto u = centroid_decomposition(t, 4);
        const TreeParts parts = tree_parts(t, u);
        for (Vertex v = 0; v < t.n(); ++v) {
            const int roles = parts.in_cover[v] + parts.connecting[v] + (parts.part_of[v] >= 0 ? 1 : 0);
            CHECK(roles == 1);
            if (!parts.connecting[v]) continue;
            // Removing v leaves at least two branches that hold cover vertices.
            int branches = 0;
            for (Vertex start_v : t.neighbors(v)) {
                std::vector<char> seen(static_cast<std::size_t>(t.n()), 0);
                seen[v] = 1;
                seen[start_v] = 1;
                std::vector<Vertex> stack{start_v};
                bool has = false;
                while (!stack.empty()) {
                    const Vertex x = stack.back();
                    stack.pop_back();
                    has = has || parts.in_cover[x];
                    for (Vertex y : t.neighbors(x))
                        if (!seen[y]) {
                            seen[y] = 1;
                            stack.push_back(y);
                        }
                }
                branches += has ? 1 : 0;
            }
            CHECK(branches >= 2);
        }
        for (std::size_t id = 0; id < parts.part_root.size(); ++id) {
            int size = 0;
            for (Vertex v = 0; v < t.n(); ++v) {
                if (parts.part_of[v] != static_cast<int>(id)) continue;
                ++size;
                for (Vertex y : t.neighbors(v))
                    if (parts.part_of[y] != static_cast<int>(id)) CHECK(v == parts.part_root[id]);
            }
            CHECK(size == parts.part_size[id]);
        }
    }
}

TEST_CASE("hanging-parts adversary invariants on random odd trees")
{
    auto run = [](const Graph& t, int p, std::uint64_t seed) {
        HangingPartsAdversary a(t, p);
        const TreeParts& parts = a.parts();
        const int k = floor_log2(t.n());
        bool cover_merged = false;
        random_play<HangingPartsAdversary>(
            t, a, seed, [&](const QueryState& before, const QueryState& after, bool endgame, const HangingPartsAdversary& adv) {
                if (adv.in_endgame()) {
                    const int sw = *adv.switch_total();
                    CHECK((sw == (1 << k) + 1 || sw == (1 << k) + 3));
                }
                if (endgame) return;
                const int drop = total_weight(before) - total_weight(after);
                CHECK(drop >= 0);
                CHECK(drop <= 4);
                for (const auto& comp : after.components()) {
                    int c = 0;
                    for (Vertex v : comp.vertices()) c += parts.in_cover[v];
                    if (c > 0) CHECK(comp.weight() >= 1);
                    if (c >= 2) cover_merged = true;
                    if (!cover_merged) CHECK(comp.weight() <= 4);
                }
            });
        CHECK(a.violations().empty());
    };
    int idx = 0;
    for (const Graph& t : odd_random_trees(100, 5, 31, 2024)) run(t, 32, static_cast<std::uint64_t>(idx++));
    for (const Graph& t : odd_random_trees(60, 21, 31, 77)) run(t, 3 + idx % 4, static_cast<std::uint64_t>(idx++));
    CHECK_THROWS_AS(HangingPartsAdversary(Graph::path(8)), InvalidInput);
    CHECK_THROWS_AS(HangingPartsAdversary(Graph::complete(5)), InvalidInput);
}

TEST_CASE("every adversary answers every legal query")
{
    std::vector<std::pair<std::string, Graph>> cases{
        {"same", Graph::complete(6)},     {"diff", Graph::path(7)},      {"coloring:RBRRBB", Graph::path(6)},
        {"eventrees", random_tree(10, 3)}, {"treelemma", random_tree(11, 4)}, {"lefogo1", Graph::star(9)},
        {"oddpath", Graph::path(17)},     {"lefogo2", random_tree(23, 5)},
    };
    for (const auto& [name, g] : cases) {
        CAPTURE(name);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            auto a = make_adversary(name, g);
            RandomQuerier q(seed);
            Transcript t;
            CHECK_NOTHROW(t = play(g, q, *a));
            CHECK(replay_valid(g, t));
            CHECK(a->violations().empty());
        }
    }
    CHECK_THROWS_AS(make_adversary("nonsense", Graph::path(3)), InvalidInput);
    CHECK_THROWS_AS(make_adversary("coloring:RB", Graph::path(3)), InvalidInput);
}

#include "majority/suites.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "majority/adversary.hpp"
#include "majority/bounds.hpp"
#include "majority/constructions.hpp"
#include "majority/errors.hpp"
#include "majority/generate.hpp"
#include "majority/graph_solver.hpp"
#include "majority/nondet.hpp"
#include "majority/weighted.hpp"

namespace majority {

namespace {

struct Check {
    bool pass = false;
    std::string detail;
};

struct Case {
    std::string name;
    int criterion = 0;
    std::string repro;
    std::function<Check()> run;
};

Check expect_eq(long long actual, long long expected)
{
    return {actual == expected, "expected " + std::to_string(expected) + ", got " + std::to_string(actual)};
}

// Collects failures of a multi-instance check; keeps the first few messages.
class Tally {
public:
    void require(bool ok, const std::string& what)
    {
        ++checked_;
        if (ok) return;
        ++failed_;
        if (failed_ <= 3) messages_.push_back(what);
    }
    Check result() const
    {
        std::string detail = std::to_string(checked_ - failed_) + "/" + std::to_string(checked_) + " checks hold";
        for (const auto& m : messages_) detail += "; " + m;
        return {failed_ == 0, detail};
    }

private:
    long checked_ = 0;
    long failed_ = 0;
    std::vector<std::string> messages_;
};

std::string cli(const std::string& args) { return "majority " + args; }

std::string suite_case(const std::string& suite, const std::string& name, std::uint64_t seed)
{
    return cli("run-suite " + suite + " --case '" + name + "' --seed " + std::to_string(seed));
}

int b_of(int n) { return binary_ones(static_cast<std::uint64_t>(n)); }

// Every multiset of positive weights with total at most max_total, plus zero to two zero balls.
std::vector<WeightVector> small_vectors(int max_total)
{
    std::vector<WeightVector> out;
    std::vector<int> parts;
    std::function<void(int, int)> rec = [&](int remaining, int cap) {
        if (!parts.empty())
            for (int zeros = 0; zeros <= 2; ++zeros) {
                std::vector<int> w = parts;
                w.insert(w.end(), static_cast<std::size_t>(zeros), 0);
                out.emplace_back(w);
            }
        for (int x = std::min(remaining, cap); x >= 1; --x) {
            parts.push_back(x);
            rec(remaining - x, x);
            parts.pop_back();
        }
    };
    rec(max_total, max_total);
    return out;
}

QueryState start(const Graph& g) { return QueryState(std::make_shared<const Graph>(g)); }

// Weight conditions on proper components: odd size weight 1, even size twice the boundary parity.
bool lemma_conditions_hold(const QueryState& s)
{
    for (const auto& comp : s.components()) {
        if (static_cast<int>(comp.size()) == s.n()) continue;
        if (comp.size() % 2 == 1) {
            if (comp.weight() != 1) return false;
            continue;
        }
        std::vector<char> in(static_cast<std::size_t>(s.n()), 0);
        for (Vertex v : comp.vertices()) in[v] = 1;
        if (comp.weight() != 2 * (s.graph().boundary_edges(in) % 2)) return false;
    }
    return true;
}

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

// ---------------------------------------------------------------- published values

std::vector<Case> published_values()
{
    std::vector<Case> cases;
    for (int k = 1; k <= 18; ++k) {
        cases.push_back({"all-ones k=" + std::to_string(k), 1, cli("solve-weighted " + WeightVector(std::vector<int>(k, 1)).to_string()),
                         [k] { return expect_eq(solve_weighted(WeightVector(std::vector<int>(static_cast<std::size_t>(k), 1))), k - b_of(k)); }});
    }
    for (int n = 1; n <= 10; ++n) {
        cases.push_back({"complete n=" + std::to_string(n), 1, cli("solve-graph complete:" + std::to_string(n)),
                         [n] { return expect_eq(solve_graph(Graph::complete(n)), n - b_of(n)); }});
    }
    GraphSolverOptions path_mode;
    path_mode.canonical = CanonicalMode::Path;
    for (int n = 3; n <= 13; n += 2) {
        cases.push_back({"odd path n=" + std::to_string(n), 2, cli("solve-graph path:" + std::to_string(n) + " --canonical path"),
                         [n, path_mode] { return expect_eq(solve_graph(Graph::path(n), path_mode), n - b_of(n)); }});
    }
    for (int n = 2; n <= 14; n += 2) {
        cases.push_back({"even path n=" + std::to_string(n), 2, cli("solve-graph path:" + std::to_string(n) + " --canonical path"),
                         [n, path_mode] { return expect_eq(solve_graph(Graph::path(n), path_mode), n - 1); }});
    }
    cases.push_back({"path n=15", 2, cli("solve-graph path:15 --canonical path"),
                     [path_mode] { return expect_eq(solve_graph(Graph::path(15), path_mode), 12); }});
    cases.push_back({"weights 1..7", 4, cli("bounds 1,2,3,4,5,6,7"), [] {
                         const WeightVector w{1, 2, 3, 4, 5, 6, 7};
                         const int m = solve_weighted(w);
                         const BigInt balanced = count_balanced(w);
                         return Check{m == 5 && balanced == 8,
                                      "m = " + std::to_string(m) + " (expected 5), balanced colorings = " +
                                          balanced.str() + " (expected 8)"};
                     }});
    auto forma_case = [](WeightVector w, int value, bool exact) {
        return [w, value, exact] {
            const int m = solve_weighted(w);
            int forma = 0;
            for (const auto& c : certify_lower_bound(w))
                if (c.source == CertSource::Suly1FormaI || c.source == CertSource::Suly1FormaII)
                    forma = std::max(forma, c.bound);
            const bool ok = (exact ? m == value : m >= value) && forma >= value && forma <= m;
            return Check{ok, "m = " + std::to_string(m) + ", best equal-group certificate = " + std::to_string(forma) +
                                 (exact ? ", expected both " : ", expected at least ") + std::to_string(value)};
        };
    };
    cases.push_back({"weights 3,3,7,8,9", 4, cli("certify 3,3,7,8,9"), forma_case({3, 3, 7, 8, 9}, 4, true)});
    cases.push_back({"weights 3,3,5,5,5", 4, cli("certify 3,3,5,5,5"), forma_case({3, 3, 5, 5, 5}, 3, false)});
    return cases;
}

// ---------------------------------------------------------------- properties

std::vector<Case> properties(std::uint64_t seed)
{
    const std::string suite = "properties";
    std::vector<Case> cases;
    cases.push_back({"certificate soundness on 500 random vectors", 5, suite_case(suite, "certificate soundness on 500 random vectors", seed), [seed] {
                         Tally t;
                         std::mt19937_64 rng(seed);
                         int exact_cases = 0;
                         for (int i = 0; i < 500; ++i) {
                             const int k = uniform_int(rng, 1, 8);
                             std::vector<int> w;
                             for (int j = 0; j < k; ++j) w.push_back(uniform_int(rng, 0, 10));
                             const WeightVector v(w);
                             const int m = solve_weighted(v);
                             const Certificate dt = dectree_bound(v);
                             t.require(dt.bound <= m, v.to_string() + ": decision-tree bound " + std::to_string(dt.bound) + " > m " + std::to_string(m));
                             for (const auto& c : certify_lower_bound(v))
                                 t.require(c.bound <= m, v.to_string() + ": " + to_string(c.source) + " bound " + std::to_string(c.bound) + " > m " + std::to_string(m));
                             for (const auto& c : certify_lower_bound(v))
                                 if (c.proves_hard) t.require(is_hard(v.without_zeros()), v.to_string() + ": hardness certificate on a non-hard vector");
                             // p counts balanced colorings.
                             const Valuation mu_p = mu(count_balanced(v));
                             if (!mu_p.infinite && mu_p.value <= 2) {
                                 ++exact_cases;
                                 t.require(m == static_cast<int>(v.size()) - mu_p.value,
                                           v.to_string() + ": m " + std::to_string(m) + " differs from k - mu(p)");
                             }
                         }
                         t.require(exact_cases > 0, "no vector with mu(p) <= 2 was drawn");
                         return t.result();
                     }});
    cases.push_back({"terminal iff at most one relevant ball, total <= 12", 6, suite_case(suite, "terminal iff at most one relevant ball, total <= 12", seed), [] {
                         Tally t;
                         for (const auto& w : small_vectors(12))
                             t.require(weighted_terminal(w).has_value() == (relevant_count(w) <= 1), w.to_string());
                         return t.result();
                     }});
    cases.push_back({"relevance threshold, survival and loss of at most two, total <= 12", 6,
                     suite_case(suite, "relevance threshold, survival and loss of at most two, total <= 12", seed), [] {
                         Tally t;
                         for (const auto& w : small_vectors(12)) {
                             const auto rel = relevant_set(w);
                             const int threshold = relevance_threshold(w);
                             const int count = relevant_count(w);
                             for (std::size_t i = 0; i < w.size(); ++i)
                                 t.require(rel[i] == (w[i] > threshold), w.to_string() + ": threshold shape");
                             if (weighted_terminal(w)) continue;
                             for (std::size_t a = 0; a < w.size(); ++a)
                                 for (std::size_t b = a + 1; b < w.size(); ++b) {
                                     const WeightVector same = w.merged(a, b, true);
                                     const WeightVector diff = w.merged(a, b, false);
                                     const int ts = relevance_threshold(same);
                                     const int td = relevance_threshold(diff);
                                     for (std::size_t x = 0; x < w.size(); ++x)
                                         if (x != a && x != b && rel[x])
                                             t.require(w[x] > ts || w[x] > td, w.to_string() + ": relevant ball lost under both answers");
                                     if (rel[a] || rel[b]) t.require(w[a] + w[b] > ts, w.to_string() + ": SAME merge not relevant");
                                     t.require(std::max(relevant_count(same), relevant_count(diff)) >= count - 2,
                                               w.to_string() + ": every answer loses three relevant balls");
                                 }
                         }
                         return t.result();
                     }});
    cases.push_back({"edge-addition monotonicity on 200 random graph pairs", 10,
                     suite_case(suite, "edge-addition monotonicity on 200 random graph pairs", seed), [seed] {
                         Tally t;
                         std::mt19937_64 rng(seed + 1);
                         int pairs = 0;
                         while (pairs < 200) {
                             const int n = uniform_int(rng, 2, 8);
                             const Graph g = random_connected_graph(n, 0.25, rng());
                             std::vector<Edge> missing;
                             for (Vertex u = 0; u < n; ++u)
                                 for (Vertex v = u + 1; v < n; ++v)
                                     if (!g.has_edge(u, v)) missing.emplace_back(u, v);
                             if (missing.empty()) continue;
                             std::vector<Edge> more = g.edges();
                             more.push_back(missing[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(missing.size()) - 1))]);
                             const Graph h(n, more);
                             const int mg = solve_graph(g);
                             const int mh = solve_graph(h);
                             t.require(mh <= mg, g.to_text() + " plus an edge: " + std::to_string(mh) + " > " + std::to_string(mg));
                             t.require(mg <= n - 1 && mh >= n - b_of(n), "window violated");
                             ++pairs;
                         }
                         return t.result();
                     }});
    cases.push_back({"scale and zero-removal invariance, total <= 12", 10,
                     suite_case(suite, "scale and zero-removal invariance, total <= 12", seed), [] {
                         Tally t;
                         for (const auto& w : small_vectors(12)) {
                             const int m = solve_weighted(w);
                             t.require(solve_weighted(w.scaled(2)) == m, w.to_string() + " x2");
                             t.require(solve_weighted(w.scaled(3)) == m, w.to_string() + " x3");
                             t.require(solve_weighted(w.without_zeros()) == m, w.to_string() + " without zeros");
                         }
                         return t.result();
                     }});
    return cases;
}

// ---------------------------------------------------------------- adversaries

std::vector<Case> adversaries(std::uint64_t seed)
{
    const std::string suite = "adversaries";
    std::vector<Case> cases;
    for (int n : {4, 6, 8, 10}) {
        const std::string name = "even free trees n=" + std::to_string(n) + " are hard";
        cases.push_back({name, 3, suite_case(suite, name, seed), [n] {
                             Tally t;
                             const auto trees = free_trees(n);
                             const std::size_t expected = n == 4 ? 2 : n == 6 ? 6 : n == 8 ? 23 : 106;
                             t.require(trees.size() == expected, std::to_string(trees.size()) + " trees enumerated");
                             for (const Graph& g : trees) {
                                 const int m = solve_graph(g);
                                 t.require(m == n - 1, g.to_text() + " has value " + std::to_string(m));
                             }
                             return t.result();
                         }});
    }
    cases.push_back({"treelemma conditions under every query order, trees n <= 8", 7,
                     suite_case(suite, "treelemma conditions under every query order, trees n <= 8", seed), [] {
                         Tally t;
                         for (int n = 2; n <= 8; ++n)
                             for (const Graph& g : free_trees(n)) {
                                 std::set<std::string> seen;
                                 std::function<void(const QueryState&, const Adversary&)> walk = [&](const QueryState& s, const Adversary& a) {
                                     std::string key;
                                     for (Vertex l : s.labels()) key.push_back(static_cast<char>(l));
                                     for (auto x : s.sides()) key.push_back(static_cast<char>(x));
                                     if (!seen.insert(key).second) return;
                                     t.require(lemma_conditions_hold(s) && a.violations().empty(), g.to_text());
                                     if (terminal_outcome(s)) return;
                                     for (const Edge& e : s.legal_queries()) {
                                         auto next = a.clone();
                                         const Answer ans = next->answer(s, e);
                                         walk(apply_query(s, e, ans), *next);
                                     }
                                 };
                                 walk(start(g), TreeLemmaAdversary(g));
                             }
                         return t.result();
                     }});
    cases.push_back({"treelemma conditions under random orders, trees n <= 14", 7,
                     suite_case(suite, "treelemma conditions under random orders, trees n <= 14", seed), [seed] {
                         Tally t;
                         for (std::uint64_t i = 0; i < 200; ++i) {
                             const Graph g = random_tree(9 + static_cast<int>(i % 6), seed * 1000 + i);
                             TreeLemmaAdversary a(g);
                             RandomQuerier q(seed + i);
                             QueryState s = start(g);
                             while (!terminal_outcome(s)) {
                                 const Edge e = q.next_query(s);
                                 s = apply_query(s, e, a.answer(s, e));
                                 t.require(lemma_conditions_hold(s), g.to_text());
                             }
                             t.require(a.violations().empty(), g.to_text());
                         }
                         return t.result();
                     }});
    for (int n : {2, 4, 6, 8, 10}) {
        const std::string name = "treelemma forces n-1 on even free trees n=" + std::to_string(n);
        cases.push_back({name, 7, suite_case(suite, name, seed), [n] {
                             Tally t;
                             for (const Graph& g : free_trees(n)) {
                                 const int f = forced_queries(g, TreeLemmaAdversary(g));
                                 t.require(f == n - 1, g.to_text() + " forces only " + std::to_string(f));
                             }
                             return t.result();
                         }});
    }
    cases.push_back({"eventrees coloring cuts, even free trees n <= 12", 7,
                     suite_case(suite, "eventrees coloring cuts, even free trees n <= 12", seed), [] {
                         Tally t;
                         for (int n = 2; n <= 12; n += 2)
                             for (const Graph& g : free_trees(n)) {
                                 const Coloring c = eventrees_coloring(g);
                                 bool ok = c.is_balanced();
                                 for (const Edge& e : g.edges()) ok = ok && !cut_is_balanced(g, c, e);
                                 t.require(ok, g.to_text());
                             }
                         return t.result();
                     }});
    cases.push_back({"lefogo2 playback on 100 random odd trees n <= 31", 7,
                     suite_case(suite, "lefogo2 playback on 100 random odd trees n <= 31", seed), [seed] {
                         Tally t;
                         std::mt19937_64 rng(seed + 7);
                         for (int i = 0; i < 100; ++i) {
                             const int n = uniform_int(rng, 2, 15) * 2 + 1;
                             const Graph g = random_tree(n, rng());
                             for (int p : {32, 4}) {
                                 HangingPartsAdversary a(g, p);
                                 RandomQuerier q(rng());
                                 const Transcript tr = play(g, q, a);
                                 std::string msg = g.to_text();
                                 for (const auto& v : a.violations()) msg += " | " + v;
                                 t.require(a.violations().empty() && replay_valid(g, tr), "p=" + std::to_string(p) + " " + msg);
                             }
                         }
                         return t.result();
                     }});
    cases.push_back({"oddpath forced values P9 P11 P13", 0, cli("adversary oddpath path:13 --vs optimal"), [] {
                         std::string detail;
                         bool ok = true;
                         for (auto [n, expected] : {std::pair{9, 7}, std::pair{11, 8}, std::pair{13, 9}}) {
                             const int f = forced_queries(Graph::path(n), OddPathAdversary(Graph::path(n), 9));
                             ok = ok && f == expected;
                             detail += "P" + std::to_string(n) + ": " + std::to_string(f) + " (optimum " +
                                       std::to_string(solve_graph(Graph::path(n))) + ") ";
                         }
                         return Check{ok, detail};
                     }});
    cases.push_back({"lefogo1 forces the hardness target on stars n <= 12", 0, cli("adversary lefogo1 star:12 --vs optimal"), [] {
                         Tally t;
                         for (int n = 4; n <= 12; ++n) {
                             const int f = forced_queries(Graph::star(n), CoverAdversary(Graph::star(n), {0}));
                             t.require(f == (n % 2 == 0 ? n - 1 : n - 2), "star " + std::to_string(n) + " forces " + std::to_string(f));
                         }
                         return t.result();
                     }});
    return cases;
}

// ---------------------------------------------------------------- constructions

std::vector<Case> constructions()
{
    std::vector<Case> cases;
    for (int n = 4; n <= 16; ++n) {
        cases.push_back({"minedge n=" + std::to_string(n) + " edges and strategy", 8,
                         cli("construct minedge " + std::to_string(n) + " --emit verify"), [n] {
                             MinEdgeQuerier q(n);
                             const Graph& g = q.construction().graph;
                             const int edges = static_cast<int>(g.edge_count());
                             const int limit = n * (1 + b_of(n));
                             const VerifyReport r = verify_querier(g, q, n - b_of(n));
                             return Check{edges <= limit && r.pass,
                                          std::to_string(edges) + " edges (limit " + std::to_string(limit) + "), worst case " +
                                              std::to_string(r.max_queries) + " of budget " + std::to_string(r.budget) + " over " +
                                              std::to_string(r.leaves_checked) + " leaves" + (r.failure.empty() ? "" : "; " + r.failure)};
                         }});
    }
    for (int n = 2; n <= 12; ++n) {
        cases.push_back({"minedge n=" + std::to_string(n) + " exact value", 8, cli("solve-graph minedge:" + std::to_string(n)),
                         [n] { return expect_eq(solve_graph(build_minedge_graph(n).graph), n - b_of(n)); }});
    }
    return cases;
}

// ---------------------------------------------------------------- nondet

std::vector<Case> nondet(std::uint64_t seed)
{
    const std::string suite = "nondet";
    std::vector<Case> cases;
    for (int n = 2; n <= 12; n += 2) {
        cases.push_back({"m_nd even path n=" + std::to_string(n), 9, cli("nondet mnd path:" + std::to_string(n)),
                         [n] { return expect_eq(m_nd(Graph::path(n)), n - 1); }});
    }
    cases.push_back({"path_cert equals cert on every coloring, n <= 11", 9,
                     suite_case(suite, "path_cert equals cert on every coloring, n <= 11", seed), [] {
                         Tally t;
                         for (int n = 1; n <= 11; ++n)
                             for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
                                 const Coloring c = Coloring::from_mask(n, mask);
                                 const auto fast = path_cert(c);
                                 t.require(fast.size == cert(Graph::path(n), c).size && certifies(Graph::path(n), c, fast.queries),
                                           c.to_string());
                             }
                         return t.result();
                     }});
    cases.push_back({"hard batch coloring k=4 needs at least 8", 9, cli("nondet cert path:17 " + nondet_hard_coloring(4).to_string()), [] {
                         const int size = cert(Graph::path(17), nondet_hard_coloring(4)).size;
                         return Check{size >= 8, "cert size " + std::to_string(size) + ", bound 8"};
                     }});
    cases.push_back({"query sets certify 1000 random odd-path colorings, n <= 201", 9,
                     suite_case(suite, "query sets certify 1000 random odd-path colorings, n <= 201", seed), [seed] {
                         Tally t;
                         std::mt19937_64 rng(seed + 3);
                         for (int i = 0; i < 1000; ++i) {
                             const int n = 2 * uniform_int(rng, 0, 100) + 1;
                             std::vector<Color> colors;
                             for (int j = 0; j < n; ++j) colors.push_back(rng() & 1U ? Color::Red : Color::Blue);
                             const Coloring c(colors);
                             const auto q = nondet_query_set(c);
                             t.require(certifies(Graph::path(n), c, q) &&
                                           static_cast<double>(q.size()) <= n - std::floor(std::sqrt(n)) / 5.0,
                                       c.to_string());
                         }
                         return t.result();
                     }});
    cases.push_back({"odd path m_nd table n <= 13", 0, cli("nondet path-table --odd-n 3..13"), [] {
                         std::string detail;
                         bool ok = true;
                         for (int n = 3; n <= 13; n += 2) {
                             const int v = m_nd(Graph::path(n));
                             ok = ok && v <= n - 2;
                             detail += "n=" + std::to_string(n) + ":" + std::to_string(v) + " ";
                         }
                         return Check{ok, detail};
                     }});
    return cases;
}

std::vector<Case> cases_for(const std::string& name, std::uint64_t seed)
{
    if (name == "paper-values") return published_values();
    if (name == "properties") return properties(seed);
    if (name == "adversaries") return adversaries(seed);
    if (name == "constructions") return constructions();
    if (name == "nondet") return nondet(seed);
    throw InvalidInput("unknown suite: " + name);
}

}  // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"paper-values", "properties", "adversaries", "constructions", "nondet"};
    return names;
}

int default_thread_count()
{
    if (const char* env = std::getenv("MAJORITY_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

bool SuiteReport::pass() const
{
    return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.pass; });
}

nlohmann::json SuiteReport::to_json() const
{
    nlohmann::json j;
    j["suite"] = suite;
    j["seed"] = seed;
    j["pass"] = pass();
    j["cases"] = nlohmann::json::array();
    for (const auto& c : cases)
        j["cases"].push_back({{"name", c.name}, {"criterion", c.criterion}, {"pass", c.pass}, {"detail", c.detail}, {"repro", c.repro}});
    return j;
}

std::string SuiteReport::table() const
{
    std::size_t width = 4;
    for (const auto& c : cases) width = std::max(width, c.name.size());
    std::ostringstream out;
    out << "suite " << suite << " (seed " << seed << ")\n";
    out << std::left << std::setw(6) << "status" << ' ' << std::setw(4) << "crit" << ' ' << std::setw(static_cast<int>(width))
        << "case" << ' ' << std::setw(9) << "seconds" << " detail\n";
    for (const auto& c : cases) {
        out << std::left << std::setw(6) << (c.pass ? "PASS" : "FAIL") << ' ' << std::setw(4)
            << (c.criterion ? std::to_string(c.criterion) : "-") << ' ' << std::setw(static_cast<int>(width)) << c.name << ' '
            << std::setw(9) << std::fixed << std::setprecision(2) << c.seconds << ' ' << c.detail << '\n';
        if (!c.pass) out << "       reproduce: " << c.repro << '\n';
    }
    return out.str();
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& options)
{
    std::vector<Case> cases = cases_for(name, options.seed);
    if (!options.only_case.empty()) {
        std::erase_if(cases, [&](const Case& c) { return c.name != options.only_case; });
        if (cases.empty()) throw InvalidInput("suite " + name + " has no case named '" + options.only_case + "'");
    }
    SuiteReport report;
    report.suite = name;
    report.seed = options.seed;
    report.cases.resize(cases.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cases.size(); i = next++) {
            CaseResult& r = report.cases[i];
            r.suite = name;
            r.name = cases[i].name;
            r.criterion = cases[i].criterion;
            r.repro = cases[i].repro;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                const Check c = cases[i].run();
                r.pass = c.pass;
                r.detail = c.detail;
            } catch (const std::exception& e) {
                r.pass = false;
                r.detail = std::string("exception: ") + e.what();
            }
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
    };
    const int threads = std::min<int>(options.threads > 0 ? options.threads : default_thread_count(), static_cast<int>(cases.size()));
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return report;
}

}  // namespace majority

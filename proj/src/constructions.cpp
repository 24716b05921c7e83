#include "majority/constructions.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>

#include "majority/bounds.hpp"
#include "majority/errors.hpp"

namespace majority {

Graph build_F(int k)
{
    if (k < 1) throw InvalidInput("build_F needs k >= 1");
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < k; ++i) edges.emplace_back(i, i + 1);
    for (int i = 0; i < k; ++i) edges.emplace_back(i, k + i);
    return Graph(2 * k, std::move(edges));
}

LabeledConstruction build_minedge_graph(int n)
{
    if (n < 2) throw InvalidInput("minedge construction needs n >= 2");
    const int k = n / 2;
    const int b = binary_ones(static_cast<std::uint64_t>(n));
    LabeledConstruction c;
    std::vector<Edge> edges = build_F(k).edges();
    for (int i = 0; i < k; ++i) {
        c.path.push_back(i);
        c.leaves.push_back(k + i);
    }
    if (n % 2 == 1) c.leftover = 2 * k;
    for (int i = std::max(0, k - b); i < k; ++i) c.hubs.push_back(i);
    for (Vertex h : c.hubs)
        for (Vertex x = 0; x < n; ++x)
            if (x != h) edges.emplace_back(h, x);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    c.graph = Graph(n, std::move(edges));
    return c;
}

// ---------------------------------------------------------------------------

DoublingFragment::DoublingFragment(std::vector<std::pair<Vertex, Vertex>> pairs) : pairs_(std::move(pairs))
{
    if (pairs_.empty() || (pairs_.size() & (pairs_.size() - 1)) != 0)
        throw InvalidInput("doubling fragment needs a power-of-two number of pairs");
    build(0, pairs_.size());
}

void DoublingFragment::build(std::size_t lo, std::size_t hi)
{
    if (hi - lo == 1) {
        order_.emplace_back(pairs_[lo].first, pairs_[lo].second);
        return;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    build(lo, mid);
    build(mid, hi);
    order_.emplace_back(pairs_[mid - 1].first, pairs_[mid].first);
}

std::optional<Edge> DoublingFragment::next(const QueryState& state) const
{
    for (const Edge& e : order_)
        if (e.u >= state.n() || e.v >= state.n() || !state.graph().has_edge(e.u, e.v))
            throw InvalidInput("doubling fragment invoked on a graph without the F_l copy");
    for (const Edge& e : order_) {
        if (!state.same_component(e.u, e.v)) return e;
        if (state.component_weight(state.component_of(e.u)) == 0) return std::nullopt;
    }
    return std::nullopt;
}

bool DoublingFragment::ended_balanced(const QueryState& state) const
{
    for (const Edge& e : order_) {
        if (!state.same_component(e.u, e.v)) return false;
        if (state.component_weight(state.component_of(e.u)) == 0) return true;
    }
    return false;
}

namespace {

std::vector<std::pair<Vertex, Vertex>> identity_pairs(int l)
{
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (int i = 0; i < l; ++i) pairs.emplace_back(i, l + i);
    return pairs;
}

}  // namespace

DoublingQuerier::DoublingQuerier(int l) : fragment_(identity_pairs(l)) {}

Edge DoublingQuerier::next_query(const QueryState& state)
{
    if (auto e = fragment_.next(state)) return *e;
    // Finished fragment on a non-terminal state: fall back to any legal query.
    auto legal = state.legal_queries();
    if (legal.empty()) throw InvariantViolation("doubling querier has no legal query");
    return legal.front();
}

// ---------------------------------------------------------------------------

struct MinEdgeQuerier::Shared {
    LabeledConstruction c;
    int budget_components = 1;        // b(n)
    std::vector<int> position;        // place of each vertex in the doubling order
    std::unordered_map<std::string, bool> completable;
};

namespace {

std::string state_key(const QueryState& s)
{
    std::string key;
    key.reserve(static_cast<std::size_t>(2 * s.n()));
    for (Vertex v = 0; v < s.n(); ++v) {
        const Vertex l = s.component_of(v);
        key.push_back(static_cast<char>(l));
        key.push_back(static_cast<char>(l == v ? s.component_weight(l) : 0));
    }
    return key;
}

bool is_mono(const QueryState& s, Vertex label)
{
    return s.component_weight(label) == s.component_size(label);
}

int balanced_count(const QueryState& s)
{
    int z = 0;
    for (Vertex v = 0; v < s.n(); ++v)
        if (s.component_of(v) == v && s.component_weight(v) == 0) ++z;
    return z;
}

// Spanning edges of the subgraph induced on vertices outside balanced
// components, or nothing if that subgraph is disconnected.
std::optional<std::vector<Edge>> rest_spanning_tree(const QueryState& s)
{
    const Graph& g = s.graph();
    std::vector<char> in_rest(static_cast<std::size_t>(s.n()), 0);
    Vertex start = -1;
    int count = 0;
    for (Vertex v = 0; v < s.n(); ++v) {
        if (s.component_weight(s.component_of(v)) != 0) {
            in_rest[v] = 1;
            ++count;
            if (start < 0) start = v;
        }
    }
    if (start < 0) return std::nullopt;
    std::vector<char> seen(static_cast<std::size_t>(s.n()), 0);
    std::vector<Edge> tree;
    std::queue<Vertex> q;
    q.push(start);
    seen[start] = 1;
    int reached = 1;
    while (!q.empty()) {
        const Vertex x = q.front();
        q.pop();
        for (Vertex y : g.neighbors(x)) {
            if (!in_rest[y] || seen[y]) continue;
            seen[y] = 1;
            ++reached;
            tree.emplace_back(x, y);
            q.push(y);
        }
    }
    if (reached != count) return std::nullopt;
    return tree;
}

}  // namespace

MinEdgeQuerier::MinEdgeQuerier(int n) : shared_(std::make_shared<Shared>())
{
    shared_->c = build_minedge_graph(n);
    construction_ = std::shared_ptr<const LabeledConstruction>(shared_, &shared_->c);
    shared_->budget_components = binary_ones(static_cast<std::uint64_t>(n));
    const auto& c = shared_->c;
    const int k = static_cast<int>(c.path.size());
    // Hub pairs from the path end inward, then the remaining pairs along the path.
    std::vector<int> order;
    for (int i = k - 1; i >= k - static_cast<int>(c.hubs.size()); --i) order.push_back(i);
    for (int i = 0; i < k - static_cast<int>(c.hubs.size()); ++i) order.push_back(i);
    shared_->position.assign(static_cast<std::size_t>(n), 0);
    int p = 0;
    for (int i : order) {
        shared_->position[c.path[i]] = p++;
        shared_->position[c.leaves[i]] = p++;
    }
    if (c.leftover) shared_->position[*c.leftover] = p;
}

namespace {

struct Move {
    Edge edge;
    int size;
    bool fresh;  // both sides untouched singletons
    int first;
    int last;
};

// Equal-size monochromatic merges, in doubling-counter preference order.
std::vector<Move> equal_merges(const QueryState& s, const std::vector<int>& position)
{
    const int n = s.n();
    std::vector<int> first(static_cast<std::size_t>(n), n), last(static_cast<std::size_t>(n), -1);
    for (Vertex v = 0; v < n; ++v) {
        const Vertex l = s.component_of(v);
        first[l] = std::min(first[l], position[v]);
        last[l] = std::max(last[l], position[v]);
    }
    std::map<std::pair<Vertex, Vertex>, Edge> best;
    for (const Edge& e : s.graph().edges()) {
        const Vertex a = s.component_of(e.u), b = s.component_of(e.v);
        if (a == b || !is_mono(s, a) || !is_mono(s, b)) continue;
        if (s.component_size(a) != s.component_size(b)) continue;
        const auto key = std::minmax(a, b);
        auto it = best.find(key);
        if (it == best.end() || e < it->second) best[key] = e;
    }
    std::vector<Move> moves;
    for (const auto& [key, e] : best) {
        const int size = s.component_size(key.first);
        moves.push_back({e, size, size == 1, std::min(first[key.first], first[key.second]),
                         std::max(last[key.first], last[key.second])});
    }
    std::sort(moves.begin(), moves.end(), [](const Move& x, const Move& y) {
        if (x.fresh != y.fresh) return !x.fresh;
        if (!x.fresh) {
            if (x.size != y.size) return x.size < y.size;
            if (x.last != y.last) return x.last > y.last;
        } else {
            if (x.first != y.first) return x.first < y.first;
            if (x.last != y.last) return x.last < y.last;
        }
        return x.edge < y.edge;
    });
    return moves;
}

bool rescue_available(const QueryState& s, int b)
{
    return balanced_count(s) >= b - 1 && rest_spanning_tree(s).has_value();
}

}  // namespace

std::unique_ptr<Querier> minedge_querier(int n) { return std::make_unique<MinEdgeQuerier>(n); }

Edge MinEdgeQuerier::next_query(const QueryState& state)
{
    auto& sh = *shared_;
    if (!(state.graph() == sh.c.graph)) throw InvalidInput("minedge querier only plays on its own construction");
    if (rescue_.empty()) {
        // completable: terminal, a rescue is possible, or some equal merge keeps both answers completable.
        std::function<bool(const QueryState&)> completable = [&](const QueryState& s) -> bool {
            if (terminal_outcome(s)) return true;
            if (rescue_available(s, sh.budget_components)) return true;
            const std::string key = state_key(s);
            if (auto it = sh.completable.find(key); it != sh.completable.end()) return it->second;
            bool ok = false;
            for (const Move& m : equal_merges(s, sh.position)) {
                if (completable(apply_query(s, m.edge, Answer::Same)) &&
                    completable(apply_query(s, m.edge, Answer::Diff))) {
                    ok = true;
                    break;
                }
            }
            sh.completable[key] = ok;
            return ok;
        };
        for (const Move& m : equal_merges(state, sh.position)) {
            if (completable(apply_query(state, m.edge, Answer::Same)) &&
                completable(apply_query(state, m.edge, Answer::Diff)))
                return m.edge;
        }
        auto tree = rest_spanning_tree(state);
        if (!tree || balanced_count(state) < sh.budget_components - 1)
            throw InvariantViolation("minedge querier reached a state with no completable merge");
        rescue_ = std::move(*tree);
    }
    for (const Edge& e : rescue_)
        if (!state.same_component(e.u, e.v)) return e;
    throw InvariantViolation("minedge rescue tree exhausted before a terminal state");
}

// ---------------------------------------------------------------------------

VerifyReport verify_querier(const Graph& g, const Querier& q, int budget)
{
    VerifyReport report;
    report.budget = budget;
    report.pass = true;
    auto graph = std::make_shared<const Graph>(g);
    Transcript path;

    std::function<void(const QueryState&, Querier&, int)> walk = [&](const QueryState& s, Querier& querier,
                                                                       int depth) {
        if (!report.pass) return;
        if (auto outcome = terminal_outcome(s)) {
            ++report.leaves_checked;
            report.max_queries = std::max(report.max_queries, depth);
            bool valid = true;
            for_each_consistent_coloring(s, [&](const Coloring& c) { valid = valid && outcome_valid_for(*outcome, c); });
            if (!valid || depth > budget) {
                report.pass = false;
                path.outcome = *outcome;
                report.failure = path.to_text();
            }
            return;
        }
        if (depth >= budget) {
            report.pass = false;
            report.max_queries = std::max(report.max_queries, depth + 1);
            report.failure = path.to_text() + "BUDGET EXHAUSTED\n";
            return;
        }
        Edge e;
        try {
            e = querier.next_query(s);
        } catch (const std::exception& ex) {
            report.pass = false;
            report.failure = path.to_text() + "ERROR " + ex.what() + "\n";
            return;
        }
        for (Answer a : {Answer::Same, Answer::Diff}) {
            QueryState next = s;
            try {
                next = apply_query(s, e, a);
            } catch (const IllegalQuery& ex) {
                report.pass = false;
                report.failure = path.to_text() + "ILLEGAL " + ex.what() + "\n";
                return;
            }
            auto branch = querier.clone();
            path.steps.emplace_back(e, a);
            walk(next, *branch, depth + 1);
            path.steps.pop_back();
            if (!report.pass) return;
        }
    };

    auto root = q.clone();
    walk(QueryState(graph), *root, 0);
    return report;
}

}  // namespace majority

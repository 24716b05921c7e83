#include "majority/graph_solver.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <string>

#include "majority/errors.hpp"
#include "majority/weighted.hpp"

namespace majority {

std::size_t CanonicalKeyHash::operator()(const CanonicalKey& k) const noexcept
{
    std::uint64_t h = k.partition * 0x9E3779B97F4A7C15ULL;
    h ^= (k.weights + 0x632BE59BD9B4E019ULL) + (h << 6) + (h >> 2);
    h ^= h >> 31;
    return static_cast<std::size_t>(h * 0xBF58476D1CE4E5B9ULL);
}

namespace {

bool is_terminal(const GraphSolver::Position& p)
{
    int total = 0;
    int top = 0;
    for (int c = 0; c < p.count; ++c) {
        total += p.weight[c];
        top = std::max<int>(top, p.weight[c]);
    }
    return total == 0 || 2 * top > total;
}

// Renumbers components by first appearance along the vertex order `order`.
CanonicalKey encode(const GraphSolver::Position& p, const int* order)
{
    std::int8_t rename[kGraphSolverMaxVertices];
    std::fill(std::begin(rename), std::end(rename), -1);
    int next = 0;
    CanonicalKey key;
    for (int i = 0; i < p.n; ++i) {
        const int c = p.comp[order[i]];
        if (rename[c] < 0) {
            rename[c] = static_cast<std::int8_t>(next);
            key.weights |= std::uint64_t{p.weight[c]} << (4 * next);
            ++next;
        }
        key.partition |= std::uint64_t(rename[c]) << (4 * i);
    }
    return key;
}

}  // namespace

CanonicalKey canonical_key(const QueryState& state)
{
    if (state.n() > kGraphSolverMaxVertices) {
        throw InvalidInput("canonical keys support at most 16 vertices");
    }
    std::map<Vertex, int> index;
    CanonicalKey key;
    for (Vertex v = 0; v < state.n(); ++v) {
        const Vertex label = state.component_of(v);
        auto [it, fresh] = index.emplace(label, static_cast<int>(index.size()));
        if (fresh) {
            key.weights |= std::uint64_t(std::min(15, state.component_weight(label))) << (4 * it->second);
        }
        key.partition |= std::uint64_t(it->second) << (4 * v);
    }
    return key;
}

GraphSolver::GraphSolver(const Graph& g, GraphSolverOptions options) : graph_(g), options_(options)
{
    if (g.n() > kGraphSolverMaxVertices) {
        throw InvalidInput("graph solver supports at most 16 vertices, got " + std::to_string(g.n()));
    }
    if (!g.is_solvable()) {
        throw Unsolvable("graph has no solution: " + std::to_string(g.connected_components()) + " components on " +
                         std::to_string(g.n()) + " vertices");
    }
    if (options_.canonical == CanonicalMode::Path && !g.is_labeled_path()) {
        throw InvalidInput("path canonical mode needs the labeled path graph");
    }
    for (const Edge& e : g.edges()) {
        adjacency_[e.u] |= static_cast<std::uint16_t>(1U << e.v);
        adjacency_[e.v] |= static_cast<std::uint16_t>(1U << e.u);
    }
    graph_components_ = g.connected_components();
}

GraphSolver::Position GraphSolver::position_of(const QueryState& state) const
{
    Position p;
    p.n = state.n();
    std::int8_t index[kGraphSolverMaxVertices];
    std::fill(std::begin(index), std::end(index), -1);
    for (Vertex v = 0; v < p.n; ++v) {
        const Vertex label = state.component_of(v);
        if (index[label] < 0) {
            index[label] = static_cast<std::int8_t>(p.count);
            p.weight[p.count] = static_cast<std::uint8_t>(state.component_weight(label));
            ++p.count;
        }
        const int c = index[label];
        p.comp[v] = static_cast<std::uint8_t>(c);
        p.mask[c] |= static_cast<std::uint16_t>(1U << v);
    }
    return p;
}

GraphSolver::Position GraphSolver::merge(const Position& p, int a, int b, bool same) const
{
    const int wa = p.weight[a];
    const int wb = p.weight[b];
    const int merged = same ? wa + wb : std::abs(wa - wb);
    Position q;
    q.n = p.n;
    std::int8_t rename[kGraphSolverMaxVertices];
    std::fill(std::begin(rename), std::end(rename), -1);
    for (int v = 0; v < p.n; ++v) {
        int c = p.comp[v];
        if (c == b) {
            c = a;
        }
        if (rename[c] < 0) {
            rename[c] = static_cast<std::int8_t>(q.count);
            q.weight[q.count] = static_cast<std::uint8_t>(c == a ? merged : p.weight[c]);
            ++q.count;
        }
        const int nc = rename[c];
        q.comp[v] = static_cast<std::uint8_t>(nc);
        q.mask[nc] |= static_cast<std::uint16_t>(1U << v);
    }
    return q;
}

CanonicalKey GraphSolver::key_of(const Position& p) const
{
    int order[kGraphSolverMaxVertices];
    for (int i = 0; i < p.n; ++i) {
        order[i] = i;
    }
    CanonicalKey key = encode(p, order);
    if (options_.canonical == CanonicalMode::Path) {
        for (int i = 0; i < p.n; ++i) {
            order[i] = p.n - 1 - i;
        }
        const CanonicalKey mirror = encode(p, order);
        if (std::pair(mirror.partition, mirror.weights) < std::pair(key.partition, key.weights)) {
            key = mirror;
        }
    }
    return key;
}

bool GraphSolver::adjacent(const Position& p, int a, int b) const
{
    std::uint16_t reach = 0;
    for (std::uint32_t m = p.mask[a]; m != 0; m &= m - 1) {
        reach |= adjacency_[std::countr_zero(m)];
    }
    return (reach & p.mask[b]) != 0;
}

int GraphSolver::lower_bound(const Position& p) const
{
    std::vector<int> w(p.weight, p.weight + p.count);
    return solve_weighted(WeightVector(std::move(w)));
}

int GraphSolver::upper_bound(const Position& p) const
{
    // Query a spanning forest of the component graph; with an odd total the
    // last spanning edge is unnecessary because two parts of different parity
    // cannot tie.
    const bool odd = p.n % 2 == 1;
    return p.count - graph_components_ - (odd && graph_components_ == 1 ? 1 : 0);
}

int GraphSolver::search(const Position& p)
{
    if (is_terminal(p)) {
        return 0;
    }
    const CanonicalKey key = key_of(p);
    if (auto it = table_.find(key); it != table_.end()) {
        return it->second;
    }
    ++nodes_expanded_;
    const int lb = lower_bound(p);
    int best = upper_bound(p);
    if (lb < best) {
        struct Move {
            Position same;
            Position diff;
            int lb_same;
            int lb_diff;
        };
        std::vector<Move> moves;
        for (int a = 0; a < p.count; ++a) {
            for (int b = a + 1; b < p.count; ++b) {
                if (!adjacent(p, a, b)) {
                    continue;
                }
                Move m{merge(p, a, b, true), merge(p, a, b, false), 0, 0};
                m.lb_same = is_terminal(m.same) ? 0 : lower_bound(m.same);
                m.lb_diff = is_terminal(m.diff) ? 0 : lower_bound(m.diff);
                moves.push_back(m);
            }
        }
        std::stable_sort(moves.begin(), moves.end(), [](const Move& x, const Move& y) {
            return std::max(x.lb_same, x.lb_diff) < std::max(y.lb_same, y.lb_diff);
        });
        for (const Move& m : moves) {
            if (1 + std::max(m.lb_same, m.lb_diff) >= best) {
                continue;
            }
            // The child with the larger bound is more likely to refute the move.
            const bool same_first = m.lb_same >= m.lb_diff;
            const int first = search(same_first ? m.same : m.diff);
            if (1 + first >= best) {
                continue;
            }
            const int second = search(same_first ? m.diff : m.same);
            best = std::min(best, 1 + std::max(first, second));
            if (best <= lb) {
                break;
            }
        }
    }
    if (table_.size() < options_.table_cap) {
        table_.emplace(key, static_cast<std::uint8_t>(best));
    }
    return best;
}

int GraphSolver::solve()
{
    return value(QueryState(std::make_shared<const Graph>(graph_)));
}

int GraphSolver::value(const QueryState& state)
{
    if (!(state.graph() == graph_)) {
        throw InvalidInput("state belongs to a different graph");
    }
    return search(position_of(state));
}

std::optional<Edge> GraphSolver::best_query(const QueryState& state)
{
    const Position p = position_of(state);
    if (is_terminal(p)) {
        return std::nullopt;
    }
    const int v = value(state);
    for (const Edge& e : state.legal_queries()) {
        const int a = p.comp[e.u];
        const int b = p.comp[e.v];
        const int worst =
            std::max(search(merge(p, std::min(a, b), std::max(a, b), true)), search(merge(p, std::min(a, b), std::max(a, b), false)));
        if (1 + worst == v) {
            return e;
        }
    }
    throw InvariantViolation("no legal query attains the solved value");
}

int solve_graph(const Graph& g, GraphSolverOptions options)
{
    GraphSolver solver(g, options);
    return solver.solve();
}

Edge OptimalQuerier::next_query(const QueryState& state)
{
    auto e = solver_->best_query(state);
    if (!e) {
        throw IllegalQuery("optimal querier asked at a terminal state");
    }
    return *e;
}

std::unique_ptr<Querier> optimal_querier(const Graph& g, GraphSolverOptions options)
{
    return std::make_unique<OptimalQuerier>(std::make_shared<GraphSolver>(g, options));
}

namespace {

class ForcedSearch {
public:
    int run(const QueryState& state, const Adversary& adversary)
    {
        if (terminal_outcome(state)) {
            return 0;
        }
        std::string key(state.labels().begin(), state.labels().end());
        key.append(state.sides().begin(), state.sides().end());
        key += '|';
        key += adversary.digest();
        if (auto it = memo_.find(key); it != memo_.end()) {
            return it->second;
        }
        int best = -1;
        for (const Edge& e : state.legal_queries()) {
            auto a = adversary.clone();
            const Answer ans = a->answer(state, e);
            const int v = 1 + run(apply_query(state, e, ans), *a);
            if (best < 0 || v < best) {
                best = v;
                if (best == 1) {
                    break;
                }
            }
        }
        memo_.emplace(std::move(key), best);
        return best;
    }

private:
    std::unordered_map<std::string, int> memo_;
};

}  // namespace

int forced_queries(const Graph& g, const Adversary& a)
{
    if (!g.is_solvable()) {
        throw Unsolvable("graph has no solution");
    }
    ForcedSearch search;
    return search.run(QueryState(std::make_shared<const Graph>(g)), a);
}

}  // namespace majority

#pragma once

// Exact value m(G) of the graph majority game by memoized minimax.

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>

#include "majority/core.hpp"
#include "majority/strategy.hpp"

namespace majority {

enum class CanonicalMode {
    Generic,
    // Also identifies a state with its mirror image; needs the labeled path 0-1-...-(n-1).
    Path,
};

struct GraphSolverOptions {
    CanonicalMode canonical = CanonicalMode::Generic;
    std::size_t table_cap = 50'000'000;
};

// Opaque digest of a state: the component partition (labels by first
// appearance) and each component's weight, 4 bits per vertex for each.
struct CanonicalKey {
    std::uint64_t partition = 0;
    std::uint64_t weights = 0;

    bool operator==(const CanonicalKey&) const = default;
};

struct CanonicalKeyHash {
    std::size_t operator()(const CanonicalKey& k) const noexcept;
};

inline constexpr int kGraphSolverMaxVertices = 16;

// Two states with equal partitions and component weights have equal values,
// whatever the splits inside components.
CanonicalKey canonical_key(const QueryState& state);

class GraphSolver {
public:
    explicit GraphSolver(const Graph& g, GraphSolverOptions options = {});

    const Graph& graph() const { return graph_; }

    int solve();
    int value(const QueryState& state);
    // Smallest legal edge among the optimal first queries; empty at terminal states.
    std::optional<Edge> best_query(const QueryState& state);

    std::uint64_t nodes_expanded() const { return nodes_expanded_; }
    std::size_t table_size() const { return table_.size(); }

    struct Position {
        int n = 0;
        int count = 0;  // number of components
        std::uint8_t comp[kGraphSolverMaxVertices] = {};
        std::uint8_t weight[kGraphSolverMaxVertices] = {};
        std::uint16_t mask[kGraphSolverMaxVertices] = {};
    };

private:
    Position position_of(const QueryState& state) const;
    Position merge(const Position& p, int a, int b, bool same) const;
    CanonicalKey key_of(const Position& p) const;
    bool adjacent(const Position& p, int a, int b) const;
    int lower_bound(const Position& p) const;
    int upper_bound(const Position& p) const;
    int search(const Position& p);

    Graph graph_;
    GraphSolverOptions options_;
    std::uint16_t adjacency_[kGraphSolverMaxVertices] = {};
    int graph_components_ = 1;
    std::unordered_map<CanonicalKey, std::uint8_t, CanonicalKeyHash> table_;
    std::uint64_t nodes_expanded_ = 0;
};

// Throws Unsolvable when G has no solution and InvalidInput when n exceeds the solver limit.
int solve_graph(const Graph& g, GraphSolverOptions options = {});

// Plays the argmin move from the solver table.
class OptimalQuerier final : public Querier {
public:
    explicit OptimalQuerier(std::shared_ptr<GraphSolver> solver) : solver_(std::move(solver)) {}
    Edge next_query(const QueryState& state) override;
    std::unique_ptr<Querier> clone() const override { return std::make_unique<OptimalQuerier>(*this); }
    std::string name() const override { return "optimal"; }

private:
    std::shared_ptr<GraphSolver> solver_;
};

std::unique_ptr<Querier> optimal_querier(const Graph& g, GraphSolverOptions options = {});

// Fewest queries an optimal querier needs against the fixed adversary a.
int forced_queries(const Graph& g, const Adversary& a);

}  // namespace majority

#pragma once

// Sparse graphs with value n - b(n), the pair-doubling querier fragment and
// its full querier, and exhaustive strategy verification.

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "majority/core.hpp"
#include "majority/graph_solver.hpp"
#include "majority/strategy.hpp"

namespace majority {

// Path v_1..v_k plus a pendant u_i at each v_i; v_i = i-1, u_i = k+i-1.
Graph build_F(int k);

struct LabeledConstruction {
    Graph graph;
    std::vector<Vertex> path;    // v_1..v_k
    std::vector<Vertex> leaves;  // u_1..u_k
    std::vector<Vertex> hubs;    // v_{k-b(n)+1}..v_k
    std::optional<Vertex> leftover;
};

// F_{floor(n/2)}, an extra vertex for odd n, and every edge at the last b(n) path vertices.
LabeledConstruction build_minedge_graph(int n);

// Doubling fragment over a copy of F_l given as (path vertex, leaf) pairs:
// one pair for l = 1; otherwise both halves recursively, then the edge between
// the last path vertex of the first half and the first of the second. Stops
// once a merge is answered DIFF.
class DoublingFragment {
public:
    DoublingFragment(std::vector<std::pair<Vertex, Vertex>> pairs);

    // Next query, or nothing once the fragment has finished.
    std::optional<Edge> next(const QueryState& state) const;
    // True once some merge was answered DIFF (a balanced component of size 2^i exists).
    bool ended_balanced(const QueryState& state) const;
    const std::vector<Edge>& order() const { return order_; }

private:
    void build(std::size_t lo, std::size_t hi);

    std::vector<std::pair<Vertex, Vertex>> pairs_;
    std::vector<Edge> order_;
};

// Querier interface over a bare F_l.
class DoublingQuerier final : public Querier {
public:
    explicit DoublingQuerier(int l);
    Edge next_query(const QueryState& state) override;
    std::unique_ptr<Querier> clone() const override { return std::make_unique<DoublingQuerier>(*this); }
    std::string name() const override { return "doubling"; }

private:
    DoublingFragment fragment_;
};

// Full querier for build_minedge_graph(n). Only merges two monochromatic
// components of equal size, following the doubling order from the hub pairs
// along the path, which keeps every component at a power-of-two size. A
// lookahead rejects merges that could leave equal blocks unreachable; once
// b(n)-1 balanced components exist and the rest is connected, it queries a
// spanning tree of the rest.
class MinEdgeQuerier final : public Querier {
public:
    explicit MinEdgeQuerier(int n);
    Edge next_query(const QueryState& state) override;
    std::unique_ptr<Querier> clone() const override { return std::make_unique<MinEdgeQuerier>(*this); }
    std::string name() const override { return "minedge"; }
    const LabeledConstruction& construction() const { return *construction_; }

private:
    struct Shared;
    std::shared_ptr<const LabeledConstruction> construction_;
    std::shared_ptr<Shared> shared_;
    std::vector<Edge> rescue_;  // spanning edges fixed when the rescue starts
};

std::unique_ptr<Querier> minedge_querier(int n);

struct VerifyReport {
    int max_queries = 0;
    int budget = 0;
    bool pass = false;
    long long leaves_checked = 0;
    std::string failure;  // transcript of the first failing answer path
};

// Walks every answer sequence; passes iff each leaf is terminal with an
// outcome valid for every consistent coloring and uses at most budget queries.
VerifyReport verify_querier(const Graph& g, const Querier& q, int budget);

}  // namespace majority

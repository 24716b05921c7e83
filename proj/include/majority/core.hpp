#pragma once

// Game-state semantics of the majority query game: graphs, colorings,
// q-components and the SAME/DIFF merge rule.

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "majority/weights.hpp"

namespace majority {

using BigInt = boost::multiprecision::cpp_int;
using Vertex = int;

// Unordered vertex pair, stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    Edge() = default;
    Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

    auto operator<=>(const Edge&) const = default;
};

class Graph {
public:
    Graph() = default;
    Graph(int n, std::vector<Edge> edges);

    int n() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }
    bool has_edge(Vertex a, Vertex b) const;

    int connected_components() const;
    bool is_connected() const { return connected_components() <= 1; }
    bool is_tree() const;
    // The majority problem has a solution iff G is connected (n even) or has at most two components (n odd).
    bool is_solvable() const;
    // Vertices 0..n-1 form the path 0-1-...-(n-1) and nothing else.
    bool is_labeled_path() const;

    // Number of edges with exactly one endpoint in the vertex set (given as membership flags).
    int boundary_edges(const std::vector<char>& in_set) const;

    static Graph path(int n);
    static Graph star(int n);
    static Graph complete(int n);

    // "n m" then m lines "u v".
    std::string to_text() const;
    static Graph parse(std::string_view text);

    bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adjacency_;
};

enum class Color : std::uint8_t { Red, Blue };

class Coloring {
public:
    Coloring() = default;
    explicit Coloring(std::vector<Color> colors) : colors_(std::move(colors)) {}
    Coloring(int n, Color fill) : colors_(static_cast<std::size_t>(n), fill) {}

    int size() const { return static_cast<int>(colors_.size()); }
    Color operator[](Vertex v) const { return colors_[static_cast<std::size_t>(v)]; }
    void set(Vertex v, Color c) { colors_[static_cast<std::size_t>(v)] = c; }
    int red_count() const;
    bool is_balanced() const { return 2 * red_count() == size(); }
    Coloring flipped() const;

    // Bit i of the mask set means vertex i is blue.
    static Coloring from_mask(int n, std::uint64_t blue_mask);

    // String over {R,B}.
    std::string to_string() const;
    static Coloring parse(std::string_view text);

    auto operator<=>(const Coloring&) const = default;

private:
    std::vector<Color> colors_;
};

enum class Answer : std::uint8_t { Same, Diff };

const char* to_string(Answer a);

// Either a majority vertex or the statement that none exists.
struct Outcome {
    std::optional<Vertex> vertex;

    static Outcome none() { return {}; }
    static Outcome majority(Vertex v) { return Outcome{v}; }
    bool has_majority() const { return vertex.has_value(); }

    bool operator==(const Outcome&) const = default;
};

std::string to_string(const Outcome& o);

// Ground truth for a full coloring: a vertex of the strict majority color (the
// smallest one), or none for a balanced coloring.
Outcome true_outcome(const Coloring& c);
bool outcome_valid_for(const Outcome& o, const Coloring& c);
Answer answer_for(const Coloring& c, Edge e);

// One q-component: its vertex set split into the two color classes, canonical
// order placing the side that holds the smallest vertex first.
struct Component {
    std::vector<Vertex> first;
    std::vector<Vertex> second;

    int weight() const
    {
        const int d = static_cast<int>(first.size()) - static_cast<int>(second.size());
        return d < 0 ? -d : d;
    }
    std::size_t size() const { return first.size() + second.size(); }
    Vertex min_vertex() const { return first.front(); }
    std::vector<Vertex> vertices() const;
};

class QueryState {
public:
    explicit QueryState(std::shared_ptr<const Graph> graph);

    const Graph& graph() const { return *graph_; }
    const std::shared_ptr<const Graph>& graph_ptr() const { return graph_; }
    int n() const { return graph_->n(); }

    // Label of v's component: the smallest vertex in it.
    Vertex component_of(Vertex v) const { return label_[static_cast<std::size_t>(v)]; }
    // 0 if v shares a color with its component's smallest vertex, 1 otherwise.
    int side_of(Vertex v) const { return side_[static_cast<std::size_t>(v)]; }
    bool same_component(Vertex a, Vertex b) const { return component_of(a) == component_of(b); }

    std::vector<Component> components() const;
    int component_count() const;
    int component_weight(Vertex label) const;
    int component_size(Vertex label) const;
    const std::vector<Edge>& queried() const { return queried_; }
    const std::vector<Vertex>& labels() const { return label_; }
    const std::vector<std::uint8_t>& sides() const { return side_; }

    // Weight that the merged component would get if e were answered with a.
    int merged_weight(Edge e, Answer a) const;
    // The answer producing the given merged weight, if any.
    std::optional<Answer> answer_giving(Edge e, int target_weight) const;

    // Cross-component edges of the graph, sorted.
    std::vector<Edge> legal_queries() const;

    // Re-derive the canonical split encoding; identity on any reachable state.
    QueryState canonicalized() const;

    bool operator==(const QueryState& other) const
    {
        return label_ == other.label_ && side_ == other.side_ && queried_ == other.queried_;
    }

private:
    friend QueryState apply_query(const QueryState&, Edge, Answer);

    std::shared_ptr<const Graph> graph_;
    std::vector<Vertex> label_;
    std::vector<std::uint8_t> side_;
    std::vector<Edge> queried_;
};

// Merge the two components joined by e according to the answer.
// Throws IllegalQuery for intra-component pairs and for pairs that are not edges.
QueryState apply_query(const QueryState& state, Edge e, Answer a);

WeightVector component_weights(const QueryState& state);

BigInt consistent_coloring_count(const QueryState& state);
// Calls f once for each coloring consistent with the answers so far (needs at most 63 components).
void for_each_consistent_coloring(const QueryState& state, const std::function<void(const Coloring&)>& f);

// Defined exactly when the answer is already determined for every consistent coloring.
std::optional<Outcome> terminal_outcome(const QueryState& state);

}  // namespace majority

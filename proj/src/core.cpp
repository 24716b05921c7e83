#include "majority/core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "majority/errors.hpp"

namespace majority {

// ---------------------------------------------------------------- Graph

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges))
{
    if (n < 0) {
        throw InvalidInput("negative vertex count");
    }
    for (const Edge& e : edges_) {
        if (e.u == e.v) {
            throw InvalidInput("self-loop at vertex " + std::to_string(e.u));
        }
        if (e.u < 0 || e.v >= n) {
            throw InvalidInput("edge endpoint out of range: " + std::to_string(e.u) + " " + std::to_string(e.v));
        }
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
        throw InvalidInput("duplicate edge");
    }
    adjacency_.assign(static_cast<std::size_t>(n), {});
    for (const Edge& e : edges_) {
        adjacency_[e.u].push_back(e.v);
        adjacency_[e.v].push_back(e.u);
    }
    for (auto& nb : adjacency_) {
        std::sort(nb.begin(), nb.end());
    }
}

bool Graph::has_edge(Vertex a, Vertex b) const
{
    if (a < 0 || b < 0 || a >= n_ || b >= n_ || a == b) {
        return false;
    }
    const auto& nb = adjacency_[a];
    return std::binary_search(nb.begin(), nb.end(), b);
}

int Graph::connected_components() const
{
    std::vector<int> seen(static_cast<std::size_t>(n_), 0);
    int count = 0;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < n_; ++s) {
        if (seen[s]) {
            continue;
        }
        ++count;
        seen[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex x = stack.back();
            stack.pop_back();
            for (Vertex y : adjacency_[x]) {
                if (!seen[y]) {
                    seen[y] = 1;
                    stack.push_back(y);
                }
            }
        }
    }
    return count;
}

bool Graph::is_tree() const
{
    return n_ >= 1 && static_cast<int>(edges_.size()) == n_ - 1 && is_connected();
}

bool Graph::is_solvable() const
{
    const int c = connected_components();
    return n_ % 2 == 0 ? c <= 1 : c <= 2;
}

bool Graph::is_labeled_path() const
{
    if (static_cast<int>(edges_.size()) != std::max(0, n_ - 1)) {
        return false;
    }
    for (int i = 0; i + 1 < n_; ++i) {
        if (edges_[i] != Edge(i, i + 1)) {
            return false;
        }
    }
    return true;
}

int Graph::boundary_edges(const std::vector<char>& in_set) const
{
    int count = 0;
    for (const Edge& e : edges_) {
        if (in_set[e.u] != in_set[e.v]) {
            ++count;
        }
    }
    return count;
}

Graph Graph::path(int n)
{
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) {
        edges.emplace_back(i, i + 1);
    }
    return Graph(n, std::move(edges));
}

Graph Graph::star(int n)
{
    std::vector<Edge> edges;
    for (int i = 1; i < n; ++i) {
        edges.emplace_back(0, i);
    }
    return Graph(n, std::move(edges));
}

Graph Graph::complete(int n)
{
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            edges.emplace_back(i, j);
        }
    }
    return Graph(n, std::move(edges));
}

std::string Graph::to_text() const
{
    std::ostringstream out;
    out << n_ << ' ' << edges_.size() << '\n';
    for (const Edge& e : edges_) {
        out << e.u << ' ' << e.v << '\n';
    }
    return out.str();
}

Graph Graph::parse(std::string_view text)
{
    std::istringstream in{std::string(text)};
    long long n = -1;
    long long m = -1;
    if (!(in >> n >> m) || n < 0 || m < 0) {
        throw InvalidInput("graph header must be \"n m\"");
    }
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        long long u = -1;
        long long v = -1;
        if (!(in >> u >> v)) {
            throw InvalidInput("graph has fewer edge lines than announced");
        }
        if (u < 0 || v < 0 || u >= n || v >= n) {
            throw InvalidInput("edge endpoint out of range");
        }
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    std::string rest;
    if (in >> rest) {
        throw InvalidInput("trailing data after edge list");
    }
    return Graph(static_cast<int>(n), std::move(edges));
}

// ---------------------------------------------------------------- Coloring

int Coloring::red_count() const
{
    return static_cast<int>(std::count(colors_.begin(), colors_.end(), Color::Red));
}

Coloring Coloring::flipped() const
{
    Coloring out = *this;
    for (auto& c : out.colors_) {
        c = c == Color::Red ? Color::Blue : Color::Red;
    }
    return out;
}

Coloring Coloring::from_mask(int n, std::uint64_t blue_mask)
{
    std::vector<Color> colors(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        colors[i] = (blue_mask >> i) & 1U ? Color::Blue : Color::Red;
    }
    return Coloring(std::move(colors));
}

std::string Coloring::to_string() const
{
    std::string out;
    out.reserve(colors_.size());
    for (Color c : colors_) {
        out += c == Color::Red ? 'R' : 'B';
    }
    return out;
}

Coloring Coloring::parse(std::string_view text)
{
    std::vector<Color> colors;
    for (char ch : text) {
        if (ch == 'R' || ch == 'r') {
            colors.push_back(Color::Red);
        } else if (ch == 'B' || ch == 'b') {
            colors.push_back(Color::Blue);
        } else if (ch == '\n' || ch == '\r' || ch == ' ') {
            continue;
        } else {
            throw InvalidInput(std::string("coloring may only contain R and B, got '") + ch + "'");
        }
    }
    return Coloring(std::move(colors));
}

const char* to_string(Answer a)
{
    return a == Answer::Same ? "SAME" : "DIFF";
}

std::string to_string(const Outcome& o)
{
    return o.vertex ? "MAJORITY " + std::to_string(*o.vertex) : std::string("NONE");
}

Outcome true_outcome(const Coloring& c)
{
    const int red = c.red_count();
    const int blue = c.size() - red;
    if (red == blue) {
        return Outcome::none();
    }
    const Color winner = red > blue ? Color::Red : Color::Blue;
    for (Vertex v = 0; v < c.size(); ++v) {
        if (c[v] == winner) {
            return Outcome::majority(v);
        }
    }
    return Outcome::none();
}

bool outcome_valid_for(const Outcome& o, const Coloring& c)
{
    const int red = c.red_count();
    const int blue = c.size() - red;
    if (!o.vertex) {
        return red == blue;
    }
    const Color mine = c[*o.vertex];
    return mine == Color::Red ? red > blue : blue > red;
}

Answer answer_for(const Coloring& c, Edge e)
{
    return c[e.u] == c[e.v] ? Answer::Same : Answer::Diff;
}

// ---------------------------------------------------------------- QueryState

std::vector<Vertex> Component::vertices() const
{
    std::vector<Vertex> out = first;
    out.insert(out.end(), second.begin(), second.end());
    std::sort(out.begin(), out.end());
    return out;
}

QueryState::QueryState(std::shared_ptr<const Graph> graph) : graph_(std::move(graph))
{
    if (!graph_) {
        throw InvalidInput("query state needs a graph");
    }
    label_.resize(static_cast<std::size_t>(graph_->n()));
    std::iota(label_.begin(), label_.end(), 0);
    side_.assign(static_cast<std::size_t>(graph_->n()), 0);
}

std::vector<Component> QueryState::components() const
{
    std::vector<Component> out;
    std::vector<int> index(static_cast<std::size_t>(n()), -1);
    for (Vertex v = 0; v < n(); ++v) {
        const Vertex l = label_[v];
        if (index[l] < 0) {
            index[l] = static_cast<int>(out.size());
            out.emplace_back();
        }
        Component& c = out[static_cast<std::size_t>(index[l])];
        (side_[v] == 0 ? c.first : c.second).push_back(v);
    }
    return out;
}

int QueryState::component_count() const
{
    int count = 0;
    for (Vertex v = 0; v < n(); ++v) {
        count += label_[v] == v ? 1 : 0;
    }
    return count;
}

int QueryState::component_weight(Vertex label) const
{
    int d = 0;
    for (Vertex v = 0; v < n(); ++v) {
        if (label_[v] == label) {
            d += side_[v] == 0 ? 1 : -1;
        }
    }
    return d < 0 ? -d : d;
}

int QueryState::component_size(Vertex label) const
{
    return static_cast<int>(std::count(label_.begin(), label_.end(), label));
}

int QueryState::merged_weight(Edge e, Answer a) const
{
    const Vertex lx = label_[e.u];
    const Vertex ly = label_[e.v];
    // Count vertices sharing a color with u (within X) and with v (within Y).
    int x_with_u = 0;
    int x_other = 0;
    int y_with_v = 0;
    int y_other = 0;
    for (Vertex t = 0; t < n(); ++t) {
        if (label_[t] == lx) {
            (side_[t] == side_[e.u] ? x_with_u : x_other)++;
        } else if (label_[t] == ly) {
            (side_[t] == side_[e.v] ? y_with_v : y_other)++;
        }
    }
    const int d = a == Answer::Same ? (x_with_u + y_with_v) - (x_other + y_other)
                                    : (x_with_u + y_other) - (x_other + y_with_v);
    return d < 0 ? -d : d;
}

std::optional<Answer> QueryState::answer_giving(Edge e, int target_weight) const
{
    if (merged_weight(e, Answer::Same) == target_weight) {
        return Answer::Same;
    }
    if (merged_weight(e, Answer::Diff) == target_weight) {
        return Answer::Diff;
    }
    return std::nullopt;
}

std::vector<Edge> QueryState::legal_queries() const
{
    std::vector<Edge> out;
    for (const Edge& e : graph_->edges()) {
        if (label_[e.u] != label_[e.v]) {
            out.push_back(e);
        }
    }
    return out;
}

QueryState QueryState::canonicalized() const
{
    QueryState out = *this;
    std::vector<Vertex> min_of(static_cast<std::size_t>(n()), -1);
    for (Vertex v = 0; v < n(); ++v) {
        if (min_of[label_[v]] < 0) {
            min_of[label_[v]] = v;
        }
    }
    for (Vertex v = 0; v < n(); ++v) {
        const Vertex m = min_of[label_[v]];
        out.label_[v] = m;
        out.side_[v] = static_cast<std::uint8_t>(side_[v] ^ side_[m]);
    }
    return out;
}

QueryState apply_query(const QueryState& state, Edge e, Answer a)
{
    if (!state.graph().has_edge(e.u, e.v)) {
        throw IllegalQuery("(" + std::to_string(e.u) + "," + std::to_string(e.v) + ") is not an edge of the graph");
    }
    if (state.same_component(e.u, e.v)) {
        throw IllegalQuery("(" + std::to_string(e.u) + "," + std::to_string(e.v) +
                           ") lies inside one q-component; its answer is already forced");
    }
    QueryState out = state;
    const Vertex lx = state.label_[e.u];
    const Vertex ly = state.label_[e.v];
    const Vertex keep = std::min(lx, ly);
    // Y's vertices are re-expressed relative to X's sides.
    const std::uint8_t flip =
        static_cast<std::uint8_t>(state.side_[e.u] ^ state.side_[e.v] ^ (a == Answer::Diff ? 1 : 0));
    for (Vertex t = 0; t < state.n(); ++t) {
        if (state.label_[t] == ly) {
            out.side_[t] = static_cast<std::uint8_t>(state.side_[t] ^ flip);
            out.label_[t] = keep;
        } else if (state.label_[t] == lx) {
            out.label_[t] = keep;
        }
    }
    if (out.side_[keep] != 0) {
        for (Vertex t = 0; t < state.n(); ++t) {
            if (out.label_[t] == keep) {
                out.side_[t] ^= 1U;
            }
        }
    }
    out.queried_.push_back(e);
    return out;
}

WeightVector component_weights(const QueryState& state)
{
    std::vector<int> diff(static_cast<std::size_t>(state.n()), 0);
    for (Vertex v = 0; v < state.n(); ++v) {
        diff[state.component_of(v)] += state.side_of(v) == 0 ? 1 : -1;
    }
    std::vector<int> weights;
    for (Vertex v = 0; v < state.n(); ++v) {
        if (state.component_of(v) == v) {
            weights.push_back(std::abs(diff[v]));
        }
    }
    return WeightVector(std::move(weights));
}

BigInt consistent_coloring_count(const QueryState& state)
{
    BigInt one = 1;
    return one << state.component_count();
}

void for_each_consistent_coloring(const QueryState& state, const std::function<void(const Coloring&)>& f)
{
    std::vector<Vertex> roots;
    for (Vertex v = 0; v < state.n(); ++v) {
        if (state.component_of(v) == v) {
            roots.push_back(v);
        }
    }
    if (roots.size() > 63) {
        throw InvalidInput("too many components to enumerate colorings");
    }
    std::vector<int> root_index(static_cast<std::size_t>(state.n()), 0);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        root_index[roots[i]] = static_cast<int>(i);
    }
    const std::uint64_t total = std::uint64_t{1} << roots.size();
    std::vector<Color> colors(static_cast<std::size_t>(state.n()));
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (Vertex v = 0; v < state.n(); ++v) {
            const unsigned flip = (mask >> root_index[state.component_of(v)]) & 1U;
            colors[v] = (state.side_of(v) ^ flip) ? Color::Blue : Color::Red;
        }
        f(Coloring(colors));
    }
}

std::optional<Outcome> terminal_outcome(const QueryState& state)
{
    const auto comps = state.components();
    int total = 0;
    int best = -1;
    int best_weight = -1;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const int w = comps[i].weight();
        total += w;
        if (w > best_weight) {
            best_weight = w;
            best = static_cast<int>(i);
        }
    }
    if (total == 0) {
        return Outcome::none();
    }
    if (best_weight > total - best_weight) {
        const Component& c = comps[static_cast<std::size_t>(best)];
        const auto& larger = c.first.size() > c.second.size() ? c.first : c.second;
        return Outcome::majority(larger.front());
    }
    return std::nullopt;
}

}  // namespace majority

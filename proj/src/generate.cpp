#include "majority/generate.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

#include "majority/constructions.hpp"
#include "majority/errors.hpp"

namespace majority {

namespace {

std::vector<std::vector<Vertex>> adjacency_of(const Graph& g)
{
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(g.n()));
    for (Vertex v = 0; v < g.n(); ++v) {
        adj[v] = g.neighbors(v);
    }
    return adj;
}

std::vector<Vertex> centroids(const Graph& tree)
{
    const int n = tree.n();
    std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
    std::vector<Vertex> order{0};
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    seen[0] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (Vertex y : tree.neighbors(order[i])) {
            if (!seen[y]) {
                seen[y] = 1;
                parent[y] = order[i];
                order.push_back(y);
            }
        }
    }
    std::vector<int> size(static_cast<std::size_t>(n), 1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (parent[*it] >= 0) {
            size[parent[*it]] += size[*it];
        }
    }
    std::vector<Vertex> out;
    for (Vertex v = 0; v < n; ++v) {
        int largest = n - size[v];
        for (Vertex c : tree.neighbors(v)) {
            if (c != parent[v]) {
                largest = std::max(largest, size[c]);
            }
        }
        if (2 * largest <= n) {
            out.push_back(v);
        }
    }
    return out;
}

// Parenthesized encoding with children sorted, so isomorphic rooted trees agree.
std::string rooted_form(const std::vector<std::vector<Vertex>>& adj, Vertex v, Vertex parent)
{
    std::vector<std::string> parts;
    for (Vertex c : adj[v]) {
        if (c != parent) {
            parts.push_back(rooted_form(adj, c, v));
        }
    }
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    for (const auto& s : parts) {
        out += s;
    }
    return out + ")";
}

Graph from_levels(const std::vector<int>& level)
{
    std::vector<Edge> edges;
    std::vector<Vertex> last_at(level.size() + 1, -1);
    for (std::size_t i = 0; i < level.size(); ++i) {
        if (level[i] > 0) {
            edges.emplace_back(last_at[level[i] - 1], static_cast<Vertex>(i));
        }
        last_at[level[i]] = static_cast<Vertex>(i);
    }
    return Graph(static_cast<int>(level.size()), edges);
}

}  // namespace

std::string tree_canonical_form(const Graph& tree)
{
    if (!tree.is_tree()) {
        throw InvalidInput("canonical form needs a tree");
    }
    const auto adj = adjacency_of(tree);
    std::string best;
    for (Vertex c : centroids(tree)) {
        std::string s = rooted_form(adj, c, -1);
        if (best.empty() || s < best) {
            best = std::move(s);
        }
    }
    return best;
}

std::vector<Graph> free_trees(int n)
{
    if (n < 1) {
        throw InvalidInput("free trees need n >= 1");
    }
    if (n > 20) {
        throw InvalidInput("free-tree enumeration is limited to n <= 20");
    }
    std::vector<Graph> out;
    // Rooted trees by canonical level sequences, root at level 0, starting from the path.
    std::vector<int> level(static_cast<std::size_t>(n));
    std::iota(level.begin(), level.end(), 0);
    while (true) {
        const Graph g = from_levels(level);
        // Keep rootings at a centroid; of two centroids keep the smaller rooted form.
        const auto cs = centroids(g);
        if (std::find(cs.begin(), cs.end(), 0) != cs.end()) {
            bool keep = true;
            if (cs.size() == 2) {
                const auto adj = adjacency_of(g);
                keep = rooted_form(adj, 0, -1) <= rooted_form(adj, cs[0] == 0 ? cs[1] : cs[0], -1);
            }
            if (keep) {
                out.push_back(g);
            }
        }
        int p = n - 1;
        while (p >= 0 && level[p] <= 1) {
            --p;
        }
        if (p < 0) {
            break;
        }
        int q = p - 1;
        while (level[q] != level[p] - 1) {
            --q;
        }
        for (int i = p; i < n; ++i) {
            level[i] = level[i - (p - q)];
        }
    }
    return out;
}

int uniform_int(std::mt19937_64& rng, int lo, int hi)
{
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    // Rejection keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x = rng();
    while (x >= limit) {
        x = rng();
    }
    return lo + static_cast<int>(x % span);
}

namespace {

bool coin(std::mt19937_64& rng, double p)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

std::vector<Edge> random_tree_edges(int n, std::mt19937_64& rng)
{
    std::vector<Vertex> label(static_cast<std::size_t>(n));
    std::iota(label.begin(), label.end(), 0);
    for (int i = n - 1; i > 0; --i) {
        std::swap(label[i], label[uniform_int(rng, 0, i)]);
    }
    std::vector<Edge> edges;
    for (int v = 1; v < n; ++v) {
        edges.emplace_back(label[uniform_int(rng, 0, v - 1)], label[v]);
    }
    return edges;
}

}  // namespace

Graph random_tree(int n, std::uint64_t seed)
{
    if (n < 1) {
        throw InvalidInput("random tree needs n >= 1");
    }
    std::mt19937_64 rng(seed);
    return Graph(n, random_tree_edges(n, rng));
}

Graph random_graph(int n, double p, std::uint64_t seed)
{
    if (n < 0 || p < 0 || p > 1) {
        throw InvalidInput("random graph needs n >= 0 and 0 <= p <= 1");
    }
    std::mt19937_64 rng(seed);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            if (coin(rng, p)) {
                edges.emplace_back(u, v);
            }
        }
    }
    return Graph(n, edges);
}

Graph random_connected_graph(int n, double p, std::uint64_t seed)
{
    if (n < 1 || p < 0 || p > 1) {
        throw InvalidInput("random connected graph needs n >= 1 and 0 <= p <= 1");
    }
    std::mt19937_64 rng(seed);
    std::vector<Edge> edges = random_tree_edges(n, rng);
    std::sort(edges.begin(), edges.end());
    std::vector<Edge> extra;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            if (coin(rng, p) && !std::binary_search(edges.begin(), edges.end(), Edge(u, v))) {
                extra.emplace_back(u, v);
            }
        }
    }
    edges.insert(edges.end(), extra.begin(), extra.end());
    return Graph(n, edges);
}

InstanceSpec InstanceSpec::parse(const std::string& text)
{
    std::vector<std::string> f;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) {
        f.push_back(part);
    }
    if (f.empty()) {
        throw InvalidInput("empty instance spec");
    }
    InstanceSpec spec;
    spec.kind = f[0];
    auto number = [&](std::size_t i) {
        if (i >= f.size()) {
            throw InvalidInput("instance spec '" + text + "' is missing a field");
        }
        try {
            std::size_t used = 0;
            const long long v = std::stoll(f[i], &used);
            if (used != f[i].size()) {
                throw InvalidInput("bad number in instance spec: " + f[i]);
            }
            return v;
        } catch (const std::logic_error&) {
            throw InvalidInput("bad number in instance spec: " + f[i]);
        }
    };
    if (spec.kind == "file") {
        if (f.size() < 2) {
            throw InvalidInput("file spec needs a path");
        }
        spec.file = text.substr(5);
        return spec;
    }
    static const std::vector<std::string> kinds = {"path",        "star",         "complete", "free-trees",
                                                   "random-tree", "random-graph", "minedge"};
    if (std::find(kinds.begin(), kinds.end(), spec.kind) == kinds.end()) {
        throw InvalidInput("unknown instance kind: " + spec.kind);
    }
    spec.n = static_cast<int>(number(1));
    if (spec.kind == "random-tree") {
        spec.seed = f.size() > 2 ? static_cast<std::uint64_t>(number(2)) : 0;
    } else if (spec.kind == "random-graph") {
        if (f.size() > 2) {
            try {
                spec.p = std::stod(f[2]);
            } catch (const std::logic_error&) {
                throw InvalidInput("bad probability in instance spec: " + f[2]);
            }
            if (!(spec.p >= 0.0 && spec.p <= 1.0)) throw InvalidInput("probability out of range: " + f[2]);
        }
        spec.seed = f.size() > 3 ? static_cast<std::uint64_t>(number(3)) : 0;
    }
    return spec;
}

std::vector<Graph> generate(const InstanceSpec& spec)
{
    if (spec.kind == "file") {
        std::ifstream in(spec.file);
        if (!in) {
            throw InvalidInput("cannot read graph file: " + spec.file);
        }
        std::stringstream buf;
        buf << in.rdbuf();
        return {Graph::parse(buf.str())};
    }
    if (spec.n < 1) {
        throw InvalidInput("instance needs n >= 1");
    }
    if (spec.kind == "path") {
        return {Graph::path(spec.n)};
    }
    if (spec.kind == "star") {
        return {Graph::star(spec.n)};
    }
    if (spec.kind == "complete") {
        return {Graph::complete(spec.n)};
    }
    if (spec.kind == "free-trees") {
        return free_trees(spec.n);
    }
    if (spec.kind == "random-tree") {
        return {random_tree(spec.n, spec.seed)};
    }
    if (spec.kind == "random-graph") {
        return {random_graph(spec.n, spec.p, spec.seed)};
    }
    if (spec.kind == "minedge") {
        return {build_minedge_graph(spec.n).graph};
    }
    throw InvalidInput("unknown instance kind: " + spec.kind);
}

}  // namespace majority

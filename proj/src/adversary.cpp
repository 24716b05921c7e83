#include "majority/adversary.hpp"

#include <algorithm>
#include <bit>
#include <queue>

#include "majority/errors.hpp"
#include "majority/weighted.hpp"

namespace majority {

namespace {

int floor_log2(int n)
{
    return std::bit_width(static_cast<unsigned>(n)) - 1;
}

int total_weight(const QueryState& s)
{
    return component_weights(s).total();
}

// Membership flags of the union of the components of a and b.
std::vector<char> merged_members(const QueryState& s, Vertex a, Vertex b)
{
    std::vector<char> in(static_cast<std::size_t>(s.n()), 0);
    const Vertex la = s.component_of(a);
    const Vertex lb = s.component_of(b);
    for (Vertex v = 0; v < s.n(); ++v) {
        in[v] = s.component_of(v) == la || s.component_of(v) == lb;
    }
    return in;
}

std::string describe(Edge e)
{
    return "query " + std::to_string(e.u) + "-" + std::to_string(e.v);
}

// Weight rule for a merge inside a tree: odd size gives 1, even size gives
// 2*parity when the sizes are odd, and the sum mod 4 when both are even.
int lemma_target(int size_x, int size_y, int wx, int wy, int parity)
{
    if ((size_x + size_y) % 2 == 1) {
        return 1;
    }
    if (size_x % 2 == 1) {
        return 2 * parity;
    }
    return (wx + wy) % 4;
}

}  // namespace

int cut_parity(const Graph& g, const std::vector<char>& in_set)
{
    return g.boundary_edges(in_set) % 2;
}

// ---------------------------------------------------------------- eventrees

Coloring eventrees_coloring(const Graph& tree)
{
    if (!tree.is_tree()) {
        throw InvalidInput("eventrees coloring needs a tree");
    }
    const int n = tree.n();
    if (n % 2 != 0) {
        throw InvalidInput("eventrees coloring needs an even number of vertices");
    }
    std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
    std::vector<Vertex> order;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    order.push_back(0);
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
    auto in_subtree = [&](Vertex root) {
        std::vector<char> in(static_cast<std::size_t>(n), 0);
        in[root] = 1;
        for (Vertex v : order) {
            if (v != root && parent[v] >= 0 && in[parent[v]]) {
                in[v] = 1;
            }
        }
        return in;
    };

    Coloring c(n, Color::Blue);
    for (Vertex v = 0; v < n / 2; ++v) {
        c.set(v, Color::Red);
    }
    // Each round removes one balanced cut and creates none.
    for (int round = 0; round < n; ++round) {
        std::vector<int> red(static_cast<std::size_t>(n), 0);
        std::vector<int> size(static_cast<std::size_t>(n), 1);
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const Vertex v = *it;
            red[v] += c[v] == Color::Red ? 1 : 0;
            if (parent[v] >= 0) {
                red[parent[v]] += red[v];
                size[parent[v]] += size[v];
            }
        }
        Vertex child = -1;
        for (Vertex v : order) {
            if (parent[v] >= 0 && 2 * red[v] == size[v]) {
                child = v;
                break;
            }
        }
        if (child < 0) {
            return c;
        }
        const Vertex u = parent[child];
        if (c[u] == c[child]) {
            // Flip the balanced side holding u; balanced sides stay balanced.
            const auto below = in_subtree(child);
            for (Vertex x = 0; x < n; ++x) {
                if (!below[x]) {
                    c.set(x, c[x] == Color::Red ? Color::Blue : Color::Red);
                }
            }
        }
        const Color cu = c[u];
        c.set(u, c[child]);
        c.set(child, cu);
    }
    throw InvariantViolation("eventrees coloring did not converge");
}

// ---------------------------------------------------------------- RuleAdversary

Answer RuleAdversary::answer(const QueryState& state, Edge e)
{
    const int before = total_weight(state);
    if (!endgame_ && threshold_ >= 0 && before <= threshold_) {
        endgame_ = true;
        switch_total_ = before;
    }
    last_from_endgame_ = endgame_;
    if (endgame_) {
        const int same = solve_weighted(component_weights(apply_query(state, e, Answer::Same)));
        const int diff = solve_weighted(component_weights(apply_query(state, e, Answer::Diff)));
        return diff > same ? Answer::Diff : Answer::Same;
    }
    const Answer a = discipline(state, e);
    const QueryState after = apply_query(state, e, a);
    const int now = total_weight(after);
    if (before - now > max_drop()) {
        report(describe(e) + ": total weight dropped by " + std::to_string(before - now));
    }
    check(state, after, e);
    if (threshold_ >= 0 && now <= threshold_) {
        endgame_ = true;
        switch_total_ = now;
    }
    return a;
}

Answer RuleAdversary::answer_for_weight(const QueryState& state, Edge e, int target)
{
    if (auto a = state.answer_giving(e, target)) {
        return *a;
    }
    report(describe(e) + ": no answer gives weight " + std::to_string(target));
    return Answer::Same;
}

Answer RuleAdversary::adding(const QueryState& state, Edge e)
{
    const int w = state.component_weight(state.component_of(e.u)) + state.component_weight(state.component_of(e.v));
    return state.merged_weight(e, Answer::Same) == w ? Answer::Same : Answer::Diff;
}

Answer RuleAdversary::subtracting(const QueryState& state, Edge e)
{
    return adding(state, e) == Answer::Same ? Answer::Diff : Answer::Same;
}

// ---------------------------------------------------------------- treelemma

TreeLemmaAdversary::TreeLemmaAdversary(const Graph&) {}

Answer TreeLemmaAdversary::discipline(const QueryState& state, Edge e)
{
    const Vertex lx = state.component_of(e.u);
    const Vertex ly = state.component_of(e.v);
    const int sx = state.component_size(lx);
    const int sy = state.component_size(ly);
    const int wx = state.component_weight(lx);
    const int wy = state.component_weight(ly);
    if (sx + sy == state.n()) {
        // The whole vertex set carries no constraint; avoid a gifted tie.
        return adding(state, e);
    }
    const int parity = cut_parity(state.graph(), merged_members(state, e.u, e.v));
    return answer_for_weight(state, e, lemma_target(sx, sy, wx, wy, parity));
}

void TreeLemmaAdversary::check(const QueryState&, const QueryState& after, Edge e)
{
    const Vertex label = after.component_of(e.u);
    const int size = after.component_size(label);
    if (size == after.n()) {
        return;
    }
    const int w = after.component_weight(label);
    std::vector<char> in(static_cast<std::size_t>(after.n()), 0);
    for (Vertex v = 0; v < after.n(); ++v) {
        in[v] = after.component_of(v) == label;
    }
    const int want = size % 2 == 1 ? 1 : 2 * cut_parity(after.graph(), in);
    if (w != want) {
        report(describe(e) + ": component weight " + std::to_string(w) + ", expected " + std::to_string(want));
    }
}

// ---------------------------------------------------------------- lefogo1

CoverAdversary::CoverAdversary(const Graph& g, std::vector<Vertex> cover)
    : cover_(std::move(cover)), in_cover_(static_cast<std::size_t>(g.n()), 0)
{
    if (g.n() < 1) {
        throw InvalidInput("cover adversary needs at least one vertex");
    }
    for (Vertex u : cover_) {
        if (u < 0 || u >= g.n() || in_cover_[u]) {
            throw InvalidInput("cover vertices must be distinct and in range");
        }
        in_cover_[u] = 1;
    }
    const int k = floor_log2(g.n());
    if (4 * static_cast<long long>(cover_.size()) > (1LL << k)) {
        throw InvalidInput("cover of size " + std::to_string(cover_.size()) + " exceeds 2^(k-2) for n = " +
                           std::to_string(g.n()));
    }
    for (const Edge& e : g.edges()) {
        if (!in_cover_[e.u] && !in_cover_[e.v]) {
            throw InvalidInput("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " misses the cover");
        }
    }
    set_endgame_threshold((1 << k) + 1);
}

Answer CoverAdversary::discipline(const QueryState& state, Edge e)
{
    for (auto [fresh, other] : {std::pair(e.u, e.v), std::pair(e.v, e.u)}) {
        if (!in_cover_[fresh] && state.component_size(state.component_of(fresh)) == 1) {
            const int p = state.component_weight(state.component_of(other));
            if (p >= 2) {
                return answer_for_weight(state, e, p - 1);
            }
            break;
        }
    }
    return adding(state, e);
}

void CoverAdversary::check(const QueryState&, const QueryState& after, Edge e)
{
    if (after.component_weight(after.component_of(e.u)) == 0) {
        report(describe(e) + ": component became balanced before the endgame");
    }
}

// ---------------------------------------------------------------- oddpath

std::vector<Vertex> oddpath_marked(int n, int stride)
{
    std::vector<Vertex> out;
    for (Vertex v = 1; v < n; v += stride) {
        out.push_back(v);
    }
    if (n >= 2 && std::find(out.begin(), out.end(), n - 2) == out.end()) {
        out.push_back(n - 2);
    }
    std::sort(out.begin(), out.end());
    return out;
}

OddPathAdversary::OddPathAdversary(const Graph& path, int stride)
{
    if (!path.is_labeled_path()) {
        throw InvalidInput("oddpath adversary needs the labeled path");
    }
    if (path.n() % 2 == 0 || path.n() < 3) {
        throw InvalidInput("oddpath adversary needs an odd path with at least 3 vertices");
    }
    if (stride != 8 && stride != 9) {
        throw InvalidInput("stride must be 8 or 9");
    }
    marked_list_ = oddpath_marked(path.n(), stride);
    marked_.assign(static_cast<std::size_t>(path.n()), 0);
    for (Vertex v : marked_list_) {
        marked_[v] = 1;
    }
    set_endgame_threshold((1 << floor_log2(path.n())) + 1);
}

namespace {

int marked_count(const QueryState& s, const std::vector<char>& marked, Vertex label)
{
    int c = 0;
    for (Vertex v = 0; v < s.n(); ++v) {
        c += s.component_of(v) == label && marked[v] ? 1 : 0;
    }
    return c;
}

}  // namespace

Answer OddPathAdversary::discipline(const QueryState& state, Edge e)
{
    const Vertex lx = state.component_of(e.u);
    const Vertex ly = state.component_of(e.v);
    const int wx = state.component_weight(lx);
    const int wy = state.component_weight(ly);
    const bool mx = marked_count(state, marked_, lx) > 0;
    const bool my = marked_count(state, marked_, ly) > 0;
    const int sum = wx + wy;
    const int diff = std::abs(wx - wy);
    if (!mx && !my) {
        return sum <= 1 ? adding(state, e) : subtracting(state, e);
    }
    if (mx != my) {
        return sum <= 2 ? adding(state, e) : subtracting(state, e);
    }
    // Both marked: two weight-2 components cannot land in [1,2]; keep the sum then.
    if (sum <= 2) {
        return adding(state, e);
    }
    if (diff >= 1 && std::min(wx, wy) <= 2) {
        return subtracting(state, e);
    }
    return adding(state, e);
}

void OddPathAdversary::check(const QueryState&, const QueryState& after, Edge e)
{
    const Vertex label = after.component_of(e.u);
    const int w = after.component_weight(label);
    const int m = marked_count(after, marked_, label);
    if (m == 0 && w > 1) {
        report(describe(e) + ": unmarked component of weight " + std::to_string(w));
    }
    if (m > 0 && (w < 1 || w > 2 * m)) {
        report(describe(e) + ": marked component of weight " + std::to_string(w) + " with " + std::to_string(m) +
               " marked vertices");
    }
}

// ---------------------------------------------------------------- centroid decomposition

std::vector<Vertex> centroid_decomposition(const Graph& tree, int p)
{
    if (!tree.is_tree()) {
        throw InvalidInput("centroid decomposition needs a tree");
    }
    if (p < 1) {
        throw InvalidInput("edge budget must be positive");
    }
    const int n = tree.n();
    std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
    std::vector<Vertex> order;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    // Depth-first preorder, children by increasing index.
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        order.push_back(v);
        const auto& nb = tree.neighbors(v);
        for (auto it = nb.rbegin(); it != nb.rend(); ++it) {
            if (!seen[*it]) {
                seen[*it] = 1;
                parent[*it] = v;
                stack.push_back(*it);
            }
        }
    }
    // pending[v]: edges below v not yet closed off, each edge to a child counted once.
    std::vector<int> pending(static_cast<std::size_t>(n), 0);
    std::vector<char> cut(static_cast<std::size_t>(n), 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const Vertex v = *it;
        const bool root = parent[v] < 0;
        if (pending[v] + (root ? 0 : 1) > p) {
            cut[v] = 1;
        }
        if (!root) {
            pending[parent[v]] += 1 + (cut[v] ? 0 : pending[v]);
        }
    }
    std::vector<Vertex> out;
    for (Vertex v = 0; v < n; ++v) {
        if (cut[v]) {
            out.push_back(v);
        }
    }
    return out;
}

// ---------------------------------------------------------------- lefogo2

TreeParts tree_parts(const Graph& tree, std::vector<Vertex> cover)
{
    if (!tree.is_tree()) {
        throw InvalidInput("tree parts need a tree");
    }
    const int n = tree.n();
    TreeParts parts;
    parts.cover = std::move(cover);
    parts.in_cover.assign(static_cast<std::size_t>(n), 0);
    for (Vertex u : parts.cover) {
        parts.in_cover.at(static_cast<std::size_t>(u)) = 1;
    }
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
    std::vector<int> below(static_cast<std::size_t>(n), 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        below[*it] += parts.in_cover[*it];
        if (parent[*it] >= 0) {
            below[parent[*it]] += below[*it];
        }
    }
    const int total = below[0];
    // A vertex outside the cover connects when at least two of its branches hold cover vertices.
    parts.connecting.assign(static_cast<std::size_t>(n), 0);
    for (Vertex v = 0; v < n; ++v) {
        if (parts.in_cover[v]) {
            continue;
        }
        int branches = parent[v] >= 0 && total - below[v] > 0 ? 1 : 0;
        for (Vertex c : tree.neighbors(v)) {
            if (c != parent[v] && below[c] > 0) {
                ++branches;
            }
        }
        parts.connecting[v] = branches >= 2;
    }
    parts.part_of.assign(static_cast<std::size_t>(n), -1);
    for (Vertex s = 0; s < n; ++s) {
        if (parts.in_cover[s] || parts.connecting[s] || parts.part_of[s] >= 0) {
            continue;
        }
        const int id = static_cast<int>(parts.part_root.size());
        std::vector<Vertex> members{s};
        parts.part_of[s] = id;
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (Vertex y : tree.neighbors(members[i])) {
                if (!parts.in_cover[y] && !parts.connecting[y] && parts.part_of[y] < 0) {
                    parts.part_of[y] = id;
                    members.push_back(y);
                }
            }
        }
        Vertex root = -1;
        for (Vertex x : members) {
            for (Vertex y : tree.neighbors(x)) {
                if (parts.part_of[y] != id) {
                    if (root >= 0 && root != x) {
                        throw InvariantViolation("hanging part with two attachment vertices");
                    }
                    root = x;
                }
            }
        }
        parts.part_root.push_back(root >= 0 ? root : *std::min_element(members.begin(), members.end()));
        parts.part_size.push_back(static_cast<int>(members.size()));
    }
    return parts;
}

HangingPartsAdversary::HangingPartsAdversary(const Graph& tree, int p)
{
    if (!tree.is_tree()) {
        throw InvalidInput("hanging-parts adversary needs a tree");
    }
    if (tree.n() % 2 == 0) {
        throw InvalidInput("hanging-parts adversary needs an odd number of vertices");
    }
    parts_ = tree_parts(tree, centroid_decomposition(tree, p));
    set_endgame_threshold((1 << floor_log2(tree.n())) + 3);
}

int HangingPartsAdversary::part_holding(const QueryState& state, Vertex v) const
{
    const int id = parts_.part_of[v];
    if (id < 0) {
        return -1;
    }
    const Vertex label = state.component_of(v);
    for (Vertex x = 0; x < state.n(); ++x) {
        if (state.component_of(x) == label && parts_.part_of[x] != id) {
            return -1;
        }
    }
    return id;
}

int HangingPartsAdversary::part_cut_parity(const QueryState& state, int part, const std::vector<Vertex>& members) const
{
    std::vector<char> in(static_cast<std::size_t>(state.n()), 0);
    for (Vertex x : members) {
        in[x] = 1;
    }
    int edges = 0;
    for (Vertex x : members) {
        for (Vertex y : state.graph().neighbors(x)) {
            edges += parts_.part_of[y] == part && !in[y] ? 1 : 0;
        }
    }
    // The virtual leaf hangs off the root of an even part.
    if (parts_.part_size[static_cast<std::size_t>(part)] % 2 == 0 && in[parts_.part_root[static_cast<std::size_t>(part)]]) {
        ++edges;
    }
    return edges % 2;
}

int HangingPartsAdversary::touches_cover(const QueryState& state, Vertex label) const
{
    int c = 0;
    for (Vertex x = 0; x < state.n(); ++x) {
        c += state.component_of(x) == label && parts_.in_cover[x] ? 1 : 0;
    }
    return c;
}

Answer HangingPartsAdversary::discipline(const QueryState& state, Edge e)
{
    const Vertex lx = state.component_of(e.u);
    const Vertex ly = state.component_of(e.v);
    const int wx = state.component_weight(lx);
    const int wy = state.component_weight(ly);
    const int px = part_holding(state, e.u);
    if (px >= 0 && px == part_holding(state, e.v)) {
        std::vector<Vertex> members;
        for (Vertex x = 0; x < state.n(); ++x) {
            if (state.component_of(x) == lx || state.component_of(x) == ly) {
                members.push_back(x);
            }
        }
        const int parity = part_cut_parity(state, px, members);
        return answer_for_weight(state, e,
                                 lemma_target(state.component_size(lx), state.component_size(ly), wx, wy, parity));
    }
    const int cx = touches_cover(state, lx);
    const int cy = touches_cover(state, ly);
    if (cx == 0 && cy == 0) {
        return wx + wy <= 2 ? adding(state, e) : subtracting(state, e);
    }
    if ((cx > 0) != (cy > 0)) {
        const int heavy = cx > 0 ? wx : wy;
        return heavy >= 3 ? subtracting(state, e) : adding(state, e);
    }
    return adding(state, e);
}

void HangingPartsAdversary::check(const QueryState&, const QueryState& after, Edge e)
{
    const Vertex label = after.component_of(e.u);
    const int w = after.component_weight(label);
    const int c = touches_cover(after, label);
    if (c > 0 && (w < 1 || w > 4 * c)) {
        report(describe(e) + ": component meeting the cover has weight " + std::to_string(w));
    }
    if (c == 0 && w > 2) {
        report(describe(e) + ": component off the cover has weight " + std::to_string(w));
    }
    const int part = part_holding(after, e.u);
    if (part >= 0) {
        std::vector<Vertex> members;
        for (Vertex x = 0; x < after.n(); ++x) {
            if (after.component_of(x) == label) {
                members.push_back(x);
            }
        }
        const int size = static_cast<int>(members.size());
        const int want = size % 2 == 1 ? 1 : 2 * part_cut_parity(after, part, members);
        if (w != want) {
            report(describe(e) + ": hanging-part component weight " + std::to_string(w) + ", expected " +
                   std::to_string(want));
        }
    }
}

// ---------------------------------------------------------------- registry

std::vector<Vertex> greedy_cover(const Graph& g)
{
    std::vector<Edge> left = g.edges();
    std::vector<Vertex> cover;
    while (!left.empty()) {
        std::vector<int> deg(static_cast<std::size_t>(g.n()), 0);
        for (const Edge& e : left) {
            ++deg[e.u];
            ++deg[e.v];
        }
        const Vertex best = static_cast<Vertex>(std::max_element(deg.begin(), deg.end()) - deg.begin());
        cover.push_back(best);
        std::erase_if(left, [&](const Edge& e) { return e.u == best || e.v == best; });
    }
    std::sort(cover.begin(), cover.end());
    return cover;
}

std::unique_ptr<Adversary> make_adversary(const std::string& name, const Graph& g, const AdversaryOptions& options)
{
    if (name == "same") {
        return std::make_unique<ConstantAdversary>(Answer::Same);
    }
    if (name == "diff") {
        return std::make_unique<ConstantAdversary>(Answer::Diff);
    }
    if (name.rfind("coloring:", 0) == 0) {
        Coloring c = Coloring::parse(name.substr(9));
        if (c.size() != g.n()) {
            throw InvalidInput("coloring length does not match the graph");
        }
        return std::make_unique<ColoringAdversary>(std::move(c));
    }
    if (name == "eventrees") {
        return std::make_unique<ColoringAdversary>(eventrees_coloring(g));
    }
    if (name == "treelemma") {
        return std::make_unique<TreeLemmaAdversary>(g);
    }
    if (name == "lefogo1") {
        return std::make_unique<CoverAdversary>(g, options.cover.empty() ? greedy_cover(g) : options.cover);
    }
    if (name == "oddpath") {
        return std::make_unique<OddPathAdversary>(g, options.stride);
    }
    if (name == "lefogo2") {
        return std::make_unique<HangingPartsAdversary>(g, options.p);
    }
    throw InvalidInput("unknown adversary: " + name);
}

}  // namespace majority

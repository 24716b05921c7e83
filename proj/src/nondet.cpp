#include "majority/nondet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "majority/errors.hpp"

namespace majority {

namespace {

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) { std::iota(parent_.begin(), parent_.end(), 0); }
    int find(int x)
    {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(int a, int b) { parent_[find(a)] = find(b); }

private:
    std::vector<int> parent_;
};

// Component weights decided: all balanced, or one outweighs the rest.
bool decided(const std::vector<int>& signed_sums)
{
    long total = 0;
    long heaviest = 0;
    for (int s : signed_sums) {
        const long w = std::labs(s);
        total += w;
        heaviest = std::max(heaviest, w);
    }
    return total == 0 || 2 * heaviest > total;
}

bool subset_decides(const Graph& g, const Coloring& c, std::uint32_t mask)
{
    const int n = g.n();
    UnionFind uf(n);
    for (std::size_t i = 0; i < g.edges().size(); ++i)
        if (mask >> i & 1U) uf.unite(g.edges()[i].u, g.edges()[i].v);
    std::vector<int> sums(static_cast<std::size_t>(n), 0);
    for (Vertex v = 0; v < n; ++v) sums[uf.find(v)] += c[v] == Color::Red ? 1 : -1;
    return decided(sums);
}

CertReport report_for(const Coloring& c, std::vector<Edge> queries)
{
    CertReport r;
    r.coloring = c;
    r.size = static_cast<int>(queries.size());
    r.queries = std::move(queries);
    r.outcome = true_outcome(c);
    return r;
}

std::vector<int> prefix_differences(const Coloring& c)
{
    std::vector<int> d(static_cast<std::size_t>(c.size()) + 1, 0);
    for (int i = 0; i < c.size(); ++i) d[i + 1] = d[i] + (c[i] == Color::Red ? 1 : -1);
    return d;
}

// Path edges except those after the given cut positions (a cut at i separates x_i from x_{i+1}, 1-based).
std::vector<Edge> path_edges_except(int n, const std::vector<int>& cuts)
{
    std::vector<char> cut(static_cast<std::size_t>(n) + 1, 0);
    for (int i : cuts) cut.at(static_cast<std::size_t>(i)) = 1;
    std::vector<Edge> out;
    for (int i = 1; i < n; ++i)
        if (!cut[i]) out.emplace_back(i - 1, i);
    return out;
}

}  // namespace

bool certifies(const Graph& g, const Coloring& c, const std::vector<Edge>& queries)
{
    if (c.size() != g.n()) throw InvalidInput("coloring length does not match the graph");
    QueryState s(std::make_shared<const Graph>(g));
    for (const Edge& e : queries) {
        if (!g.has_edge(e.u, e.v)) return false;
        if (s.same_component(e.u, e.v)) continue;
        s = apply_query(s, e, answer_for(c, e));
    }
    const auto outcome = terminal_outcome(s);
    return outcome && outcome_valid_for(*outcome, c);
}

CertReport cert(const Graph& g, const Coloring& c)
{
    if (c.size() != g.n()) throw InvalidInput("coloring length does not match the graph");
    if (!g.is_solvable()) throw Unsolvable("graph has no solution");
    const int m = static_cast<int>(g.edge_count());
    if (m > 24) throw InvalidInput("exhaustive certificate search is limited to 24 edges");
    // Adding a query never undoes a decided state, so the first hit in size order is optimal.
    for (int size = 0; size <= m; ++size) {
        if (size == 0) {
            if (subset_decides(g, c, 0)) return report_for(c, {});
            continue;
        }
        std::uint32_t mask = (1U << size) - 1;
        const std::uint32_t limit = 1U << m;
        while (mask < limit) {
            if (subset_decides(g, c, mask)) {
                std::vector<Edge> q;
                for (int i = 0; i < m; ++i)
                    if (mask >> i & 1U) q.push_back(g.edges()[static_cast<std::size_t>(i)]);
                return report_for(c, std::move(q));
            }
            const std::uint32_t low = mask & (~mask + 1);
            const std::uint32_t ripple = mask + low;
            mask = ripple | (((mask ^ ripple) >> 2) / low);
        }
    }
    throw InvariantViolation("querying every edge of a solvable graph must decide the outcome");
}

int m_nd(const Graph& g)
{
    const int n = g.n();
    if (n > 16) throw InvalidInput("m_nd enumerates colorings only for n <= 16");
    int best = 0;
    // cert is invariant under a global flip: fix vertex n-1 red.
    const std::uint64_t count = n == 0 ? 1 : std::uint64_t{1} << (n - 1);
    for (std::uint64_t mask = 0; mask < count; ++mask)
        best = std::max(best, cert(g, Coloring::from_mask(n, mask)).size);
    return best;
}

CertReport path_cert(const Coloring& c)
{
    const int n = c.size();
    if (n <= 1) return report_for(c, {});
    const std::vector<int> d = prefix_differences(c);
    const int total = d[n];
    if (total == 0) {
        std::vector<int> cuts;
        for (int i = 1; i < n; ++i)
            if (d[i] == 0) cuts.push_back(i);
        return report_for(c, path_edges_except(n, cuts));
    }
    // Intervals between cuts; one dominant interval of weight W must exceed the
    // summed weights S of the others. slack = W - S in [-R, R], with R the range of d.
    const int lo = *std::min_element(d.begin(), d.end());
    const int hi = *std::max_element(d.begin(), d.end());
    const int range = hi - lo;
    const int levels = range + 1;
    const int slacks = 2 * range + 1;
    constexpr int kDead = std::numeric_limits<int>::min() / 2;
    auto idx = [&](int phase, int level, int slack) {
        return (static_cast<std::size_t>(phase) * levels + static_cast<std::size_t>(level - lo)) * slacks +
               static_cast<std::size_t>(slack + range);
    };
    // best[phase][level][slack]: most intervals closed so far, last cut at that level.
    std::vector<int> best(2 * static_cast<std::size_t>(levels) * slacks, kDead);
    std::vector<int> when(best.size(), 0);  // position of the cut that produced the entry
    struct Step {
        int level = 0;
        int slack = 0;
        int phase = 0;
        int at = -1;
    };
    // Predecessor of the entry written at position i, row d[i]: indexed [i][phase][slack].
    std::vector<Step> back(static_cast<std::size_t>(n + 1) * 2 * slacks);
    auto back_idx = [&](int i, int phase, int slack) {
        return (static_cast<std::size_t>(i) * 2 + static_cast<std::size_t>(phase)) * slacks +
               static_cast<std::size_t>(slack + range);
    };
    best[idx(0, 0, 0)] = 0;

    std::vector<int> row(2 * static_cast<std::size_t>(slacks));
    std::vector<Step> row_back(row.size());
    for (int i = 1; i <= n; ++i) {
        const int here = d[i];
        // The last interval must end at n, so the final row starts empty.
        for (int phase = 0; phase < 2; ++phase)
            for (int s = -range; s <= range; ++s)
                row[phase * slacks + s + range] = i == n ? kDead : best[idx(phase, here, s)];
        std::fill(row_back.begin(), row_back.end(), Step{});
        for (int phase = 0; phase < 2; ++phase) {
            for (int level = lo; level <= hi; ++level) {
                const int w = std::abs(here - level);
                for (int s = -range; s <= range; ++s) {
                    const int v = best[idx(phase, level, s)];
                    if (v == kDead) continue;
                    const Step from{level, s, phase, when[idx(phase, level, s)]};
                    auto offer = [&](int to_phase, int to_slack) {
                        if (to_slack < -range || to_slack > range) return;
                        if (to_phase == 1 && to_slack <= 0) return;  // later intervals only lower the slack
                        int& slot = row[to_phase * slacks + to_slack + range];
                        if (v + 1 > slot) {
                            slot = v + 1;
                            row_back[to_phase * slacks + to_slack + range] = from;
                        }
                    };
                    offer(phase, s - w);
                    if (phase == 0) offer(1, s + w);
                }
            }
        }
        if (i == n) break;
        for (int phase = 0; phase < 2; ++phase) {
            for (int s = -range; s <= range; ++s) {
                const std::size_t k = idx(phase, here, s);
                const std::size_t r = static_cast<std::size_t>(phase) * slacks + static_cast<std::size_t>(s + range);
                if (row_back[r].at >= 0) {
                    best[k] = row[r];
                    when[k] = i;
                    back[back_idx(i, phase, s)] = row_back[r];
                }
            }
        }
    }
    // After the loop, row holds the partitions whose last interval ends at n.
    int intervals = kDead;
    Step step;
    for (int s = 1; s <= range; ++s) {
        const std::size_t r = static_cast<std::size_t>(slacks) + static_cast<std::size_t>(s + range);
        if (row[r] > intervals) {
            intervals = row[r];
            step = row_back[r];
        }
    }
    if (intervals == kDead) throw InvariantViolation("path certificate search found no decided partition");
    std::vector<int> cuts;
    while (step.at > 0) {
        cuts.push_back(step.at);
        step = back[back_idx(step.at, step.phase, step.slack)];
    }
    return report_for(c, path_edges_except(n, cuts));
}

Coloring nondet_hard_coloring(int k)
{
    if (k < 2 || k % 2 != 0) throw InvalidInput("hard coloring needs an even k >= 2");
    Coloring c(k * k + 1, Color::Blue);
    for (int batch = 0; batch < k; batch += 2)
        for (int i = 0; i < k; ++i) c.set(batch * k + i, Color::Red);
    return c;
}

namespace {

// Cut positions when the total is positive but below sqrt(n) and the first extreme prefix difference is positive.
std::vector<int> query_cuts(const std::vector<int>& d, int n)
{
    const double root = std::sqrt(static_cast<double>(n));
    int extreme = 0;
    int j = 0;
    for (int i = 1; i <= n; ++i)
        if (std::abs(d[i]) > extreme) {
            extreme = std::abs(d[i]);
            j = i;
        }
    if (extreme < 2 * root) {
        // Equal prefix differences bound balanced stretches; cut at the most frequent value.
        std::vector<int> freq(static_cast<std::size_t>(2 * extreme + 1), 0);
        for (int i = 1; i < n; ++i) ++freq[d[i] + extreme];
        int value = -extreme;
        for (int v = -extreme; v <= extreme; ++v)
            if (freq[v + extreme] > freq[value + extreme]) value = v;
        std::vector<int> cuts;
        for (int i = 1; i < n; ++i)
            if (d[i] == value) cuts.push_back(i);
        return cuts;
    }
    // Descent from the peak: each of the first floor(sqrt n) unit steps down becomes its own interval.
    const int steps = static_cast<int>(std::floor(root));
    std::vector<int> cuts{j};
    int level = d[j];
    for (int i = j + 1; i < n && static_cast<int>(cuts.size()) <= steps; ++i) {
        if (d[i] == level - 1) {
            cuts.push_back(i);
            --level;
        }
    }
    return cuts;
}

}  // namespace

std::vector<Edge> nondet_query_set(const Coloring& c)
{
    const int n = c.size();
    if (n % 2 == 0) throw InvalidInput("nondeterministic query set needs an odd path");
    Coloring work = prefix_differences(c)[n] < 0 ? c.flipped() : c;
    std::vector<int> d = prefix_differences(work);
    const int total = d[n];
    if (total >= std::sqrt(static_cast<double>(n))) {
        const int keep = n - (total + 1) / 2;
        std::vector<Edge> out;
        for (int i = 0; i < keep; ++i) out.emplace_back(i, i + 1);
        return out;
    }
    int extreme = 0;
    int sign = 1;
    for (int i = 1; i <= n; ++i)
        if (std::abs(d[i]) > extreme) {
            extreme = std::abs(d[i]);
            sign = d[i] > 0 ? 1 : -1;
        }
    bool reversed = false;
    if (sign < 0) {
        std::vector<Color> rev(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) rev[i] = work[n - 1 - i];
        work = Coloring(std::move(rev));
        d = prefix_differences(work);
        reversed = true;
    }
    std::vector<int> cuts = query_cuts(d, n);
    if (reversed)
        for (int& i : cuts) i = n - i;
    return path_edges_except(n, cuts);
}

}  // namespace majority

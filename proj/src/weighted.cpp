#include "majority/weighted.hpp"

#include <algorithm>
#include <cstdlib>

#include "majority/errors.hpp"

namespace majority {

namespace {

bool terminal_key(const std::vector<int>& w)
{
    int total = 0;
    for (int x : w) {
        total += x;
    }
    if (total == 0) {
        return true;
    }
    return 2 * w.front() > total;
}

std::vector<int> merge_key(const std::vector<int>& w, std::size_t i, std::size_t j, bool same)
{
    std::vector<int> out;
    out.reserve(w.size() - 1);
    for (std::size_t t = 0; t < w.size(); ++t) {
        if (t != i && t != j) {
            out.push_back(w[t]);
        }
    }
    const int merged = same ? w[i] + w[j] : std::abs(w[i] - w[j]);
    if (merged > 0) {
        out.insert(std::upper_bound(out.begin(), out.end(), merged, std::greater<>()), merged);
    }
    return out;
}

std::vector<int> canonical_key(const WeightVector& w)
{
    std::vector<int> key;
    for (int x : w.values()) {
        if (x > 0) {
            key.push_back(x);
        }
    }
    return key;
}

}  // namespace

std::optional<WeightedOutcome> weighted_terminal(const WeightVector& w)
{
    const int total = w.total();
    if (total == 0) {
        return WeightedOutcome{true, 0};
    }
    if (2 * w.max() > total) {
        return WeightedOutcome{false, 0};
    }
    return std::nullopt;
}

std::size_t WeightedSolver::KeyHash::operator()(const std::vector<int>& key) const noexcept
{
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (int x : key) {
        h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

int WeightedSolver::solve(const WeightVector& w)
{
    return solve_canonical(canonical_key(w));
}

std::size_t WeightedSolver::table_size() const
{
    std::lock_guard lock(mutex_);
    return memo_.size();
}

int WeightedSolver::solve_canonical(const std::vector<int>& key)
{
    if (key.empty() || terminal_key(key)) {
        return 0;
    }
    {
        std::lock_guard lock(mutex_);
        if (auto it = memo_.find(key); it != memo_.end()) {
            return it->second;
        }
    }
    const int k = static_cast<int>(key.size());
    int total = 0;
    for (int x : key) {
        total += x;
    }
    // Spanning play: k-1 queries, or k-2 when the total is odd.
    int best = (total % 2 == 1 && k >= 2) ? k - 2 : k - 1;
    for (std::size_t i = 0; i < key.size() && best > 1; ++i) {
        if (i > 0 && key[i] == key[i - 1]) {
            continue;
        }
        for (std::size_t j = i + 1; j < key.size() && best > 1; ++j) {
            if (j > i + 1 && key[j] == key[j - 1]) {
                continue;
            }
            const int first = solve_canonical(merge_key(key, i, j, true));
            if (1 + first >= best) {
                continue;
            }
            const int second = solve_canonical(merge_key(key, i, j, false));
            best = std::min(best, 1 + std::max(first, second));
        }
    }
    std::lock_guard lock(mutex_);
    memo_.emplace(key, best);
    return best;
}

std::optional<std::pair<std::size_t, std::size_t>> WeightedSolver::best_query(const WeightVector& w)
{
    if (weighted_terminal(w)) {
        return std::nullopt;
    }
    const int value = solve(w);
    for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t j = i + 1; j < w.size(); ++j) {
            const int a = solve(w.merged(i, j, true));
            const int b = solve(w.merged(i, j, false));
            if (1 + std::max(a, b) == value) {
                return std::make_pair(i, j);
            }
        }
    }
    throw InvariantViolation("no optimal query found for " + w.to_string());
}

WeightedSolver& shared_weighted_solver()
{
    static WeightedSolver solver;
    return solver;
}

int solve_weighted(const WeightVector& w)
{
    return shared_weighted_solver().solve(w);
}

namespace {

// reachable[s + offset] for signed sums s of all balls except `skip`.
std::vector<char> signed_sums_without(const WeightVector& w, std::size_t skip, int& offset)
{
    int total = 0;
    for (std::size_t t = 0; t < w.size(); ++t) {
        if (t != skip) {
            total += w[t];
        }
    }
    offset = total;
    std::vector<char> reach(static_cast<std::size_t>(2 * total + 1), 0);
    reach[static_cast<std::size_t>(offset)] = 1;
    for (std::size_t t = 0; t < w.size(); ++t) {
        if (t == skip || w[t] == 0) {
            continue;
        }
        std::vector<char> next(reach.size(), 0);
        const int x = w[t];
        for (int s = 0; s < static_cast<int>(reach.size()); ++s) {
            if (!reach[s]) {
                continue;
            }
            if (s + x < static_cast<int>(reach.size())) {
                next[s + x] = 1;
            }
            if (s - x >= 0) {
                next[s - x] = 1;
            }
        }
        reach.swap(next);
    }
    return reach;
}

}  // namespace

bool relevant(const WeightVector& w, std::size_t i)
{
    if (i >= w.size()) {
        throw InvalidInput("ball index out of range");
    }
    const int x = w[i];
    if (x == 0) {
        return false;
    }
    int offset = 0;
    const auto reach = signed_sums_without(w, i, offset);
    // Flipping ball i moves the signed total from s - x to s + x; the sign
    // (or zero-ness) changes exactly when |s| <= x.
    for (int s = -x; s <= x; ++s) {
        const int idx = s + offset;
        if (idx >= 0 && idx < static_cast<int>(reach.size()) && reach[idx]) {
            return true;
        }
    }
    return false;
}

std::vector<bool> relevant_set(const WeightVector& w)
{
    std::vector<bool> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        out[i] = relevant(w, i);
    }
    return out;
}

int relevant_count(const WeightVector& w)
{
    const auto r = relevant_set(w);
    return static_cast<int>(std::count(r.begin(), r.end(), true));
}

int relevance_threshold(const WeightVector& w)
{
    int t = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!relevant(w, i)) {
            t = std::max(t, w[i]);
        }
    }
    return t;
}

}  // namespace majority

#pragma once

// Exact value m(w) of the weighted majority game and relevance analysis.

#include <cstddef>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "majority/weights.hpp"

namespace majority {

// Terminal classification of a weight vector.
struct WeightedOutcome {
    bool no_majority = false;
    std::size_t ball = 0;  // index (in sorted order) of the winning ball when !no_majority

    bool operator==(const WeightedOutcome&) const = default;
};

std::optional<WeightedOutcome> weighted_terminal(const WeightVector& w);

// Memoized minimax over weight multisets. The memo is keyed on the sorted
// multiset with zero-weight balls removed. Safe to share between threads.
class WeightedSolver {
public:
    int solve(const WeightVector& w);

    // Lexicographically smallest index pair among the optimal first queries;
    // empty at terminal vectors.
    std::optional<std::pair<std::size_t, std::size_t>> best_query(const WeightVector& w);

    std::size_t table_size() const;

private:
    struct KeyHash {
        std::size_t operator()(const std::vector<int>& key) const noexcept;
    };

    int solve_canonical(const std::vector<int>& key);

    mutable std::mutex mutex_;
    std::unordered_map<std::vector<int>, int, KeyHash> memo_;
};

// Process-wide shared solver.
WeightedSolver& shared_weighted_solver();
int solve_weighted(const WeightVector& w);

// Ball i is relevant when, for some coloring of the other balls, its own color
// changes the majority color or whether a majority exists.
bool relevant(const WeightVector& w, std::size_t i);
std::vector<bool> relevant_set(const WeightVector& w);
int relevant_count(const WeightVector& w);

// Largest weight of a non-relevant ball (0 if every positive ball is relevant);
// ball i is relevant iff w_i exceeds it.
int relevance_threshold(const WeightVector& w);

}  // namespace majority

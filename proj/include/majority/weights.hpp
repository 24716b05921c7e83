#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace majority {

// Multiset of non-negative ball weights, kept sorted in descending order.
class WeightVector {
public:
    WeightVector() = default;
    explicit WeightVector(std::vector<int> weights);
    WeightVector(std::initializer_list<int> weights);

    std::span<const int> values() const { return weights_; }
    std::size_t size() const { return weights_.size(); }
    bool empty() const { return weights_.empty(); }
    int operator[](std::size_t i) const { return weights_[i]; }
    int total() const;
    int max() const { return weights_.empty() ? 0 : weights_.front(); }

    WeightVector without_zeros() const;
    WeightVector without(std::size_t i) const;
    WeightVector with(int weight) const;

    // Replace balls i and j (i != j) by one ball of weight w_i + w_j (same) or |w_i - w_j| (diff).
    WeightVector merged(std::size_t i, std::size_t j, bool same) const;

    WeightVector scaled(int factor) const;

    // "3,3,7,8,9"
    std::string to_string() const;
    static WeightVector parse(std::string_view text);

    auto operator<=>(const WeightVector&) const = default;

private:
    std::vector<int> weights_;
};

}  // namespace majority

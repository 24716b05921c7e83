#include "majority/weights.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <functional>
#include <numeric>

#include "majority/errors.hpp"

namespace majority {

WeightVector::WeightVector(std::vector<int> weights) : weights_(std::move(weights))
{
    for (int w : weights_) {
        if (w < 0) {
            throw InvalidInput("negative ball weight");
        }
    }
    std::sort(weights_.begin(), weights_.end(), std::greater<>());
}

WeightVector::WeightVector(std::initializer_list<int> weights)
    : WeightVector(std::vector<int>(weights))
{
}

int WeightVector::total() const
{
    return std::accumulate(weights_.begin(), weights_.end(), 0);
}

WeightVector WeightVector::without_zeros() const
{
    std::vector<int> out;
    std::copy_if(weights_.begin(), weights_.end(), std::back_inserter(out), [](int w) { return w > 0; });
    return WeightVector(std::move(out));
}

WeightVector WeightVector::without(std::size_t i) const
{
    std::vector<int> out = weights_;
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
    return WeightVector(std::move(out));
}

WeightVector WeightVector::with(int weight) const
{
    std::vector<int> out = weights_;
    out.push_back(weight);
    return WeightVector(std::move(out));
}

WeightVector WeightVector::merged(std::size_t i, std::size_t j, bool same) const
{
    if (i == j || i >= size() || j >= size()) {
        throw InvalidInput("merge needs two distinct ball indices");
    }
    const int a = weights_[i];
    const int b = weights_[j];
    std::vector<int> out;
    out.reserve(size() - 1);
    for (std::size_t t = 0; t < size(); ++t) {
        if (t != i && t != j) {
            out.push_back(weights_[t]);
        }
    }
    out.push_back(same ? a + b : std::abs(a - b));
    return WeightVector(std::move(out));
}

WeightVector WeightVector::scaled(int factor) const
{
    std::vector<int> out = weights_;
    for (int& w : out) {
        w *= factor;
    }
    return WeightVector(std::move(out));
}

std::string WeightVector::to_string() const
{
    std::string out;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (i) {
            out += ',';
        }
        out += std::to_string(weights_[i]);
    }
    return out;
}

WeightVector WeightVector::parse(std::string_view text)
{
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view token = text.substr(pos, end - pos);
        while (!token.empty() && token.front() == ' ') {
            token.remove_prefix(1);
        }
        while (!token.empty() && token.back() == ' ') {
            token.remove_suffix(1);
        }
        int value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
            throw InvalidInput("bad weight list: " + std::string(text));
        }
        out.push_back(value);
        pos = end + 1;
    }
    return WeightVector(std::move(out));
}

}  // namespace majority

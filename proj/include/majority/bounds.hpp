#pragma once

// Counting lower bounds and lemma-based hardness certificates for weight vectors.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "majority/core.hpp"
#include "majority/weights.hpp"

namespace majority {

// Number of 1 bits in the binary representation of n.
int binary_ones(std::uint64_t n);

// 2-adic valuation; infinite for zero.
struct Valuation {
    bool infinite = false;
    int value = 0;

    static Valuation inf() { return {true, 0}; }
    bool operator==(const Valuation&) const = default;
};

Valuation mu(const BigInt& k);
inline Valuation mu(std::uint64_t k) { return mu(BigInt(k)); }

// Sign assignments with signed total zero.
BigInt count_balanced(const WeightVector& w);
// Colorings in which ball i's color class has strictly more than half the weight.
BigInt count_majority_with(const WeightVector& w, std::size_t i);

enum class CertSource {
    DectreeP,
    DectreePi,
    Suly1I,
    Suly1II,
    Suly1FormaI,
    Suly1FormaII,
    Suly1CorI,
    Suly1CorII,
    Suly2I,
    Suly2II,
    Suly2Cor,
    O1G,
    ObsReduction,
    Trivial,
};

const char* to_string(CertSource s);

struct Certificate {
    int bound = 0;
    CertSource source = CertSource::Trivial;
    nlohmann::json witness;

    // True when the bound reaches the hardness target of the zero-stripped vector.
    bool proves_hard = false;
};

nlohmann::json to_json(const Certificate& c);

// max(k - mu(p), max_i k - 1 - mu(p_i)); an infinite valuation contributes 0.
Certificate dectree_bound(const WeightVector& w);

// Every certificate whose hypothesis holds for w (zero-weight balls removed first).
std::vector<Certificate> certify_lower_bound(const WeightVector& w);

// Best bound among certify_lower_bound and dectree_bound.
int best_certified_bound(const WeightVector& w);

// k-1 for even totals, k-2 for odd totals (k >= 2), the largest value m(w) can take.
int hardness_target(const WeightVector& w);
bool is_hard(const WeightVector& w);

}  // namespace majority

#include "majority/bounds.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "majority/errors.hpp"
#include "majority/weighted.hpp"

namespace majority {

int binary_ones(std::uint64_t n)
{
    return std::popcount(n);
}

Valuation mu(const BigInt& k)
{
    if (k == 0) {
        return Valuation::inf();
    }
    BigInt a = k < 0 ? BigInt(-k) : k;
    return Valuation{false, static_cast<int>(boost::multiprecision::lsb(a))};
}

namespace {

// counts[s + offset] = number of sign assignments of `balls` with signed sum s.
std::vector<BigInt> signed_sum_counts(const std::vector<int>& balls, int& offset)
{
    int total = 0;
    for (int x : balls) {
        total += x;
    }
    offset = total;
    std::vector<BigInt> counts(static_cast<std::size_t>(2 * total + 1));
    counts[static_cast<std::size_t>(offset)] = 1;
    for (int x : balls) {
        std::vector<BigInt> next(counts.size());
        for (std::size_t s = 0; s < counts.size(); ++s) {
            if (counts[s] == 0) {
                continue;
            }
            next[s + static_cast<std::size_t>(x)] += counts[s];
            next[s - static_cast<std::size_t>(x)] += counts[s];
        }
        counts.swap(next);
    }
    return counts;
}

BigInt count_signed(const std::vector<int>& balls, int target)
{
    int offset = 0;
    const auto counts = signed_sum_counts(balls, offset);
    const int idx = target + offset;
    if (idx < 0 || idx >= static_cast<int>(counts.size())) {
        return 0;
    }
    return counts[static_cast<std::size_t>(idx)];
}

bool is_power_of_two(int x)
{
    return x > 0 && std::has_single_bit(static_cast<unsigned>(x));
}

int log2_exact(int x)
{
    return std::countr_zero(static_cast<unsigned>(x));
}

int contribution(int k, int minus, const Valuation& v)
{
    if (v.infinite) {
        return 0;
    }
    return std::max(0, k - minus - v.value);
}

// Sub-multiset of `pool` summing to target; indices into pool.
std::optional<std::vector<std::size_t>> subset_with_sum(const std::vector<int>& pool, int target)
{
    if (target < 0) {
        return std::nullopt;
    }
    // from[s] = (item index used to first reach s, previous sum)
    std::vector<int> item(static_cast<std::size_t>(target + 1), -1);
    std::vector<int> prev(static_cast<std::size_t>(target + 1), -1);
    std::vector<char> reach(static_cast<std::size_t>(target + 1), 0);
    reach[0] = 1;
    for (std::size_t t = 0; t < pool.size(); ++t) {
        for (int s = target; s >= pool[t]; --s) {
            if (!reach[s] && reach[s - pool[t]]) {
                reach[s] = 1;
                item[s] = static_cast<int>(t);
                prev[s] = s - pool[t];
            }
        }
    }
    if (!reach[target]) {
        return std::nullopt;
    }
    std::vector<std::size_t> out;
    for (int s = target; s > 0; s = prev[s]) {
        out.push_back(static_cast<std::size_t>(item[s]));
    }
    return out;
}

std::vector<int> values_of(const std::vector<int>& pool, const std::vector<std::size_t>& idx)
{
    std::vector<int> out;
    for (std::size_t i : idx) {
        out.push_back(pool[i]);
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

class Certifier {
public:
    explicit Certifier(const WeightVector& original)
        : w_(original.without_zeros()), k_(static_cast<int>(w_.size())), total_(w_.total())
    {
        for (int x : w_.values()) {
            ones_ += x == 1 ? 1 : 0;
        }
    }

    std::vector<Certificate> run(int obs_depth)
    {
        trivial();
        dectree();
        suly1();
        suly1_forma();
        suly1_cor();
        suly2();
        suly2_cor();
        o1g();
        if (obs_depth > 0) {
            obs_reduction(obs_depth);
        }
        for (auto& c : out_) {
            c.proves_hard = c.bound == hardness_target(w_) && c.bound > 0;
        }
        return std::move(out_);
    }

private:
    void emit(int bound, CertSource source, nlohmann::json witness)
    {
        out_.push_back(Certificate{std::max(0, bound), source, std::move(witness), false});
    }

    void trivial()
    {
        if (weighted_terminal(w_)) {
            return;
        }
        // Some answer to every query removes at most two relevant balls, and a
        // terminal vector has at most one.
        const int r = relevant_count(w_);
        emit(std::max(1, r / 2), CertSource::Trivial, {{"relevant", r}});
    }

    void dectree()
    {
        if (k_ == 0) {
            return;
        }
        const Valuation vp = mu(count_balanced(w_));
        const int bp = contribution(k_, 0, vp);
        if (bp > 0) {
            emit(bp, CertSource::DectreeP, {{"mu_p", vp.value}});
        }
        int best = 0;
        std::size_t arg = 0;
        Valuation varg;
        for (std::size_t i = 0; i < w_.size(); ++i) {
            const Valuation vi = mu(count_majority_with(w_, i));
            const int b = contribution(k_, 1, vi);
            if (b > best) {
                best = b;
                arg = i;
                varg = vi;
            }
        }
        if (best > 0) {
            emit(best, CertSource::DectreePi, {{"i", arg}, {"mu_pi", varg.value}});
        }
    }

    // 2^n balls of weight 1, total 2^(n+1) (+1).
    void suly1()
    {
        for (int m = 1; m <= ones_ && m < k_; m *= 2) {
            if (total_ == 2 * m) {
                emit(k_ - 1, CertSource::Suly1I, {{"n", log2_exact(m)}});
            }
            if (total_ == 2 * m + 1 && k_ != m + 1) {
                emit(k_ - 2, CertSource::Suly1II, {{"n", log2_exact(m)}});
            }
        }
    }

    // 2^n equal balls of weight a; the remaining balls decide the hypothesis.
    void suly1_forma()
    {
        std::map<int, int> mult;
        for (int x : w_.values()) {
            ++mult[x];
        }
        bool found_i = false;
        bool found_ii = false;
        for (auto [a, count] : mult) {
            for (int m = 1; m <= count && k_ > m + 1; m *= 2) {
                std::vector<int> rest;
                int removed = 0;
                for (int x : w_.values()) {
                    if (x == a && removed < m) {
                        ++removed;
                    } else {
                        rest.push_back(x);
                    }
                }
                const nlohmann::json witness = {{"a", a}, {"n", log2_exact(m)}, {"rest", rest}};
                if (!found_i) {
                    const BigInt ways = count_signed(rest, a * m);
                    if (ways % 2 == 1) {
                        emit(k_ - 1, CertSource::Suly1FormaI, witness);
                        found_i = true;
                    }
                }
                if (!found_ii) {
                    if (auto last = forma_ii_last_ball(rest, a * m)) {
                        nlohmann::json wit = witness;
                        wit["last"] = *last;
                        emit(k_ - 2, CertSource::Suly1FormaII, wit);
                        found_ii = true;
                    }
                }
            }
        }
    }

    // A ball of `rest` to fix blue such that the remaining signed sums y of
    // `rest` satisfy -g < y <= g an odd number of times.
    static std::optional<int> forma_ii_last_ball(const std::vector<int>& rest, int g)
    {
        if (rest.size() < 2) {
            return std::nullopt;
        }
        std::vector<int> tried;
        for (std::size_t t = 0; t < rest.size(); ++t) {
            if (std::find(tried.begin(), tried.end(), rest[t]) != tried.end()) {
                continue;
            }
            tried.push_back(rest[t]);
            std::vector<int> others = rest;
            others.erase(others.begin() + static_cast<std::ptrdiff_t>(t));
            int offset = 0;
            const auto counts = signed_sum_counts(others, offset);
            BigInt in_range = 0;
            for (std::size_t s = 0; s < counts.size(); ++s) {
                const int y = static_cast<int>(s) - offset + rest[t];
                if (-g < y && y <= g) {
                    in_range += counts[s];
                }
            }
            if (in_range % 2 == 1) {
                return rest[t];
            }
        }
        return std::nullopt;
    }

    void suly1_cor()
    {
        for (int m = 1; m <= ones_; m *= 2) {
            for (int s = 1; m + 2 * s <= ones_ && k_ > m + 2 * s; ++s) {
                const nlohmann::json witness = {{"n", log2_exact(m)}, {"s", s}};
                if (total_ == 2 * m + 2 * s) {
                    emit(k_ - 1 - s, CertSource::Suly1CorI, witness);
                }
                if (total_ == 2 * m + 2 * s + 1 && k_ != m + 2 * s + 1) {
                    emit(k_ - 2 - s, CertSource::Suly1CorII, witness);
                }
            }
        }
    }

    std::vector<int> balls_where(bool (*pred)(int)) const
    {
        std::vector<int> out;
        for (int x : w_.values()) {
            if (pred(x)) {
                out.push_back(x);
            }
        }
        return out;
    }

    void suly2()
    {
        const auto pool = balls_where([](int x) { return is_power_of_two(x); });
        if (total_ % 2 == 0 && is_power_of_two(total_) && total_ >= 2) {
            const int half = total_ / 2;
            if (auto idx = subset_with_sum(pool, half)) {
                emit(k_ - 1, CertSource::Suly2I, {{"n", log2_exact(half)}, {"powers", values_of(pool, *idx)}});
            }
        }
        if (total_ % 2 == 1 && is_power_of_two(total_ - 1) && total_ >= 3) {
            const int half = (total_ - 1) / 2;
            if (k_ > half + 1) {
                if (auto idx = subset_with_sum(pool, half)) {
                    emit(k_ - 2, CertSource::Suly2II, {{"n", log2_exact(half)}, {"powers", values_of(pool, *idx)}});
                }
            }
        }
    }

    // Shared shape of the two k-3 statements: total 2^(n+1)+3, k > 2^n+2.
    std::optional<int> k3_half() const
    {
        if (total_ < 5 || (total_ - 3) % 2 != 0) {
            return std::nullopt;
        }
        const int half = (total_ - 3) / 2;
        if (!is_power_of_two(half) || k_ <= half + 2) {
            return std::nullopt;
        }
        return half;
    }

    void suly2_cor()
    {
        const auto half = k3_half();
        if (!half || ones_ == 0) {
            return;
        }
        // One weight-1 ball is held out of the power-of-two group.
        auto pool = balls_where([](int x) { return is_power_of_two(x); });
        pool.erase(std::find(pool.begin(), pool.end(), 1));
        if (auto idx = subset_with_sum(pool, *half)) {
            emit(k_ - 3, CertSource::Suly2Cor, {{"n", log2_exact(*half)}, {"powers", values_of(pool, *idx)}});
        }
    }

    void o1g()
    {
        const auto half = k3_half();
        if (!half) {
            return;
        }
        const auto pool = balls_where([](int x) { return x == 1 || x == 2; });
        if (auto idx = subset_with_sum(pool, *half)) {
            emit(k_ - 3, CertSource::O1G, {{"n", log2_exact(*half)}, {"small", values_of(pool, *idx)}});
        }
    }

    // A hard vector with a repeated weight stays hard after merging the pair:
    // look for an even ball whose split into two halves is certified hard.
    void obs_reduction(int depth)
    {
        if (w_.size() + 1 > 24) {
            return;
        }
        const int target = hardness_target(w_);
        std::vector<int> tried;
        for (std::size_t i = 0; i < w_.size(); ++i) {
            const int x = w_[i];
            if (x % 2 != 0 || x == 0 || std::find(tried.begin(), tried.end(), x) != tried.end()) {
                continue;
            }
            tried.push_back(x);
            const WeightVector split = w_.without(i).with(x / 2).with(x / 2);
            Certifier inner(split);
            for (const Certificate& c : inner.run(depth - 1)) {
                if (!c.proves_hard) {
                    continue;
                }
                nlohmann::json chain = nlohmann::json::array();
                chain.push_back(split.to_string());
                if (c.source == CertSource::ObsReduction) {
                    for (const auto& step : c.witness["chain"]) {
                        chain.push_back(step);
                    }
                }
                emit(target, CertSource::ObsReduction,
                     {{"split", x}, {"chain", chain}, {"via", to_string(c.source)}});
                return;
            }
        }
    }

    WeightVector w_;
    int k_ = 0;
    int total_ = 0;
    int ones_ = 0;
    std::vector<Certificate> out_;
};

}  // namespace

BigInt count_balanced(const WeightVector& w)
{
    return count_signed(std::vector<int>(w.values().begin(), w.values().end()), 0);
}

BigInt count_majority_with(const WeightVector& w, std::size_t i)
{
    if (i >= w.size()) {
        throw InvalidInput("ball index out of range");
    }
    std::vector<int> others;
    for (std::size_t t = 0; t < w.size(); ++t) {
        if (t != i) {
            others.push_back(w[t]);
        }
    }
    int offset = 0;
    const auto counts = signed_sum_counts(others, offset);
    // Ball i on the positive side: its class wins iff s + w_i > 0. Both colors of ball i are symmetric.
    BigInt total = 0;
    for (std::size_t s = 0; s < counts.size(); ++s) {
        if (static_cast<int>(s) - offset + w[i] > 0) {
            total += counts[s];
        }
    }
    return 2 * total;
}

const char* to_string(CertSource s)
{
    switch (s) {
    case CertSource::DectreeP: return "DECTREE_P";
    case CertSource::DectreePi: return "DECTREE_PI";
    case CertSource::Suly1I: return "SULY1_I";
    case CertSource::Suly1II: return "SULY1_II";
    case CertSource::Suly1FormaI: return "SULY1FORMA_I";
    case CertSource::Suly1FormaII: return "SULY1FORMA_II";
    case CertSource::Suly1CorI: return "SULY1COR_I";
    case CertSource::Suly1CorII: return "SULY1COR_II";
    case CertSource::Suly2I: return "SULY2_I";
    case CertSource::Suly2II: return "SULY2_II";
    case CertSource::Suly2Cor: return "SULY2COR";
    case CertSource::O1G: return "O1G";
    case CertSource::ObsReduction: return "OBS_REDUCTION";
    case CertSource::Trivial: return "TRIVIAL";
    }
    return "?";
}

nlohmann::json to_json(const Certificate& c)
{
    return {{"bound", c.bound}, {"source", to_string(c.source)}, {"witness", c.witness}};
}

Certificate dectree_bound(const WeightVector& w)
{
    if (w.empty()) {
        throw InvalidInput("dectree bound needs at least one ball");
    }
    const int k = static_cast<int>(w.size());
    const Valuation vp = mu(count_balanced(w));
    Certificate best{contribution(k, 0, vp), CertSource::DectreeP,
                     {{"mu_p", vp.infinite ? nlohmann::json("inf") : nlohmann::json(vp.value)}}, false};
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Valuation vi = mu(count_majority_with(w, i));
        const int b = contribution(k, 1, vi);
        if (b > best.bound) {
            best = Certificate{b, CertSource::DectreePi, {{"i", i}, {"mu_pi", vi.value}}, false};
        }
    }
    best.proves_hard = best.bound > 0 && best.bound == hardness_target(w.without_zeros());
    return best;
}

std::vector<Certificate> certify_lower_bound(const WeightVector& w)
{
    return Certifier(w).run(3);
}

int best_certified_bound(const WeightVector& w)
{
    int best = w.empty() ? 0 : dectree_bound(w).bound;
    for (const auto& c : certify_lower_bound(w)) {
        best = std::max(best, c.bound);
    }
    return best;
}

int hardness_target(const WeightVector& w)
{
    const int k = static_cast<int>(w.size());
    if (k <= 1) {
        return 0;
    }
    return w.total() % 2 == 1 ? k - 2 : k - 1;
}

bool is_hard(const WeightVector& w)
{
    if (w.empty()) {
        throw InvalidInput("hardness needs at least one ball");
    }
    return solve_weighted(w) == hardness_target(w);
}

}  // namespace majority

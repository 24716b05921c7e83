#pragma once

// Querier and adversary interfaces, game playback and transcripts.

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "majority/core.hpp"

namespace majority {

class Querier {
public:
    virtual ~Querier() = default;
    // Called only at non-terminal states; must return a legal query.
    virtual Edge next_query(const QueryState& state) = 0;
    virtual std::unique_ptr<Querier> clone() const = 0;
    virtual std::string name() const = 0;
};

class Adversary {
public:
    virtual ~Adversary() = default;
    // `state` is the position before e is applied. The adversary commits to the answer.
    virtual Answer answer(const QueryState& state, Edge e) = 0;
    virtual std::unique_ptr<Adversary> clone() const = 0;
    virtual std::string name() const = 0;
    // Encodes the internal state that can influence future answers beyond the game state itself.
    virtual std::string digest() const { return {}; }

    // Invariant violations observed so far; empty for a correct strategy.
    const std::vector<std::string>& violations() const { return violations_; }

protected:
    void report(std::string message) { violations_.push_back(std::move(message)); }

private:
    std::vector<std::string> violations_;
};

struct Transcript {
    std::vector<std::pair<Edge, Answer>> steps;
    Outcome outcome;

    std::size_t length() const { return steps.size(); }

    // "QUERY u v -> SAME" lines, then "OUTCOME MAJORITY v" or "OUTCOME NONE".
    std::string to_text() const;
    static Transcript parse(std::string_view text);
};

// Plays until terminal. Throws IllegalQuery if the querier proposes an illegal pair.
Transcript play(const Graph& g, Querier& querier, Adversary& adversary);

// Replays the transcript from the empty state and checks the recorded outcome.
bool replay_valid(const Graph& g, const Transcript& t);

// Queries the edges of a BFS spanning forest in order, skipping intra-component pairs.
class SpanningTreeQuerier final : public Querier {
public:
    explicit SpanningTreeQuerier(const Graph& g);
    Edge next_query(const QueryState& state) override;
    std::unique_ptr<Querier> clone() const override { return std::make_unique<SpanningTreeQuerier>(*this); }
    std::string name() const override { return "spanning"; }

private:
    std::vector<Edge> order_;
};

// Uniformly random legal query from a seeded 64-bit stream.
class RandomQuerier final : public Querier {
public:
    explicit RandomQuerier(std::uint64_t seed) : seed_(seed), rng_(seed) {}
    Edge next_query(const QueryState& state) override;
    std::unique_ptr<Querier> clone() const override { return std::make_unique<RandomQuerier>(*this); }
    std::string name() const override { return "random:" + std::to_string(seed_); }

private:
    std::uint64_t seed_;
    std::mt19937_64 rng_;
};

// Always gives the same answer.
class ConstantAdversary final : public Adversary {
public:
    explicit ConstantAdversary(Answer a) : answer_(a) {}
    Answer answer(const QueryState&, Edge) override { return answer_; }
    std::unique_ptr<Adversary> clone() const override { return std::make_unique<ConstantAdversary>(*this); }
    std::string name() const override { return answer_ == Answer::Same ? "same" : "diff"; }

private:
    Answer answer_;
};

// Answers truthfully for a coloring fixed in advance.
class ColoringAdversary final : public Adversary {
public:
    explicit ColoringAdversary(Coloring c) : coloring_(std::move(c)) {}
    Answer answer(const QueryState&, Edge e) override { return answer_for(coloring_, e); }
    std::unique_ptr<Adversary> clone() const override { return std::make_unique<ColoringAdversary>(*this); }
    std::string name() const override { return "coloring:" + coloring_.to_string(); }
    const Coloring& coloring() const { return coloring_; }

private:
    Coloring coloring_;
};

}  // namespace majority

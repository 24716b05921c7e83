#pragma once

// Adversary strategies that keep component weights under control until a
// weighted endgame, plus the decompositions they rely on.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "majority/core.hpp"
#include "majority/strategy.hpp"

namespace majority {

// Balanced coloring of an even tree in which every edge splits the tree into two unbalanced parts.
Coloring eventrees_coloring(const Graph& tree);

// Parity of the number of edges leaving the vertex set.
int cut_parity(const Graph& g, const std::vector<char>& in_set);

// Shared machinery: a discipline phase answered by rules, then an endgame in
// which each answer maximizes the weighted value of the resulting components.
class RuleAdversary : public Adversary {
public:
    Answer answer(const QueryState& state, Edge e) override;
    std::string digest() const override { return endgame_ ? "E" : "D"; }

    bool in_endgame() const { return endgame_; }
    // Whether the most recent answer came from the endgame rather than the rules.
    bool last_answer_from_endgame() const { return last_from_endgame_; }
    // Total weight at the moment the endgame started.
    std::optional<int> switch_total() const { return switch_total_; }

protected:
    // The endgame starts once the total weight is at most the threshold; negative disables it.
    void set_endgame_threshold(int threshold) { threshold_ = threshold; }

    virtual Answer discipline(const QueryState& state, Edge e) = 0;
    // Checks the strategy's invariants on the state reached by a discipline answer.
    virtual void check(const QueryState& before, const QueryState& after, Edge e) = 0;
    // Largest allowed drop in total weight per discipline answer.
    virtual int max_drop() const = 0;

    // Answer giving the target weight, or a reported violation and SAME.
    Answer answer_for_weight(const QueryState& state, Edge e, int target);
    // Answers making the merged weight the sum or the difference of the two
    // weights; which of SAME/DIFF does this depends on the endpoints' sides.
    static Answer adding(const QueryState& state, Edge e);
    static Answer subtracting(const QueryState& state, Edge e);

private:
    int threshold_ = -1;
    bool endgame_ = false;
    bool last_from_endgame_ = false;
    std::optional<int> switch_total_;
};

// Keeps every proper component at weight 1 (odd size) or 2*cut parity (even size).
class TreeLemmaAdversary final : public RuleAdversary {
public:
    explicit TreeLemmaAdversary(const Graph& g);
    std::unique_ptr<Adversary> clone() const override { return std::make_unique<TreeLemmaAdversary>(*this); }
    std::string name() const override { return "treelemma"; }

protected:
    Answer discipline(const QueryState& state, Edge e) override;
    void check(const QueryState& before, const QueryState& after, Edge e) override;
    int max_drop() const override { return 2 * 2; }
};

// For graphs whose every edge meets a small vertex set U.
class CoverAdversary final : public RuleAdversary {
public:
    CoverAdversary(const Graph& g, std::vector<Vertex> cover);
    std::unique_ptr<Adversary> clone() const override { return std::make_unique<CoverAdversary>(*this); }
    std::string name() const override { return "lefogo1"; }
    const std::vector<Vertex>& cover() const { return cover_; }

protected:
    Answer discipline(const QueryState& state, Edge e) override;
    void check(const QueryState& before, const QueryState& after, Edge e) override;
    int max_drop() const override { return 2; }

private:
    std::vector<Vertex> cover_;
    std::vector<char> in_cover_;
};

// Vertex 1, then every stride-th vertex, then the last but one.
std::vector<Vertex> oddpath_marked(int n, int stride);

// Odd paths with periodically marked vertices.
class OddPathAdversary final : public RuleAdversary {
public:
    OddPathAdversary(const Graph& path, int stride);
    std::unique_ptr<Adversary> clone() const override { return std::make_unique<OddPathAdversary>(*this); }
    std::string name() const override { return "oddpath"; }
    const std::vector<Vertex>& marked() const { return marked_list_; }

protected:
    Answer discipline(const QueryState& state, Edge e) override;
    void check(const QueryState& before, const QueryState& after, Edge e) override;
    int max_drop() const override { return 4; }

private:
    std::vector<Vertex> marked_list_;
    std::vector<char> marked_;
};

// Greedy depth-first cut: every component of T - U has at most p edges,
// counting its edges into U, and |U| <= (n-1)/p.
std::vector<Vertex> centroid_decomposition(const Graph& tree, int p);

// Connecting and hanging parts of the forest T - U.
struct TreeParts {
    std::vector<Vertex> cover;
    std::vector<char> in_cover;
    std::vector<char> connecting;
    // Hanging part index per vertex, -1 outside hanging parts.
    std::vector<int> part_of;
    std::vector<Vertex> part_root;
    std::vector<int> part_size;
};

TreeParts tree_parts(const Graph& tree, std::vector<Vertex> cover);

// Odd trees: centroid cover, connecting parts capped at weight 2, hanging
// parts answered like TreeLemmaAdversary on the part plus a virtual leaf when even.
class HangingPartsAdversary final : public RuleAdversary {
public:
    explicit HangingPartsAdversary(const Graph& tree, int p = 32);
    std::unique_ptr<Adversary> clone() const override { return std::make_unique<HangingPartsAdversary>(*this); }
    std::string name() const override { return "lefogo2"; }
    const TreeParts& parts() const { return parts_; }

protected:
    Answer discipline(const QueryState& state, Edge e) override;
    void check(const QueryState& before, const QueryState& after, Edge e) override;
    int max_drop() const override { return 4; }

private:
    // Hanging part containing the whole component of v, or -1.
    int part_holding(const QueryState& state, Vertex v) const;
    int part_cut_parity(const QueryState& state, int part, const std::vector<Vertex>& members) const;
    int touches_cover(const QueryState& state, Vertex label) const;

    TreeParts parts_;
};

struct AdversaryOptions {
    int stride = 9;
    int p = 32;
    std::vector<Vertex> cover;  // empty selects a greedy cover
};

// Names: same, diff, coloring:<RB...>, eventrees, treelemma, lefogo1, oddpath, lefogo2.
std::unique_ptr<Adversary> make_adversary(const std::string& name, const Graph& g, const AdversaryOptions& options = {});

// Greedy vertex cover by repeatedly taking a vertex of largest remaining degree.
std::vector<Vertex> greedy_cover(const Graph& g);

}  // namespace majority

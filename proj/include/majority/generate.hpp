#pragma once

// Instance generators: named graph families, free trees and seeded random graphs.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "majority/core.hpp"

namespace majority {

// Each isomorphism class of trees on n vertices exactly once (n >= 1).
std::vector<Graph> free_trees(int n);

// Vertex-rooted canonical string of a tree, identical for isomorphic trees.
std::string tree_canonical_form(const Graph& tree);

// Uniform integer in [lo, hi] from the raw 64-bit stream (same output on every platform).
int uniform_int(std::mt19937_64& rng, int lo, int hi);

Graph random_tree(int n, std::uint64_t seed);
// Erdos-Renyi G(n, p); not necessarily connected.
Graph random_graph(int n, double p, std::uint64_t seed);
// Random spanning tree plus each other pair with probability p.
Graph random_connected_graph(int n, double p, std::uint64_t seed);

struct InstanceSpec {
    std::string kind;  // path, star, complete, free-trees, random-tree, random-graph, minedge, file
    int n = 0;
    std::uint64_t seed = 0;
    double p = 0.5;
    std::string file;

    // "path:5", "free-trees:6", "random-tree:10:7", "random-graph:8:0.3:7", "minedge:8", "file:g.txt"
    static InstanceSpec parse(const std::string& text);
};

std::vector<Graph> generate(const InstanceSpec& spec);

}  // namespace majority

#pragma once

// Verification cost when the coloring is known in advance: the fewest edge
// queries whose answers already decide the outcome.

#include <vector>

#include "majority/core.hpp"

namespace majority {

struct CertReport {
    Coloring coloring;
    std::vector<Edge> queries;
    Outcome outcome;
    int size = 0;
};

// True iff answering exactly these queries per c leaves a terminal state with c's outcome.
bool certifies(const Graph& g, const Coloring& c, const std::vector<Edge>& queries);

// Smallest certifying query set by exhaustive search over edge subsets (at most 24 edges).
CertReport cert(const Graph& g, const Coloring& c);

// Largest cert size over all colorings (n <= 16).
int m_nd(const Graph& g);

// cert on the labeled path with c.size() vertices, by dynamic programming over
// interval partitions; O(n R^2) for prefix-difference range R.
CertReport path_cert(const Coloring& c);

// Batch coloring of P_{k^2+1}: k batches of k alternating red/blue starting red, then one blue vertex.
Coloring nondet_hard_coloring(int k);

// Certifying query set on the path of odd order c.size() with n - Omega(sqrt n) edges.
std::vector<Edge> nondet_query_set(const Coloring& c);

}  // namespace majority

#pragma once

#include <vector>

#include "gibbs/graph.hpp"

namespace gibbs {

// Exact P[source <-> any target] under independent per-edge open
// probabilities, computed by absorbing edges one at a time while tracking a
// partition of the active frontier vertices. Feasible whenever the edge
// order keeps the frontier small (boxes in index order have frontier width
// side+1), which covers graphs far beyond the brute-force enumeration cap.
// Cross-checked against enumeration in the test suite.
double connection_reliability(const Graph& g, const std::vector<double>& edge_prob, int source,
                              const std::vector<int>& targets);

// Convenience wrapper: every edge open with the same probability p.
double connection_reliability(const Graph& g, double p, int source,
                              const std::vector<int>& targets);

}  // namespace gibbs

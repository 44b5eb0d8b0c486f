#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "gibbs/config.hpp"
#include "gibbs/graph.hpp"
#include "gibbs/model.hpp"

namespace gibbs {

// Normalized weight table over every configuration of a small graph: the
// brute-force oracle the samplers are tested against. Configurations are
// indexed densely by their bit pattern (edge subsets for percolation laws,
// spin-sign vectors for spin laws with bit v = 1 meaning spin +1).
struct ExactDistribution {
    enum class Kind { edge_law, spin_law };

    Kind kind = Kind::edge_law;
    int width = 0;
    std::uint64_t graph_hash = 0;
    double z = 0.0;              // partition function (sum of unnormalized weights)
    std::vector<double> prob;    // size 1 << width, sums to 1

    std::size_t n_states() const { return prob.size(); }
};

// Exact-engine state cap; configurable through GIBBS_LATTICE_MAX_STATES.
std::size_t max_exact_states();

// Energy of a spin configuration under the chosen convention. With a ghost
// present the field enters through the ghost edge couplings J_e = h
// (the ghost spin is +1); without one, pair_product carries the explicit
// -h sum_v s_v term and disagreement_count rejects h != 0.
double ising_energy(const Graph& g, const SpinConfig& sigma, double h, EnergyConvention conv);

ExactDistribution enumerate_measure(const Graph& g, const ModelSpec& m);

// Z without storing the support. Union-constructed laws (the currents) are
// pushforwards of normalized laws and report Z = 1.
double partition_function(const Graph& g, const ModelSpec& m);

// Sum of normalized weights over configurations satisfying the predicate,
// which receives the dense configuration index.
double event_probability(const ExactDistribution& dist,
                         const std::function<bool(std::uint32_t)>& predicate);

// P[a <-> b] for percolation laws; <s_a s_b> = 2 P[s_a = s_b] - 1 for spin
// laws. ghost_free masks the ghost edge range before the connectivity sweep.
double two_point_of(const Graph& g, const ExactDistribution& dist, int a, int b,
                    bool ghost_free = false);
double two_point_exact(const Graph& g, const ModelSpec& m, int a, int b,
                       bool ghost_free = false);

// <s_v> on a spin law.
double spin_expectation(const Graph& g, const ExactDistribution& dist, int v);

// P[v <-> target set] on an edge law.
double connection_probability_of(const Graph& g, const ExactDistribution& dist, int v,
                                 const std::vector<int>& targets, bool ghost_free = false);

// Law of X | Y (bitwise or) for independent X ~ A, Y ~ B on the same edges.
ExactDistribution exact_union_law(const ExactDistribution& a, const ExactDistribution& b);

// Pushforward under taking a uniform even subgraph of the open subgraph:
// each configuration spreads its mass uniformly over the 2^r even subsets
// of its open edges, r = o(omega) - |V| + kappa(omega).
ExactDistribution exact_ueg_of(const Graph& g, const ExactDistribution& a);

double total_variation(const ExactDistribution& a, const ExactDistribution& b);

}  // namespace gibbs

#pragma once

#include <cstdint>
#include <vector>

#include "gibbs/config.hpp"
#include "gibbs/graph.hpp"
#include "gibbs/model.hpp"

namespace gibbs {

struct ChainConfig {
    std::uint64_t seed = 1;
    int burn_in = 10000;  // sweeps discarded before the first sample
    int thinning = 1;     // sweeps between samples
    int n_samples = 1;
};

// Output of one sampler run. Exactly one of the two config vectors is
// populated, according to kind; provenance ties the batch to its graph,
// model and chain settings.
struct SampleBatch {
    enum class Kind { edge, spin };

    Kind kind = Kind::edge;
    std::vector<EdgeConfig> edge_configs;
    std::vector<SpinConfig> spin_configs;
    ModelSpec model;
    ChainConfig chain;
    std::uint64_t graph_hash = 0;

    std::size_t size() const {
        return kind == Kind::edge ? edge_configs.size() : spin_configs.size();
    }
};

// i.i.d. Bernoulli configurations: every edge open independently with
// probability p.
SampleBatch sample_bernoulli(const Graph& g, double p, const ChainConfig& chain);

// Single-site heat-bath dynamics targeting the Ising measure; the ghost
// spin is pinned to +1 and never flipped.
SampleBatch sample_ising(const Graph& g, double beta, double h, EnergyConvention conv,
                         const ChainConfig& chain);

// Edwards-Sokal alternation for q = 2: spins -> edges (agreeing edges open
// with probability p, ghost edges with p_h), edges -> spins (fair coin per
// cluster, the ghost cluster pinned +1). Records (spin, edge) pairs whose
// marginals target the Ising and random-cluster measures.
struct EsBatch {
    SampleBatch spins;
    SampleBatch edges;
};
EsBatch sample_fk_es(const Graph& g, double p, double h, const ChainConfig& chain);

// Single-bond heat-bath for the random cluster model with general q >= 1;
// the conditional odds of opening an edge follow the component-count change.
SampleBatch sample_rc_general(const Graph& g, double p, double q, double h,
                              const ChainConfig& chain);

// Exactly uniform even subgraph: XOR of a uniformly random subset of the
// fundamental cycle basis.
EdgeConfig sample_ueg(const Graph& g, std::uint64_t seed);

// Uniform even subgraph of the open subgraph of omega; result is a subset
// of omega.
EdgeConfig sample_ueg_of(const Graph& g, const EdgeConfig& omega, std::uint64_t seed);

// Metropolis chain on the even-subgraph group: propose eta XOR C for a
// basis cycle C, accept with min(1, x^(o' - o)). The basis generates the
// cycle space, so the chain is irreducible; x = 1 accepts everything and
// resamples the uniform even subgraph.
SampleBatch sample_loop_o1(const Graph& g, double x, const ChainConfig& chain);

// Union of an independent loop sample and Bernoulli(1 - sqrt(1 - x^2)).
SampleBatch sample_single_current(const Graph& g, double x, const ChainConfig& chain);

// Union of two independent single currents.
SampleBatch sample_double_current(const Graph& g, double x, const ChainConfig& chain);

// Element-wise union of two batches over the same graph.
SampleBatch sample_union(const SampleBatch& a, const SampleBatch& b);

// Dispatch on the model tag (spin batches for ising; edge batches otherwise).
SampleBatch sample_model(const Graph& g, const ModelSpec& m, const ChainConfig& chain);

}  // namespace gibbs

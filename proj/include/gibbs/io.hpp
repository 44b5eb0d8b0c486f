#pragma once

#include <string>
#include <vector>

#include "gibbs/exact.hpp"
#include "gibbs/graph.hpp"
#include "gibbs/model.hpp"
#include "gibbs/samplers.hpp"

namespace gibbs {

// Graph wire format:
//   {"vertices": N, "edges": [[u,v],...], "ghost": index|null,
//    "boundary": [indices], "embedding": [[coords],...]|null}
// Edge order in the file is the canonical index order. Tori additionally
// carry "torus_length" and "edge_shift" so wrap detection round-trips.
std::string graph_to_json(const Graph& g);
Graph graph_from_json(const std::string& text);
void save_graph(const Graph& g, const std::string& path);
Graph load_graph(const std::string& path);

std::string model_to_json(const ModelSpec& m);
ModelSpec model_from_json(const std::string& text);

// Distribution export: header row carries the graph hash and model JSON,
// then one row (config_bits_hex, weight, probability) per support point.
void save_distribution_csv(const ExactDistribution& dist, const ModelSpec& m,
                           const std::string& path);

// Batch export: one hex line per configuration plus a JSON sidecar with the
// provenance (model, chain, graph hash, kind).
void save_batch(const SampleBatch& batch, const std::string& prefix);
SampleBatch load_batch(const std::string& prefix, const Graph& g);

std::uint64_t fnv1a_file(const std::string& path);
void write_manifest(const std::vector<std::string>& files, const std::string& path);

}  // namespace gibbs

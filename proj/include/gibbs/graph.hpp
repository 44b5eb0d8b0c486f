#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gibbs/config.hpp"

namespace gibbs {

// Finite multigraph. Parallel edges are first-class (torus wraparounds and
// boundary quotients create them) and configurations always index edges,
// never vertex pairs. When a ghost vertex is present, the ghost edges occupy
// the index range [n_internal_edges, n_edges), one per original vertex, so a
// configuration splits into its internal and ghost parts by index alone.
// Self-loops only arise from boundary quotients; direct constructors reject
// them.
struct Graph {
    int n_vertices = 0;
    std::vector<std::pair<int, int>> edges;  // canonical index order
    int n_internal_edges = 0;
    int ghost = -1;
    std::vector<int> boundary;                  // sorted, never contains the ghost
    std::vector<std::vector<int>> embedding;    // per-vertex Z^d coordinate, or empty
    int torus_length = 0;                       // L for tori, 0 otherwise
    std::vector<std::vector<int>> edge_shift;   // torus only: displacement u -> v

    int n_edges() const { return static_cast<int>(edges.size()); }
    bool has_ghost() const { return ghost >= 0; }
    bool is_ghost_edge(int e) const { return e >= n_internal_edges; }
    bool is_torus() const { return torus_length > 0; }

    EdgeConfig empty_config() const { return EdgeConfig(n_edges(), hash()); }
    EdgeConfig full_config() const {
        EdgeConfig c(n_edges(), hash());
        for (int e = 0; e < n_edges(); ++e) c.set(e);
        return c;
    }

    // Structural hash used as configuration/batch provenance.
    std::uint64_t hash() const;

    // edge list grouped by vertex: (edge index, other endpoint) per entry.
    std::vector<std::vector<std::pair<int, int>>> adjacency() const;
};

// Builds a graph from an explicit edge list; rejects self-loops and
// out-of-range endpoints.
Graph make_graph(int n_vertices, std::vector<std::pair<int, int>> edges);

Graph make_path(int n_edges);
Graph make_cycle(int n_edges);
Graph make_complete(int n_vertices);

// Box Lambda_n in Z^d: vertices with sup norm <= n, nearest-neighbour edges,
// boundary at sup norm = n, embedding populated.
Graph build_box(int d, int n);

// Torus (Z/LZ)^d with L = 2n, wraparound nearest-neighbour edges and
// per-edge displacement vectors. n = 1 keeps the resulting parallel edges.
Graph build_torus(int d, int n);

// rows x cols rectangle of Z^2 with free boundary; embedding = (col, row).
Graph build_grid_2d(int rows, int cols);

// Adds a ghost vertex joined to every existing vertex. Internal edge indices
// are preserved; ghost edges are appended in vertex order.
Graph attach_ghost(const Graph& g);

struct QuotientResult {
    Graph graph;
    std::vector<int> vertex_map;  // old vertex -> new vertex
};

// Identifies the vertices inside each block of the boundary condition. The
// edge multiset is preserved index-for-index; parallel edges and self-loops
// may appear.
QuotientResult apply_boundary_condition(const Graph& g, const BoundaryCondition& bc);

struct ComponentLabeling {
    std::vector<int> label;  // per vertex, labels are dense in [0, count)
    int count = 0;           // kappa(omega)
};

// Components of (V, omega) over all vertices, isolated vertices and the
// ghost included. ghost_free masks the ghost edge range before the sweep.
ComponentLabeling connected_components(const Graph& g, const EdgeConfig& omega,
                                       bool ghost_free = false);

bool same_component(const Graph& g, const EdgeConfig& omega, int a, int b,
                    bool ghost_free = false);

// True iff every vertex has even degree in eta (self-loops add two).
bool is_even(const Graph& g, const EdgeConfig& eta);

// Maximal acyclic edge subset, greedy over ascending edge index, so the
// result (and every cycle basis derived from it) is reproducible.
EdgeConfig spanning_forest(const Graph& g);

// One fundamental cycle per non-forest edge e: the unique cycle in
// forest + e. Size = |E| - |V| + #components; every member is even.
std::vector<EdgeConfig> fundamental_cycle_basis(const Graph& g, const EdgeConfig& forest);

}  // namespace gibbs

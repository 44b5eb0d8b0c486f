#include "gibbs/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "gibbs/union_find.hpp"

namespace gibbs {

namespace {

constexpr long long kMaxBoxVertices = 1 << 22;

std::uint64_t fnv_mix(std::uint64_t h, std::uint64_t v) {
    h ^= v;
    h *= 0x100000001b3ULL;
    return h;
}

}  // namespace

std::uint64_t Graph::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    h = fnv_mix(h, static_cast<std::uint64_t>(n_vertices));
    for (const auto& [u, v] : edges) h = fnv_mix(h, (std::uint64_t(u) << 32) | std::uint64_t(v));
    h = fnv_mix(h, static_cast<std::uint64_t>(ghost + 1));
    h = fnv_mix(h, static_cast<std::uint64_t>(n_internal_edges));
    for (int b : boundary) h = fnv_mix(h, static_cast<std::uint64_t>(b) + 1);
    h = fnv_mix(h, static_cast<std::uint64_t>(torus_length));
    for (const auto& coord : embedding)
        for (int c : coord) h = fnv_mix(h, static_cast<std::uint64_t>(c + (1 << 20)));
    return h;
}

std::vector<std::vector<std::pair<int, int>>> Graph::adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(n_vertices);
    for (int e = 0; e < n_edges(); ++e) {
        const auto& [u, v] = edges[e];
        adj[u].emplace_back(e, v);
        if (u != v) adj[v].emplace_back(e, u);
    }
    return adj;
}

Graph make_graph(int n_vertices, std::vector<std::pair<int, int>> edges) {
    Graph g;
    g.n_vertices = n_vertices;
    for (const auto& [u, v] : edges) {
        if (u < 0 || u >= n_vertices || v < 0 || v >= n_vertices)
            throw std::invalid_argument("make_graph: edge endpoint out of range");
        if (u == v) throw std::invalid_argument("make_graph: self-loop");
    }
    g.edges = std::move(edges);
    g.n_internal_edges = g.n_edges();
    return g;
}

Graph make_path(int n_edges) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n_edges; ++i) e.emplace_back(i, i + 1);
    return make_graph(n_edges + 1, std::move(e));
}

Graph make_cycle(int n_edges) {
    if (n_edges < 2) throw std::invalid_argument("make_cycle: need at least 2 edges");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n_edges; ++i) e.emplace_back(i, (i + 1) % n_edges);
    return make_graph(n_edges, std::move(e));
}

Graph make_complete(int n_vertices) {
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n_vertices; ++u)
        for (int v = u + 1; v < n_vertices; ++v) e.emplace_back(u, v);
    return make_graph(n_vertices, std::move(e));
}

namespace {

// Mixed-radix index of a coordinate tuple with digits in [0, side).
int coord_index(const std::vector<int>& digits, int side) {
    int idx = 0;
    for (int d : digits) idx = idx * side + d;
    return idx;
}

}  // namespace

Graph build_box(int d, int n) {
    if (d < 1) throw std::invalid_argument("build_box: d must be positive");
    if (n < 0) throw std::invalid_argument("build_box: n must be nonnegative");
    const int side = 2 * n + 1;
    long long total = 1;
    for (int k = 0; k < d; ++k) {
        total *= side;
        if (total > kMaxBoxVertices) throw std::invalid_argument("build_box: size limit exceeded");
    }

    Graph g;
    g.n_vertices = static_cast<int>(total);
    g.embedding.assign(g.n_vertices, std::vector<int>(d, 0));

    std::vector<int> digits(d, 0);
    for (int idx = 0; idx < g.n_vertices; ++idx) {
        int sup = 0;
        for (int k = 0; k < d; ++k) {
            g.embedding[idx][k] = digits[k] - n;
            sup = std::max(sup, std::abs(digits[k] - n));
        }
        if (sup == n && n > 0) g.boundary.push_back(idx);
        if (n == 0) g.boundary.push_back(idx);
        for (int k = 0; k < d; ++k) {
            if (digits[k] + 1 < side) {
                auto nb = digits;
                nb[k] += 1;
                g.edges.emplace_back(idx, coord_index(nb, side));
            }
        }
        // advance mixed-radix counter (last digit fastest, matching coord_index)
        for (int k = d - 1; k >= 0; --k) {
            if (++digits[k] < side) break;
            digits[k] = 0;
        }
    }
    g.n_internal_edges = g.n_edges();
    return g;
}

Graph build_torus(int d, int n) {
    if (d < 1) throw std::invalid_argument("build_torus: d must be positive");
    if (n < 1) throw std::invalid_argument("build_torus: n must be positive");
    const int L = 2 * n;
    long long total = 1;
    for (int k = 0; k < d; ++k) {
        total *= L;
        if (total > kMaxBoxVertices) throw std::invalid_argument("build_torus: size limit exceeded");
    }

    Graph g;
    g.n_vertices = static_cast<int>(total);
    g.torus_length = L;
    g.embedding.assign(g.n_vertices, std::vector<int>(d, 0));

    std::vector<int> digits(d, 0);
    for (int idx = 0; idx < g.n_vertices; ++idx) {
        g.embedding[idx] = digits;
        // L = 2 emits each pair from both endpoints; the two parallel edges
        // are the two distinct geodesics and both carry shift +1.
        for (int k = 0; k < d; ++k) {
            auto nb = digits;
            nb[k] = (nb[k] + 1) % L;
            g.edges.emplace_back(idx, coord_index(nb, L));
            std::vector<int> shift(d, 0);
            shift[k] = 1;
            g.edge_shift.push_back(std::move(shift));
        }
        for (int k = d - 1; k >= 0; --k) {
            if (++digits[k] < L) break;
            digits[k] = 0;
        }
    }
    g.n_internal_edges = g.n_edges();
    return g;
}

Graph build_grid_2d(int rows, int cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("build_grid_2d: empty grid");
    if (static_cast<long long>(rows) * cols > kMaxBoxVertices)
        throw std::invalid_argument("build_grid_2d: size limit exceeded");
    Graph g;
    g.n_vertices = rows * cols;
    g.embedding.assign(g.n_vertices, std::vector<int>(2, 0));
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            g.embedding[id(r, c)] = {c, r};
            if (c + 1 < cols) g.edges.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows) g.edges.emplace_back(id(r, c), id(r + 1, c));
        }
    g.n_internal_edges = g.n_edges();
    return g;
}

Graph attach_ghost(const Graph& g) {
    if (g.has_ghost()) throw std::invalid_argument("attach_ghost: ghost already present");
    Graph out = g;
    out.ghost = g.n_vertices;
    out.n_vertices = g.n_vertices + 1;
    out.n_internal_edges = g.n_edges();
    for (int v = 0; v < g.n_vertices; ++v) out.edges.emplace_back(v, out.ghost);
    if (!out.embedding.empty()) out.embedding.emplace_back();  // ghost has no coordinate
    if (!out.edge_shift.empty())
        out.edge_shift.resize(out.edges.size(), std::vector<int>());
    return out;
}

QuotientResult apply_boundary_condition(const Graph& g, const BoundaryCondition& bc) {
    std::vector<int> block_of(g.n_vertices, -1);
    int covered = 0;
    for (std::size_t b = 0; b < bc.blocks.size(); ++b) {
        if (bc.blocks[b].empty())
            throw std::invalid_argument("apply_boundary_condition: empty block");
        for (int v : bc.blocks[b]) {
            if (v < 0 || v >= g.n_vertices || v == g.ghost ||
                !std::binary_search(g.boundary.begin(), g.boundary.end(), v))
                throw std::invalid_argument("apply_boundary_condition: block vertex not in boundary");
            if (block_of[v] != -1)
                throw std::invalid_argument("apply_boundary_condition: blocks overlap");
            block_of[v] = static_cast<int>(b);
            ++covered;
        }
    }
    if (covered != static_cast<int>(g.boundary.size()))
        throw std::invalid_argument("apply_boundary_condition: blocks do not cover the boundary");

    QuotientResult res;
    res.vertex_map.assign(g.n_vertices, -1);
    std::vector<int> block_new(bc.blocks.size(), -1);
    int next = 0;
    for (int v = 0; v < g.n_vertices; ++v) {
        if (block_of[v] >= 0) {
            if (block_new[block_of[v]] < 0) block_new[block_of[v]] = next++;
            res.vertex_map[v] = block_new[block_of[v]];
        } else {
            res.vertex_map[v] = next++;
        }
    }

    Graph& q = res.graph;
    q.n_vertices = next;
    q.edges.reserve(g.edges.size());
    for (const auto& [u, v] : g.edges)
        q.edges.emplace_back(res.vertex_map[u], res.vertex_map[v]);
    q.n_internal_edges = g.n_internal_edges;
    if (g.has_ghost()) q.ghost = res.vertex_map[g.ghost];
    for (std::size_t b = 0; b < bc.blocks.size(); ++b)
        if (bc.blocks[b].size() > 1) q.boundary.push_back(block_new[b]);
    for (int v : g.boundary)
        if (bc.blocks[block_of[v]].size() == 1) q.boundary.push_back(res.vertex_map[v]);
    std::sort(q.boundary.begin(), q.boundary.end());
    return res;
}

ComponentLabeling connected_components(const Graph& g, const EdgeConfig& omega, bool ghost_free) {
    const int limit = ghost_free ? g.n_internal_edges : g.n_edges();
    UnionFind uf(g.n_vertices);
    for (int e = 0; e < limit; ++e)
        if (omega.test(e)) uf.unite(g.edges[e].first, g.edges[e].second);
    ComponentLabeling out;
    out.label.assign(g.n_vertices, -1);
    for (int v = 0; v < g.n_vertices; ++v) {
        const int r = uf.find(v);
        if (out.label[r] < 0) out.label[r] = out.count++;
        out.label[v] = out.label[r];
    }
    return out;
}

bool same_component(const Graph& g, const EdgeConfig& omega, int a, int b, bool ghost_free) {
    const int limit = ghost_free ? g.n_internal_edges : g.n_edges();
    UnionFind uf(g.n_vertices);
    for (int e = 0; e < limit; ++e)
        if (omega.test(e)) uf.unite(g.edges[e].first, g.edges[e].second);
    return uf.connected(a, b);
}

bool is_even(const Graph& g, const EdgeConfig& eta) {
    std::vector<int> deg(g.n_vertices, 0);
    for (int e = 0; e < g.n_edges(); ++e)
        if (eta.test(e)) {
            deg[g.edges[e].first] ^= 1;
            deg[g.edges[e].second] ^= 1;
        }
    for (int d : deg)
        if (d) return false;
    return true;
}

EdgeConfig spanning_forest(const Graph& g) {
    UnionFind uf(g.n_vertices);
    EdgeConfig forest = g.empty_config();
    for (int e = 0; e < g.n_edges(); ++e)
        if (g.edges[e].first != g.edges[e].second &&
            uf.unite(g.edges[e].first, g.edges[e].second))
            forest.set(e);
    return forest;
}

std::vector<EdgeConfig> fundamental_cycle_basis(const Graph& g, const EdgeConfig& forest) {
    if (forest.size() != g.n_edges())
        throw std::invalid_argument("fundamental_cycle_basis: forest from a different graph");

    // Validate: acyclic and spanning (same component count as the full graph).
    UnionFind check(g.n_vertices);
    for (int e = 0; e < g.n_edges(); ++e)
        if (forest.test(e)) {
            if (g.edges[e].first == g.edges[e].second ||
                !check.unite(g.edges[e].first, g.edges[e].second))
                throw std::invalid_argument("fundamental_cycle_basis: forest has a cycle");
        }
    UnionFind full(g.n_vertices);
    for (const auto& [u, v] : g.edges)
        if (u != v) full.unite(u, v);
    if (check.n_components != full.n_components)
        throw std::invalid_argument("fundamental_cycle_basis: forest is not maximal");

    // Root every tree; record parent edge per vertex.
    std::vector<std::vector<std::pair<int, int>>> adj(g.n_vertices);
    for (int e = 0; e < g.n_edges(); ++e)
        if (forest.test(e)) {
            adj[g.edges[e].first].emplace_back(e, g.edges[e].second);
            adj[g.edges[e].second].emplace_back(e, g.edges[e].first);
        }
    std::vector<int> parent(g.n_vertices, -1), parent_edge(g.n_vertices, -1),
        depth(g.n_vertices, -1);
    std::vector<int> stack;
    for (int r = 0; r < g.n_vertices; ++r) {
        if (depth[r] >= 0) continue;
        depth[r] = 0;
        stack.push_back(r);
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (const auto& [e, w] : adj[u])
                if (depth[w] < 0) {
                    depth[w] = depth[u] + 1;
                    parent[w] = u;
                    parent_edge[w] = e;
                    stack.push_back(w);
                }
        }
    }

    std::vector<EdgeConfig> basis;
    for (int e = 0; e < g.n_edges(); ++e) {
        if (forest.test(e)) continue;
        EdgeConfig cycle = g.empty_config();
        cycle.set(e);
        int u = g.edges[e].first, v = g.edges[e].second;
        while (u != v) {
            if (depth[u] < depth[v]) std::swap(u, v);
            cycle.set(parent_edge[u]);
            u = parent[u];
        }
        basis.push_back(std::move(cycle));
    }
    return basis;
}

}  // namespace gibbs

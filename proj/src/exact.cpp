#include "gibbs/exact.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "gibbs/union_find.hpp"

namespace gibbs {

std::size_t max_exact_states() {
    static const std::size_t cap = [] {
        if (const char* env = std::getenv("GIBBS_LATTICE_MAX_STATES")) {
            const long long v = std::atoll(env);
            if (v > 0) return static_cast<std::size_t>(v);
        }
        return std::size_t{1} << 24;
    }();
    return cap;
}

namespace {

void check_state_space(int width) {
    if (width >= 63 || (std::size_t{1} << width) > max_exact_states())
        throw std::invalid_argument("exact engine: state space too large");
}

int popcount(std::uint32_t x) { return __builtin_popcount(x); }

// kappa over all vertices (ghost and isolated vertices included).
int kappa_of_mask(const Graph& g, std::uint32_t omega, int edge_limit) {
    UnionFind uf(g.n_vertices);
    for (int e = 0; e < edge_limit; ++e)
        if ((omega >> e) & 1u) uf.unite(g.edges[e].first, g.edges[e].second);
    return uf.n_components;
}

bool mask_connects(const Graph& g, std::uint32_t omega, int a, int b, int edge_limit) {
    UnionFind uf(g.n_vertices);
    for (int e = 0; e < edge_limit; ++e)
        if ((omega >> e) & 1u) uf.unite(g.edges[e].first, g.edges[e].second);
    return uf.connected(a, b);
}

bool mask_even(const Graph& g, std::uint32_t eta) {
    std::vector<int> parity(g.n_vertices, 0);
    for (int e = 0; e < g.n_edges(); ++e)
        if ((eta >> e) & 1u) {
            parity[g.edges[e].first] ^= 1;
            parity[g.edges[e].second] ^= 1;
        }
    for (int d : parity)
        if (d) return false;
    return true;
}

ExactDistribution make_edge_law(const Graph& g) {
    check_state_space(g.n_edges());
    ExactDistribution dist;
    dist.kind = ExactDistribution::Kind::edge_law;
    dist.width = g.n_edges();
    dist.graph_hash = g.hash();
    dist.prob.assign(std::size_t{1} << dist.width, 0.0);
    return dist;
}

void normalize(ExactDistribution& dist) {
    double z = 0.0;
    for (double w : dist.prob) z += w;
    if (!(z > 0.0) || !std::isfinite(z))
        throw std::runtime_error("exact engine: degenerate partition function");
    dist.z = z;
    for (double& w : dist.prob) w /= z;
}

ExactDistribution enumerate_ising(const Graph& g, const ModelSpec& m) {
    check_state_space(g.n_vertices);
    ExactDistribution dist;
    dist.kind = ExactDistribution::Kind::spin_law;
    dist.width = g.n_vertices;
    dist.graph_hash = g.hash();
    dist.prob.assign(std::size_t{1} << dist.width, 0.0);

    SpinConfig sigma;
    sigma.spins.assign(g.n_vertices, 1);
    sigma.graph_id = dist.graph_hash;
    const int n_free = g.has_ghost() ? g.n_vertices - 1 : g.n_vertices;
    const std::uint64_t ghost_bit = g.has_ghost() ? (std::uint64_t{1} << g.ghost) : 0;

    for (std::uint64_t f = 0; f < (std::uint64_t{1} << n_free); ++f) {
        // free vertices are 0..n_free-1; the ghost (if any) is the last index
        std::uint64_t idx = ghost_bit;
        for (int v = 0; v < n_free; ++v) {
            const bool up = (f >> v) & 1u;
            sigma.spins[v] = up ? 1 : -1;
            if (up) idx |= std::uint64_t{1} << v;
        }
        const double energy = ising_energy(g, sigma, m.h, m.convention);
        dist.prob[idx] = std::exp(-m.beta * energy);
    }
    normalize(dist);
    return dist;
}

ExactDistribution enumerate_bernoulli(const Graph& g, double p) {
    ExactDistribution dist = make_edge_law(g);
    const int ne = g.n_edges();
    for (std::uint64_t w = 0; w < dist.n_states(); ++w) {
        const int o = __builtin_popcountll(w);
        dist.prob[w] = std::pow(p, o) * std::pow(1.0 - p, ne - o);
    }
    normalize(dist);
    return dist;
}

ExactDistribution enumerate_random_cluster(const Graph& g, const ModelSpec& m) {
    if (m.h > 0.0 && !g.has_ghost())
        throw std::invalid_argument("random cluster: field requires a ghost vertex");
    ExactDistribution dist = make_edge_law(g);
    const int ne = g.n_edges();
    const int ni = g.n_internal_edges;
    const int ng = ne - ni;
    const double ph = g.has_ghost() ? m.ghost_edge_probability() : 0.0;
    const std::uint32_t ghost_mask = ng > 0 ? (((std::uint32_t{1} << ng) - 1) << ni) : 0;

    for (std::uint32_t w = 0; w < dist.n_states(); ++w) {
        const int o_g = popcount(w & ghost_mask);
        const int o_in = popcount(w) - o_g;
        double weight = std::pow(m.p, o_in) * std::pow(1.0 - m.p, ni - o_in);
        if (ng > 0) weight *= std::pow(ph, o_g) * std::pow(1.0 - ph, ng - o_g);
        weight *= std::pow(m.q, kappa_of_mask(g, w, ne));
        dist.prob[w] = weight;
    }
    normalize(dist);
    return dist;
}

ExactDistribution enumerate_loop_o1(const Graph& g, double x) {
    ExactDistribution dist = make_edge_law(g);
    for (std::uint32_t w = 0; w < dist.n_states(); ++w)
        if (mask_even(g, w)) dist.prob[w] = std::pow(x, popcount(w));
    normalize(dist);
    return dist;
}

}  // namespace

double ising_energy(const Graph& g, const SpinConfig& sigma, double h, EnergyConvention conv) {
    if (sigma.size() != g.n_vertices)
        throw std::invalid_argument("ising_energy: unassigned vertex");
    if (g.has_ghost() && sigma.spin(g.ghost) != 1)
        throw std::invalid_argument("ising_energy: ghost spin must be +1");

    double energy = 0.0;
    if (conv == EnergyConvention::pair_product) {
        for (int e = 0; e < g.n_edges(); ++e) {
            const double j = g.is_ghost_edge(e) ? h : 1.0;
            energy -= j * sigma.spin(g.edges[e].first) * sigma.spin(g.edges[e].second);
        }
        if (!g.has_ghost() && h != 0.0)
            for (int v = 0; v < g.n_vertices; ++v) energy -= h * sigma.spin(v);
    } else {
        if (!g.has_ghost() && h != 0.0)
            throw std::invalid_argument(
                "ising_energy: disagreement_count carries a field only through a ghost");
        for (int e = 0; e < g.n_edges(); ++e) {
            const double j = g.is_ghost_edge(e) ? h : 1.0;
            if (sigma.spin(g.edges[e].first) != sigma.spin(g.edges[e].second)) energy += j;
        }
    }
    return energy;
}

ExactDistribution enumerate_measure(const Graph& g, const ModelSpec& m) {
    switch (m.tag) {
        case ModelTag::ising:
            return enumerate_ising(g, m);
        case ModelTag::bernoulli:
            return enumerate_bernoulli(g, m.p);
        case ModelTag::random_cluster:
            return enumerate_random_cluster(g, m);
        case ModelTag::loop_o1:
            return enumerate_loop_o1(g, m.x);
        case ModelTag::single_current:
            return exact_union_law(enumerate_loop_o1(g, m.x),
                                   enumerate_bernoulli(g, single_current_bernoulli(m.x)));
        case ModelTag::double_current: {
            const auto single = enumerate_measure(g, ModelSpec::single_current(m.x));
            return exact_union_law(single, single);
        }
    }
    throw std::logic_error("enumerate_measure: unknown tag");
}

double partition_function(const Graph& g, const ModelSpec& m) {
    switch (m.tag) {
        case ModelTag::single_current:
        case ModelTag::double_current:
            return 1.0;  // pushforwards of normalized laws
        default:
            return enumerate_measure(g, m).z;
    }
}

double event_probability(const ExactDistribution& dist,
                         const std::function<bool(std::uint32_t)>& predicate) {
    double total = 0.0;
    for (std::uint32_t idx = 0; idx < dist.n_states(); ++idx)
        if (dist.prob[idx] != 0.0 && predicate(idx)) total += dist.prob[idx];
    return total;
}

double two_point_of(const Graph& g, const ExactDistribution& dist, int a, int b,
                    bool ghost_free) {
    if (a == g.ghost || b == g.ghost)
        throw std::invalid_argument("two_point_of: ghost endpoint");
    if (a == b) return 1.0;
    if (dist.kind == ExactDistribution::Kind::spin_law) {
        double same = 0.0;
        for (std::uint32_t idx = 0; idx < dist.n_states(); ++idx) {
            if (dist.prob[idx] == 0.0) continue;
            if (((idx >> a) & 1u) == ((idx >> b) & 1u)) same += dist.prob[idx];
        }
        return 2.0 * same - 1.0;
    }
    const int limit = ghost_free ? g.n_internal_edges : g.n_edges();
    double total = 0.0;
    for (std::uint32_t idx = 0; idx < dist.n_states(); ++idx)
        if (dist.prob[idx] != 0.0 && mask_connects(g, idx, a, b, limit)) total += dist.prob[idx];
    return total;
}

double two_point_exact(const Graph& g, const ModelSpec& m, int a, int b, bool ghost_free) {
    return two_point_of(g, enumerate_measure(g, m), a, b, ghost_free);
}

double spin_expectation(const Graph& g, const ExactDistribution& dist, int v) {
    if (dist.kind != ExactDistribution::Kind::spin_law)
        throw std::invalid_argument("spin_expectation: not a spin law");
    (void)g;
    double mean = 0.0;
    for (std::uint32_t idx = 0; idx < dist.n_states(); ++idx)
        mean += dist.prob[idx] * (((idx >> v) & 1u) ? 1.0 : -1.0);
    return mean;
}

double connection_probability_of(const Graph& g, const ExactDistribution& dist, int v,
                                 const std::vector<int>& targets, bool ghost_free) {
    if (dist.kind != ExactDistribution::Kind::edge_law)
        throw std::invalid_argument("connection_probability_of: not an edge law");
    const int limit = ghost_free ? g.n_internal_edges : g.n_edges();
    double total = 0.0;
    for (std::uint32_t idx = 0; idx < dist.n_states(); ++idx) {
        if (dist.prob[idx] == 0.0) continue;
        UnionFind uf(g.n_vertices);
        for (int e = 0; e < limit; ++e)
            if ((idx >> e) & 1u) uf.unite(g.edges[e].first, g.edges[e].second);
        for (int t : targets)
            if (uf.connected(v, t)) {
                total += dist.prob[idx];
                break;
            }
    }
    return total;
}

ExactDistribution exact_union_law(const ExactDistribution& a, const ExactDistribution& b) {
    if (a.kind != ExactDistribution::Kind::edge_law || b.kind != ExactDistribution::Kind::edge_law)
        throw std::invalid_argument("exact_union_law: edge laws required");
    if (a.width != b.width || a.graph_hash != b.graph_hash)
        throw std::invalid_argument("exact_union_law: mismatched edge sets");

    ExactDistribution out;
    out.kind = ExactDistribution::Kind::edge_law;
    out.width = a.width;
    out.graph_hash = a.graph_hash;
    out.z = 1.0;
    out.prob.assign(a.n_states(), 0.0);

    if (a.width <= 13) {
        // direct convolution: all terms nonnegative, no cancellation
        for (std::uint32_t i = 0; i < a.n_states(); ++i) {
            if (a.prob[i] == 0.0) continue;
            for (std::uint32_t j = 0; j < b.n_states(); ++j)
                if (b.prob[j] != 0.0) out.prob[i | j] += a.prob[i] * b.prob[j];
        }
        return out;
    }

    // subset (zeta) transform, pointwise product, Moebius inversion
    std::vector<double> fa = a.prob, fb = b.prob;
    const std::size_t n = a.n_states();
    for (int bit = 0; bit < a.width; ++bit)
        for (std::size_t s = 0; s < n; ++s)
            if ((s >> bit) & 1u) {
                fa[s] += fa[s ^ (std::size_t{1} << bit)];
                fb[s] += fb[s ^ (std::size_t{1} << bit)];
            }
    for (std::size_t s = 0; s < n; ++s) fa[s] *= fb[s];
    for (int bit = 0; bit < a.width; ++bit)
        for (std::size_t s = 0; s < n; ++s)
            if ((s >> bit) & 1u) fa[s] -= fa[s ^ (std::size_t{1} << bit)];
    for (std::size_t s = 0; s < n; ++s) out.prob[s] = std::max(0.0, fa[s]);
    return out;
}

namespace {

// Fundamental cycles of the open subgraph (V, omega), packed as edge masks.
std::vector<std::uint32_t> open_cycle_basis(const Graph& g, std::uint32_t omega) {
    UnionFind uf(g.n_vertices);
    std::vector<char> in_tree(g.n_edges(), 0);
    int rank = 0;
    for (int e = 0; e < g.n_edges(); ++e) {
        if (!((omega >> e) & 1u)) continue;
        const auto& [u, v] = g.edges[e];
        if (u != v && uf.unite(u, v))
            in_tree[e] = 1;
        else
            ++rank;
    }
    if (rank == 0) return {};

    // root the forest
    std::vector<std::vector<std::pair<int, int>>> adj(g.n_vertices);
    for (int e = 0; e < g.n_edges(); ++e)
        if (in_tree[e]) {
            adj[g.edges[e].first].emplace_back(e, g.edges[e].second);
            adj[g.edges[e].second].emplace_back(e, g.edges[e].first);
        }
    std::vector<int> parent(g.n_vertices, -1), parent_edge(g.n_vertices, -1),
        depth(g.n_vertices, 0), order;
    std::vector<char> seen(g.n_vertices, 0);
    for (int r = 0; r < g.n_vertices; ++r) {
        if (seen[r]) continue;
        seen[r] = 1;
        order.push_back(r);
        for (std::size_t qi = order.size() - 1; qi < order.size(); ++qi) {
            const int u = order[qi];
            for (const auto& [e, w] : adj[u])
                if (!seen[w]) {
                    seen[w] = 1;
                    parent[w] = u;
                    parent_edge[w] = e;
                    depth[w] = depth[u] + 1;
                    order.push_back(w);
                }
        }
    }

    std::vector<std::uint32_t> basis;
    basis.reserve(rank);
    for (int e = 0; e < g.n_edges(); ++e) {
        if (!((omega >> e) & 1u) || in_tree[e]) continue;
        auto [u, v] = g.edges[e];
        std::uint32_t cycle = std::uint32_t{1} << e;
        while (u != v) {
            if (depth[u] < depth[v]) std::swap(u, v);
            cycle |= std::uint32_t{1} << parent_edge[u];
            u = parent[u];
        }
        basis.push_back(cycle);
    }
    return basis;
}

}  // namespace

ExactDistribution exact_ueg_of(const Graph& g, const ExactDistribution& a) {
    if (a.kind != ExactDistribution::Kind::edge_law)
        throw std::invalid_argument("exact_ueg_of: edge law required");
    if (a.graph_hash != g.hash() || a.width != g.n_edges())
        throw std::invalid_argument("exact_ueg_of: law does not belong to this graph");

    ExactDistribution out;
    out.kind = ExactDistribution::Kind::edge_law;
    out.width = a.width;
    out.graph_hash = a.graph_hash;
    out.z = 1.0;
    out.prob.assign(a.n_states(), 0.0);

    for (std::uint32_t omega = 0; omega < a.n_states(); ++omega) {
        const double p = a.prob[omega];
        if (p == 0.0) continue;
        const auto basis = open_cycle_basis(g, omega);
        const int r = static_cast<int>(basis.size());
        const double share = p / static_cast<double>(std::uint64_t{1} << r);
        // Gray-code walk over all subset XORs of the basis
        std::uint32_t eta = 0;
        out.prob[0] += share;
        for (std::uint64_t i = 1; i < (std::uint64_t{1} << r); ++i) {
            eta ^= basis[__builtin_ctzll(i)];
            out.prob[eta] += share;
        }
    }
    return out;
}

double total_variation(const ExactDistribution& a, const ExactDistribution& b) {
    if (a.kind != b.kind || a.width != b.width)
        throw std::invalid_argument("total_variation: mismatched supports");
    double tv = 0.0;
    for (std::size_t i = 0; i < a.n_states(); ++i) tv += std::abs(a.prob[i] - b.prob[i]);
    return 0.5 * tv;
}

}  // namespace gibbs

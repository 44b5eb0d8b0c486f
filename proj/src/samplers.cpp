#include "gibbs/samplers.hpp"

#include <cmath>
#include <stdexcept>

#include "gibbs/rng.hpp"
#include "gibbs/union_find.hpp"

namespace gibbs {

namespace {

// fixed stream tags so every sampler draws from its own substream
enum Stream : std::uint64_t {
    kInit = 0x01,
    kSweep = 0x02,
    kIid = 0x03,
    kLoopHalf = 0x11,
    kBernoulliHalf = 0x12,
    kCurrentA = 0x21,
    kCurrentB = 0x22,
};

SampleBatch make_edge_batch(const Graph& g, const ModelSpec& m, const ChainConfig& chain) {
    SampleBatch b;
    b.kind = SampleBatch::Kind::edge;
    b.model = m;
    b.chain = chain;
    b.graph_hash = g.hash();
    b.edge_configs.reserve(chain.n_samples);
    return b;
}

void check_chain(const ChainConfig& chain) {
    if (chain.burn_in < 0 || chain.thinning < 1 || chain.n_samples < 1)
        throw std::invalid_argument("ChainConfig: burn_in >= 0, thinning >= 1, n_samples >= 1");
}

}  // namespace

SampleBatch sample_bernoulli(const Graph& g, double p, const ChainConfig& chain) {
    check_chain(chain);
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("sample_bernoulli: p outside [0,1]");
    SampleBatch batch = make_edge_batch(g, ModelSpec::bernoulli(p), chain);
    for (int s = 0; s < chain.n_samples; ++s) {
        CounterRng rng(chain.seed, CounterRng::derive(kIid, s));
        EdgeConfig c = g.empty_config();
        for (int e = 0; e < g.n_edges(); ++e)
            if (rng.bernoulli(p)) c.set(e);
        batch.edge_configs.push_back(std::move(c));
    }
    return batch;
}

SampleBatch sample_ising(const Graph& g, double beta, double h, EnergyConvention conv,
                         const ChainConfig& chain) {
    check_chain(chain);
    SampleBatch batch;
    batch.kind = SampleBatch::Kind::spin;
    batch.model = ModelSpec::ising(beta, h, conv);
    batch.chain = chain;
    batch.graph_hash = g.hash();
    batch.spin_configs.reserve(chain.n_samples);

    const auto adj = g.adjacency();
    SpinConfig sigma;
    sigma.graph_id = batch.graph_hash;
    sigma.spins.assign(g.n_vertices, 1);
    {
        CounterRng init(chain.seed, kInit);
        for (int v = 0; v < g.n_vertices; ++v)
            if (v != g.ghost) sigma.spins[v] = init.coin();
    }

    CounterRng rng(chain.seed, kSweep);
    auto sweep = [&] {
        for (int v = 0; v < g.n_vertices; ++v) {
            if (v == g.ghost) continue;
            // conditional distribution of s_v given the rest; only edges at v
            // contribute (locality), plus the direct field term when there is
            // no ghost to carry it
            double field = 0.0;
            for (const auto& [e, u] : adj[v]) {
                if (u == v) continue;  // self-loops cancel
                const double j = g.is_ghost_edge(e) ? h : 1.0;
                field += j * sigma.spin(u);
            }
            if (!g.has_ghost()) field += h;
            double p_up;
            if (conv == EnergyConvention::pair_product) {
                // w(+)/w(-) = exp(2 beta field)
                p_up = 1.0 / (1.0 + std::exp(-2.0 * beta * field));
            } else {
                // disagreement count: w(s) = exp(-beta * sum_u j [s != s_u])
                double disagree_up = 0.0, disagree_dn = 0.0;
                for (const auto& [e, u] : adj[v]) {
                    if (u == v) continue;
                    const double j = g.is_ghost_edge(e) ? h : 1.0;
                    if (sigma.spin(u) != 1) disagree_up += j;
                    if (sigma.spin(u) != -1) disagree_dn += j;
                }
                const double wu = std::exp(-beta * disagree_up);
                const double wd = std::exp(-beta * disagree_dn);
                p_up = wu / (wu + wd);
            }
            sigma.set(v, rng.next_double() < p_up ? 1 : -1);
        }
    };

    for (int s = 0; s < chain.burn_in; ++s) sweep();
    for (int n = 0; n < chain.n_samples; ++n) {
        for (int s = 0; s < chain.thinning; ++s) sweep();
        batch.spin_configs.push_back(sigma);
    }
    return batch;
}

EsBatch sample_fk_es(const Graph& g, double p, double h, const ChainConfig& chain) {
    check_chain(chain);
    if (h > 0.0 && !g.has_ghost())
        throw std::invalid_argument("sample_fk_es: field requires a ghost vertex");
    const ModelSpec rc = ModelSpec::random_cluster(p, 2.0, h);
    const double ph = g.has_ghost() ? rc.ghost_edge_probability() : 0.0;

    EsBatch out;
    out.edges = make_edge_batch(g, rc, chain);
    out.spins.kind = SampleBatch::Kind::spin;
    const double beta = -0.5 * std::log1p(-p);
    out.spins.model = ModelSpec::ising(beta, beta > 0.0 ? h / beta : 0.0);
    out.spins.chain = chain;
    out.spins.graph_hash = out.edges.graph_hash;

    SpinConfig sigma;
    sigma.graph_id = out.edges.graph_hash;
    sigma.spins.assign(g.n_vertices, 1);
    EdgeConfig omega = g.empty_config();
    CounterRng rng(chain.seed, kSweep);

    auto sweep = [&] {
        // (i) spins -> edges
        for (int e = 0; e < g.n_edges(); ++e) {
            const auto& [u, v] = g.edges[e];
            const double pe = g.is_ghost_edge(e) ? ph : p;
            omega.set(e, sigma.spin(u) == sigma.spin(v) && rng.bernoulli(pe));
        }
        // (ii) edges -> spins: fair coin per cluster, ghost cluster +1
        UnionFind uf(g.n_vertices);
        for (int e = 0; e < g.n_edges(); ++e)
            if (omega.test(e)) uf.unite(g.edges[e].first, g.edges[e].second);
        std::vector<std::int8_t> cluster_spin(g.n_vertices, 0);
        const int ghost_root = g.has_ghost() ? uf.find(g.ghost) : -1;
        for (int v = 0; v < g.n_vertices; ++v) {
            const int r = uf.find(v);
            if (cluster_spin[r] == 0)
                cluster_spin[r] = (r == ghost_root) ? 1 : static_cast<std::int8_t>(rng.coin());
            sigma.spins[v] = cluster_spin[r];
        }
    };

    for (int s = 0; s < chain.burn_in; ++s) sweep();
    for (int n = 0; n < chain.n_samples; ++n) {
        for (int s = 0; s < chain.thinning; ++s) sweep();
        out.spins.spin_configs.push_back(sigma);
        out.edges.edge_configs.push_back(omega);
    }
    return out;
}

SampleBatch sample_rc_general(const Graph& g, double p, double q, double h,
                              const ChainConfig& chain) {
    check_chain(chain);
    const ModelSpec rc = ModelSpec::random_cluster(p, q, h);
    const double ph = g.has_ghost() ? rc.ghost_edge_probability() : 0.0;
    SampleBatch batch = make_edge_batch(g, rc, chain);

    EdgeConfig omega = g.empty_config();
    CounterRng rng(chain.seed, kSweep);

    auto sweep = [&] {
        for (int e = 0; e < g.n_edges(); ++e) {
            const auto& [u, v] = g.edges[e];
            const double pe = g.is_ghost_edge(e) ? ph : p;
            // connected in omega minus e?
            UnionFind uf(g.n_vertices);
            for (int f = 0; f < g.n_edges(); ++f)
                if (f != e && omega.test(f)) uf.unite(g.edges[f].first, g.edges[f].second);
            const bool joined = uf.connected(u, v);
            // odds(open : closed) = pe : (1-pe) q^{1[not joined]}
            const double p_open = joined ? pe : pe / (pe + (1.0 - pe) * q);
            omega.set(e, rng.bernoulli(p_open));
        }
    };

    for (int s = 0; s < chain.burn_in; ++s) sweep();
    for (int n = 0; n < chain.n_samples; ++n) {
        for (int s = 0; s < chain.thinning; ++s) sweep();
        batch.edge_configs.push_back(omega);
    }
    return batch;
}

EdgeConfig sample_ueg(const Graph& g, std::uint64_t seed) {
    const auto basis = fundamental_cycle_basis(g, spanning_forest(g));
    CounterRng rng(seed, kIid);
    EdgeConfig eta = g.empty_config();
    for (const auto& cycle : basis)
        if (rng.next_u64() & 1u) eta ^= cycle;
    return eta;
}

EdgeConfig sample_ueg_of(const Graph& g, const EdgeConfig& omega, std::uint64_t seed) {
    // cycle basis of the open subgraph only
    UnionFind uf(g.n_vertices);
    EdgeConfig forest = g.empty_config();
    for (int e = 0; e < g.n_edges(); ++e)
        if (omega.test(e) && g.edges[e].first != g.edges[e].second &&
            uf.unite(g.edges[e].first, g.edges[e].second))
            forest.set(e);

    const auto open_basis = [&] {
        std::vector<EdgeConfig> basis;
        std::vector<std::vector<std::pair<int, int>>> adj(g.n_vertices);
        for (int e = 0; e < g.n_edges(); ++e)
            if (forest.test(e)) {
                adj[g.edges[e].first].emplace_back(e, g.edges[e].second);
                adj[g.edges[e].second].emplace_back(e, g.edges[e].first);
            }
        std::vector<int> parent(g.n_vertices, -1), parent_edge(g.n_vertices, -1),
            depth(g.n_vertices, -1);
        std::vector<int> order;
        for (int r = 0; r < g.n_vertices; ++r) {
            if (depth[r] >= 0) continue;
            depth[r] = 0;
            order.push_back(r);
            for (std::size_t qi = order.size() - 1; qi < order.size(); ++qi) {
                const int u = order[qi];
                for (const auto& [e, w] : adj[u])
                    if (depth[w] < 0) {
                        depth[w] = depth[u] + 1;
                        parent[w] = u;
                        parent_edge[w] = e;
                        order.push_back(w);
                    }
            }
        }
        for (int e = 0; e < g.n_edges(); ++e) {
            if (!omega.test(e) || forest.test(e)) continue;
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
    }();

    CounterRng rng(seed, kIid);
    EdgeConfig result = g.empty_config();
    for (const auto& cycle : open_basis)
        if (rng.next_u64() & 1u) result ^= cycle;
    return result;
}

SampleBatch sample_loop_o1(const Graph& g, double x, const ChainConfig& chain) {
    check_chain(chain);
    if (x <= 0.0 || x > 1.0) throw std::invalid_argument("sample_loop_o1: x outside (0,1]");
    SampleBatch batch = make_edge_batch(g, ModelSpec::loop_o1(x), chain);

    const auto basis = fundamental_cycle_basis(g, spanning_forest(g));
    EdgeConfig eta = g.empty_config();
    CounterRng rng(chain.seed, kSweep);

    const int proposals_per_sweep = std::max<std::size_t>(1, basis.size());
    auto sweep = [&] {
        for (int k = 0; k < proposals_per_sweep; ++k) {
            if (basis.empty()) return;  // tree: constant empty chain
            const auto& cycle = basis[rng.uniform_int(basis.size())];
            const int before = eta.count();
            EdgeConfig proposal = eta ^ cycle;
            const int after = proposal.count();
            if (after <= before || rng.next_double() < std::pow(x, after - before))
                eta = std::move(proposal);
        }
    };

    for (int s = 0; s < chain.burn_in; ++s) sweep();
    for (int n = 0; n < chain.n_samples; ++n) {
        for (int s = 0; s < chain.thinning; ++s) sweep();
        batch.edge_configs.push_back(eta);
    }
    return batch;
}

SampleBatch sample_single_current(const Graph& g, double x, const ChainConfig& chain) {
    check_chain(chain);
    ChainConfig loop_chain = chain;
    loop_chain.seed = CounterRng::derive(chain.seed, kLoopHalf);
    ChainConfig ber_chain = chain;
    ber_chain.seed = CounterRng::derive(chain.seed, kBernoulliHalf);
    SampleBatch loops = sample_loop_o1(g, x, loop_chain);
    SampleBatch bers = sample_bernoulli(g, single_current_bernoulli(x), ber_chain);
    SampleBatch batch = sample_union(loops, bers);
    batch.model = ModelSpec::single_current(x);
    batch.chain = chain;
    return batch;
}

SampleBatch sample_double_current(const Graph& g, double x, const ChainConfig& chain) {
    check_chain(chain);
    ChainConfig a = chain;
    a.seed = CounterRng::derive(chain.seed, kCurrentA);
    ChainConfig b = chain;
    b.seed = CounterRng::derive(chain.seed, kCurrentB);
    SampleBatch batch = sample_union(sample_single_current(g, x, a), sample_single_current(g, x, b));
    batch.model = ModelSpec::double_current(x);
    batch.chain = chain;
    return batch;
}

SampleBatch sample_union(const SampleBatch& a, const SampleBatch& b) {
    if (a.kind != SampleBatch::Kind::edge || b.kind != SampleBatch::Kind::edge)
        throw std::invalid_argument("sample_union: edge batches required");
    if (a.graph_hash != b.graph_hash || a.size() != b.size())
        throw std::invalid_argument("sample_union: mismatched batches");
    SampleBatch out = a;
    for (std::size_t i = 0; i < out.edge_configs.size(); ++i)
        out.edge_configs[i] |= b.edge_configs[i];
    return out;
}

SampleBatch sample_model(const Graph& g, const ModelSpec& m, const ChainConfig& chain) {
    switch (m.tag) {
        case ModelTag::ising:
            return sample_ising(g, m.beta, m.h, m.convention, chain);
        case ModelTag::bernoulli:
            return sample_bernoulli(g, m.p, chain);
        case ModelTag::random_cluster:
            return sample_rc_general(g, m.p, m.q, m.h, chain);
        case ModelTag::loop_o1:
            return sample_loop_o1(g, m.x, chain);
        case ModelTag::single_current:
            return sample_single_current(g, m.x, chain);
        case ModelTag::double_current:
            return sample_double_current(g, m.x, chain);
    }
    throw std::logic_error("sample_model: unknown tag");
}

}  // namespace gibbs

#include "gibbs/estimators.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gibbs/union_find.hpp"

namespace gibbs {

namespace {

EstimateResult binomial_estimate(std::size_t hits, std::size_t n) {
    EstimateResult r;
    r.n = n;
    r.mean = n ? static_cast<double>(hits) / n : 0.0;
    r.stderr_ = n ? std::sqrt(r.mean * (1.0 - r.mean) / n) : 0.0;
    return r;
}

void require_edges(const SampleBatch& batch) {
    if (batch.kind != SampleBatch::Kind::edge)
        throw std::invalid_argument("estimator: edge batch required");
}

std::vector<int> shell_vertices(const Graph& g, int k) {
    if (g.embedding.empty()) throw std::invalid_argument("estimator: embedding required");
    std::vector<int> shell;
    for (int v = 0; v < g.n_vertices; ++v) {
        if (g.embedding[v].empty()) continue;  // ghost carries no coordinate
        int sup = 0;
        for (int c : g.embedding[v]) sup = std::max(sup, std::abs(c));
        if (sup == k) shell.push_back(v);
    }
    return shell;
}

int center_vertex(const Graph& g) {
    for (int v = 0; v < g.n_vertices; ++v) {
        if (g.embedding[v].empty()) continue;
        bool zero = true;
        for (int c : g.embedding[v]) zero &= (c == 0);
        if (zero) return v;
    }
    throw std::invalid_argument("estimator: no centre vertex in embedding");
}

}  // namespace

EstimateResult connectivity(const Graph& g, const SampleBatch& batch, int a, int b,
                            bool ghost_free) {
    require_edges(batch);
    if (a == g.ghost || b == g.ghost)
        throw std::invalid_argument("connectivity: ghost endpoint");
    std::size_t hits = 0;
    for (const auto& omega : batch.edge_configs)
        if (a == b || same_component(g, omega, a, b, ghost_free)) ++hits;
    return binomial_estimate(hits, batch.edge_configs.size());
}

EstimateResult connectivity(const Graph& g, const ExactDistribution& dist, int a, int b,
                            bool ghost_free) {
    EstimateResult r;
    r.mean = two_point_of(g, dist, a, b, ghost_free);
    r.stderr_ = 0.0;
    r.n = dist.n_states();
    return r;
}

EstimateResult spin_two_point(const SampleBatch& batch, int a, int b) {
    if (batch.kind != SampleBatch::Kind::spin)
        throw std::invalid_argument("spin_two_point: spin batch required");
    double sum = 0.0, sum2 = 0.0;
    for (const auto& sigma : batch.spin_configs) {
        const double v = sigma.spin(a) * sigma.spin(b);
        sum += v;
        sum2 += v * v;
    }
    EstimateResult r;
    r.n = batch.spin_configs.size();
    r.mean = sum / r.n;
    const double var = std::max(0.0, sum2 / r.n - r.mean * r.mean);
    r.stderr_ = std::sqrt(var / r.n);
    return r;
}

EstimateResult spin_two_point_truncated(const SampleBatch& batch, int a, int b) {
    const EstimateResult ab = spin_two_point(batch, a, b);
    double ma = 0.0, mb = 0.0;
    for (const auto& sigma : batch.spin_configs) {
        ma += sigma.spin(a);
        mb += sigma.spin(b);
    }
    const std::size_t n = batch.spin_configs.size();
    ma /= n;
    mb /= n;
    const double va = (1.0 - ma * ma) / n;
    const double vb = (1.0 - mb * mb) / n;
    EstimateResult r;
    r.n = n;
    r.mean = ab.mean - ma * mb;
    r.stderr_ = std::sqrt(ab.stderr_ * ab.stderr_ + mb * mb * va + ma * ma * vb);
    return r;
}

DecayFit fit_correlation_length(const std::vector<double>& distances,
                                const std::vector<double>& taus) {
    if (distances.size() != taus.size() || distances.size() < 3)
        throw std::invalid_argument("fit_correlation_length: need >= 3 (distance, tau) points");
    const std::size_t n = distances.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(taus[i] > 0.0))
            throw std::domain_error("fit_correlation_length: nonpositive tau");
        const double x = distances[i], y = std::log(taus[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    const double det = n * sxx - sx * sx;
    if (det == 0.0) throw std::domain_error("fit_correlation_length: degenerate distances");
    const double slope = (n * sxy - sx * sy) / det;
    const double intercept = (sy - slope * sx) / n;
    if (slope >= 0.0) throw std::domain_error("fit_correlation_length: no decay");

    DecayFit fit;
    fit.xi = -1.0 / slope;
    fit.amplitude = std::exp(intercept);
    const double mean_y = sy / n;
    double ss_tot = 0.0, ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double y = std::log(taus[i]);
        const double yhat = intercept + slope * distances[i];
        ss_tot += (y - mean_y) * (y - mean_y);
        ss_res += (y - yhat) * (y - yhat);
    }
    fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.window_lo = *std::min_element(distances.begin(), distances.end());
    fit.window_hi = *std::max_element(distances.begin(), distances.end());
    return fit;
}

EstimateResult boundary_reach(const Graph& g, const SampleBatch& batch, int k, bool ghost_free) {
    require_edges(batch);
    const int origin = center_vertex(g);
    if (k == 0) return binomial_estimate(batch.edge_configs.size(), batch.edge_configs.size());
    const auto shell = shell_vertices(g, k);
    if (shell.empty()) throw std::invalid_argument("boundary_reach: radius outside the box");

    std::size_t hits = 0;
    const int limit = ghost_free ? g.n_internal_edges : g.n_edges();
    for (const auto& omega : batch.edge_configs) {
        UnionFind uf(g.n_vertices);
        for (int e = 0; e < limit; ++e)
            if (omega.test(e)) uf.unite(g.edges[e].first, g.edges[e].second);
        for (int t : shell)
            if (uf.connected(origin, t)) {
                ++hits;
                break;
            }
    }
    return binomial_estimate(hits, batch.edge_configs.size());
}

namespace {

std::pair<std::vector<int>, std::vector<int>> crossing_sides(const Graph& g, int axis) {
    if (g.embedding.empty())
        throw std::invalid_argument("crossing_probability: embedding required");
    int lo = INT_MAX, hi = INT_MIN;
    for (int v = 0; v < g.n_vertices; ++v) {
        if (g.embedding[v].empty()) continue;
        lo = std::min(lo, g.embedding[v][axis]);
        hi = std::max(hi, g.embedding[v][axis]);
    }
    std::vector<int> left, right;
    for (int v = 0; v < g.n_vertices; ++v) {
        if (g.embedding[v].empty()) continue;
        if (g.embedding[v][axis] == lo) left.push_back(v);
        if (g.embedding[v][axis] == hi) right.push_back(v);
    }
    return {left, right};
}

bool config_crosses(const Graph& g, const EdgeConfig& omega, const std::vector<int>& left,
                    const std::vector<int>& right) {
    UnionFind uf(g.n_vertices);
    for (int e = 0; e < g.n_edges(); ++e)
        if (omega.test(e)) uf.unite(g.edges[e].first, g.edges[e].second);
    for (int l : left)
        for (int r : right)
            if (uf.connected(l, r)) return true;
    return false;
}

}  // namespace

EstimateResult crossing_probability(const Graph& g, const SampleBatch& batch, int axis) {
    require_edges(batch);
    const auto [left, right] = crossing_sides(g, axis);
    std::size_t hits = 0;
    for (const auto& omega : batch.edge_configs)
        if (config_crosses(g, omega, left, right)) ++hits;
    return binomial_estimate(hits, batch.edge_configs.size());
}

double crossing_probability_exact(const Graph& g, const ExactDistribution& dist, int axis) {
    const auto [left, right] = crossing_sides(g, axis);
    double total = 0.0;
    for (std::uint32_t idx = 0; idx < dist.n_states(); ++idx) {
        if (dist.prob[idx] == 0.0) continue;
        EdgeConfig omega = EdgeConfig::from_word(g.n_edges(), dist.graph_hash, idx);
        if (config_crosses(g, omega, left, right)) total += dist.prob[idx];
    }
    return total;
}

std::vector<char> wrap_axes(const Graph& g, const EdgeConfig& omega) {
    if (!g.is_torus() || g.edge_shift.empty())
        throw std::invalid_argument("wrap_axes: torus graph required");
    const int d = static_cast<int>(g.embedding.front().size());
    std::vector<char> wraps(d, 0);
    OffsetUnionFind uf(g.n_vertices, d);
    for (int e = 0; e < g.n_internal_edges; ++e) {
        if (!omega.test(e)) continue;
        const auto mismatch = uf.unite(g.edges[e].first, g.edges[e].second, g.edge_shift[e]);
        for (int k = 0; k < static_cast<int>(mismatch.size()); ++k)
            if (mismatch[k] != 0) wraps[k] = 1;
    }
    return wraps;
}

bool wraps_around(const Graph& g, const EdgeConfig& omega, int axis) {
    return wrap_axes(g, omega).at(axis) != 0;
}

EstimateResult wrap_around_probability(const Graph& g, const SampleBatch& batch, int axis) {
    require_edges(batch);
    std::size_t hits = 0;
    for (const auto& omega : batch.edge_configs)
        if (wraps_around(g, omega, axis)) ++hits;
    return binomial_estimate(hits, batch.edge_configs.size());
}

namespace {

CriterionReport criterion_from_taus(const Graph& g_s, double k, int d,
                                    const std::vector<double>& taus) {
    CriterionReport rep;
    rep.coupling_k = k;
    rep.dimension = d;
    rep.s_descriptor = std::to_string(g_s.n_vertices) + "v/" +
                       std::to_string(g_s.n_edges()) + "e/" +
                       std::to_string(g_s.boundary.size()) + "b";
    double b = 0.0;
    for (double tau : taus) b += 2.0 * d * k * tau;
    rep.b_value = b;
    rep.satisfied = b < 1.0;
    return rep;
}

}  // namespace

CriterionReport finite_size_criterion(const Graph& g_s, const ModelSpec& m, int x0, double k,
                                      int d) {
    if (g_s.boundary.empty())
        throw std::invalid_argument("finite_size_criterion: boundary missing");
    if (x0 < 0 || x0 >= g_s.n_vertices)
        throw std::invalid_argument("finite_size_criterion: x0 outside S");
    std::vector<double> taus;
    if (g_s.n_edges() == 0) {
        for (int u : g_s.boundary) taus.push_back(u == x0 ? 1.0 : 0.0);
    } else {
        const auto law = enumerate_measure(g_s, m);
        for (int u : g_s.boundary) taus.push_back(two_point_of(g_s, law, x0, u));
    }
    return criterion_from_taus(g_s, k, d, taus);
}

CriterionReport finite_size_criterion(const Graph& g_s, const SampleBatch& batch, int x0,
                                      double k, int d) {
    if (g_s.boundary.empty())
        throw std::invalid_argument("finite_size_criterion: boundary missing");
    std::vector<double> taus;
    for (int u : g_s.boundary) taus.push_back(connectivity(g_s, batch, x0, u).mean);
    return criterion_from_taus(g_s, k, d, taus);
}

double kertesz_mu(int d) {
    return std::pow(2.0 * d + 1.0, 2 * d + 1) / std::pow(2.0 * d, 2 * d);
}

double kertesz_upper_bound_h(double p) {
    if (p <= 0.0 || p >= 1.0)
        throw std::invalid_argument("kertesz_upper_bound_h: p outside (0,1)");
    const double radicand = 2.0 * (1.0 - p) * (1.0 - p) / (p * p) - 1.0;
    if (radicand < 0.0) return std::numeric_limits<double>::infinity();
    const double arg = std::sqrt(radicand);
    if (arg >= 1.0) return std::numeric_limits<double>::infinity();
    return std::atanh(arg);
}

double kertesz_lower_bound_ph(int d, int k) {
    if (d < 1 || k < 1) throw std::invalid_argument("kertesz_lower_bound_ph: d, k >= 1");
    const double mu = kertesz_mu(d);
    // delta = mu^(-4^d); tiny, so stay in log space
    const double log_delta = -std::pow(4.0, d) * std::log(mu);
    const double delta = std::exp(log_delta);
    const double box_size = std::pow(2.0 * (3.0 * k) + 1.0, d);  // |box(3k)|
    // 1 - (1 - delta/2)^(1/box_size), evaluated stably
    return -std::expm1(std::log1p(-delta / 2.0) / box_size);
}

std::vector<double> empirical_distribution(const SampleBatch& batch) {
    int width;
    if (batch.kind == SampleBatch::Kind::edge) {
        if (batch.edge_configs.empty()) throw std::invalid_argument("empty batch");
        width = batch.edge_configs.front().size();
    } else {
        if (batch.spin_configs.empty()) throw std::invalid_argument("empty batch");
        width = batch.spin_configs.front().size();
    }
    if (width > 24) throw std::invalid_argument("empirical_distribution: width > 24");
    std::vector<double> freq(std::size_t{1} << width, 0.0);
    if (batch.kind == SampleBatch::Kind::edge) {
        for (const auto& c : batch.edge_configs) freq[c.word()] += 1.0;
    } else {
        for (const auto& s : batch.spin_configs) {
            std::uint32_t idx = 0;
            for (int v = 0; v < width; ++v)
                if (s.spin(v) > 0) idx |= std::uint32_t{1} << v;
            freq[idx] += 1.0;
        }
    }
    for (double& f : freq) f /= static_cast<double>(batch.size());
    return freq;
}

double empirical_total_variation(const SampleBatch& batch, const ExactDistribution& exact) {
    const auto freq = empirical_distribution(batch);
    if (freq.size() != exact.n_states())
        throw std::invalid_argument("empirical_total_variation: width mismatch");
    double tv = 0.0;
    for (std::size_t i = 0; i < freq.size(); ++i) tv += std::abs(freq[i] - exact.prob[i]);
    return 0.5 * tv;
}

}  // namespace gibbs

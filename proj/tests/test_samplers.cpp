#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "gibbs/estimators.hpp"
#include "gibbs/exact.hpp"
#include "gibbs/samplers.hpp"

using namespace gibbs;

namespace {

ChainConfig quick_chain(std::uint64_t seed, int n, int burn_in = 2000, int thinning = 2) {
    ChainConfig c;
    c.seed = seed;
    c.burn_in = burn_in;
    c.thinning = thinning;
    c.n_samples = n;
    return c;
}

}  // namespace

TEST_CASE("bernoulli sampler") {
    const Graph g = make_cycle(4);
    SUBCASE("degenerate levels") {
        const auto zeros = sample_bernoulli(g, 0.0, quick_chain(1, 50));
        for (const auto& c : zeros.edge_configs) CHECK(c.none());
        const auto ones = sample_bernoulli(g, 1.0, quick_chain(1, 50));
        for (const auto& c : ones.edge_configs) CHECK(c.count() == 4);
    }
    SUBCASE("p = 1/2 is uniform over the 16 configurations") {
        const int n = 100000;
        const auto batch = sample_bernoulli(g, 0.5, quick_chain(7, n));
        const auto freq = empirical_distribution(batch);
        const double sigma = std::sqrt(1.0 / 16 * 15.0 / 16 / n);
        for (double f : freq) CHECK(std::abs(f - 1.0 / 16) < 4 * sigma);
    }
    SUBCASE("determinism") {
        const auto a = sample_bernoulli(g, 0.3, quick_chain(9, 100));
        const auto b = sample_bernoulli(g, 0.3, quick_chain(9, 100));
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(a.edge_configs[i] == b.edge_configs[i]);
    }
}

TEST_CASE("ising glauber sampler") {
    SUBCASE("beta = 0 gives independent fair spins") {
        const Graph g = make_cycle(4);
        const auto batch = sample_ising(g, 0.0, 0.0, EnergyConvention::pair_product,
                                        quick_chain(3, 20000, 100, 1));
        for (int v = 0; v < 4; ++v) {
            double mean = 0.0;
            for (const auto& s : batch.spin_configs) mean += s.spin(v);
            mean /= batch.size();
            CHECK(std::abs(mean) < 3.0 / std::sqrt(static_cast<double>(batch.size())));
        }
    }
    SUBCASE("one edge at beta = ln 2, disagreement convention") {
        const Graph g = make_path(1);
        const int n = 40000;
        const auto batch = sample_ising(g, std::log(2.0), 0.0,
                                        EnergyConvention::disagreement_count, quick_chain(5, n));
        std::size_t agree = 0;
        for (const auto& s : batch.spin_configs)
            if (s.spin(0) == s.spin(1)) ++agree;
        const double freq = static_cast<double>(agree) / n;
        const double sigma = std::sqrt(2.0 / 3 * 1.0 / 3 / n);
        CHECK(std::abs(freq - 2.0 / 3) < 4 * sigma);
    }
    SUBCASE("strong field freezes spins up") {
        const Graph g = make_cycle(4);
        const auto batch =
            sample_ising(g, 1.0, 50.0, EnergyConvention::pair_product, quick_chain(4, 2000));
        std::size_t all_up = 0;
        for (const auto& s : batch.spin_configs) {
            bool up = true;
            for (int v = 0; v < 4; ++v) up &= s.spin(v) == 1;
            all_up += up;
        }
        CHECK(static_cast<double>(all_up) / batch.size() >= 1.0 - 1e-4);
    }
    SUBCASE("empirical spin law matches the oracle") {
        const Graph g = make_cycle(4);
        const double beta = 0.5;
        const auto batch = sample_ising(g, beta, 0.0, EnergyConvention::pair_product,
                                        quick_chain(11, 50000, 2000, 2));
        const auto exact = enumerate_measure(g, ModelSpec::ising(beta, 0.0));
        CHECK(empirical_total_variation(batch, exact) < 0.02);
    }
    SUBCASE("ghost spin never flips") {
        const Graph g = attach_ghost(make_path(2));
        const auto batch =
            sample_ising(g, 0.4, 0.3, EnergyConvention::pair_product, quick_chain(6, 500));
        for (const auto& s : batch.spin_configs) CHECK(s.spin(g.ghost) == 1);
    }
}

TEST_CASE("edwards-sokal sampler") {
    SUBCASE("p = 0 gives empty edges and independent spins") {
        const Graph g = make_cycle(4);
        const auto es = sample_fk_es(g, 0.0, 0.0, quick_chain(2, 3000, 10, 1));
        for (const auto& c : es.edges.edge_configs) CHECK(c.none());
        double mean = 0.0;
        for (const auto& s : es.spins.spin_configs) mean += s.spin(0);
        mean /= es.spins.size();
        CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(es.spins.size())));
    }
    SUBCASE("edge marginal matches the random cluster oracle on the 4-cycle") {
        const Graph g = make_cycle(4);
        const double p = 0.6;
        const auto es = sample_fk_es(g, p, 0.0, quick_chain(8, 60000, 2000, 2));
        const auto exact = enumerate_measure(g, ModelSpec::random_cluster(p, 2.0));
        CHECK(empirical_total_variation(es.edges, exact) < 0.015);
    }
    SUBCASE("ghosted triangle magnetization matches the field oracle") {
        const Graph g = attach_ghost(make_cycle(3));
        const double p = 0.5, h = 0.3;
        const auto es = sample_fk_es(g, p, h, quick_chain(13, 40000, 2000, 2));
        const double beta = -0.5 * std::log1p(-p);
        const auto exact = enumerate_measure(g, ModelSpec::ising(beta, h / beta));
        for (int v = 0; v < 3; ++v) {
            double mean = 0.0;
            for (const auto& s : es.spins.spin_configs) mean += s.spin(v);
            mean /= es.spins.size();
            const double target = spin_expectation(g, exact, v);
            CHECK(std::abs(mean - target) <
                  4.0 / std::sqrt(static_cast<double>(es.spins.size())) + 0.01);
        }
    }
}

TEST_CASE("general random cluster heat bath") {
    SUBCASE("q = 1 reduces to bernoulli") {
        const Graph g = make_cycle(4);
        const double p = 0.55;
        const auto batch = sample_rc_general(g, p, 1.0, 0.0, quick_chain(10, 40000, 500, 1));
        const auto exact = enumerate_measure(g, ModelSpec::bernoulli(p));
        CHECK(empirical_total_variation(batch, exact) < 0.02);
    }
    SUBCASE("p = 1 fills the graph") {
        const Graph g = make_complete(4);
        const auto batch = sample_rc_general(g, 1.0, 2.0, 0.0, quick_chain(1, 200, 50, 1));
        for (const auto& c : batch.edge_configs) CHECK(c.count() == g.n_edges());
    }
    SUBCASE("agrees with the edwards-sokal edge marginal at q = 2") {
        const Graph g = make_cycle(4);
        const double p = 0.6;
        const auto hb = sample_rc_general(g, p, 2.0, 0.0, quick_chain(21, 60000, 2000, 2));
        const auto exact = enumerate_measure(g, ModelSpec::random_cluster(p, 2.0));
        CHECK(empirical_total_variation(hb, exact) < 0.015);
    }
    SUBCASE("ghost-edge field matches the oracle") {
        const Graph g = attach_ghost(make_cycle(3));
        const auto hb = sample_rc_general(g, 0.5, 2.0, 0.4, quick_chain(41, 60000, 2000, 2));
        const auto exact = enumerate_measure(g, ModelSpec::random_cluster(0.5, 2.0, 0.4));
        CHECK(empirical_total_variation(hb, exact) < 0.015);
    }
}

TEST_CASE("uniform even subgraph sampling") {
    SUBCASE("tree gives the empty set") {
        const Graph g = make_path(5);
        for (std::uint64_t s = 0; s < 20; ++s) CHECK(sample_ueg(g, s).none());
    }
    SUBCASE("4-cycle is a fair coin between empty and full") {
        const Graph g = make_cycle(4);
        const int n = 100000;
        int full = 0;
        for (int s = 0; s < n; ++s) {
            const auto eta = sample_ueg(g, s);
            const int open = eta.count();
            REQUIRE((open == 0 || open == 4));
            full += open == 4;
        }
        CHECK(std::abs(full / static_cast<double>(n) - 0.5) < 3 * std::sqrt(0.25 / n));
    }
    SUBCASE("K4 is uniform over its 8 even subgraphs") {
        const Graph g = make_complete(4);
        const int n = 80000;
        std::map<std::uint64_t, int> counts;
        for (int s = 0; s < n; ++s) {
            const auto eta = sample_ueg(g, s);
            REQUIRE(is_even(g, eta));
            ++counts[eta.word()];
        }
        REQUIRE(counts.size() == 8);
        const double sigma = std::sqrt(1.0 / 8 * 7.0 / 8 / n);
        for (const auto& [word, c] : counts)
            CHECK(std::abs(c / static_cast<double>(n) - 0.125) < 4 * sigma);
    }
    SUBCASE("haar invariance under a fixed basis shift") {
        // XOR with a fixed cycle permutes the group; the shifted sample set
        // must look like another uniform sample set (two-sample chi-square)
        const Graph g = make_complete(4);
        const auto basis = fundamental_cycle_basis(g, spanning_forest(g));
        const int n = 100000;
        std::map<std::uint64_t, double> plain, shifted;
        for (int s = 0; s < n; ++s) {
            const auto eta = sample_ueg(g, s);
            plain[eta.word()] += 1.0;
            shifted[(eta ^ basis[0]).word()] += 1.0;
        }
        double chi2 = 0.0;
        for (const auto& [word, c] : plain) {
            const double o = shifted[word];
            chi2 += (c - o) * (c - o) / (c + o);
        }
        CHECK(chi2 < 24.3);  // chi-square_7 at the 0.1% level
    }
}

TEST_CASE("uniform even subgraph of a configuration") {
    const Graph g = make_complete(4);
    SUBCASE("empty input gives empty output") {
        CHECK(sample_ueg_of(g, g.empty_config(), 5).none());
    }
    SUBCASE("an open 4-cycle splits between empty and itself") {
        // edges of K4: (01)(02)(03)(12)(13)(23); open the cycle 0-1-3-2-0
        EdgeConfig omega = g.empty_config();
        omega.set(0);
        omega.set(4);
        omega.set(5);
        omega.set(1);
        int full = 0;
        const int n = 20000;
        for (int s = 0; s < n; ++s) {
            const auto eta = sample_ueg_of(g, omega, s);
            CHECK(eta.is_subset_of(omega));
            REQUIRE((eta.none() || eta == omega));
            full += eta == omega;
        }
        CHECK(std::abs(full / static_cast<double>(n) - 0.5) < 4 * std::sqrt(0.25 / n));
    }
    SUBCASE("two disjoint open cycles give four outcomes") {
        const Graph two = make_graph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
        std::map<std::uint64_t, int> counts;
        const int n = 40000;
        for (int s = 0; s < n; ++s) ++counts[sample_ueg_of(two, two.full_config(), s).word()];
        REQUIRE(counts.size() == 4);
        for (const auto& [word, c] : counts)
            CHECK(std::abs(c / static_cast<double>(n) - 0.25) < 4 * std::sqrt(0.25 * 0.75 / n));
    }
}

TEST_CASE("loop chain") {
    SUBCASE("tree is the constant empty chain") {
        const Graph g = make_path(4);
        const auto batch = sample_loop_o1(g, 0.5, quick_chain(3, 50, 10, 1));
        for (const auto& c : batch.edge_configs) CHECK(c.none());
    }
    SUBCASE("single cycle occupation probability") {
        const Graph g = make_cycle(4);
        const double x = 0.5;
        const int n = 100000;
        const auto batch = sample_loop_o1(g, x, quick_chain(17, n, 2000, 1));
        int full = 0;
        for (const auto& c : batch.edge_configs) {
            REQUIRE((c.none() || c.count() == 4));
            full += c.count() == 4;
        }
        const double target = std::pow(x, 4) / (1.0 + std::pow(x, 4));  // 1/17
        CHECK(std::abs(full / static_cast<double>(n) - target) <
              4 * std::sqrt(target * (1 - target) / n) + 0.003);
    }
    SUBCASE("K4 law matches the oracle") {
        const Graph g = make_complete(4);
        const double x = 0.7;
        const auto batch = sample_loop_o1(g, x, quick_chain(23, 100000, 5000, 2));
        const auto exact = enumerate_measure(g, ModelSpec::loop_o1(x));
        CHECK(empirical_total_variation(batch, exact) < 0.01);
    }
}

TEST_CASE("current samplers") {
    SUBCASE("x near zero gives the empty set") {
        const Graph g = make_cycle(4);
        const auto batch = sample_single_current(g, 1e-6, quick_chain(2, 3000, 100, 1));
        std::size_t empty = 0;
        for (const auto& c : batch.edge_configs) empty += c.none();
        CHECK(static_cast<double>(empty) / batch.size() >= 1.0 - 1e-4);
    }
    SUBCASE("tree single current is pure bernoulli") {
        const Graph g = make_path(3);
        const double x = 0.6;
        const auto batch = sample_single_current(g, x, quick_chain(19, 60000, 200, 1));
        const auto exact =
            enumerate_measure(g, ModelSpec::bernoulli(single_current_bernoulli(x)));
        CHECK(empirical_total_variation(batch, exact) < 0.015);
    }
    SUBCASE("tree double current is squared-union bernoulli") {
        const Graph g = make_path(3);
        const double x = 0.6;
        const double r = single_current_bernoulli(x);
        const auto batch = sample_double_current(g, x, quick_chain(29, 60000, 200, 1));
        const auto exact =
            enumerate_measure(g, ModelSpec::bernoulli(1.0 - (1.0 - r) * (1.0 - r)));
        CHECK(empirical_total_variation(batch, exact) < 0.015);
    }
    SUBCASE("4-cycle laws match the oracle") {
        const Graph g = make_cycle(4);
        const double x = 0.6;
        const auto chain = quick_chain(31, 60000, 3000, 2);
        CHECK(empirical_total_variation(sample_single_current(g, x, chain),
                                        enumerate_measure(g, ModelSpec::single_current(x))) <
              0.015);
        CHECK(empirical_total_variation(sample_double_current(g, x, chain),
                                        enumerate_measure(g, ModelSpec::double_current(x))) <
              0.015);
    }
}

TEST_CASE("batch union") {
    const Graph g = make_complete(4);
    const auto a = sample_bernoulli(g, 0.4, quick_chain(3, 5000));
    const auto b = sample_bernoulli(g, 0.3, quick_chain(4, 5000));
    const auto u = sample_union(a, b);
    SUBCASE("pathwise increasing coupling witness") {
        for (std::size_t i = 0; i < u.size(); ++i) {
            CHECK(a.edge_configs[i].is_subset_of(u.edge_configs[i]));
            CHECK(b.edge_configs[i].is_subset_of(u.edge_configs[i]));
        }
    }
    SUBCASE("identity and absorbing elements") {
        const auto zeros = sample_bernoulli(g, 0.0, quick_chain(5, 100));
        const auto same = sample_union(zeros, sample_bernoulli(g, 0.4, quick_chain(6, 100)));
        const auto expect = sample_bernoulli(g, 0.4, quick_chain(6, 100));
        for (std::size_t i = 0; i < same.size(); ++i)
            CHECK(same.edge_configs[i] == expect.edge_configs[i]);
        const auto ones = sample_bernoulli(g, 1.0, quick_chain(7, 100));
        const auto full = sample_union(ones, expect);
        for (const auto& c : full.edge_configs) CHECK(c.count() == g.n_edges());
    }
    SUBCASE("union frequency algebra") {
        const double p = 0.4;
        const auto x = sample_bernoulli(g, p, quick_chain(8, 60000));
        const auto y = sample_bernoulli(g, p, quick_chain(9, 60000));
        const auto xy = sample_union(x, y);
        const auto exact =
            enumerate_measure(g, ModelSpec::bernoulli(1.0 - (1.0 - p) * (1.0 - p)));
        CHECK(empirical_total_variation(xy, exact) < 0.015);
    }
    SUBCASE("mismatch rejected") {
        const auto other = sample_bernoulli(make_cycle(5), 0.4, quick_chain(3, 5000));
        CHECK_THROWS(sample_union(a, other));
    }
}

TEST_CASE("mcmc samplers track the oracle across parameter sweeps") {
    // three parameter points per chain on two small graphs; lighter sample
    // counts than the acceptance run, with tolerances to match
    for (const Graph& g : {make_cycle(4), build_grid_2d(2, 3)}) {
        int pt = 0;
        for (double level : {0.3, 0.5, 0.75}) {
            const auto chain = quick_chain(900 + pt++, 30000, 3000, 2);
            CHECK(empirical_total_variation(
                      sample_rc_general(g, level, 2.0, 0.0, chain),
                      enumerate_measure(g, ModelSpec::random_cluster(level, 2.0))) < 0.03);
            CHECK(empirical_total_variation(sample_loop_o1(g, level, chain),
                                            enumerate_measure(g, ModelSpec::loop_o1(level))) <
                  0.03);
            CHECK(empirical_total_variation(
                      sample_ising(g, level, 0.0, EnergyConvention::pair_product, chain),
                      enumerate_measure(g, ModelSpec::ising(level, 0.0))) < 0.03);
        }
    }
}

TEST_CASE("samplers are deterministic given the chain config") {
    const Graph g = make_complete(4);
    const auto chain = quick_chain(12345, 50, 100, 2);
    const auto a = sample_rc_general(g, 0.5, 2.0, 0.0, chain);
    const auto b = sample_rc_general(g, 0.5, 2.0, 0.0, chain);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.edge_configs[i] == b.edge_configs[i]);
    const auto s1 = sample_ising(g, 0.6, 0.0, EnergyConvention::pair_product, chain);
    const auto s2 = sample_ising(g, 0.6, 0.0, EnergyConvention::pair_product, chain);
    for (std::size_t i = 0; i < s1.size(); ++i)
        CHECK(s1.spin_configs[i].spins == s2.spin_configs[i].spins);
    const auto l1 = sample_loop_o1(g, 0.7, chain);
    const auto l2 = sample_loop_o1(g, 0.7, chain);
    for (std::size_t i = 0; i < l1.size(); ++i) CHECK(l1.edge_configs[i] == l2.edge_configs[i]);
}

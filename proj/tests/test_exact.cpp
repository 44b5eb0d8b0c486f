#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gibbs/exact.hpp"
#include "gibbs/graph.hpp"
#include "gibbs/model.hpp"
#include "gibbs/reliability.hpp"
#include "gibbs/rng.hpp"

using namespace gibbs;

TEST_CASE("energy conventions") {
    SUBCASE("five-vertex configuration with three disagreeing edges") {
        // edges AB, AC, AD, CD, DE with spins A,B,E up and C,D down
        const Graph g = make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {2, 3}, {3, 4}});
        SpinConfig s;
        s.spins = {1, 1, -1, -1, 1};
        CHECK(ising_energy(g, s, 0.0, EnergyConvention::disagreement_count) == 3.0);
    }
    SUBCASE("single edge pair product") {
        const Graph g = make_path(1);
        SpinConfig s;
        s.spins = {1, 1};
        CHECK(ising_energy(g, s, 0.0, EnergyConvention::pair_product) == -1.0);
    }
    SUBCASE("all-up has zero disagreement energy") {
        const Graph g = make_complete(5);
        SpinConfig s;
        s.spins.assign(5, 1);
        CHECK(ising_energy(g, s, 0.0, EnergyConvention::disagreement_count) == 0.0);
    }
    SUBCASE("unassigned vertex rejected") {
        const Graph g = make_path(2);
        SpinConfig s;
        s.spins = {1, 1};
        CHECK_THROWS(ising_energy(g, s, 0.0, EnergyConvention::pair_product));
    }
}

TEST_CASE("one-edge Ising reproduces the four-state table") {
    const Graph g = make_path(1);
    for (double beta : {0.25, std::log(2.0), 1.5}) {
        const auto law = enumerate_measure(
            g, ModelSpec::ising(beta, 0.0, EnergyConvention::disagreement_count));
        const double z = 2.0 + 2.0 * std::exp(-beta);
        CHECK(law.z == doctest::Approx(z).epsilon(1e-14));
        // states: bit0 = spin of vertex 0, bit1 = spin of vertex 1
        CHECK(law.prob[0b11] == doctest::Approx(1.0 / z).epsilon(1e-13));       // up-up
        CHECK(law.prob[0b01] == doctest::Approx(std::exp(-beta) / z).epsilon(1e-13));
        CHECK(law.prob[0b10] == doctest::Approx(std::exp(-beta) / z).epsilon(1e-13));
        CHECK(law.prob[0b00] == doctest::Approx(1.0 / z).epsilon(1e-13));       // down-down
    }
    SUBCASE("Z = 3 at beta = ln 2") {
        CHECK(partition_function(g, ModelSpec::ising(std::log(2.0), 0.0,
                                                     EnergyConvention::disagreement_count)) ==
              doctest::Approx(3.0).epsilon(1e-14));
    }
    SUBCASE("agreement probability 2/3 at beta = ln 2") {
        const auto law = enumerate_measure(
            g, ModelSpec::ising(std::log(2.0), 0.0, EnergyConvention::disagreement_count));
        const double agree = event_probability(law, [](std::uint32_t idx) {
            return ((idx >> 0) & 1u) == ((idx >> 1) & 1u);
        });
        CHECK(agree == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
        CHECK(two_point_of(g, law, 0, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }
}

TEST_CASE("bernoulli law basics") {
    const Graph g = make_path(3);
    const auto law = enumerate_measure(g, ModelSpec::bernoulli(0.5));
    CHECK(law.z == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(law.prob[0b111] == doctest::Approx(0.125).epsilon(1e-14));
    SUBCASE("1d connectivity is p^n") {
        for (double p : {0.3, 0.5, 0.7}) {
            const Graph path = make_path(6);
            const auto ber = enumerate_measure(path, ModelSpec::bernoulli(p));
            for (int n = 1; n <= 6; ++n)
                CHECK(two_point_of(path, ber, 0, n) ==
                      doctest::Approx(std::pow(p, n)).epsilon(1e-12));
        }
    }
}

TEST_CASE("loop measure support") {
    SUBCASE("single cycle has two even subgraphs") {
        const Graph g = make_cycle(5);
        const double x = 0.5;
        const auto law = enumerate_measure(g, ModelSpec::loop_o1(x));
        const double full = std::pow(x, 5) / (1.0 + std::pow(x, 5));
        CHECK(law.prob[0] == doctest::Approx(1.0 - full).epsilon(1e-13));
        CHECK(law.prob[(1u << 5) - 1] == doctest::Approx(full).epsilon(1e-13));
    }
    SUBCASE("tree concentrates on the empty set") {
        const Graph g = make_path(4);
        const auto law = enumerate_measure(g, ModelSpec::loop_o1(0.7));
        CHECK(law.prob[0] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(partition_function(g, ModelSpec::loop_o1(0.7)) == doctest::Approx(1.0));
    }
}

TEST_CASE("parameter conversions are mutually consistent") {
    for (int i = 0; i <= 30; ++i) {
        const double beta = 0.1 * i;
        const double p = p_of_beta(beta);
        CHECK(x_of_p(p) == doctest::Approx(x_of_beta(beta)).epsilon(1e-14));
        CHECK(1.0 - 1.0 / std::cosh(beta) ==
              doctest::Approx(single_current_bernoulli(x_of_beta(beta))).epsilon(1e-14));
    }
    CHECK(ph_of_field(2.0, 0.3) == doctest::Approx(1.0 - std::exp(-0.6)).epsilon(1e-15));
    CHECK(field_of_ph(2.0, ph_of_field(2.0, 0.3)) == doctest::Approx(0.3).epsilon(1e-13));
}

TEST_CASE("union law") {
    const Graph g = make_cycle(4);
    SUBCASE("point mass at the empty set is the identity") {
        const auto b = enumerate_measure(g, ModelSpec::bernoulli(0.37));
        auto delta = b;
        std::fill(delta.prob.begin(), delta.prob.end(), 0.0);
        delta.prob[0] = 1.0;
        CHECK(total_variation(exact_union_law(delta, b), b) < 1e-15);
    }
    SUBCASE("bernoulli union algebra") {
        const double p = 0.4;
        const auto b = enumerate_measure(g, ModelSpec::bernoulli(p));
        const auto expected =
            enumerate_measure(g, ModelSpec::bernoulli(1.0 - (1.0 - p) * (1.0 - p)));
        CHECK(total_variation(exact_union_law(b, b), expected) < 1e-13);
    }
    SUBCASE("loop union bernoulli matches the random cluster law") {
        const double x = 0.45;
        const auto lhs = exact_union_law(enumerate_measure(g, ModelSpec::loop_o1(x)),
                                         enumerate_measure(g, ModelSpec::bernoulli(x)));
        const auto rhs =
            enumerate_measure(g, ModelSpec::random_cluster(2.0 * x / (1.0 + x), 2.0));
        CHECK(total_variation(lhs, rhs) < 1e-10);
    }
    SUBCASE("mismatched edge sets rejected") {
        const auto a = enumerate_measure(g, ModelSpec::bernoulli(0.5));
        const auto b = enumerate_measure(make_cycle(5), ModelSpec::bernoulli(0.5));
        CHECK_THROWS(exact_union_law(a, b));
    }
    SUBCASE("wide laws take the transform path") {
        // 10 + 8 = 18 edges, past the direct-convolution cutoff
        const Graph wide = attach_ghost(build_grid_2d(2, 4));
        REQUIRE(wide.n_edges() == 18);
        const auto b = enumerate_measure(wide, ModelSpec::bernoulli(0.3));
        const auto expected = enumerate_measure(wide, ModelSpec::bernoulli(1.0 - 0.7 * 0.7));
        CHECK(total_variation(exact_union_law(b, b), expected) < 1e-11);
        // both code paths agree on a borderline width
        const Graph edge13 = attach_ghost(build_grid_2d(2, 3));  // 7 + 6 = 13 edges
        const auto c = enumerate_measure(edge13, ModelSpec::bernoulli(0.4));
        const auto expected13 =
            enumerate_measure(edge13, ModelSpec::bernoulli(1.0 - 0.6 * 0.6));
        CHECK(total_variation(exact_union_law(c, c), expected13) < 1e-12);
    }
}

TEST_CASE("ueg pushforward") {
    SUBCASE("tree point mass collapses to empty") {
        const Graph g = make_path(3);
        auto delta = enumerate_measure(g, ModelSpec::bernoulli(0.5));
        std::fill(delta.prob.begin(), delta.prob.end(), 0.0);
        delta.prob[0b111] = 1.0;
        const auto pushed = exact_ueg_of(g, delta);
        CHECK(pushed.prob[0] == doctest::Approx(1.0));
    }
    SUBCASE("open cycle splits evenly") {
        const Graph g = make_cycle(4);
        auto delta = enumerate_measure(g, ModelSpec::bernoulli(0.5));
        std::fill(delta.prob.begin(), delta.prob.end(), 0.0);
        delta.prob[0b1111] = 1.0;
        const auto pushed = exact_ueg_of(g, delta);
        CHECK(pushed.prob[0] == doctest::Approx(0.5));
        CHECK(pushed.prob[0b1111] == doctest::Approx(0.5));
    }
    SUBCASE("ueg of the random cluster law is the loop law on K4") {
        const Graph g = make_complete(4);
        const double x = 0.4;
        const auto rc = enumerate_measure(g, ModelSpec::random_cluster(p_of_x(x), 2.0));
        const auto loop = enumerate_measure(g, ModelSpec::loop_o1(x));
        CHECK(total_variation(exact_ueg_of(g, rc), loop) < 1e-10);
    }
}

TEST_CASE("current identities") {
    SUBCASE("single current is loop union bernoulli by construction and by cosh") {
        const Graph g = make_cycle(4);
        const double beta = 0.6;
        const double x = x_of_beta(beta);
        const auto direct = enumerate_measure(g, ModelSpec::single_current(x));
        const auto via_cosh =
            exact_union_law(enumerate_measure(g, ModelSpec::loop_o1(x)),
                            enumerate_measure(g, ModelSpec::bernoulli(1.0 - 1.0 / std::cosh(beta))));
        CHECK(total_variation(direct, via_cosh) < 1e-13);
    }
    SUBCASE("ueg of the double current is the loop law across small graphs") {
        for (const Graph& g : {make_cycle(3), make_cycle(4), make_path(3), make_complete(4)}) {
            const double x = 0.55;
            const auto dc = enumerate_measure(g, ModelSpec::double_current(x));
            const auto loop = enumerate_measure(g, ModelSpec::loop_o1(x));
            CHECK(total_variation(exact_ueg_of(g, dc), loop) < 1e-10);
        }
    }
}

TEST_CASE("ueg of the double current across every small connected graph") {
    // exhaustive over connected subgraphs of K5 with <= 7 edges, plus
    // representative larger shapes (cycles, a long path, a theta graph)
    const double x = 0.55;
    std::vector<Graph> family;
    const Graph k5 = make_complete(5);
    for (std::uint32_t mask = 1; mask < (1u << 10); ++mask) {
        if (__builtin_popcount(mask) > 7) continue;
        std::vector<int> newid(5, -1);
        std::vector<std::pair<int, int>> edges;
        int nv = 0;
        for (int e = 0; e < 10; ++e)
            if ((mask >> e) & 1u) {
                auto [u, v] = k5.edges[e];
                if (newid[u] < 0) newid[u] = nv++;
                if (newid[v] < 0) newid[v] = nv++;
                edges.emplace_back(newid[u], newid[v]);
            }
        Graph g = make_graph(nv, edges);
        if (connected_components(g, g.full_config()).count != 1) continue;
        family.push_back(std::move(g));
    }
    family.push_back(make_cycle(6));
    family.push_back(make_cycle(7));
    family.push_back(make_path(7));
    family.push_back(make_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {4, 5}, {5, 3}}));
    REQUIRE(family.size() > 700);

    double worst = 0.0;
    for (const auto& g : family) {
        const auto dc = enumerate_measure(g, ModelSpec::double_current(x));
        const auto loop = enumerate_measure(g, ModelSpec::loop_o1(x));
        worst = std::max(worst, total_variation(exact_ueg_of(g, dc), loop));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("edwards-sokal two-point identity") {
    SUBCASE("ghost-free family") {
        for (const Graph& g : {make_path(1), make_cycle(4), make_complete(4)}) {
            const double beta = 0.7;
            const auto ising = enumerate_measure(g, ModelSpec::ising(beta, 0.0));
            const auto rc =
                enumerate_measure(g, ModelSpec::random_cluster(p_of_beta(beta), 2.0));
            for (int a = 0; a < g.n_vertices; ++a)
                for (int b = a + 1; b < g.n_vertices; ++b)
                    CHECK(two_point_of(g, ising, a, b) ==
                          doctest::Approx(two_point_of(g, rc, a, b)).epsilon(1e-11));
        }
    }
    SUBCASE("triangle with ghost and field") {
        const Graph g = attach_ghost(make_cycle(3));
        const double beta = 0.5, h = 0.4;
        const auto ising = enumerate_measure(g, ModelSpec::ising(beta, h));
        const auto rc = enumerate_measure(
            g, ModelSpec::random_cluster(p_of_beta(beta), 2.0, beta * h));
        for (int a = 0; a < 3; ++a) {
            for (int b = a + 1; b < 3; ++b)
                CHECK(two_point_of(g, ising, a, b) ==
                      doctest::Approx(two_point_of(g, rc, a, b)).epsilon(1e-11));
            // magnetization = connection to the ghost
            const double conn_to_ghost = event_probability(rc, [&](std::uint32_t idx) {
                const EdgeConfig omega = EdgeConfig::from_word(g.n_edges(), rc.graph_hash, idx);
                return same_component(g, omega, a, g.ghost);
            });
            CHECK(spin_expectation(g, ising, a) ==
                  doctest::Approx(conn_to_ghost).epsilon(1e-11));
        }
    }
}

TEST_CASE("total variation basics") {
    const Graph g = make_path(2);
    const auto a = enumerate_measure(g, ModelSpec::bernoulli(0.3));
    CHECK(total_variation(a, a) == 0.0);
    auto d0 = a, d1 = a;
    std::fill(d0.prob.begin(), d0.prob.end(), 0.0);
    std::fill(d1.prob.begin(), d1.prob.end(), 0.0);
    d0.prob[0] = 1.0;
    d1.prob[1] = 1.0;
    CHECK(total_variation(d0, d1) == doctest::Approx(1.0));
    auto uniform2 = a;
    std::fill(uniform2.prob.begin(), uniform2.prob.end(), 0.0);
    uniform2.prob[0] = 0.5;
    uniform2.prob[2] = 0.5;
    CHECK(total_variation(d0, uniform2) == doctest::Approx(0.5));
}

TEST_CASE("normalization and positivity across models") {
    CounterRng rng(99, 3);
    const Graph graphs[] = {make_cycle(4), make_complete(4), attach_ghost(make_cycle(3)),
                            build_grid_2d(2, 3)};
    for (const auto& g : graphs) {
        const ModelSpec models[] = {
            ModelSpec::ising(0.8, 0.0),
            ModelSpec::bernoulli(0.35),
            ModelSpec::random_cluster(0.5, 1.7, g.has_ghost() ? 0.2 : 0.0),
            ModelSpec::loop_o1(0.6),
            ModelSpec::single_current(0.6),
            ModelSpec::double_current(0.6),
        };
        for (const auto& m : models) {
            const auto law = enumerate_measure(g, m);
            double total = 0.0;
            for (double p : law.prob) {
                REQUIRE(p >= 0.0);
                total += p;
            }
            REQUIRE(total == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    (void)rng;
}

TEST_CASE("state space cap") {
    const Graph big = build_box(2, 2);  // 40 edges
    CHECK_THROWS(enumerate_measure(big, ModelSpec::bernoulli(0.5)));
}

TEST_CASE("reliability matches enumeration") {
    SUBCASE("paths and cycles") {
        for (double p : {0.2, 0.5, 0.8}) {
            const Graph path = make_path(5);
            CHECK(connection_reliability(path, p, 0, {5}) ==
                  doctest::Approx(std::pow(p, 5)).epsilon(1e-12));
            const Graph cyc = make_cycle(6);
            const auto law = enumerate_measure(cyc, ModelSpec::bernoulli(p));
            CHECK(connection_reliability(cyc, p, 0, {3}) ==
                  doctest::Approx(two_point_of(cyc, law, 0, 3)).epsilon(1e-12));
        }
    }
    SUBCASE("3x3 box all pairs") {
        const Graph g = build_box(2, 1);
        const double p = 0.3;
        const auto law = enumerate_measure(g, ModelSpec::bernoulli(p));
        for (int v = 1; v < g.n_vertices; ++v)
            CHECK(connection_reliability(g, p, 0, {v}) ==
                  doctest::Approx(two_point_of(g, law, 0, v)).epsilon(1e-11));
    }
    SUBCASE("target sets") {
        const Graph g = build_box(2, 1);
        const double p = 0.45;
        const auto law = enumerate_measure(g, ModelSpec::bernoulli(p));
        const int centre = 4;
        const double exact = connection_probability_of(g, law, centre, g.boundary);
        CHECK(connection_reliability(g, p, centre, g.boundary) ==
              doctest::Approx(exact).epsilon(1e-11));
    }
    SUBCASE("random graphs") {
        CounterRng rng(4242, 0);
        for (int trial = 0; trial < 60; ++trial) {
            const int n = 3 + static_cast<int>(rng.uniform_int(4));
            std::vector<std::pair<int, int>> edges;
            const int m = 2 + static_cast<int>(rng.uniform_int(9));
            for (int i = 0; i < m; ++i) {
                const int u = static_cast<int>(rng.uniform_int(n));
                const int v = static_cast<int>(rng.uniform_int(n));
                if (u != v) edges.emplace_back(u, v);
            }
            if (edges.empty()) continue;
            const Graph g = make_graph(n, edges);
            const double p = 0.1 + 0.8 * rng.next_double();
            const auto law = enumerate_measure(g, ModelSpec::bernoulli(p));
            const int a = 0, b = n - 1;
            CHECK(connection_reliability(g, p, a, {b}) ==
                  doctest::Approx(two_point_of(g, law, a, b)).epsilon(1e-10));
        }
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <queue>
#include <set>

#include "gibbs/graph.hpp"
#include "gibbs/rng.hpp"

using namespace gibbs;

namespace {

// reference connectivity for the union-find cross-check
std::vector<int> bfs_labels(const Graph& g, const EdgeConfig& omega) {
    std::vector<std::vector<int>> adj(g.n_vertices);
    for (int e = 0; e < g.n_edges(); ++e)
        if (omega.test(e)) {
            adj[g.edges[e].first].push_back(g.edges[e].second);
            adj[g.edges[e].second].push_back(g.edges[e].first);
        }
    std::vector<int> label(g.n_vertices, -1);
    int next = 0;
    for (int s = 0; s < g.n_vertices; ++s) {
        if (label[s] >= 0) continue;
        label[s] = next;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int v : adj[u])
                if (label[v] < 0) {
                    label[v] = next;
                    q.push(v);
                }
        }
        ++next;
    }
    return label;
}

}  // namespace

TEST_CASE("box construction") {
    SUBCASE("1d path") {
        const Graph g = build_box(1, 2);
        CHECK(g.n_vertices == 5);
        CHECK(g.n_edges() == 4);
        REQUIRE(g.boundary.size() == 2);
        CHECK(g.embedding[g.boundary[0]][0] == -2);
        CHECK(g.embedding[g.boundary[1]][0] == 2);
    }
    SUBCASE("2d 3x3") {
        const Graph g = build_box(2, 1);
        CHECK(g.n_vertices == 9);
        CHECK(g.n_edges() == 12);
        CHECK(g.boundary.size() == 8);
    }
    SUBCASE("degenerate box") {
        const Graph g = build_box(2, 0);
        CHECK(g.n_vertices == 1);
        CHECK(g.n_edges() == 0);
        CHECK(g.boundary == std::vector<int>{0});
    }
    SUBCASE("size limit") { CHECK_THROWS(build_box(8, 20)); }
}

TEST_CASE("torus construction") {
    SUBCASE("1d cycle of length 4") {
        const Graph g = build_torus(1, 2);
        CHECK(g.n_vertices == 4);
        CHECK(g.n_edges() == 4);
        CHECK(g.boundary.empty());
    }
    SUBCASE("2d 4x4") {
        const Graph g = build_torus(2, 2);
        CHECK(g.n_vertices == 16);
        CHECK(g.n_edges() == 32);
        std::vector<int> degree(g.n_vertices, 0);
        for (const auto& [u, v] : g.edges) {
            ++degree[u];
            ++degree[v];
        }
        for (int d : degree) CHECK(d == 4);
    }
    SUBCASE("2d n=1 keeps parallel edges") {
        const Graph g = build_torus(2, 1);
        CHECK(g.n_vertices == 4);
        CHECK(g.n_edges() == 8);
    }
}

TEST_CASE("ghost attachment") {
    SUBCASE("path on 3 vertices") {
        const Graph g = attach_ghost(make_path(2));
        CHECK(g.n_vertices == 4);
        CHECK(g.n_edges() == 5);
        CHECK(g.n_internal_edges == 2);
        for (int e = g.n_internal_edges; e < g.n_edges(); ++e) CHECK(g.is_ghost_edge(e));
    }
    SUBCASE("ghosted box") {
        const Graph g = attach_ghost(build_box(2, 1));
        CHECK(g.n_vertices == 10);
        CHECK(g.n_edges() == 21);
    }
    SUBCASE("edgeless graph becomes a star") {
        const Graph g = attach_ghost(make_graph(4, {}));
        CHECK(g.n_edges() == 4);
        CHECK(g.n_internal_edges == 0);
    }
    SUBCASE("double ghost rejected") { CHECK_THROWS(attach_ghost(attach_ghost(make_path(1)))); }
    SUBCASE("dropping ghost edges recovers the original graph") {
        const Graph base = build_box(2, 1);
        const Graph g = attach_ghost(base);
        for (int e = 0; e < base.n_edges(); ++e) CHECK(g.edges[e] == base.edges[e]);
    }
}

TEST_CASE("boundary condition quotient") {
    SUBCASE("free bc is the identity") {
        const Graph g = build_box(1, 2);
        BoundaryCondition free_bc;
        for (int b : g.boundary) free_bc.blocks.push_back({b});
        const auto res = apply_boundary_condition(g, free_bc);
        CHECK(res.graph.n_vertices == g.n_vertices);
        CHECK(res.graph.n_edges() == g.n_edges());
    }
    SUBCASE("wired 1d box collapses to 2 vertices") {
        const Graph g = build_box(1, 1);
        BoundaryCondition wired;
        wired.blocks.push_back(g.boundary);
        const auto res = apply_boundary_condition(g, wired);
        CHECK(res.graph.n_vertices == 2);
        CHECK(res.graph.n_edges() == 2);
    }
    SUBCASE("left/right halves of the 3x3 boundary") {
        const Graph g = build_box(2, 1);
        BoundaryCondition bc;
        std::vector<int> left, right;
        for (int v : g.boundary)
            (g.embedding[v][0] < 0 || (g.embedding[v][0] == 0 && g.embedding[v][1] < 0)
                 ? left
                 : right)
                .push_back(v);
        bc.blocks = {left, right};
        const auto res = apply_boundary_condition(g, bc);
        CHECK(res.graph.n_vertices == 3);  // centre + two super-vertices
        CHECK(res.graph.n_edges() == 12);  // edge multiset preserved
    }
    SUBCASE("wired then free equals wired") {
        const Graph g = build_box(1, 2);
        BoundaryCondition wired;
        wired.blocks.push_back(g.boundary);
        const auto once = apply_boundary_condition(g, wired);
        BoundaryCondition free_bc;
        for (int b : once.graph.boundary) free_bc.blocks.push_back({b});
        const auto twice = apply_boundary_condition(once.graph, free_bc);
        CHECK(twice.graph.n_vertices == once.graph.n_vertices);
        CHECK(twice.graph.edges == once.graph.edges);
    }
    SUBCASE("non-partition rejected") {
        const Graph g = build_box(1, 2);
        BoundaryCondition bad;
        bad.blocks.push_back({g.boundary[0]});
        CHECK_THROWS(apply_boundary_condition(g, bad));
    }
}

TEST_CASE("components, evenness, forests, cycle bases") {
    SUBCASE("empty config has one component per vertex") {
        const Graph g = make_complete(5);
        CHECK(connected_components(g, g.empty_config()).count == 5);
        CHECK(connected_components(g, g.full_config()).count == 1);
    }
    SUBCASE("1d path with the middle edge closed") {
        const Graph g = make_path(4);
        EdgeConfig omega = g.full_config();
        omega.set(2, false);
        CHECK(connected_components(g, omega).count == 2);
    }
    SUBCASE("evenness") {
        const Graph g = make_cycle(4);
        CHECK(is_even(g, g.empty_config()));
        CHECK(is_even(g, g.full_config()));
        EdgeConfig one = g.empty_config();
        one.set(0);
        CHECK(!is_even(g, one));
    }
    SUBCASE("forest of a cycle") {
        const Graph g = make_cycle(4);
        CHECK(spanning_forest(g).count() == 3);
        CHECK(fundamental_cycle_basis(g, spanning_forest(g)).size() == 1);
        CHECK(fundamental_cycle_basis(g, spanning_forest(g))[0] == g.full_config());
    }
    SUBCASE("forest of a tree is everything") {
        const Graph g = make_path(5);
        CHECK(spanning_forest(g) == g.full_config());
        CHECK(fundamental_cycle_basis(g, spanning_forest(g)).empty());
    }
    SUBCASE("two disjoint triangles") {
        Graph g = make_graph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
        CHECK(spanning_forest(g).count() == 4);
        const auto basis = fundamental_cycle_basis(g, spanning_forest(g));
        CHECK(basis.size() == 2);
        for (const auto& c : basis) CHECK(is_even(g, c));
    }
    SUBCASE("K4 basis") {
        const Graph g = make_complete(4);
        const auto basis = fundamental_cycle_basis(g, spanning_forest(g));
        CHECK(basis.size() == 3);  // 6 - 4 + 1
        for (const auto& c : basis) CHECK(is_even(g, c));
        // XOR closure stays even
        CHECK(is_even(g, basis[0] ^ basis[1]));
        CHECK(is_even(g, basis[0] ^ basis[1] ^ basis[2]));
    }
    SUBCASE("invalid forest rejected") {
        const Graph g = make_cycle(4);
        CHECK_THROWS(fundamental_cycle_basis(g, g.full_config()));   // has a cycle
        CHECK_THROWS(fundamental_cycle_basis(g, g.empty_config()));  // not maximal
    }
}

TEST_CASE("union-find connectivity matches BFS on random graphs") {
    CounterRng rng(20240817, 0);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform_int(10));
        std::vector<std::pair<int, int>> edges;
        const int m = static_cast<int>(rng.uniform_int(18));
        for (int i = 0; i < m; ++i) {
            const int u = static_cast<int>(rng.uniform_int(n));
            const int v = static_cast<int>(rng.uniform_int(n));
            if (u != v) edges.emplace_back(u, v);
        }
        const Graph g = make_graph(n, edges);
        EdgeConfig omega = g.empty_config();
        for (int e = 0; e < g.n_edges(); ++e)
            if (rng.bernoulli(0.5)) omega.set(e);

        const auto mine = connected_components(g, omega);
        const auto ref = bfs_labels(g, omega);
        int ref_count = 0;
        for (int l : ref) ref_count = std::max(ref_count, l + 1);
        REQUIRE(mine.count == ref_count);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                REQUIRE((mine.label[u] == mine.label[v]) == (ref[u] == ref[v]));
    }
}

TEST_CASE("cycle space dimension = |E| - |V| + components") {
    CounterRng rng(7, 1);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform_int(8));
        std::vector<std::pair<int, int>> edges;
        const int m = static_cast<int>(rng.uniform_int(14));
        for (int i = 0; i < m; ++i) {
            const int u = static_cast<int>(rng.uniform_int(n));
            const int v = static_cast<int>(rng.uniform_int(n));
            if (u != v) edges.emplace_back(u, v);
        }
        const Graph g = make_graph(n, edges);
        const auto basis = fundamental_cycle_basis(g, spanning_forest(g));
        const int kappa = connected_components(g, g.full_config()).count;
        REQUIRE(static_cast<int>(basis.size()) == g.n_edges() - g.n_vertices + kappa);
        // every XOR combination is even
        EdgeConfig eta = g.empty_config();
        for (const auto& c : basis) {
            if (rng.bernoulli(0.5)) eta ^= c;
        }
        REQUIRE(is_even(g, eta));
    }
}

TEST_CASE("hex round trip") {
    const Graph g = make_complete(4);
    EdgeConfig omega = g.empty_config();
    omega.set(0);
    omega.set(5);
    const auto back = EdgeConfig::from_hex(g.n_edges(), g.hash(), omega.to_hex());
    CHECK(back == omega);
}

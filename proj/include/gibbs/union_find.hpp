#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace gibbs {

// Weighted quick-union with path compression.
struct UnionFind {
    std::vector<int> parent;
    std::vector<int> rank_;
    int n_components;

    explicit UnionFind(int n) : parent(n), rank_(n, 0), n_components(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    int find(int i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    }

    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        --n_components;
        return true;
    }

    bool connected(int a, int b) { return find(a) == find(b); }
};

// Union-find where every element carries a d-dimensional integer offset
// relative to its root. Merging two already-joined vertices with an
// inconsistent offset witnesses a cycle of nonzero total displacement,
// i.e. a loop winding around a torus.
struct OffsetUnionFind {
    int dim;
    std::vector<int> parent;
    std::vector<std::vector<int>> offset;  // position(v) - position(root(v))

    OffsetUnionFind(int n, int d) : dim(d), parent(n), offset(n, std::vector<int>(d, 0)) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    int find(int i) {
        if (parent[i] == i) return i;
        const int root = find(parent[i]);
        if (parent[i] != root) {
            for (int k = 0; k < dim; ++k) offset[i][k] += offset[parent[i]][k];
            parent[i] = root;
        }
        return root;
    }

    // Joins u,v subject to position(v) = position(u) + shift. If they are
    // already joined, returns the offset mismatch (all zero when consistent);
    // otherwise returns an empty vector.
    std::vector<int> unite(int u, int v, const std::vector<int>& shift) {
        const int ru = find(u);
        const int rv = find(v);
        if (ru == rv) {
            std::vector<int> mismatch(dim);
            for (int k = 0; k < dim; ++k)
                mismatch[k] = offset[u][k] + shift[k] - offset[v][k];
            return mismatch;
        }
        // position(rv) = position(v) - offset[v]; hang rv under ru.
        parent[rv] = ru;
        for (int k = 0; k < dim; ++k) offset[rv][k] = offset[u][k] + shift[k] - offset[v][k];
        return {};
    }
};

}  // namespace gibbs

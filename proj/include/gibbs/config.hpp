#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gibbs {

// Subset of the edges of a fixed graph, one bit per edge index (1 = open).
// The bit width always equals the edge count of the owning graph; graph_id
// ties a configuration to that graph for cheap mismatch detection.
class EdgeConfig {
public:
    EdgeConfig() = default;

    EdgeConfig(int n_edges, std::uint64_t graph_id)
        : n_edges_(n_edges), graph_id_(graph_id), words_((n_edges + 63) / 64, 0) {}

    static EdgeConfig from_word(int n_edges, std::uint64_t graph_id, std::uint64_t bits) {
        EdgeConfig c(n_edges, graph_id);
        if (n_edges > 64)
            throw std::invalid_argument("EdgeConfig::from_word: more than 64 edges");
        if (!c.words_.empty()) c.words_[0] = bits & c.tail_mask(0);
        return c;
    }

    int size() const { return n_edges_; }
    std::uint64_t graph_id() const { return graph_id_; }

    bool test(int e) const { return (words_[e >> 6] >> (e & 63)) & 1u; }

    void set(int e, bool v = true) {
        const std::uint64_t m = std::uint64_t{1} << (e & 63);
        if (v)
            words_[e >> 6] |= m;
        else
            words_[e >> 6] &= ~m;
    }

    // o(omega): number of open edges.
    int count() const {
        int c = 0;
        for (auto w : words_) c += __builtin_popcountll(w);
        return c;
    }

    // c(omega) = |E| - o(omega).
    int closed_count() const { return n_edges_ - count(); }

    bool none() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    EdgeConfig& operator^=(const EdgeConfig& o) {
        check_compatible(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
        return *this;
    }

    EdgeConfig& operator|=(const EdgeConfig& o) {
        check_compatible(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }

    EdgeConfig& operator&=(const EdgeConfig& o) {
        check_compatible(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }

    friend EdgeConfig operator^(EdgeConfig a, const EdgeConfig& b) { return a ^= b; }
    friend EdgeConfig operator|(EdgeConfig a, const EdgeConfig& b) { return a |= b; }
    friend EdgeConfig operator&(EdgeConfig a, const EdgeConfig& b) { return a &= b; }

    friend bool operator==(const EdgeConfig& a, const EdgeConfig& b) {
        return a.n_edges_ == b.n_edges_ && a.words_ == b.words_;
    }

    bool is_subset_of(const EdgeConfig& o) const {
        check_compatible(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    // Low 64 bits; valid as a dense index whenever the graph has <= 64 edges.
    std::uint64_t word() const { return words_.empty() ? 0 : words_[0]; }

    std::string to_hex() const;
    static EdgeConfig from_hex(int n_edges, std::uint64_t graph_id, const std::string& hex);

private:
    std::uint64_t tail_mask(std::size_t word_idx) const {
        const int used = n_edges_ - static_cast<int>(word_idx) * 64;
        if (used >= 64) return ~std::uint64_t{0};
        return (std::uint64_t{1} << used) - 1;
    }

    void check_compatible(const EdgeConfig& o) const {
        if (n_edges_ != o.n_edges_)
            throw std::invalid_argument("EdgeConfig: mismatched edge sets");
    }

    int n_edges_ = 0;
    std::uint64_t graph_id_ = 0;
    std::vector<std::uint64_t> words_;
};

inline std::string EdgeConfig::to_hex() const {
    static const char* digits = "0123456789abcdef";
    const int n_nibbles = (n_edges_ + 3) / 4;
    std::string s;
    s.reserve(n_nibbles == 0 ? 1 : n_nibbles);
    for (int i = (n_nibbles == 0 ? 0 : n_nibbles - 1); i >= 0; --i) {
        const int bit = i * 4;
        const unsigned nib = (words_.empty() ? 0 : (words_[bit >> 6] >> (bit & 63))) & 0xF;
        s.push_back(digits[nib]);
    }
    if (s.empty()) s = "0";
    return s;
}

inline EdgeConfig EdgeConfig::from_hex(int n_edges, std::uint64_t graph_id,
                                       const std::string& hex) {
    EdgeConfig c(n_edges, graph_id);
    int bit = 0;
    for (auto it = hex.rbegin(); it != hex.rend(); ++it, bit += 4) {
        const char ch = *it;
        unsigned nib;
        if (ch >= '0' && ch <= '9')
            nib = ch - '0';
        else if (ch >= 'a' && ch <= 'f')
            nib = 10 + ch - 'a';
        else if (ch >= 'A' && ch <= 'F')
            nib = 10 + ch - 'A';
        else
            throw std::invalid_argument("EdgeConfig::from_hex: bad digit");
        for (int k = 0; k < 4; ++k)
            if ((nib >> k) & 1u) {
                if (bit + k >= n_edges)
                    throw std::invalid_argument("EdgeConfig::from_hex: bit out of range");
                c.set(bit + k);
            }
    }
    return c;
}

// +-1 spin per vertex; when the owning graph has a ghost its spin is pinned +1.
struct SpinConfig {
    std::vector<std::int8_t> spins;
    std::uint64_t graph_id = 0;

    int size() const { return static_cast<int>(spins.size()); }
    int spin(int v) const { return spins[v]; }
    void set(int v, int s) { spins[v] = static_cast<std::int8_t>(s); }
};

// Partition of the boundary vertex set; blocks get identified by quotienting.
struct BoundaryCondition {
    std::vector<std::vector<int>> blocks;
};

}  // namespace gibbs

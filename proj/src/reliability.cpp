#include "gibbs/reliability.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace gibbs {

namespace {

// Frontier state: block id per active vertex plus two marks telling which
// block currently holds the source cluster / a target. Encoded canonically
// (blocks renumbered by first appearance) so equivalent states merge.
//
//   key layout: one byte per active vertex (block id), then one byte for the
//   source block (0xFF = absorbed/none pending) and one for the target block.
//
// Absorption rules: source and target blocks merging is a success (the
// remaining edges cannot disconnect them); the source block deactivating
// without the target is a failure for that branch.

}  // namespace

double connection_reliability(const Graph& g, const std::vector<double>& edge_prob, int source,
                              const std::vector<int>& targets) {
    if (edge_prob.size() != static_cast<std::size_t>(g.n_edges()))
        throw std::invalid_argument("connection_reliability: edge probability size mismatch");
    if (source < 0 || source >= g.n_vertices)
        throw std::invalid_argument("connection_reliability: bad source");
    if (targets.empty()) throw std::invalid_argument("connection_reliability: no targets");

    std::vector<char> is_target(g.n_vertices, 0);
    for (int t : targets) {
        if (t < 0 || t >= g.n_vertices)
            throw std::invalid_argument("connection_reliability: bad target");
        is_target[t] = 1;
    }
    if (is_target[source]) return 1.0;

    // last edge touching each vertex; vertices deactivate after it
    std::vector<int> last_edge(g.n_vertices, -1);
    for (int e = 0; e < g.n_edges(); ++e) {
        last_edge[g.edges[e].first] = e;
        last_edge[g.edges[e].second] = e;
    }
    if (last_edge[source] < 0) return 0.0;  // isolated source

    // Working representation of one state: active vertex -> block id,
    // kept alongside its probability. Rebuilt from the canonical key.
    std::vector<int> active;  // sorted list of active vertices, shared by all states

    auto canonical_key = [&](std::vector<int>& blocks, int src_block, int tgt_block) {
        // renumber blocks by first appearance
        std::string key;
        key.reserve(blocks.size() + 2);
        int max_id = std::max(src_block, tgt_block);
        for (int b : blocks) max_id = std::max(max_id, b);
        std::vector<int> rename(max_id + 2, -1);
        int next = 0;
        for (int& b : blocks) {
            if (rename[b] < 0) rename[b] = next++;
            b = rename[b];
            key.push_back(static_cast<char>(b));
        }
        key.push_back(src_block >= 0 && rename[src_block] >= 0
                          ? static_cast<char>(rename[src_block])
                          : static_cast<char>(0xFF));
        key.push_back(tgt_block >= 0 && rename[tgt_block] >= 0
                          ? static_cast<char>(rename[tgt_block])
                          : static_cast<char>(0xFF));
        return key;
    };

    std::unordered_map<std::string, double> states;
    {
        std::vector<int> empty_blocks;
        states.emplace(canonical_key(empty_blocks, -1, -1), 1.0);
    }
    double success = 0.0;

    std::vector<char> activated(g.n_vertices, 0);

    for (int e = 0; e < g.n_edges(); ++e) {
        const auto [eu, ev] = g.edges[e];
        const double pe = edge_prob[e];

        // positions of the endpoints in the (possibly grown) active list
        auto ensure_active = [&](int v) {
            if (activated[v]) return;
            activated[v] = 1;
            active.insert(std::lower_bound(active.begin(), active.end(), v), v);
        };
        std::vector<int> added;
        if (!activated[eu]) added.push_back(eu);
        if (!activated[ev] && ev != eu) added.push_back(ev);
        ensure_active(eu);
        ensure_active(ev);

        // map new active positions back to old ones (-1 for fresh vertices)
        std::vector<int> old_pos_of_new(active.size(), -1);
        {
            std::size_t oi = 0;
            for (std::size_t ni = 0; ni < active.size(); ++ni) {
                if (std::find(added.begin(), added.end(), active[ni]) != added.end()) continue;
                old_pos_of_new[ni] = static_cast<int>(oi++);
            }
        }
        const int pu = static_cast<int>(
            std::lower_bound(active.begin(), active.end(), eu) - active.begin());
        const int pv = static_cast<int>(
            std::lower_bound(active.begin(), active.end(), ev) - active.begin());

        const bool u_leaves = last_edge[eu] == e;
        const bool v_leaves = last_edge[ev] == e && ev != eu;

        std::unordered_map<std::string, double> next_states;
        next_states.reserve(states.size() * 2);

        for (const auto& [key, prob] : states) {
            // decode: blocks for old active set, then source/target blocks
            const std::size_t n_old = key.size() - 2;
            const int old_src = static_cast<unsigned char>(key[n_old]) == 0xFF
                                    ? -1
                                    : static_cast<unsigned char>(key[n_old]);
            const int old_tgt = static_cast<unsigned char>(key[n_old + 1]) == 0xFF
                                    ? -1
                                    : static_cast<unsigned char>(key[n_old + 1]);

            // expand to the new active set; fresh vertices get fresh blocks
            std::vector<int> blocks(active.size());
            int next_block = 0;
            for (std::size_t ni = 0; ni < active.size(); ++ni)
                if (old_pos_of_new[ni] >= 0)
                    next_block = std::max(
                        next_block, 1 + static_cast<unsigned char>(key[old_pos_of_new[ni]]));
            int src_block = old_src, tgt_block = old_tgt;
            for (std::size_t ni = 0; ni < active.size(); ++ni) {
                if (old_pos_of_new[ni] >= 0) {
                    blocks[ni] = static_cast<unsigned char>(key[old_pos_of_new[ni]]);
                } else {
                    blocks[ni] = next_block++;
                    const int v = active[ni];
                    if (v == source) src_block = blocks[ni];
                    if (is_target[v] && tgt_block < 0) tgt_block = blocks[ni];
                    else if (is_target[v] && tgt_block >= 0) {
                        // multiple targets share one conceptual block: merge
                        // by aliasing this fresh block to the target block
                        blocks[ni] = tgt_block;
                        --next_block;
                    }
                }
            }

            auto emit = [&](std::vector<int> bl, int sb, int tb, double pr) {
                if (pr == 0.0) return;
                // success absorption
                if (sb >= 0 && tb >= 0 && sb == tb) {
                    success += pr;
                    return;
                }
                // deactivate endpoints whose last edge this was
                auto drop = [&](int vertex) {
                    const auto it = std::lower_bound(active.begin(), active.end(), vertex);
                    const std::size_t pos = it - active.begin();
                    const int b = bl[pos];
                    bl.erase(bl.begin() + pos);
                    const bool still_there =
                        std::find(bl.begin(), bl.end(), b) != bl.end();
                    if (!still_there) {
                        if (b == sb) sb = -2;           // source cluster sealed
                        if (b == tb) tb = -1;           // this target group gone
                    }
                    return;
                };
                // note: drop computes positions against the full new active
                // list, so remove the later position first
                if (u_leaves && v_leaves) {
                    if (pu > pv) {
                        drop(eu);
                        drop(ev);
                    } else {
                        drop(ev);
                        drop(eu);
                    }
                } else if (u_leaves) {
                    drop(eu);
                } else if (v_leaves) {
                    drop(ev);
                }
                if (sb == -2) return;  // source sealed without target: failure
                const auto k = canonical_key(bl, sb, tb);
                next_states[k] += pr;
            };

            if (eu == ev) {
                // self-loop: the edge state is irrelevant to connectivity
                emit(blocks, src_block, tgt_block, prob);
                continue;
            }

            // closed branch
            if (pe < 1.0) emit(blocks, src_block, tgt_block, prob * (1.0 - pe));
            // open branch: merge the endpoint blocks
            if (pe > 0.0) {
                std::vector<int> merged = blocks;
                const int keep = std::min(merged[pu], merged[pv]);
                const int gone = std::max(merged[pu], merged[pv]);
                if (keep != gone)
                    for (int& b : merged)
                        if (b == gone) b = keep;
                int sb = src_block == gone ? keep : src_block;
                int tb = tgt_block == gone ? keep : tgt_block;
                emit(std::move(merged), sb, tb, prob * pe);
            }
        }

        // actually shrink the shared active list
        if (u_leaves || v_leaves) {
            std::vector<int> kept;
            for (int v : active)
                if (!((u_leaves && v == eu) || (v_leaves && v == ev))) kept.push_back(v);
            active = std::move(kept);
            if (u_leaves) activated[eu] = 2;
            if (v_leaves) activated[ev] = 2;
        }
        states = std::move(next_states);
    }
    return success;
}

double connection_reliability(const Graph& g, double p, int source,
                              const std::vector<int>& targets) {
    return connection_reliability(g, std::vector<double>(g.n_edges(), p), source, targets);
}

}  // namespace gibbs

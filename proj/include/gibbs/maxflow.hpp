#pragma once

#include <limits>
#include <queue>
#include <vector>

namespace gibbs {

// Dinic max-flow on doubles; small networks only (the domination checker
// builds bipartite networks over distribution supports).
class MaxFlow {
public:
    explicit MaxFlow(int n) : head_(n, -1), level_(n), it_(n) {}

    void add_edge(int from, int to, double cap) {
        edges_.push_back({to, head_[from], cap});
        head_[from] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({from, head_[to], 0.0});
        head_[to] = static_cast<int>(edges_.size()) - 1;
    }

    double run(int s, int t, double eps = 1e-15) {
        double flow = 0.0;
        while (bfs(s, t, eps)) {
            it_ = head_;
            while (double pushed = dfs(s, t, std::numeric_limits<double>::infinity(), eps))
                flow += pushed;
        }
        return flow;
    }

private:
    struct Edge {
        int to;
        int next;
        double cap;
    };

    bool bfs(int s, int t, double eps) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<int> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int e = head_[u]; e != -1; e = edges_[e].next)
                if (edges_[e].cap > eps && level_[edges_[e].to] < 0) {
                    level_[edges_[e].to] = level_[u] + 1;
                    q.push(edges_[e].to);
                }
        }
        return level_[t] >= 0;
    }

    double dfs(int u, int t, double limit, double eps) {
        if (u == t || limit <= eps) return u == t ? limit : 0.0;
        for (int& e = it_[u]; e != -1; e = edges_[e].next) {
            Edge& ed = edges_[e];
            if (ed.cap > eps && level_[ed.to] == level_[u] + 1) {
                const double pushed = dfs(ed.to, t, std::min(limit, ed.cap), eps);
                if (pushed > eps) {
                    ed.cap -= pushed;
                    edges_[e ^ 1].cap += pushed;
                    return pushed;
                }
            }
        }
        return 0.0;
    }

    std::vector<Edge> edges_;
    std::vector<int> head_;
    std::vector<int> level_;
    std::vector<int> it_;
};

}  // namespace gibbs

#pragma once

// Dinic's algorithm over exact rational capacities. The number of phases is
// bounded by the vertex count independently of the capacities, so exact
// arithmetic does not threaten termination.

#include <queue>
#include <vector>

#include "rational.hpp"

namespace lamthin {

class MaxFlow {
public:
    explicit MaxFlow(int n) : head_(n, -1) {}

    int node_count() const { return static_cast<int>(head_.size()); }

    /// Adds a directed arc u->v; returns its arc index. The reverse arc gets
    /// capacity zero.
    int add_arc(int u, int v, Rat cap) {
        require_input(cap >= 0, "negative arc capacity");
        int idx = static_cast<int>(arcs_.size());
        arcs_.push_back(Arc{v, head_[u], std::move(cap)});
        head_[u] = idx;
        arcs_.push_back(Arc{u, head_[v], Rat(0)});
        head_[v] = idx + 1;
        return idx;
    }

    Rat run(int s, int t) {
        Rat flow = 0;
        while (bfs(s, t)) {
            iter_ = head_;
            for (;;) {
                Rat pushed = dfs(s, t, Rat(-1));
                if (pushed == 0) break;
                flow += pushed;
            }
        }
        s_ = s;
        t_ = t;
        return flow;
    }

    /// Minimal min-cut source side: nodes reachable from s in the residual
    /// graph after run().
    std::vector<bool> min_source_side() const {
        std::vector<bool> seen(head_.size(), false);
        std::queue<int> q;
        q.push(s_);
        seen[s_] = true;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int a = head_[u]; a >= 0; a = arcs_[a].next)
                if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
                    seen[arcs_[a].to] = true;
                    q.push(arcs_[a].to);
                }
        }
        return seen;
    }

    /// Maximal min-cut source side: complement of the nodes that can still
    /// reach t in the residual graph.
    std::vector<bool> max_source_side() const {
        std::vector<bool> reaches(head_.size(), false);
        std::queue<int> q;
        q.push(t_);
        reaches[t_] = true;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int a = head_[v]; a >= 0; a = arcs_[a].next) {
                // arc a^xor1 is u->v; u reaches t through v if it has residual
                int rev = a ^ 1;
                int u = arcs_[a].to;
                if (arcs_[rev].cap > 0 && !reaches[u]) {
                    reaches[u] = true;
                    q.push(u);
                }
            }
        }
        std::vector<bool> side(head_.size());
        for (std::size_t i = 0; i < side.size(); ++i) side[i] = !reaches[i];
        return side;
    }

private:
    struct Arc {
        int to;
        int next;
        Rat cap;
    };

    bool bfs(int s, int t) {
        level_.assign(head_.size(), -1);
        std::queue<int> q;
        q.push(s);
        level_[s] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int a = head_[u]; a >= 0; a = arcs_[a].next)
                if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
                    level_[arcs_[a].to] = level_[u] + 1;
                    q.push(arcs_[a].to);
                }
        }
        return level_[t] >= 0;
    }

    // limit < 0 means unlimited
    Rat dfs(int u, int t, const Rat& limit) {
        if (u == t) return limit;
        for (int& a = iter_[u]; a >= 0; a = arcs_[a].next) {
            Arc& arc = arcs_[a];
            if (arc.cap <= 0 || level_[arc.to] != level_[u] + 1) continue;
            Rat sub = (limit < 0 || arc.cap < limit) ? arc.cap : limit;
            Rat pushed = dfs(arc.to, t, sub);
            if (pushed > 0) {
                arc.cap -= pushed;
                arcs_[a ^ 1].cap += pushed;
                return pushed;
            }
        }
        level_[u] = -1;
        return Rat(0);
    }

    std::vector<int> head_;
    std::vector<Arc> arcs_;
    std::vector<int> level_;
    std::vector<int> iter_;
    int s_ = 0, t_ = 0;
};

}  // namespace lamthin

#pragma once

// Exact separation and membership machinery.
//
// The central primitive is min_partition: minimize w(delta(P)) - (|P|-1) over
// all partitions of the vertex set. Small graphs are enumerated; larger ones
// go through a principal-partition style scheme built from max-flows:
// maximize y(V) subject to y(S) <= w(delta(S))/2 - 1 by one coordinate-ascent
// pass (the per-vertex step is an anchored min-cut), then read the optimal
// partition off the maximal tight sets. Intersecting-submodular uncrossing
// makes the maximal tight sets a partition attaining the optimum.

#include <optional>
#include <vector>

#include "frac_point.hpp"
#include "graph.hpp"
#include "matroid.hpp"
#include "maxflow.hpp"
#include "rational.hpp"

namespace lamthin {

struct MinPartitionResult {
    Partition partition;
    Rat value = 0;  // w(delta(P)) - (|P|-1), never positive
};

namespace detail {

struct PartitionSearch {
    const Graph& g;
    std::vector<std::vector<Rat>> pair_weight;
    std::vector<Rat> col_sum;  // col_sum[v] = sum of pair_weight[u][v] over u < v
    std::vector<int> assign;
    std::vector<int> best_assign;
    Rat best_value;
    bool have_best = false;

    explicit PartitionSearch(const Graph& graph, const FracPoint& w) : g(graph) {
        const int n = g.vertex_count();
        pair_weight.assign(n, std::vector<Rat>(n, Rat(0)));
        for (const Edge& e : g.edges()) {
            const Rat& v = w.at(e.id);
            require_input(v >= 0, "negative weight on edge " + std::to_string(e.id));
            pair_weight[e.u][e.v] += v;
            pair_weight[e.v][e.u] += v;
        }
        col_sum.assign(n, Rat(0));
        for (int v = 0; v < n; ++v)
            for (int u = 0; u < v; ++u) col_sum[v] += pair_weight[u][v];
        assign.assign(n, -1);
    }

    // cross = weight between distinct assigned blocks; visiting restricted
    // growth strings in lexicographic order makes the first minimum found the
    // lexicographically smallest minimizer
    void run(int v, int used, const Rat& cross) {
        const int n = g.vertex_count();
        if (v == n) {
            Rat value = cross - Rat(used - 1);
            if (!have_best || value < best_value) {
                best_value = value;
                best_assign = assign;
                have_best = true;
            }
            return;
        }
        if (have_best) {
            // every remaining vertex can lower the value by at most 1
            Rat bound = cross - Rat(used - 1) - Rat(n - v);
            if (bound >= best_value) return;
        }
        for (int b = 0; b <= used && b < n; ++b) {
            Rat same = 0;
            for (int u = 0; u < v; ++u)
                if (assign[u] == b) same += pair_weight[u][v];
            assign[v] = b;
            run(v + 1, std::max(used, b + 1), cross + col_sum[v] - same);
            assign[v] = -1;
        }
    }
};

}  // namespace detail

/// Exhaustive path, exact, lexicographically smallest minimizer.
inline MinPartitionResult min_partition_brute(const Graph& g, const FracPoint& w) {
    const int n = g.vertex_count();
    require_input(n >= 1, "min_partition on an empty graph");
    require_input(n <= 12, "brute-force partition search capped at 12 vertices");
    detail::PartitionSearch search(g, w);
    search.assign[0] = 0;
    search.run(1, 1, Rat(0));
    if (n == 1) {
        search.best_assign = {0};
        search.best_value = 0;
    }
    Partition p;
    int blocks = 0;
    for (int b : search.best_assign) blocks = std::max(blocks, b + 1);
    p.blocks.assign(blocks, {});
    for (int v = 0; v < n; ++v) p.blocks[search.best_assign[v]].push_back(v);
    return MinPartitionResult{std::move(p), search.best_value};
}

namespace detail {

/// min over S with anchor in S of [w(delta(S))/2 - 1 - y(S)] plus, on demand,
/// the maximal minimizer. One max-flow.
struct AnchoredSlack {
    Rat slack;
    VertexSet max_minimizer;
};

inline AnchoredSlack anchored_min_slack(const Graph& g, const FracPoint& w,
                                        const std::vector<Rat>& y, int anchor,
                                        bool want_set) {
    const int n = g.vertex_count();
    const int s = n, t = n + 1;
    MaxFlow mf(n + 2);
    Rat total_cap = 1;
    for (const Edge& e : g.edges()) total_cap += w.at(e.id);
    for (const Rat& yv : y) total_cap += yv < 0 ? -yv : yv;

    for (const Edge& e : g.edges()) {
        Rat half = w.at(e.id) / 2;
        mf.add_arc(e.u, e.v, half);
        mf.add_arc(e.v, e.u, half);
    }
    Rat neg_sum = 0;
    for (int v = 0; v < n; ++v) {
        if (y[v] > 0)
            mf.add_arc(s, v, y[v]);
        else if (y[v] < 0) {
            mf.add_arc(v, t, -y[v]);
            neg_sum += y[v];
        }
    }
    mf.add_arc(s, anchor, total_cap);  // anchor forced onto the source side

    Rat cut = mf.run(s, t);
    Rat y_total = 0;
    for (const Rat& yv : y) y_total += yv;
    AnchoredSlack out;
    out.slack = cut + neg_sum - 1 - y_total;
    if (want_set) {
        std::vector<bool> side = mf.max_source_side();
        for (int v = 0; v < n; ++v)
            if (side[v]) out.max_minimizer.push_back(v);
    }
    return out;
}

}  // namespace detail

/// Flow path: one coordinate-ascent pass over y (feasible for
/// y(S) <= w(delta(S))/2 - 1 throughout), then the maximal tight sets. Around
/// 2|V| max-flows; exact rationals everywhere.
inline MinPartitionResult min_partition_flow(const Graph& g, const FracPoint& w) {
    const int n = g.vertex_count();
    require_input(n >= 1, "min_partition on an empty graph");
    if (n == 1) return MinPartitionResult{Partition{{{0}}}, Rat(0)};
    for (const Edge& e : g.edges())
        require_input(w.at(e.id) >= 0, "negative weight on edge " + std::to_string(e.id));

    Rat w_total = 0;
    for (const Edge& e : g.edges()) w_total += w.at(e.id);
    std::vector<Rat> y(n, -(w_total + 1));
    for (int v = 0; v < n; ++v) {
        detail::AnchoredSlack step = detail::anchored_min_slack(g, w, y, v, false);
        require_invariant(step.slack >= 0, "ascent left the feasible region");
        y[v] += step.slack;
    }
    std::vector<bool> covered(n, false);
    std::vector<VertexSet> blocks;
    for (int v = 0; v < n; ++v) {
        if (covered[v]) continue;
        detail::AnchoredSlack tight = detail::anchored_min_slack(g, w, y, v, true);
        require_invariant(tight.slack == 0, "vertex not covered by a tight set");
        require_invariant(sorted_contains(tight.max_minimizer, v),
                          "anchored minimizer misses its anchor");
        for (int u : tight.max_minimizer) {
            require_invariant(!covered[u], "maximal tight sets must be disjoint");
            covered[u] = true;
        }
        blocks.push_back(tight.max_minimizer);
    }
    Partition p{std::move(blocks)};
    Rat y_total = 0;
    for (const Rat& yv : y) y_total += yv;
    Rat value = y_total + 1;
    // the partition must attain the computed optimum
    Rat direct = 0;
    for (int id : delta_partition(g, p)) direct += w.at(id);
    direct -= Rat(static_cast<long>(p.blocks.size()) - 1);
    require_invariant(direct == value, "flow partition does not attain its value");
    return MinPartitionResult{std::move(p), std::move(value)};
}

/// Partition of V(g) minimizing w(delta(P)) - (|P|-1), with the exact minimum
/// (always <= 0; the trivial partition gives 0). Enumerates small graphs,
/// switches to the flow scheme above beyond 9 vertices.
inline MinPartitionResult min_partition(const Graph& g, const FracPoint& w) {
    require_input(g.vertex_count() >= 1, "min_partition on an empty graph");
    if (g.vertex_count() <= 9) return min_partition_brute(g, w);
    return min_partition_flow(g, w);
}

/// nullopt iff w lies in the dominant of the spanning tree polytope of g;
/// otherwise a partition with w(delta(P)) < |P| - 1.
inline std::optional<Partition> separate_dominant(const Graph& g, const FracPoint& w) {
    MinPartitionResult res = min_partition(g, w);
    if (res.value < 0) return res.partition;
    return std::nullopt;
}

struct ForestViolation {
    VertexSet set;
    Rat excess;  // x(E(S)) - (|S|-1) > 0
};

/// Separation for the forest rows x(E(S)) <= |S|-1: the classical reduction
/// to max-flow (source -> edge nodes with capacity x_e, edge nodes -> their
/// endpoints, vertices -> sink with capacity 1, one anchored root per pass).
/// Returns a set attaining the maximum violation, or nullopt.
inline std::optional<ForestViolation> separate_forest(const Graph& g, const FracPoint& x) {
    const int n = g.vertex_count();
    const int m = g.edge_count();
    require_input(x.nonnegative(), "separate_forest needs nonnegative x");
    Rat x_total = 0;
    for (const Edge& e : g.edges()) x_total += x.at(e.id);
    Rat inf = x_total + n + 1;

    std::optional<ForestViolation> best;
    for (int r = 0; r < n; ++r) {
        MaxFlow mf(m + n + 2);
        const int s = m + n, t = m + n + 1;
        for (int i = 0; i < m; ++i) {
            const Edge& e = g.edges()[i];
            mf.add_arc(s, i, x.at(e.id));
            mf.add_arc(i, m + e.u, inf);
            mf.add_arc(i, m + e.v, inf);
        }
        for (int v = 0; v < n; ++v)
            if (v != r) mf.add_arc(m + v, t, Rat(1));
        Rat cut = mf.run(s, t);
        Rat violation = x_total - cut;  // max over S containing r of x(E(S)) - (|S|-1)
        if (violation <= 0) continue;
        if (!best || violation > best->excess) {
            std::vector<bool> side = mf.min_source_side();
            VertexSet set;
            for (int v = 0; v < n; ++v)
                if (v == r || side[m + v]) set.push_back(v);
            Rat direct = x.sum(induced_edges(g, set)) - Rat(static_cast<long>(set.size()) - 1);
            require_invariant(direct == violation, "extracted set misses the max violation");
            best = ForestViolation{std::move(set), std::move(violation)};
        }
    }
    return best;
}

struct BasePolytopeViolation {
    IdSet subset;            // C with x(C) - rank(C) maximal, or E itself
    Rat excess;              // x(C) - rank(C)
    bool total_rank_defect;  // the x(E) = rank(E) equality fails (excess may be < 0)
};

namespace detail {

struct RankViolation {
    IdSet subset;
    Rat excess;  // >= 0; empty subset gives 0
};

inline RankViolation max_rank_violation_impl(const MatroidImpl& impl, const FracPoint& x);

inline RankViolation max_rank_violation_graphic(const GraphicImpl& impl, const FracPoint& x) {
    // max over C of x(C) - rank(C) through the partition minimizer: an optimal
    // attack partition has connected blocks, and C = E minus delta(P) attains
    // the maximum.
    MinPartitionResult res = min_partition(impl.graph, x);
    IdSet subset = set_difference_sorted(impl.graph.edge_ids(),
                                         delta_partition(impl.graph, res.partition));
    Rat excess = x.sum(subset) - Rat(impl.rank_of(subset));
    if (excess < 0) return RankViolation{{}, Rat(0)};
    return RankViolation{std::move(subset), std::move(excess)};
}

inline RankViolation max_rank_violation_partition(const PartitionImpl& impl,
                                                  const FracPoint& x) {
    RankViolation out{{}, Rat(0)};
    for (const auto& [block, cap] : impl.blocks) {
        std::vector<std::pair<Rat, int>> weighted;
        for (int id : block) weighted.push_back({x.at(id), id});
        std::stable_sort(weighted.begin(), weighted.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        Rat prefix = 0, best = 0;
        int best_len = 0;
        for (std::size_t j = 0; j < weighted.size(); ++j) {
            prefix += weighted[j].first;
            Rat value = prefix - Rat(std::min<int>(static_cast<int>(j) + 1, cap));
            if (value > best) {
                best = value;
                best_len = static_cast<int>(j) + 1;
            }
        }
        if (best > 0) {
            for (int j = 0; j < best_len; ++j) out.subset.push_back(weighted[j].second);
            out.excess += best;
        }
    }
    out.subset = make_sorted(std::move(out.subset));
    return out;
}

inline RankViolation max_rank_violation_brute(const MatroidImpl& impl, const FracPoint& x) {
    require_input(impl.ground.size() <= 20,
                  "brute-force base-polytope separation capped at 20 elements");
    const int m = static_cast<int>(impl.ground.size());
    RankViolation out{{}, Rat(0)};
    for (unsigned long mask = 1; mask < (1ul << m); ++mask) {
        IdSet c;
        for (int j = 0; j < m; ++j)
            if (mask & (1ul << j)) c.push_back(impl.ground[j]);
        Rat excess = x.sum(c) - Rat(impl.rank_of(c));
        if (excess > out.excess) out = RankViolation{std::move(c), std::move(excess)};
    }
    return out;
}

inline RankViolation max_rank_violation_impl(const MatroidImpl& impl, const FracPoint& x) {
    if (auto g = dynamic_cast<const GraphicImpl*>(&impl))
        return max_rank_violation_graphic(*g, x);
    if (auto p = dynamic_cast<const PartitionImpl*>(&impl))
        return max_rank_violation_partition(*p, x);
    if (auto ds = dynamic_cast<const DirectSumImpl*>(&impl)) {
        // the search decomposes: both x and the rank are additive across parts
        RankViolation out{{}, Rat(0)};
        for (const auto& part : ds->parts) {
            RankViolation sub = max_rank_violation_impl(*part, x);
            if (sub.excess > 0) {
                out.subset = set_union_sorted(out.subset, sub.subset);
                out.excess += sub.excess;
            }
        }
        return out;
    }
    return max_rank_violation_brute(impl, x);
}

}  // namespace detail

/// nullopt iff x(C) <= rank(C) for every C and x(E) = rank(E); otherwise a
/// maximally violated subset (or the total-rank equality defect).
inline std::optional<BasePolytopeViolation> separate_base_polytope(const Matroid& m,
                                                                   const FracPoint& x) {
    for (const auto& [id, v] : x.entries())
        require_input(v >= 0 && sorted_contains(m.groundset(), id),
                      "separate_base_polytope: bad point support");
    detail::RankViolation viol = detail::max_rank_violation_impl(m.impl(), x);
    if (viol.excess > 0)
        return BasePolytopeViolation{std::move(viol.subset), std::move(viol.excess), false};
    Rat total_excess = x.sum(m.groundset()) - Rat(m.full_rank());
    if (total_excess != 0)
        return BasePolytopeViolation{m.groundset(), std::move(total_excess), true};
    return std::nullopt;
}

/// eta-well-connectedness of S: eta * x restricted to E(S) lies in the
/// dominant of the spanning tree polytope of G[S].
inline bool is_well_connected(const Graph& g, const FracPoint& x, const VertexSet& s,
                              const Rat& eta) {
    InducedGraph sub = induced(g, s);
    FracPoint w = x.restricted(sub.graph.edge_ids()).scaled(eta);
    return !separate_dominant(sub.graph, w).has_value();
}

/// Greedy coordinate descent from a dominant point down to the spanning tree
/// polytope: in ascending edge-id order, drop each coordinate to zero and
/// raise it back by exactly the violation the drop created. Each step keeps
/// every previously tight partition tight, so the result is coordinatewise
/// minimal in the dominant, i.e. a point of the polytope itself.
inline FracPoint dominated_base_point(const Graph& g, const FracPoint& y) {
    if (auto p = separate_dominant(g, y)) {
        std::string blocks;
        for (const VertexSet& b : p->blocks) blocks += "{" + std::to_string(b.front()) + "..}";
        throw input_error("dominated_base_point: input outside the dominant (partition " +
                          blocks + ")");
    }
    FracPoint z = y.restricted(g.edge_ids());
    for (int id : g.edge_ids()) {
        Rat old = z.at(id);
        if (old == 0) continue;
        z.set(id, Rat(0));
        MinPartitionResult res = min_partition(g, z);
        if (res.value < 0) {
            Rat raise = -res.value;
            require_invariant(raise <= old, "repair exceeds the dropped coordinate");
            z.set(id, std::move(raise));
        }
    }
    require_invariant(z.total() == Rat(g.vertex_count() - 1),
                      "dominated point must have total n-1");
    return z;
}

}  // namespace lamthin

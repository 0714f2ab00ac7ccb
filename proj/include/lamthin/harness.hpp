#pragma once

// Brute-force oracles and instance generators. Everything here is
// deliberately simple and independent of the production code paths it is used
// to certify: partitions are enumerated rather than optimized, trees are
// enumerated rather than rounded, and values are recomputed from the model
// primitives.

#include <random>
#include <vector>

#include "frac_point.hpp"
#include "graph.hpp"
#include "instance.hpp"
#include "laminar.hpp"
#include "matroid.hpp"
#include "maxflow.hpp"
#include "oracles.hpp"
#include "rational.hpp"

namespace lamthin {

/// Spanning-tree count via the reduced Laplacian determinant, exact.
inline Int spanning_tree_count(const Graph& g) {
    const int n = g.vertex_count();
    if (n <= 1) return 1;
    if (!g.connected()) return 0;
    std::vector<std::vector<Rat>> lap(n - 1, std::vector<Rat>(n - 1, Rat(0)));
    for (const Edge& e : g.edges()) {
        if (e.u < n - 1) lap[e.u][e.u] += 1;
        if (e.v < n - 1) lap[e.v][e.v] += 1;
        if (e.u < n - 1 && e.v < n - 1) {
            lap[e.u][e.v] -= 1;
            lap[e.v][e.u] -= 1;
        }
    }
    Rat det = 1;
    for (int col = 0; col < n - 1; ++col) {
        int pivot = -1;
        for (int row = col; row < n - 1; ++row)
            if (lap[row][col] != 0) {
                pivot = row;
                break;
            }
        if (pivot < 0) return 0;
        if (pivot != col) {
            std::swap(lap[pivot], lap[col]);
            det = -det;
        }
        det *= lap[col][col];
        for (int row = col + 1; row < n - 1; ++row) {
            if (lap[row][col] == 0) continue;
            Rat f = lap[row][col] / lap[col][col];
            for (int j = col; j < n - 1; ++j) lap[row][j] -= f * lap[col][j];
        }
    }
    require_invariant(is_integer(det) && det >= 0, "tree count must be a nonnegative integer");
    return det.get_num();
}

namespace detail {

inline void enumerate_trees_rec(const Graph& g, std::vector<IdSet>& out) {
    if (g.vertex_count() <= 1) {
        out.push_back({});
        return;
    }
    // contraction-deletion on the lowest-id edge: every tree exactly once
    const Edge e = g.edges().front();
    ContractedGraph with = contract_sets(g, {{std::min(e.u, e.v), std::max(e.u, e.v)}});
    std::size_t before = out.size();
    enumerate_trees_rec(with.graph, out);
    for (std::size_t i = before; i < out.size(); ++i)
        out[i] = set_union_sorted(out[i], {e.id});
    Graph without = g.without_edge(e.id);
    if (without.connected()) enumerate_trees_rec(without, out);
}

}  // namespace detail

/// All spanning trees as edge-id sets, each exactly once. The Kirchhoff count
/// gates the enumeration so oversized instances fail fast.
inline std::vector<IdSet> enumerate_spanning_trees(const Graph& g, long cap = 1000000) {
    require_input(g.connected(), "spanning trees need a connected graph");
    Int count = spanning_tree_count(g);
    require_input(count <= cap,
                  "tree count " + count.get_str() + " exceeds cap " + std::to_string(cap) +
                      "; use a smaller instance");
    std::vector<IdSet> out;
    detail::enumerate_trees_rec(g, out);
    require_invariant(Int(static_cast<long>(out.size())) == count,
                      "enumeration disagrees with the determinant count");
    return out;
}

inline bool is_spanning_tree(const Graph& g, const IdSet& t) {
    if (static_cast<int>(t.size()) != g.vertex_count() - 1) return false;
    return g.with_only_edges(t).connected();
}

namespace detail {

inline std::vector<int> partition_canonical(const Partition& p, int n) {
    // restricted-growth string of the partition (blocks by first appearance)
    std::vector<int> block_of(n, -1);
    for (std::size_t i = 0; i < p.blocks.size(); ++i)
        for (int v : p.blocks[i]) block_of[v] = static_cast<int>(i);
    std::vector<int> relabel(p.blocks.size(), -1);
    std::vector<int> rgs(n);
    int next = 0;
    for (int v = 0; v < n; ++v) {
        if (relabel[block_of[v]] < 0) relabel[block_of[v]] = next++;
        rgs[v] = relabel[block_of[v]];
    }
    return rgs;
}

inline Partition partition_from_rgs(const std::vector<int>& rgs) {
    int blocks = 0;
    for (int b : rgs) blocks = std::max(blocks, b + 1);
    Partition p;
    p.blocks.assign(blocks, {});
    for (std::size_t v = 0; v < rgs.size(); ++v)
        p.blocks[rgs[v]].push_back(static_cast<int>(v));
    return p;
}

inline void all_partitions_rec(int n, int v, int used, std::vector<int>& rgs,
                               std::vector<Partition>& out) {
    if (v == n) {
        out.push_back(partition_from_rgs(rgs));
        return;
    }
    for (int b = 0; b <= used; ++b) {
        rgs[v] = b;
        all_partitions_rec(n, v + 1, std::max(used, b + 1), rgs, out);
    }
}

}  // namespace detail

/// Exhaustive minimizer of w(delta(P)) - (|P|-1) over all vertex partitions.
/// Lexicographically smallest canonical form among the minimizers. Values are
/// recomputed per partition from the model primitives.
inline MinPartitionResult brute_min_partition(const Graph& g, const FracPoint& w) {
    const int n = g.vertex_count();
    require_input(n >= 1, "empty graph");
    require_input(n <= 10, "brute-force partition enumeration is capped at 10 vertices");
    require_input(w.nonnegative(), "negative weights");
    std::vector<int> rgs(n, 0);
    std::vector<Partition> all;
    detail::all_partitions_rec(n, 1, 1, rgs, all);  // vertex 0 pinned to block 0
    std::optional<MinPartitionResult> best;
    for (const Partition& p : all) {
        Rat value = w.sum(delta_partition(g, p)) - Rat(static_cast<long>(p.blocks.size()) - 1);
        if (!best || value < best->value) best = MinPartitionResult{p, value};
        // enumeration order is lexicographic in the canonical form, so the
        // first minimum found is the lexicographically smallest one
    }
    return *best;
}

/// Minimum-cost spanning tree satisfying every bound exactly, or nullopt.
inline std::optional<std::pair<IdSet, Rat>> brute_best_tree(const Graph& g,
                                                            const LaminarFamily& fam,
                                                            const std::map<int, Rat>& costs,
                                                            long cap = 1000000) {
    std::optional<std::pair<IdSet, Rat>> best;
    for (const IdSet& t : enumerate_spanning_trees(g, cap)) {
        bool ok = true;
        for (const LaminarSet& s : fam.sets()) {
            if (!s.bound) continue;
            IdSet crossing = set_intersection_sorted(t, cut_edges(g, s.members));
            if (static_cast<long>(crossing.size()) > *s.bound) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        Rat c = cost_of(costs, t);
        if (!best || c < best->second) best = std::make_pair(t, c);
    }
    return best;
}

/// Largest violation of x(E(S)) <= |S|-1 by subset enumeration (test oracle).
inline std::optional<std::pair<VertexSet, Rat>> brute_separate_forest(const Graph& g,
                                                                      const FracPoint& x) {
    const int n = g.vertex_count();
    require_input(n <= 16, "subset enumeration capped at 16 vertices");
    std::optional<std::pair<VertexSet, Rat>> best;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        VertexSet s;
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) s.push_back(v);
        Rat excess = x.sum(induced_edges(g, s)) - Rat(static_cast<long>(s.size()) - 1);
        if (excess > 0 && (!best || excess > best->second)) best = std::make_pair(s, excess);
    }
    return best;
}

/// Edge connectivity of a connected multigraph: min over t of maxflow(0, t)
/// with unit capacities per parallel edge, both directions.
inline int edge_connectivity(const Graph& g) {
    const int n = g.vertex_count();
    require_input(n >= 2, "edge connectivity needs at least two vertices");
    if (!g.connected()) return 0;
    std::optional<Rat> best;
    for (int t = 1; t < n; ++t) {
        MaxFlow mf(n);
        for (const Edge& e : g.edges()) {
            mf.add_arc(e.u, e.v, Rat(1));
            mf.add_arc(e.v, e.u, Rat(1));
        }
        Rat f = mf.run(0, t);
        if (!best || f < *best) best = f;
    }
    require_invariant(is_integer(*best), "unit-capacity flow must be integral");
    return static_cast<int>(best->get_num().get_si());
}

/// The proper cut with the fewest crossing edges (for error reporting).
inline VertexSet minimum_cut_side(const Graph& g) {
    const int n = g.vertex_count();
    std::optional<Rat> best;
    VertexSet side;
    for (int t = 1; t < n; ++t) {
        MaxFlow mf(n);
        for (const Edge& e : g.edges()) {
            mf.add_arc(e.u, e.v, Rat(1));
            mf.add_arc(e.v, e.u, Rat(1));
        }
        Rat f = mf.run(0, t);
        if (!best || f < *best) {
            best = f;
            std::vector<bool> src = mf.min_source_side();
            side.clear();
            for (int v = 0; v < n; ++v)
                if (src[v]) side.push_back(v);
        }
    }
    return side;
}

/// Union of ceil(k/2) independently shuffled Hamiltonian cycles with distinct
/// edge ids (parallel edges allowed), verified k-edge-connected.
inline Graph gen_k_connected(int n, int k, uint64_t seed, int max_retries = 50) {
    require_input(n >= 3, "need at least three vertices");
    require_input(k >= 2, "need k >= 2");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        std::vector<Edge> edges;
        int id = 0;
        int cycles = (k + 1) / 2;
        for (int c = 0; c < cycles; ++c) {
            std::vector<int> order(n);
            std::iota(order.begin(), order.end(), 0);
            std::shuffle(order.begin(), order.end(), rng);
            for (int i = 0; i < n; ++i) {
                int u = order[i], v = order[(i + 1) % n];
                edges.push_back(Edge{id++, std::min(u, v), std::max(u, v)});
            }
        }
        Graph g(n, edges);
        if (edge_connectivity(g) >= k) return g;
    }
    throw input_error("could not generate a " + std::to_string(k) + "-edge-connected graph");
}

namespace detail {

inline void gen_laminar_rec(const VertexSet& s, int depth, std::mt19937_64& rng,
                            std::vector<VertexSet>& out, std::size_t max_sets) {
    if (s.size() <= 1 || depth <= 0 || out.size() >= max_sets) return;
    VertexSet shuffled = s;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::size_t nblocks = 2 + rng() % 2;
    nblocks = std::min(nblocks, shuffled.size());
    std::vector<VertexSet> blocks(nblocks);
    for (std::size_t i = 0; i < shuffled.size(); ++i) blocks[i % nblocks].push_back(shuffled[i]);
    for (VertexSet& b : blocks) {
        std::sort(b.begin(), b.end());
        if (b.size() == s.size()) continue;
        if (out.size() >= max_sets) break;
        if (rng() % 5 == 0) continue;  // occasionally skip a block
        if (b.size() >= 2 || rng() % 3 == 0) {
            out.push_back(b);
            gen_laminar_rec(b, depth - 1, rng, out, max_sets);
        }
    }
}

}  // namespace detail

/// Random laminar family built by recursive partitioning (nesting guaranteed
/// by construction). Always contains the whole vertex set.
inline LaminarFamily gen_laminar(const Graph& g, uint64_t seed, int max_depth,
                                 std::size_t max_sets = 12) {
    std::mt19937_64 rng(seed);
    std::vector<VertexSet> sets;
    VertexSet all = all_vertices(g);
    sets.push_back(all);
    detail::gen_laminar_rec(all, max_depth, rng, sets, max_sets);
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    // largest first, then lexicographic, for stable readable ids
    std::sort(sets.begin(), sets.end(), [](const VertexSet& a, const VertexSet& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    LaminarFamily fam;
    int id = 0;
    for (VertexSet& s : sets) fam.add(LaminarSet{id++, std::move(s), std::nullopt});
    return fam;
}

/// Deterministic pseudo-random spanning tree: Kruskal over a shuffled edge order.
inline IdSet random_spanning_tree(const Graph& g, uint64_t seed) {
    require_input(g.connected(), "random spanning tree needs a connected graph");
    std::mt19937_64 rng(seed);
    std::vector<Edge> order = g.edges();
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> parent(g.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    IdSet tree;
    for (const Edge& e : order)
        if (Graph::unite(parent, e.u, e.v)) tree.push_back(e.id);
    return make_sorted(std::move(tree));
}

/// Feasible bounds by construction: b_S = |T* ∩ delta(S)| for a random
/// witness tree T*, so the relaxation is feasible with witness T*.
inline IdSet set_feasible_bounds(const Graph& g, LaminarFamily& fam, uint64_t seed) {
    IdSet witness = random_spanning_tree(g, seed);
    LaminarFamily out;
    for (LaminarSet s : fam.sets()) {
        s.bound = static_cast<long>(
            set_intersection_sorted(witness, cut_edges(g, s.members)).size());
        out.add(std::move(s));
    }
    fam = std::move(out);
    return witness;
}

inline Rat random_positive_rat(std::mt19937_64& rng) {
    return rat(1 + static_cast<long>(rng() % 20), 1 + static_cast<long>(rng() % 6));
}

inline std::map<int, Rat> random_costs(const Graph& g, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::map<int, Rat> costs;
    for (const Edge& e : g.edges()) costs[e.id] = random_positive_rat(rng);
    return costs;
}

inline FracPoint random_weights(const Graph& g, uint64_t seed) {
    std::mt19937_64 rng(seed);
    FracPoint w;
    for (const Edge& e : g.edges())
        w.set(e.id, rat(static_cast<long>(rng() % 9), 1 + static_cast<long>(rng() % 6)));
    return w;
}

/// Spot-checks the rank axioms (bounds, monotonicity, unit increase,
/// submodularity) on random subset pairs. Returns a description of the first
/// failure, or nullopt.
inline std::optional<std::string> check_rank_axioms(const Matroid& m, uint64_t seed,
                                                    int trials = 50) {
    std::mt19937_64 rng(seed);
    const IdSet& ground = m.groundset();
    if (m.rank({}) != 0) return "rank(empty) != 0";
    auto random_subset = [&]() {
        IdSet f;
        for (int id : ground)
            if (rng() % 2) f.push_back(id);
        return f;
    };
    for (int t = 0; t < trials; ++t) {
        IdSet a = random_subset(), b = random_subset();
        int ra = m.rank(a), rb = m.rank(b);
        if (ra < 0 || ra > static_cast<int>(a.size())) return "rank out of [0,|F|]";
        IdSet uni = set_union_sorted(a, b), inter = set_intersection_sorted(a, b);
        if (m.rank(uni) + m.rank(inter) > ra + rb) return "submodularity violated";
        if (is_subset_sorted(a, b) && ra > rb) return "monotonicity violated";
        if (!a.empty()) {
            IdSet smaller = a;
            smaller.erase(smaller.begin() + static_cast<long>(rng() % smaller.size()));
            int rs = m.rank(smaller);
            if (rs > ra || ra > rs + 1) return "unit-increase violated";
        }
    }
    return std::nullopt;
}

/// A full random feasible instance: k-connected-ish multigraph, laminar
/// family, witness-tree bounds, positive rational costs.
inline Instance gen_instance(int n, int k, uint64_t seed, int depth = 3) {
    Instance inst;
    inst.graph = gen_k_connected(n, k, seed);
    inst.family = gen_laminar(inst.graph, seed * 7919 + 1, depth);
    set_feasible_bounds(inst.graph, inst.family, seed * 104729 + 2);
    inst.costs = random_costs(inst.graph, seed * 1299709 + 3);
    inst.eta = default_eta();
    validate_instance(inst);
    return inst;
}

}  // namespace lamthin

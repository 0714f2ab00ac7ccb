#pragma once

// Reduction to an aligned instance. The family is rebuilt bottom-up: take a
// minimal set S, contract the already-rebuilt pieces inside it, and run the
// partition minimizer on eta*x there. A zero minimum keeps S whole; a
// negative one replaces S by the minimizing partition, whose parts are
// well-connected again. The rebuilt family supports a point x' <= eta*x whose
// restriction to every member is a spanning-tree-polytope point of that
// member's induced graph.

#include <map>
#include <optional>
#include <vector>

#include "frac_point.hpp"
#include "graph.hpp"
#include "instance.hpp"
#include "laminar.hpp"
#include "oracles.hpp"
#include "rational.hpp"

namespace lamthin {

struct ReductionStep {
    VertexSet chosen;                  // the minimal set processed
    std::vector<VertexSet> contracted; // rebuilt pieces contracted inside it
    std::vector<VertexSet> blocks;     // partition added to the new family
    Rat min_value;                     // partition minimizer value on the contracted graph
};

struct ReductionResult {
    LaminarFamily new_family;                     // no bounds
    std::map<int, std::vector<int>> replacement;  // original id -> maximal new ids inside
    std::vector<ReductionStep> trace;
};

namespace detail {

/// G[S] with the given blocks (subsets of S) contracted; edge ids preserved.
/// Returns the contracted graph plus the original-vertex preimage of every
/// contracted-graph vertex.
struct PieceGraph {
    Graph graph;
    std::vector<VertexSet> preimage;  // contracted label -> original vertices
};

inline PieceGraph piece_graph(const Graph& g, const VertexSet& s,
                              const std::vector<VertexSet>& blocks) {
    InducedGraph sub = induced(g, s);
    std::vector<VertexSet> mapped;
    for (const VertexSet& b : blocks) {
        VertexSet m;
        for (int v : b) m.push_back(sub.new_of_old[v]);
        mapped.push_back(make_sorted(std::move(m)));
    }
    ContractedGraph c = contract_sets(sub.graph, mapped);
    PieceGraph out;
    out.preimage.assign(c.graph.vertex_count(), {});
    for (std::size_t i = 0; i < s.size(); ++i)
        out.preimage[c.vertex_map[i]].push_back(sub.old_of_new[i]);
    for (VertexSet& p : out.preimage) p = make_sorted(std::move(p));
    out.graph = std::move(c.graph);
    return out;
}

inline void require_feasible_point(const Graph& g, const LaminarFamily& fam,
                                   const FracPoint& x) {
    require_input(x.nonnegative(), "x has a negative coordinate");
    require_input(x.sum(g.edge_ids()) == Rat(g.vertex_count() - 1),
                  "x(E) must equal n-1");
    if (auto viol = separate_forest(g, x))
        throw input_error("x violates a forest row (excess " + rat_str(viol->excess) + ")");
    for (const LaminarSet& s : fam.sets()) {
        if (!s.bound) continue;
        if (x.sum(cut_edges(g, s.members)) > Rat(*s.bound))
            throw input_error("x violates the bound of set " + std::to_string(s.id));
    }
}

inline bool family_lists_laminar(const std::vector<VertexSet>& sets) {
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j)
            if (sets_cross(sets[i], sets[j])) return false;
    return true;
}

inline std::vector<VertexSet> maximal_sets_inside(const std::vector<VertexSet>& pool,
                                                  const VertexSet& s, bool strict) {
    std::vector<VertexSet> inside;
    for (const VertexSet& t : pool)
        if (is_subset_sorted(t, s) && (!strict || t != s)) inside.push_back(t);
    std::vector<VertexSet> out;
    for (const VertexSet& a : inside) {
        bool dominated = false;
        for (const VertexSet& b : inside)
            if (a != b && is_subset_sorted(a, b)) dominated = true;
        if (!dominated) out.push_back(a);
    }
    return out;
}

}  // namespace detail

/// Rebuilds the family bottom-up; terminates after at most |fam| <= 2|V|-1
/// iterations. Every member of the result is eta-well-connected and the
/// union of the maximal result members inside any original S partitions S.
inline ReductionResult reduce_family(const Graph& g, const LaminarFamily& fam,
                                     const FracPoint& x, const Rat& eta) {
    require_input(eta > 2, "eta must be greater than 2");
    if (auto crossing = validate_laminar(fam))
        throw input_error("family is not laminar: sets " + std::to_string(crossing->first) +
                          " and " + std::to_string(crossing->second) + " cross");
    require_input(fam.contains_members(all_vertices(g)),
                  "the family must contain the whole vertex set");
    detail::require_feasible_point(g, fam, x);

    std::vector<VertexSet> pending;
    for (const LaminarSet& s : fam.sets()) pending.push_back(s.members);
    std::vector<VertexSet> rebuilt;

    ReductionResult out;
    const std::size_t max_iterations = 2 * static_cast<std::size_t>(g.vertex_count()) - 1;
    while (!pending.empty()) {
        require_invariant(out.trace.size() < max_iterations,
                          "family rebuild exceeded its iteration budget");
        auto chosen_it = std::min_element(
            pending.begin(), pending.end(), [](const VertexSet& a, const VertexSet& b) {
                if (a.size() != b.size()) return a.size() < b.size();
                return a < b;
            });
        VertexSet s = *chosen_it;  // smallest cardinality is inclusion-minimal
        pending.erase(chosen_it);

        std::vector<VertexSet> children = detail::maximal_sets_inside(rebuilt, s, false);
        detail::PieceGraph piece = detail::piece_graph(g, s, children);
        FracPoint w;
        for (const Edge& e : piece.graph.edges()) w.set(e.id, x.at(e.id) * eta);
        MinPartitionResult res = min_partition(piece.graph, w);
        require_invariant(res.value <= 0, "partition minimizer must be nonpositive");

        ReductionStep step;
        step.chosen = s;
        step.contracted = children;
        step.min_value = res.value;
        if (res.value == 0) {
            step.blocks = {s};  // the trivial partition attains the minimum
        } else {
            for (const VertexSet& block : res.partition.blocks) {
                VertexSet original;
                for (int v : block)
                    for (int o : piece.preimage[v]) original.push_back(o);
                step.blocks.push_back(make_sorted(std::move(original)));
            }
        }
        for (const VertexSet& block : step.blocks) {
            if (std::find(rebuilt.begin(), rebuilt.end(), block) == rebuilt.end())
                rebuilt.push_back(block);
            if (block != all_vertices(g))
                require_invariant(x.sum(cut_edges(g, block)) >= 1,
                                  "rebuilt member with x(delta) < 1");
        }
        out.trace.push_back(std::move(step));

        std::vector<VertexSet> all = pending;
        all.insert(all.end(), rebuilt.begin(), rebuilt.end());
        require_invariant(detail::family_lists_laminar(all),
                          "rebuild lost laminarity");
    }

    int id = 0;
    for (VertexSet& s : rebuilt) out.new_family.add(LaminarSet{id++, s, std::nullopt});
    for (const LaminarSet& s : fam.sets()) {
        std::vector<VertexSet> parts = detail::maximal_sets_inside(rebuilt, s.members, false);
        VertexSet covered;
        std::vector<int> ids;
        for (const VertexSet& p : parts) {
            std::size_t before = covered.size();
            covered = set_union_sorted(covered, p);
            require_invariant(covered.size() == before + p.size(),
                              "replacement blocks overlap");
            for (const LaminarSet& t : out.new_family.sets())
                if (t.members == p) ids.push_back(t.id);
        }
        require_invariant(covered == s.members, "replacement blocks do not cover the set");
        out.replacement[s.id] = std::move(ids);
    }
    return out;
}

/// Assembles x' <= eta*x whose restriction to each family member's piece is a
/// spanning-tree-polytope point: bottom-up, each member contributes the
/// dominated point of eta*x on its contracted piece, and the pieces' edge
/// sets partition E.
inline FracPoint build_aligned_point(const Graph& g, const LaminarFamily& new_family,
                                     const FracPoint& x, const Rat& eta) {
    require_input(new_family.contains_members(all_vertices(g)),
                  "the family must contain the whole vertex set");
    std::vector<VertexSet> pool;
    for (const LaminarSet& s : new_family.sets()) pool.push_back(s.members);

    std::vector<const LaminarSet*> order;
    for (const LaminarSet& s : new_family.sets()) order.push_back(&s);
    std::sort(order.begin(), order.end(), [](const LaminarSet* a, const LaminarSet* b) {
        if (a->members.size() != b->members.size()) return a->members.size() < b->members.size();
        return a->members < b->members;
    });

    FracPoint aligned;
    IdSet assigned;
    for (const LaminarSet* s : order) {
        std::vector<VertexSet> children =
            detail::maximal_sets_inside(pool, s->members, true);
        detail::PieceGraph piece = detail::piece_graph(g, s->members, children);
        FracPoint w;
        for (const Edge& e : piece.graph.edges()) w.set(e.id, x.at(e.id) * eta);
        if (separate_dominant(piece.graph, w))
            throw input_error("set " + std::to_string(s->id) + " is not well-connected");
        FracPoint y = dominated_base_point(piece.graph, w);
        for (const Edge& e : piece.graph.edges()) {
            require_invariant(!sorted_contains(assigned, e.id),
                              "edge assigned to two pieces");
            assigned = set_union_sorted(assigned, {e.id});
            aligned.set(e.id, y.at(e.id));
        }
    }
    require_invariant(assigned == g.edge_ids(), "pieces do not cover the edge set");
    require_invariant(aligned.dominated_by(x.scaled(eta)), "aligned point exceeds eta*x");
    require_invariant(aligned.total() == Rat(g.vertex_count() - 1),
                      "aligned point total must be n-1");
    return aligned;
}

struct ReplacementBoundViolation {
    int set_id;
    Rat lhs;  // sum over replacement blocks of x(delta(S_i))
    Rat rhs;  // x(delta(S)) / (1 - 2/eta) - 2/(eta - 2)
};

/// Exact per-set check of the replacement sum bound
///   sum_i x(delta(S_i)) <= x(delta(S)) / (1 - 2/eta) - 2/(eta - 2)
/// for every proper original set. The whole vertex set is exempt (its cut is
/// empty, the bound's additive term would make the stated form unsatisfiable)
/// and instead must be replaced by itself.
inline std::optional<ReplacementBoundViolation> check_replacement_bound(
    const Graph& g, const LaminarFamily& original, const ReductionResult& result,
    const FracPoint& x, const Rat& eta) {
    const VertexSet whole = all_vertices(g);
    for (const LaminarSet& s : original.sets()) {
        auto it = result.replacement.find(s.id);
        if (it == result.replacement.end()) continue;
        Rat lhs = 0;
        for (int nid : it->second)
            lhs += x.sum(cut_edges(g, result.new_family.set_by_id(nid).members));
        if (s.members == whole) {
            if (lhs != 0) return ReplacementBoundViolation{s.id, lhs, Rat(0)};
            continue;
        }
        Rat rhs = x.sum(cut_edges(g, s.members)) / (Rat(1) - Rat(2) / eta) -
                  Rat(2) / (eta - Rat(2));
        if (lhs > rhs) return ReplacementBoundViolation{s.id, lhs, rhs};
    }
    return std::nullopt;
}

}  // namespace lamthin

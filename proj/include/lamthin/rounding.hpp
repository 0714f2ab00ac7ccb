#pragma once

// Iterative relaxation for aligned matroids. Each level solves the relaxation
//   min c.x  s.t.  x(delta(S)) <= b_S for the active family,  x in P_M
// at a vertex, then either fixes an integral edge (delete at 0, contract at 1
// with the crossed bounds lowered) or drops a tight constraint that is within
// three units of integral coverage, or is approximately implied by a nested
// tight constraint. The alignment of the matroid with the family is what
// makes one of these rules always available; reaching the final fallback is a
// certified bug, never an expected outcome.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frac_point.hpp"
#include "graph.hpp"
#include "instance.hpp"
#include "laminar.hpp"
#include "lp.hpp"
#include "matroid.hpp"
#include "oracles.hpp"
#include "rational.hpp"

namespace lamthin {

struct RoundingStep {
    std::string rule;   // "delete" | "contract" | "drop" | "drop-implied"
    int edge = -1;      // delete/contract witness
    int set_id = -1;    // dropped set
    int implied_by = -1;
    Rat lp_value;       // optimum of this level's relaxation
};

struct RoundingOutcome {
    IdSet basis;
    std::vector<RoundingStep> log;
    int depth = 0;   // recursion levels below the root
    Rat root_value;  // optimum of the root relaxation
    bool saw_fractional_vertex = false;  // some level's vertex had a non-integral coordinate
};

namespace detail {

struct ActiveSet {
    int id;
    VertexSet members;
    long bound;
};

inline SolveOutcome solve_rounding_lp(const Graph& g, const Matroid& m,
                                      const std::vector<ActiveSet>& active,
                                      const std::map<int, Rat>& costs) {
    LinearProgram lp;
    for (int id : m.groundset()) lp.add_variable(id, VarDomain::unit_interval);
    for (int id : m.groundset()) {
        auto it = costs.find(id);
        lp.set_objective(id, it == costs.end() ? Rat(0) : it->second);
    }
    LinRow total;
    for (int id : m.groundset()) total.coeffs[id] = 1;
    total.rel = Rel::eq;
    total.rhs = Rat(m.full_rank());
    total.kind = RowKind::rank;
    total.label = "x(E) = rank(E)";
    lp.add_row(std::move(total));
    for (const ActiveSet& s : active) {
        LinRow row;
        for (int id : cut_edges(g, s.members)) row.coeffs[id] = 1;
        row.rel = Rel::le;
        row.rhs = Rat(s.bound);
        row.kind = RowKind::cut;
        row.label = "cut " + std::to_string(s.id);
        lp.add_row(std::move(row));
    }
    lp.add_oracle([m](const FracPoint& x) {
        std::vector<LinRow> rows;
        if (auto viol = separate_base_polytope(m, x)) {
            require_invariant(!viol->total_rank_defect,
                              "total rank equality escaped the explicit row");
            LinRow row;
            for (int id : viol->subset) row.coeffs[id] = 1;
            row.rel = Rel::le;
            row.rhs = Rat(m.rank(viol->subset));
            row.kind = RowKind::rank;
            row.label = "rank";
            rows.push_back(std::move(row));
        }
        return rows;
    });
    return solve_basic(lp);
}

struct DropDecision {
    int set_id;
    int implied_by;  // the witness of the implied rule, or -1 for the direct rule
};

/// Step-6 scan: in family order, drop the first tight set whose cut has less
/// than 3 units of integral slack, or whose cut slack outside a nested tight
/// cut is below 2 (this covers duplicate cuts, where the difference is empty).
/// Only meaningful at a vertex with no integral coordinate.
inline std::optional<DropDecision> find_droppable(const Graph& g,
                                                  const std::vector<ActiveSet>& active,
                                                  const FracPoint& x) {
    std::vector<const ActiveSet*> tight;
    for (const ActiveSet& s : active) {
        IdSet cut = cut_edges(g, s.members);
        if (x.sum(cut) == Rat(s.bound)) tight.push_back(&s);
    }
    for (const ActiveSet* s : tight) {
        IdSet cut = cut_edges(g, s->members);
        if (Rat(static_cast<long>(cut.size())) - x.sum(cut) < 3) {
            // the crossing count is already pinned near the bound
            require_invariant(static_cast<long>(cut.size()) <= s->bound + 2,
                              "drop rule fired with too many remaining edges");
            return DropDecision{s->id, -1};
        }
        for (const ActiveSet* other : tight) {
            if (other == s) continue;
            IdSet inner = cut_edges(g, other->members);
            if (!is_subset_sorted(inner, cut)) continue;
            IdSet diff = set_difference_sorted(cut, inner);
            if (Rat(static_cast<long>(diff.size())) - x.sum(diff) < 2)
                return DropDecision{s->id, other->id};
        }
    }
    return std::nullopt;
}

inline IdSet rounding_level(const Graph& g, const Matroid& m, std::vector<ActiveSet> active,
                            const std::map<int, Rat>& costs,
                            const std::optional<Rat>& budget, std::vector<RoundingStep>& log,
                            int depth, int& max_depth, bool& root_infeasible,
                            bool& saw_fractional) {
    max_depth = std::max(max_depth, depth);
    if (m.groundset().empty()) return {};

    SolveOutcome lp = solve_rounding_lp(g, m, active, costs);
    if (lp.status == SolveStatus::infeasible) {
        require_invariant(depth == 0, "relaxation infeasible below the root");
        root_infeasible = true;
        return {};
    }
    require_invariant(lp.status == SolveStatus::optimal, "relaxation did not solve");
    const FracPoint& x = lp.solution->x;
    const Rat& value = lp.solution->value;
    for (const auto& [id, v] : x.entries())
        if (!is_integer(v)) saw_fractional = true;
    if (budget)
        require_invariant(value <= *budget, "relaxation value rose along the recursion");

    // integral edges first: delete at zero
    for (int id : m.groundset()) {
        if (x.at(id) != 0) continue;
        log.push_back(RoundingStep{"delete", id, -1, -1, value});
        return rounding_level(g.without_edge(id), m.deleted({id}), std::move(active), costs,
                              value, log, depth + 1, max_depth, root_infeasible,
                              saw_fractional);
    }
    // then contract at one, lowering every crossed bound
    for (int id : m.groundset()) {
        if (x.at(id) != 1) continue;
        std::vector<ActiveSet> lowered = active;
        for (ActiveSet& s : lowered) {
            if (sorted_contains(cut_edges(g, s.members), id)) {
                s.bound -= 1;
                require_invariant(s.bound >= 0, "bound went negative at a contraction");
            }
        }
        log.push_back(RoundingStep{"contract", id, -1, -1, value});
        Rat child_budget = value - (costs.count(id) ? costs.at(id) : Rat(0));
        IdSet child =
            rounding_level(g.without_edge(id), m.contracted({id}), std::move(lowered), costs,
                           child_budget, log, depth + 1, max_depth, root_infeasible,
                           saw_fractional);
        return set_union_sorted(child, {id});
    }

    std::optional<DropDecision> drop = find_droppable(g, active, x);
    if (drop) {
        std::vector<ActiveSet> remaining;
        for (const ActiveSet& a : active)
            if (a.id != drop->set_id) remaining.push_back(a);
        log.push_back(RoundingStep{drop->implied_by >= 0 ? "drop-implied" : "drop", -1,
                                   drop->set_id, drop->implied_by, value});
        return rounding_level(g, m, std::move(remaining), costs, value, log, depth + 1,
                              max_depth, root_infeasible, saw_fractional);
    }

    throw invariant_error("iterative relaxation exhausted every rule");
}

}  // namespace detail

/// Finds a basis B of the aligned matroid with c(B) at most the relaxation
/// optimum and |B ∩ delta(S)| <= 2 b_S + 1 for every family member. Returns
/// nullopt when the root relaxation is infeasible (no basis meets the
/// bounds). Every family member must carry a bound.
inline std::optional<RoundingOutcome> lam_constrained_basis(const Graph& g, const Matroid& m,
                                                            const LaminarFamily& fam,
                                                            const std::map<int, Rat>& costs) {
    require_input(g.edge_ids() == m.groundset(),
                  "graph edges and matroid groundset must coincide");
    if (auto crossing = validate_laminar(fam))
        throw input_error("family is not laminar: sets " + std::to_string(crossing->first) +
                          " and " + std::to_string(crossing->second) + " cross");
    std::vector<detail::ActiveSet> active;
    for (const LaminarSet& s : fam.sets()) {
        require_input(s.bound.has_value(),
                      "set " + std::to_string(s.id) + " is missing its bound");
        validate_vertex_set(g, s.members);
        active.push_back(detail::ActiveSet{s.id, s.members, *s.bound});
    }

    RoundingOutcome out;
    int max_depth = 0;
    bool root_infeasible = false;
    out.basis = detail::rounding_level(g, m, std::move(active), costs, std::nullopt, out.log,
                                       0, max_depth, root_infeasible,
                                       out.saw_fractional_vertex);
    if (root_infeasible) return std::nullopt;
    out.depth = max_depth;
    require_invariant(out.depth <=
                          static_cast<int>(m.groundset().size() + fam.size()),
                      "recursion depth exceeded |E| + |family|");
    if (!out.log.empty()) out.root_value = out.log.front().lp_value;

    require_invariant(static_cast<int>(out.basis.size()) == m.full_rank() &&
                          m.rank(out.basis) == m.full_rank(),
                      "result is not a basis");
    require_invariant(cost_of(costs, out.basis) <= out.root_value,
                      "basis exceeds the relaxation optimum");
    for (const LaminarSet& s : fam.sets()) {
        long crossings = static_cast<long>(
            set_intersection_sorted(out.basis, cut_edges(g, s.members)).size());
        require_invariant(crossings <= 2 * *s.bound + 1,
                          "basis crosses set " + std::to_string(s.id) + " too often");
    }
    return out;
}

struct RoundAlignedOutcome {
    IdSet tree;
    std::vector<RoundingStep> log;
    LaminarFamily bounded;  // the family with the ceiling bounds actually used
    int depth = 0;
    Rat root_value;
    bool saw_fractional_vertex = false;
};

/// Rounds an aligned spanning-tree-polytope point: bounds are the ceilings of
/// the fractional cut loads, the graphic matroid is refined along the family,
/// and the relaxation is rounded to a spanning tree T with c(T) <= c(x) and
/// |T ∩ delta(S)| <= 2 ceil(x(delta(S))) + 1 <= 2 x(delta(S)) + 3.
inline RoundAlignedOutcome round_aligned(const Graph& g, const LaminarFamily& fam,
                                         const FracPoint& x,
                                         const std::map<int, Rat>& costs) {
    require_input(x.nonnegative(), "x has a negative coordinate");
    require_input(x.sum(g.edge_ids()) == Rat(g.vertex_count() - 1), "x(E) must equal n-1");
    if (auto viol = separate_forest(g, x))
        throw input_error("x violates a forest row (excess " + rat_str(viol->excess) + ")");
    if (auto witness = is_aligned_point(Matroid::graphic(g), g, fam, x))
        throw input_error("x is not aligned with set " + std::to_string(*witness));

    RoundAlignedOutcome out;
    for (LaminarSet s : fam.sets()) {
        Rat load = x.sum(cut_edges(g, s.members));
        s.bound = static_cast<long>(rat_ceil(load).get_si());
        out.bounded.add(std::move(s));
    }
    Matroid refined = refine_along_family(Matroid::graphic(g), g, fam);
    require_invariant(!separate_base_polytope(refined, x).has_value(),
                      "aligned point left the refined base polytope");

    std::optional<RoundingOutcome> rounded =
        lam_constrained_basis(g, refined, out.bounded, costs);
    require_invariant(rounded.has_value(),
                      "relaxation infeasible although x is a witness");
    out.tree = std::move(rounded->basis);
    out.log = std::move(rounded->log);
    out.depth = rounded->depth;
    out.root_value = std::move(rounded->root_value);
    out.saw_fractional_vertex = rounded->saw_fractional_vertex;

    require_invariant(static_cast<int>(out.tree.size()) == g.vertex_count() - 1 &&
                          g.with_only_edges(out.tree).connected(),
                      "rounding did not return a spanning tree");
    require_invariant(cost_of(costs, out.tree) <= cost_of_point(costs, x),
                      "tree cost exceeds the fractional cost");
    for (const LaminarSet& s : out.bounded.sets()) {
        long crossings = static_cast<long>(
            set_intersection_sorted(out.tree, cut_edges(g, s.members)).size());
        require_invariant(crossings <= 2 * *s.bound + 1, "crossing guarantee violated");
    }
    return out;
}

}  // namespace lamthin

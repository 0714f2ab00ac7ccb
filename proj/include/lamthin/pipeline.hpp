#pragma once

// End-to-end driver: solve the relaxation at a vertex, rebuild the family and
// the aligned point, round by iterative relaxation, and re-verify every
// guarantee by direct counting before emitting the report. The certified
// factors are eta on cost and eta(2eta+3)/(eta-2) on cut crossings, both
// measured against the root fractional solution.

#include <map>
#include <optional>
#include <vector>

#include "frac_point.hpp"
#include "graph.hpp"
#include "harness.hpp"
#include "instance.hpp"
#include "laminar.hpp"
#include "lp.hpp"
#include "matroid.hpp"
#include "oracles.hpp"
#include "rational.hpp"
#include "reduction.hpp"
#include "rounding.hpp"

namespace lamthin {

inline Rat thinness_factor(const Rat& eta) {
    require_input(eta > 2, "eta must be greater than 2");
    return eta * (2 * eta + 3) / (eta - 2);
}

struct CutReportRow {
    int set_id = 0;
    long crossings = 0;
    Rat x_delta;
    std::optional<long> bound;
    std::optional<Rat> ratio;  // crossings / x_delta; absent for an empty cut
};

struct TreeReport {
    IdSet tree;
    Rat tree_cost;
    Rat lp_cost;
    std::optional<Rat> cost_ratio;  // absent for a zero-cost relaxation
    std::vector<CutReportRow> cuts;
    Rat eta;
    Rat cost_factor;      // = eta
    Rat thinness;         // = thinness_factor(eta)
    FracPoint x_root;     // fractional solution all guarantees are against
    FracPoint x_aligned;
    ReductionResult reduction;
    RoundAlignedOutcome rounding;
};

struct RelaxationResult {
    FracPoint x;
    Rat value;
    int oracle_rounds = 0;
    LinearProgram lp;  // the explicit system after row generation
};

/// Basic optimal solution of
///   min c.x  s.t.  x(delta(S)) <= b_S for bounded S,  x in P_st(G)
/// (total row explicit, forest rows by separation). nullopt certifies that no
/// fractional solution exists, hence no tree satisfies the bounds either.
inline std::optional<RelaxationResult> solve_relaxation(const Graph& g,
                                                        const LaminarFamily& fam,
                                                        const std::map<int, Rat>& costs) {
    require_input(g.vertex_count() >= 1 && g.connected(), "graph must be connected");
    LinearProgram lp;
    for (const Edge& e : g.edges()) lp.add_variable(e.id, VarDomain::unit_interval);
    for (const Edge& e : g.edges()) {
        auto it = costs.find(e.id);
        lp.set_objective(e.id, it == costs.end() ? Rat(0) : it->second);
    }
    LinRow total;
    for (const Edge& e : g.edges()) total.coeffs[e.id] = 1;
    total.rel = Rel::eq;
    total.rhs = Rat(g.vertex_count() - 1);
    total.kind = RowKind::rank;
    total.label = "x(E) = n-1";
    lp.add_row(std::move(total));
    for (const LaminarSet& s : fam.sets()) {
        if (!s.bound) continue;
        LinRow row;
        for (int id : cut_edges(g, s.members)) row.coeffs[id] = 1;
        row.rel = Rel::le;
        row.rhs = Rat(*s.bound);
        row.kind = RowKind::cut;
        row.label = "cut " + std::to_string(s.id);
        lp.add_row(std::move(row));
    }
    lp.add_oracle([g](const FracPoint& x) {
        std::vector<LinRow> rows;
        if (auto viol = separate_forest(g, x)) {
            LinRow row;
            for (int id : induced_edges(g, viol->set)) row.coeffs[id] = 1;
            row.rel = Rel::le;
            row.rhs = Rat(static_cast<long>(viol->set.size()) - 1);
            row.kind = RowKind::rank;
            row.label = "forest";
            rows.push_back(std::move(row));
        }
        return rows;
    });

    SolveOutcome out = solve_basic(std::move(lp));
    if (out.status == SolveStatus::infeasible) return std::nullopt;
    require_invariant(out.status == SolveStatus::optimal, "relaxation did not solve");
    if (auto defect = check_vertex(out.final_lp, out.solution->x))
        throw invariant_error("relaxation returned a defective vertex: " + *defect);
    return RelaxationResult{std::move(out.solution->x), std::move(out.solution->value),
                            out.oracle_rounds, std::move(out.final_lp)};
}

/// Reduce, align, round, re-verify, and assemble the report. x must be
/// feasible for the relaxation of (inst.graph, inst.family) — with the whole
/// vertex set present in the family — and lp_cost must be its cost. All
/// guarantees are certified against this x.
inline TreeReport run_pipeline_stages(const Instance& inst, FracPoint x, Rat lp_cost) {
    const Graph& g = inst.graph;
    const Rat& eta = inst.eta;
    TreeReport report;
    report.eta = eta;
    report.cost_factor = eta;
    report.thinness = thinness_factor(eta);
    report.lp_cost = std::move(lp_cost);

    report.reduction = reduce_family(g, inst.family, x, eta);
    report.x_aligned = build_aligned_point(g, report.reduction.new_family, x, eta);

    // stage re-verification, independent of the construction path
    require_invariant(report.x_aligned.dominated_by(x.scaled(eta)),
                      "aligned point exceeds eta*x");
    require_invariant(!is_aligned_point(Matroid::graphic(g), g, report.reduction.new_family,
                                        report.x_aligned)
                           .has_value(),
                      "aligned point fails the alignment check");
    for (const LaminarSet& s : report.reduction.new_family.sets())
        require_invariant(is_well_connected(g, x, s.members, eta),
                          "rebuilt member is not well-connected");
    if (auto viol = check_replacement_bound(g, inst.family, report.reduction, x, eta))
        throw invariant_error("replacement bound violated at set " +
                              std::to_string(viol->set_id));

    report.rounding =
        round_aligned(g, report.reduction.new_family, report.x_aligned, inst.costs);
    report.tree = report.rounding.tree;
    report.tree_cost = cost_of(inst.costs, report.tree);
    require_invariant(static_cast<int>(report.tree.size()) == g.vertex_count() - 1 &&
                          g.with_only_edges(report.tree).connected(),
                      "result is not a spanning tree");

    // cost guarantee: c(T) <= c(x') <= eta c(x)
    require_invariant(report.tree_cost <= cost_of_point(inst.costs, report.x_aligned),
                      "tree cost exceeds the aligned cost");
    require_invariant(report.tree_cost <= eta * report.lp_cost,
                      "tree cost exceeds eta times the relaxation cost");
    if (report.lp_cost != 0) report.cost_ratio = report.tree_cost / report.lp_cost;

    // crossing guarantees, recounted from scratch against the root solution
    for (const LaminarSet& s : inst.family.sets()) {
        CutReportRow row;
        row.set_id = s.id;
        row.bound = s.bound;
        IdSet cut = cut_edges(g, s.members);
        row.crossings = static_cast<long>(set_intersection_sorted(report.tree, cut).size());
        row.x_delta = x.sum(cut);
        require_invariant(Rat(row.crossings) <= report.thinness * row.x_delta ||
                              (row.x_delta == 0 && row.crossings == 0),
                          "thinness guarantee violated at set " + std::to_string(s.id));
        if (row.x_delta != 0) row.ratio = Rat(row.crossings) / row.x_delta;
        report.cuts.push_back(std::move(row));
    }
    // the stage guarantee against the aligned point, in both stated forms
    for (const LaminarSet& s : report.reduction.new_family.sets()) {
        IdSet cut = cut_edges(g, s.members);
        long crossings = static_cast<long>(set_intersection_sorted(report.tree, cut).size());
        Rat load = report.x_aligned.sum(cut);
        require_invariant(Int(crossings) <= 2 * rat_ceil(load) + 1,
                          "ceiling crossing bound violated");
        require_invariant(Rat(crossings) <= 2 * load + 3,
                          "algebraic crossing bound violated");
    }
    report.x_root = std::move(x);
    return report;
}

/// The full pipeline on an instance with bounds. nullopt = infeasible (which
/// certifies that no spanning tree satisfies the bounds).
inline std::optional<TreeReport> solve_instance(const Instance& instance) {
    validate_instance(instance);
    Instance inst = normalized(instance);
    auto relax = solve_relaxation(inst.graph, inst.family, inst.costs);
    if (!relax) return std::nullopt;
    return run_pipeline_stages(inst, std::move(relax->x), std::move(relax->value));
}

/// Thin tree for a verified k-edge-connected graph: round the dominated point
/// of the uniform 2/k vector. Every cut of the family ends up crossed at most
/// thinness_factor(eta) * (2/k) * |delta(S)| times.
inline TreeReport thin_tree_for_k_connected(const Graph& g, const LaminarFamily& fam, int k,
                                            const Rat& eta) {
    require_input(k >= 2, "need k >= 2");
    require_input(g.vertex_count() >= 2 && g.connected(), "graph must be connected");
    int connectivity = edge_connectivity(g);
    if (connectivity < k) {
        VertexSet side = minimum_cut_side(g);
        std::string cut;
        for (int v : side) cut += (cut.empty() ? "" : ",") + std::to_string(v);
        throw input_error("graph is only " + std::to_string(connectivity) +
                          "-edge-connected (cut {" + cut + "})");
    }
    FracPoint uniform;
    for (const Edge& e : g.edges()) uniform.set(e.id, Rat(2) / k);
    FracPoint x = dominated_base_point(g, uniform);

    Instance inst;
    inst.graph = g;
    inst.eta = eta;
    for (const Edge& e : g.edges()) inst.costs[e.id] = 0;
    for (LaminarSet s : fam.sets()) {
        s.bound = static_cast<long>(rat_ceil(x.sum(cut_edges(g, s.members))).get_si());
        inst.family.add(std::move(s));
    }
    validate_instance(inst);
    inst = normalized(inst);

    TreeReport report = run_pipeline_stages(inst, std::move(x), Rat(0));
    // the k-connectivity corollary, checked per cut against the edge counts
    for (const CutReportRow& row : report.cuts) {
        const LaminarSet& s = inst.family.set_by_id(row.set_id);
        Rat budget = report.thinness * Rat(2) / k *
                     Rat(static_cast<long>(cut_edges(g, s.members).size()));
        require_invariant(Rat(row.crossings) <= budget,
                          "k-connectivity corollary violated at set " +
                              std::to_string(row.set_id));
    }
    return report;
}

}  // namespace lamthin

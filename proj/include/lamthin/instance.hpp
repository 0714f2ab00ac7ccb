#pragma once

// A problem instance: connected multigraph, laminar family with bounds,
// nonnegative edge costs, and the relaxation parameter eta > 2.

#include <map>

#include "frac_point.hpp"
#include "graph.hpp"
#include "laminar.hpp"
#include "rational.hpp"

namespace lamthin {

inline Rat default_eta() { return rat(93, 20); }  // 4.65

struct Instance {
    Graph graph;
    LaminarFamily family;
    std::map<int, Rat> costs;  // edge id -> cost
    Rat eta = default_eta();
};

inline VertexSet all_vertices(const Graph& g) {
    VertexSet v(g.vertex_count());
    std::iota(v.begin(), v.end(), 0);
    return v;
}

inline void validate_instance(const Instance& inst) {
    require_input(inst.graph.vertex_count() >= 1, "instance needs at least one vertex");
    require_input(inst.graph.connected(), "instance graph must be connected");
    require_input(inst.eta > 2, "eta must be greater than 2");
    if (auto crossing = validate_laminar(inst.family))
        throw input_error("family is not laminar: sets " + std::to_string(crossing->first) +
                          " and " + std::to_string(crossing->second) + " cross");
    for (const LaminarSet& s : inst.family.sets()) {
        require_input(!s.members.empty(), "empty laminar set " + std::to_string(s.id));
        validate_vertex_set(inst.graph, s.members);
        require_input(!s.bound || *s.bound >= 0,
                      "negative bound on set " + std::to_string(s.id));
    }
    for (const Edge& e : inst.graph.edges()) {
        auto it = inst.costs.find(e.id);
        require_input(it != inst.costs.end(), "missing cost for edge " + std::to_string(e.id));
        require_input(it->second >= 0, "negative cost on edge " + std::to_string(e.id));
    }
}

/// The whole vertex set is assumed to be a member of the family (its
/// constraint is vacuous); add it with no bound when missing.
inline Instance normalized(Instance inst) {
    VertexSet v = all_vertices(inst.graph);
    if (!inst.family.contains_members(v))
        inst.family.add(LaminarSet{inst.family.fresh_id(), v, std::nullopt});
    return inst;
}

inline Rat cost_of(const std::map<int, Rat>& costs, const IdSet& ids) {
    Rat s = 0;
    for (int id : ids) {
        auto it = costs.find(id);
        require_input(it != costs.end(), "missing cost for edge " + std::to_string(id));
        s += it->second;
    }
    return s;
}

inline Rat cost_of_point(const std::map<int, Rat>& costs, const FracPoint& x) {
    Rat s = 0;
    for (const auto& [id, v] : x.entries()) {
        auto it = costs.find(id);
        require_input(it != costs.end(), "missing cost for edge " + std::to_string(id));
        s += it->second * v;
    }
    return s;
}

}  // namespace lamthin

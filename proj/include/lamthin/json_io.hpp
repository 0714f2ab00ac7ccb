#pragma once

// JSON file formats. Rationals travel as strings ("p/q" or a decimal
// integer) so nothing downstream can mangle them; serialization is lossless
// and reports re-parse to identical values.

#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "frac_point.hpp"
#include "instance.hpp"
#include "pipeline.hpp"
#include "rational.hpp"

namespace lamthin {

using nlohmann::json;

inline Rat rat_from_json(const json& j) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    throw input_error("expected a rational as \"p/q\" string or integer, got " + j.dump());
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    require_input(in.good(), "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw input_error("malformed JSON in " + path + ": " + e.what());
    }
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    require_input(out.good(), "cannot write " + path);
    out << j.dump(2) << "\n";
}

inline Instance instance_from_json(const json& j) {
    try {
        Instance inst;
        int n = j.at("vertices").get<int>();
        std::vector<Edge> edges;
        for (const json& je : j.at("edges")) {
            Edge e{je.at("id").get<int>(), je.at("u").get<int>(), je.at("v").get<int>()};
            inst.costs[e.id] = rat_from_json(je.at("cost"));
            edges.push_back(e);
        }
        inst.graph = Graph(n, std::move(edges));
        for (const json& js : j.at("laminar")) {
            LaminarSet s;
            s.id = js.at("id").get<int>();
            for (const json& jv : js.at("set")) s.members.push_back(jv.get<int>());
            s.members = make_sorted(std::move(s.members));
            if (js.contains("bound") && !js.at("bound").is_null())
                s.bound = js.at("bound").get<long>();
            inst.family.add(std::move(s));
        }
        inst.eta = j.contains("eta") ? rat_from_json(j.at("eta")) : default_eta();
        validate_instance(inst);
        return inst;
    } catch (const json::exception& e) {
        throw input_error(std::string("malformed instance: ") + e.what());
    }
}

inline json instance_to_json(const Instance& inst) {
    json j;
    j["vertices"] = inst.graph.vertex_count();
    j["edges"] = json::array();
    for (const Edge& e : inst.graph.edges())
        j["edges"].push_back({{"id", e.id},
                              {"u", e.u},
                              {"v", e.v},
                              {"cost", rat_str(inst.costs.at(e.id))}});
    j["laminar"] = json::array();
    for (const LaminarSet& s : inst.family.sets()) {
        json js{{"id", s.id}, {"set", s.members}};
        if (s.bound)
            js["bound"] = *s.bound;
        else
            js["bound"] = nullptr;
        j["laminar"].push_back(std::move(js));
    }
    j["eta"] = rat_str(inst.eta);
    return j;
}

inline json point_to_json(const FracPoint& x) {
    json values = json::array();
    for (const auto& [id, v] : x.entries())
        values.push_back({{"id", id}, {"value", rat_str(v)}});
    return json{{"values", std::move(values)}};
}

inline FracPoint point_from_json(const json& j) {
    try {
        FracPoint x;
        for (const json& jv : j.at("values"))
            x.set(jv.at("id").get<int>(), rat_from_json(jv.at("value")));
        return x;
    } catch (const json::exception& e) {
        throw input_error(std::string("malformed point file: ") + e.what());
    }
}

inline json vertex_sets_to_json(const std::vector<VertexSet>& sets) {
    json out = json::array();
    for (const VertexSet& s : sets) out.push_back(s);
    return out;
}

inline json reduction_to_json(const ReductionResult& red) {
    json steps = json::array();
    for (const ReductionStep& step : red.trace)
        steps.push_back({{"set", step.chosen},
                         {"contracted", vertex_sets_to_json(step.contracted)},
                         {"partition", vertex_sets_to_json(step.blocks)},
                         {"value", rat_str(step.min_value)}});
    json family = json::array();
    for (const LaminarSet& s : red.new_family.sets())
        family.push_back({{"id", s.id}, {"set", s.members}});
    json replacement = json::object();
    for (const auto& [orig, ids] : red.replacement) replacement[std::to_string(orig)] = ids;
    return json{{"steps", std::move(steps)},
                {"family", std::move(family)},
                {"replacement", std::move(replacement)}};
}

inline json rounding_log_to_json(const std::vector<RoundingStep>& log) {
    json out = json::array();
    for (const RoundingStep& step : log) {
        json js{{"rule", step.rule}, {"lp_value", rat_str(step.lp_value)}};
        if (step.edge >= 0) js["edge"] = step.edge;
        if (step.set_id >= 0) js["set"] = step.set_id;
        if (step.implied_by >= 0) js["implied_by"] = step.implied_by;
        out.push_back(std::move(js));
    }
    return out;
}

inline json report_to_json(const TreeReport& rep) {
    json cuts = json::array();
    for (const CutReportRow& row : rep.cuts) {
        json jr{{"id", row.set_id},
                {"crossings", row.crossings},
                {"x_delta", rat_str(row.x_delta)}};
        jr["bound"] = row.bound ? json(*row.bound) : json(nullptr);
        jr["ratio"] = row.ratio ? json(rat_str(*row.ratio)) : json(nullptr);
        cuts.push_back(std::move(jr));
    }
    json j;
    j["status"] = "ok";
    j["eta"] = rat_str(rep.eta);
    j["tree"] = rep.tree;
    j["cost"] = {{"tree", rat_str(rep.tree_cost)},
                 {"lp", rat_str(rep.lp_cost)},
                 {"ratio", rep.cost_ratio ? json(rat_str(*rep.cost_ratio)) : json(nullptr)}};
    j["cuts"] = std::move(cuts);
    j["guarantees"] = {{"cost_factor", rat_str(rep.cost_factor)},
                       {"thinness_factor", rat_str(rep.thinness)}};
    j["x"] = point_to_json(rep.x_root);
    j["x_aligned"] = point_to_json(rep.x_aligned);
    j["trace"] = {{"reduction", reduction_to_json(rep.reduction)},
                  {"rounding", rounding_log_to_json(rep.rounding.log)}};
    return j;
}

inline json infeasible_report() { return json{{"status", "infeasible"}}; }

/// Recount everything in a report against its instance. Returns the first
/// defect found, or nullopt when the report checks out.
inline std::optional<std::string> verify_report(const Instance& instance, const json& j) {
    try {
        Instance inst = normalized(instance);
        const Graph& g = inst.graph;
        std::string status = j.at("status").get<std::string>();
        if (status == "infeasible") {
            if (solve_relaxation(g, inst.family, inst.costs).has_value())
                return "report says infeasible but the relaxation is feasible";
            return std::nullopt;
        }
        if (status != "ok") return "unknown status " + status;

        Rat eta = rat_from_json(j.at("eta"));
        if (eta != inst.eta) return "eta differs from the instance";
        IdSet tree;
        for (const json& je : j.at("tree")) tree.push_back(je.get<int>());
        tree = make_sorted(std::move(tree));
        if (static_cast<int>(tree.size()) != g.vertex_count() - 1 ||
            !g.with_only_edges(tree).connected())
            return "tree field is not a spanning tree";

        FracPoint x = point_from_json(j.at("x"));
        if (!x.nonnegative()) return "x has a negative coordinate";
        for (const auto& [id, v] : x.entries())
            if (!g.has_edge(id)) return "x references unknown edge " + std::to_string(id);
        if (x.sum(g.edge_ids()) != Rat(g.vertex_count() - 1)) return "x(E) != n-1";
        if (auto viol = separate_forest(g, x)) return "x violates a forest row";
        for (const LaminarSet& s : inst.family.sets()) {
            if (!s.bound) continue;
            if (x.sum(cut_edges(g, s.members)) > Rat(*s.bound))
                return "x violates the bound of set " + std::to_string(s.id);
        }

        Rat tree_cost = rat_from_json(j.at("cost").at("tree"));
        Rat lp_cost = rat_from_json(j.at("cost").at("lp"));
        if (tree_cost != cost_of(inst.costs, tree)) return "tree cost mismatch";
        if (lp_cost != cost_of_point(inst.costs, x)) return "lp cost mismatch";
        if (!j.at("cost").at("ratio").is_null()) {
            if (lp_cost == 0) return "cost ratio present for a zero-cost relaxation";
            if (rat_from_json(j.at("cost").at("ratio")) != tree_cost / lp_cost)
                return "cost ratio mismatch";
        } else if (lp_cost != 0) {
            return "cost ratio missing";
        }

        Rat cost_factor = rat_from_json(j.at("guarantees").at("cost_factor"));
        Rat thinness = rat_from_json(j.at("guarantees").at("thinness_factor"));
        if (cost_factor != eta) return "cost factor differs from eta";
        if (thinness != thinness_factor(eta)) return "thinness factor formula mismatch";
        if (tree_cost > eta * lp_cost) return "cost guarantee violated";

        std::map<int, bool> seen;
        for (const json& jr : j.at("cuts")) {
            int id = jr.at("id").get<int>();
            if (seen.count(id)) return "duplicate cut row " + std::to_string(id);
            seen[id] = true;
            const LaminarSet& s = inst.family.set_by_id(id);
            IdSet cut = cut_edges(g, s.members);
            long crossings = static_cast<long>(set_intersection_sorted(tree, cut).size());
            if (jr.at("crossings").get<long>() != crossings)
                return "crossing count mismatch at set " + std::to_string(id);
            if (rat_from_json(jr.at("x_delta")) != x.sum(cut))
                return "x_delta mismatch at set " + std::to_string(id);
            Rat x_delta = x.sum(cut);
            if (jr.at("ratio").is_null()) {
                if (x_delta != 0) return "ratio missing at set " + std::to_string(id);
                if (crossings != 0) return "crossings over an empty fractional cut";
            } else {
                if (x_delta == 0) return "ratio present for an empty fractional cut";
                if (rat_from_json(jr.at("ratio")) != Rat(crossings) / x_delta)
                    return "ratio mismatch at set " + std::to_string(id);
                if (Rat(crossings) > thinness * x_delta)
                    return "thinness guarantee violated at set " + std::to_string(id);
            }
        }
        for (const LaminarSet& s : inst.family.sets())
            if (!seen.count(s.id)) return "missing cut row for set " + std::to_string(s.id);
        return std::nullopt;
    } catch (const json::exception& e) {
        throw input_error(std::string("malformed report: ") + e.what());
    }
}

}  // namespace lamthin

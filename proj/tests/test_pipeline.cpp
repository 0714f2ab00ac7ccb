#include <catch2/catch_amalgamated.hpp>

#include "lamthin/harness.hpp"
#include "lamthin/pipeline.hpp"

using namespace lamthin;

namespace {

Graph four_cycle() {
    return Graph(4, {{0, 0, 1}, {1, 1, 2}, {2, 2, 3}, {3, 3, 0}});
}

Graph complete_graph(int n) {
    std::vector<Edge> edges;
    int id = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.push_back(Edge{id++, u, v});
    return Graph(n, edges);
}

}  // namespace

TEST_CASE("guarantee factors are exact rational formulas") {
    CHECK(thinness_factor(rat(3)) == rat(27));
    CHECK(thinness_factor(rat(5, 2)) == rat(40));
    CHECK(thinness_factor(rat(4)) == rat(22));
    CHECK(thinness_factor(rat(10)) == rat(115, 4));
    // the default eta keeps both headline constants strict
    Rat f = thinness_factor(default_eta());
    CHECK(f == rat(11439, 530));
    CHECK(f < rat(108, 5));  // 21.6
    CHECK(f < rat(22));
    CHECK(default_eta() < rat(5));
    CHECK_THROWS_AS(thinness_factor(rat(2)), input_error);
}

TEST_CASE("relaxation with vacuous bounds matches the enumerated minimum tree") {
    for (uint64_t seed = 0; seed < 8; ++seed) {
        Instance inst = gen_instance(5 + seed % 4, 2, seed + 600);
        LaminarFamily vacuous;
        for (LaminarSet s : inst.family.sets()) {
            s.bound = static_cast<long>(cut_edges(inst.graph, s.members).size());
            vacuous.add(std::move(s));
        }
        auto relax = solve_relaxation(inst.graph, vacuous, inst.costs);
        REQUIRE(relax.has_value());
        auto mst = brute_best_tree(inst.graph, LaminarFamily{}, inst.costs);
        REQUIRE(mst.has_value());
        CHECK(relax->value == mst->second);
    }
}

TEST_CASE("an uncrossable bound certifies infeasibility") {
    Graph g = four_cycle();
    LaminarFamily fam;
    fam.add(LaminarSet{0, {0, 1}, 0L});
    std::map<int, Rat> costs;
    for (int id : g.edge_ids()) costs[id] = rat(1);
    CHECK_FALSE(solve_relaxation(g, fam, costs).has_value());

    Instance inst{g, fam, costs, default_eta()};
    CHECK_FALSE(solve_instance(inst).has_value());
}

TEST_CASE("witness bounds keep the relaxation below the witness cost") {
    for (uint64_t seed = 0; seed < 8; ++seed) {
        Graph g = gen_k_connected(5 + static_cast<int>(seed % 4), 2, seed + 700);
        LaminarFamily fam = gen_laminar(g, seed + 701, 3);
        IdSet witness = set_feasible_bounds(g, fam, seed + 702);
        std::map<int, Rat> costs = random_costs(g, seed + 703);
        auto relax = solve_relaxation(g, fam, costs);
        REQUIRE(relax.has_value());
        CHECK(relax->value <= cost_of(costs, witness));
    }
}

TEST_CASE("solve_instance end to end on random instances") {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        Instance inst = gen_instance(4 + seed % 6, 2 + seed % 2, seed + 800);
        auto report = solve_instance(inst);
        REQUIRE(report.has_value());

        // headline guarantees at the default eta, strict forms
        CHECK(report->tree_cost < 5 * report->lp_cost);
        for (const CutReportRow& row : report->cuts) {
            if (row.x_delta == 0) {
                CHECK(row.crossings == 0);
                continue;
            }
            CHECK(Rat(row.crossings) < 22 * row.x_delta);
            REQUIRE(row.ratio.has_value());
            CHECK(*row.ratio <= report->thinness);
        }

        // report rows reproduce direct recounting bit-exactly
        Instance norm = normalized(inst);
        for (const CutReportRow& row : report->cuts) {
            const LaminarSet& s = norm.family.set_by_id(row.set_id);
            IdSet cut = cut_edges(norm.graph, s.members);
            CHECK(Rat(row.crossings) ==
                  Rat(static_cast<long>(set_intersection_sorted(report->tree, cut).size())));
            CHECK(row.x_delta == report->x_root.sum(cut));
        }
        CHECK(report->tree_cost == cost_of(inst.costs, report->tree));
        REQUIRE(report->cost_ratio.has_value());  // corpus costs are positive
        CHECK(*report->cost_ratio == report->tree_cost / report->lp_cost);
        CHECK(is_spanning_tree(norm.graph, report->tree));
    }
}

TEST_CASE("eta sweep holds the parameterized guarantees") {
    std::vector<Rat> etas{rat(5, 2), rat(3), rat(4), default_eta(), rat(10)};
    for (uint64_t seed = 1; seed <= 4; ++seed) {
        Instance base = gen_instance(5 + seed, 2, seed + 900);
        for (const Rat& eta : etas) {
            Instance inst = base;
            inst.eta = eta;
            auto report = solve_instance(inst);
            REQUIRE(report.has_value());
            CHECK(report->tree_cost <= eta * report->lp_cost);
            Rat factor = thinness_factor(eta);
            for (const CutReportRow& row : report->cuts)
                CHECK((Rat(row.crossings) <= factor * row.x_delta ||
                       (row.x_delta == 0 && row.crossings == 0)));
        }
    }
}

TEST_CASE("pipeline determinism per instance") {
    Instance inst = gen_instance(8, 2, 4242);
    auto a = solve_instance(inst);
    auto b = solve_instance(inst);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(a->tree == b->tree);
    CHECK(a->lp_cost == b->lp_cost);
    CHECK(a->x_root == b->x_root);
    CHECK(a->x_aligned == b->x_aligned);
    CHECK(a->rounding.log.size() == b->rounding.log.size());
}

TEST_CASE("zero-cost instances report a vacuous cost ratio") {
    Instance inst = gen_instance(6, 2, 31);
    for (auto& [_, c] : inst.costs) c = 0;
    auto report = solve_instance(inst);
    REQUIRE(report.has_value());
    CHECK(report->lp_cost == 0);
    CHECK(report->tree_cost == 0);
    CHECK_FALSE(report->cost_ratio.has_value());
}

TEST_CASE("thin trees for k-edge-connected graphs") {
    // a plain cycle is 2-edge-connected
    Graph cyc(5, {{0, 0, 1}, {1, 1, 2}, {2, 2, 3}, {3, 3, 4}, {4, 4, 0}});
    LaminarFamily fam;
    fam.add(LaminarSet{0, {0, 1}, std::nullopt});
    fam.add(LaminarSet{1, {0, 1, 2}, std::nullopt});
    TreeReport rep = thin_tree_for_k_connected(cyc, fam, 2, default_eta());
    for (const CutReportRow& row : rep.cuts)
        CHECK((Rat(row.crossings) <= rep.thinness * row.x_delta ||
               (row.x_delta == 0 && row.crossings == 0)));

    // complete graph on six vertices is 5-edge-connected
    Graph k6 = complete_graph(6);
    LaminarFamily fam6 = gen_laminar(k6, 99, 2);
    TreeReport rep6 = thin_tree_for_k_connected(k6, fam6, 5, default_eta());
    Instance norm6 = normalized(Instance{k6, fam6, {}, default_eta()});
    for (const CutReportRow& row : rep6.cuts) {
        const LaminarSet& s = norm6.family.set_by_id(row.set_id);
        Rat budget = rep6.thinness * rat(2, 5) *
                     Rat(static_cast<long>(cut_edges(k6, s.members).size()));
        CHECK(Rat(row.crossings) <= budget);
    }

    // vacuous family: always passes
    LaminarFamily whole;
    whole.add(LaminarSet{0, all_vertices(k6), std::nullopt});
    TreeReport trivial = thin_tree_for_k_connected(k6, whole, 5, default_eta());
    CHECK(trivial.cuts.size() == 1);
    CHECK(trivial.cuts[0].crossings == 0);

    // verification gate: a cycle is not 3-edge-connected
    CHECK_THROWS_AS(thin_tree_for_k_connected(cyc, fam, 3, default_eta()), input_error);
}

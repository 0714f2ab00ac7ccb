#include <catch2/catch_amalgamated.hpp>

#include "lamthin/harness.hpp"

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

TEST_CASE("spanning tree enumeration") {
    CHECK(enumerate_spanning_trees(four_cycle()).size() == 4);
    CHECK(enumerate_spanning_trees(complete_graph(4)).size() == 16);  // 4^2

    Graph path(4, {{0, 0, 1}, {1, 1, 2}, {2, 2, 3}});
    auto trees = enumerate_spanning_trees(path);
    REQUIRE(trees.size() == 1);
    CHECK(trees[0] == IdSet{0, 1, 2});

    // count gate fires before enumerating
    CHECK_THROWS_AS(enumerate_spanning_trees(complete_graph(6), 100), input_error);

    // determinant count matches enumeration on multigraphs with parallels
    Graph multi(3, {{0, 0, 1}, {1, 0, 1}, {2, 1, 2}, {3, 0, 2}});
    auto mt = enumerate_spanning_trees(multi);
    CHECK(Int(static_cast<long>(mt.size())) == spanning_tree_count(multi));
    for (const IdSet& t : mt) CHECK(is_spanning_tree(multi, t));
}

TEST_CASE("brute_min_partition basics") {
    FracPoint w;
    w.set(0, rat(2, 5));
    MinPartitionResult res = brute_min_partition(Graph(2, {{0, 0, 1}}), w);
    CHECK(res.value == rat(-3, 5));

    CHECK_THROWS_AS(brute_min_partition(complete_graph(11), FracPoint{}), input_error);
}

TEST_CASE("brute_best_tree") {
    Graph g = four_cycle();
    std::map<int, Rat> costs{{0, rat(1)}, {1, rat(5)}, {2, rat(2)}, {3, rat(4)}};

    // vacuous bounds: plain minimum spanning tree
    LaminarFamily vacuous;
    auto mst = brute_best_tree(g, vacuous, costs);
    REQUIRE(mst.has_value());
    CHECK(mst->second == rat(7));
    CHECK(mst->first == IdSet{0, 2, 3});

    // zero bound on a crossed proper set: no tree qualifies
    LaminarFamily blocked;
    blocked.add(LaminarSet{0, {0, 1}, 0L});
    CHECK_FALSE(brute_best_tree(g, blocked, costs).has_value());

    // witness-derived bounds are always feasible
    for (uint64_t seed = 0; seed < 10; ++seed) {
        Instance inst = gen_instance(5 + seed % 4, 2, seed + 50);
        CHECK(brute_best_tree(inst.graph, inst.family, inst.costs).has_value());
    }
}

TEST_CASE("gen_k_connected") {
    Graph cycle = gen_k_connected(4, 2, 7);
    CHECK(cycle.vertex_count() == 4);
    CHECK(cycle.edge_count() == 4);  // one Hamiltonian cycle
    CHECK(edge_connectivity(cycle) >= 2);

    Graph g84 = gen_k_connected(8, 4, 11);
    CHECK(g84.edge_count() == 16);
    CHECK(edge_connectivity(g84) >= 4);

    // odd k: built from ceil(k/2) cycles, verified at level k
    Graph g3 = gen_k_connected(6, 3, 13);
    CHECK(edge_connectivity(g3) >= 3);
}

TEST_CASE("edge connectivity agrees with cut enumeration on small graphs") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        Graph g = gen_k_connected(5 + seed % 3, 2 + seed % 3, seed + 400);
        int n = g.vertex_count();
        int best = g.edge_count();
        for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
            if (!(mask & 1)) continue;  // fix vertex 0 on one side
            VertexSet s;
            for (int v = 0; v < n; ++v)
                if (mask & (1u << v)) s.push_back(v);
            best = std::min(best, static_cast<int>(cut_edges(g, s).size()));
        }
        CHECK(edge_connectivity(g) == best);
        CHECK(static_cast<int>(cut_edges(g, minimum_cut_side(g)).size()) == best);
    }
}

TEST_CASE("gen_laminar produces valid bounded families") {
    for (uint64_t seed = 0; seed < 500; ++seed) {
        Graph g = gen_k_connected(4 + seed % 7, 2, seed);
        LaminarFamily fam = gen_laminar(g, seed, 3);
        CHECK_FALSE(validate_laminar(fam).has_value());
        CHECK(fam.size() <= 12 + 1);
        CHECK(fam.contains_members(all_vertices(g)));
    }
}

TEST_CASE("witness bounds make the relaxation trivially feasible") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        Graph g = gen_k_connected(5 + seed % 5, 2 + seed % 2, seed + 900);
        LaminarFamily fam = gen_laminar(g, seed, 3);
        IdSet witness = set_feasible_bounds(g, fam, seed + 901);
        CHECK(is_spanning_tree(g, witness));
        for (const LaminarSet& s : fam.sets()) {
            REQUIRE(s.bound.has_value());
            long crossings = static_cast<long>(
                set_intersection_sorted(witness, cut_edges(g, s.members)).size());
            CHECK(*s.bound == crossings);
        }
    }
}

TEST_CASE("random spanning trees are spanning trees") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        Graph g = gen_k_connected(4 + seed % 6, 2, seed + 333);
        CHECK(is_spanning_tree(g, random_spanning_tree(g, seed)));
    }
}

TEST_CASE("generator determinism per seed") {
    Instance a = gen_instance(7, 3, 12345);
    Instance b = gen_instance(7, 3, 12345);
    CHECK(a.graph.edge_ids() == b.graph.edge_ids());
    CHECK(a.family.size() == b.family.size());
    for (std::size_t i = 0; i < a.family.size(); ++i) {
        CHECK(a.family.sets()[i].members == b.family.sets()[i].members);
        CHECK(a.family.sets()[i].bound == b.family.sets()[i].bound);
    }
    CHECK(a.costs == b.costs);
}

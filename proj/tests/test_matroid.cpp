#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lamthin/harness.hpp"
#include "lamthin/matroid.hpp"

using namespace lamthin;

namespace {

Graph four_cycle() {
    return Graph(4, {{0, 0, 1}, {1, 1, 2}, {2, 2, 3}, {3, 3, 0}});
}

Graph random_connected_graph(uint64_t seed, int n, int extra) {
    std::mt19937_64 rng(seed);
    std::vector<Edge> edges;
    int id = 0;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (int i = 1; i < n; ++i)
        edges.push_back(Edge{id++, order[static_cast<int>(rng() % i)], order[i]});
    for (int i = 0; i < extra; ++i) {
        int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
        if (u != v) edges.push_back(Edge{id++, u, v});
    }
    std::vector<Edge> fixed;
    for (const Edge& e : edges)
        fixed.push_back(Edge{e.id, std::min(e.u, e.v), std::max(e.u, e.v)});
    return Graph(n, fixed);
}

}  // namespace

TEST_CASE("graphic matroid ranks") {
    Matroid m = Matroid::graphic(four_cycle());
    CHECK(m.rank({0, 1, 2, 3}) == 3);
    CHECK(m.rank({}) == 0);
    CHECK(m.full_rank() == 3);
    CHECK_THROWS_AS(m.rank({9}), input_error);

    // two disjoint triangles
    Graph tt(6, {{0, 0, 1}, {1, 1, 2}, {2, 0, 2}, {3, 3, 4}, {4, 4, 5}, {5, 3, 5}});
    CHECK(Matroid::graphic(tt).full_rank() == 4);
}

TEST_CASE("partition matroid ranks") {
    Matroid m = Matroid::partition_matroid({{{0, 1, 2}, 2}, {{3, 4}, 1}});
    CHECK(m.rank({0, 1, 2, 3, 4}) == 3);
    CHECK(m.rank({0, 1, 2}) == 2);
    CHECK(m.rank({3}) == 1);
    CHECK(m.rank({}) == 0);
    CHECK_THROWS_AS(Matroid::partition_matroid({{{0, 1}, 1}, {{1, 2}, 1}}), input_error);
}

TEST_CASE("minors follow the rank formulas") {
    Matroid m = Matroid::graphic(four_cycle());

    Matroid contracted = m.contracted({0});
    CHECK(contracted.groundset() == IdSet{1, 2, 3});
    CHECK(contracted.full_rank() == 2);

    Matroid deleted = m.deleted({0});
    CHECK(deleted.groundset() == IdSet{1, 2, 3});
    CHECK(deleted.full_rank() == 3);

    // random graphic matroids: rank_{M/e}(A) = rank_M(A ∪ {e}) − 1 for non-loop e
    for (uint64_t seed = 0; seed < 20; ++seed) {
        Graph g = random_connected_graph(seed, 5, 4);
        Matroid gm = Matroid::graphic(g);
        std::mt19937_64 rng(seed + 1000);
        IdSet ids = g.edge_ids();
        int e = ids[rng() % ids.size()];
        Matroid ge = gm.contracted({e});
        for (int trial = 0; trial < 10; ++trial) {
            IdSet a;
            for (int id : ids)
                if (id != e && rng() % 2) a.push_back(id);
            CHECK(ge.rank(a) == gm.rank(set_union_sorted(a, {e})) - 1);
        }
        // deletion leaves ranks unchanged
        Matroid gd = gm.deleted({e});
        for (int trial = 0; trial < 10; ++trial) {
            IdSet a;
            for (int id : ids)
                if (id != e && rng() % 2) a.push_back(id);
            CHECK(gd.rank(a) == gm.rank(a));
        }
    }
}

TEST_CASE("contraction that swallows parallel edges keeps them as loops") {
    Graph pp(3, {{0, 0, 1}, {1, 0, 1}, {2, 1, 2}});
    Matroid m = Matroid::graphic(pp);
    Matroid c = m.contracted({0});  // edge 1 becomes a loop
    CHECK(c.groundset() == IdSet{1, 2});
    CHECK(c.rank({1}) == 0);
    CHECK(c.rank({2}) == 1);
    CHECK(c.rank({1, 2}) == 1);
}

TEST_CASE("direct sums add ranks") {
    Matroid a = Matroid::graphic(Graph(2, {{0, 0, 1}}));
    Matroid b = Matroid::graphic(Graph(2, {{1, 0, 1}}));
    Matroid sum = Matroid::direct_sum({a, b});
    CHECK(sum.rank({0, 1}) == 2);
    CHECK(sum.kind() == "direct-sum");

    Matroid with_empty = Matroid::direct_sum({a, Matroid::partition_matroid({})});
    CHECK(with_empty.rank({0}) == a.rank({0}));

    CHECK_THROWS_AS(Matroid::direct_sum({a, a}), input_error);
}

TEST_CASE("direct sum over a laminar decomposition preserves total rank") {
    Graph g = random_connected_graph(3, 6, 4);
    // split vertex set into {0,1,2} and {3,4,5}; sum of graphic matroids on
    // the pieces has rank = sum over pieces of (|V_S| - components)
    InducedGraph left = induced(g, {0, 1, 2});
    InducedGraph right = induced(g, {3, 4, 5});
    Matroid sum = Matroid::direct_sum(
        {Matroid::graphic(left.graph), Matroid::graphic(right.graph)});
    int expect = (3 - left.graph.component_count()) + (3 - right.graph.component_count());
    CHECK(sum.full_rank() == expect);
}

TEST_CASE("refinement keeps bases that use R fully") {
    Matroid m = Matroid::graphic(four_cycle());
    Matroid r = m.refined({0});
    CHECK(r.kind() == "refined");
    CHECK(r.groundset() == IdSet{0, 1, 2, 3});
    CHECK(r.full_rank() == 3);
    // bases of the refinement = spanning trees containing edge 0 (3 of the 4)
    std::vector<IdSet> trees = enumerate_spanning_trees(four_cycle());
    int bases = 0;
    for (const IdSet& t : trees)
        if (r.rank(t) == 3) {
            ++bases;
            CHECK(sorted_contains(t, 0));
            CHECK(m.rank(t) == 3);  // every basis of the refinement is one of m
        }
    CHECK(bases == 3);

    CHECK_THROWS_AS(m.refined({}), input_error);
    CHECK_THROWS_AS(m.refined(m.groundset()), input_error);

    // a spanning R leaves a rank-zero contraction part
    Matroid r2 = m.refined({0, 1, 2});
    CHECK(r2.full_rank() == 3);
    CHECK(r2.rank({3}) == 0);
}

TEST_CASE("refining twice along nested sets commutes in rank values") {
    std::mt19937_64 rng(5);
    for (uint64_t seed = 0; seed < 10; ++seed) {
        Graph g = random_connected_graph(seed + 40, 6, 5);
        IdSet ids = g.edge_ids();
        IdSet inner, outer;
        for (int id : ids) {
            int r = static_cast<int>(rng() % 3);
            if (r == 0) inner.push_back(id);
            if (r <= 1) outer.push_back(id);
        }
        if (inner.empty() || outer == ids || inner == outer) continue;
        Matroid a = Matroid::graphic(g).refined(inner).refined(outer);
        Matroid b = Matroid::graphic(g).refined(outer).refined(inner);
        for (int trial = 0; trial < 15; ++trial) {
            IdSet f;
            for (int id : ids)
                if (rng() % 2) f.push_back(id);
            CHECK(a.rank(f) == b.rank(f));
        }
    }
}

TEST_CASE("refine_along_family aligns bases with the family") {
    Graph g = four_cycle();
    LaminarFamily fam;
    fam.add(LaminarSet{0, {0, 1}, std::nullopt});
    Matroid refined = refine_along_family(Matroid::graphic(g), g, fam);
    for (const IdSet& t : enumerate_spanning_trees(g)) {
        bool is_basis = refined.rank(t) == 3;
        CHECK(is_basis == sorted_contains(t, 0));
    }

    // the whole vertex set changes nothing
    LaminarFamily whole;
    whole.add(LaminarSet{0, {0, 1, 2, 3}, std::nullopt});
    Matroid same = refine_along_family(Matroid::graphic(g), g, whole);
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        IdSet f;
        for (int id : g.edge_ids())
            if (rng() % 2) f.push_back(id);
        CHECK(same.rank(f) == Matroid::graphic(g).rank(f));
    }
}

TEST_CASE("is_aligned_point") {
    Graph g = four_cycle();
    LaminarFamily fam;
    fam.add(LaminarSet{0, {0, 1}, std::nullopt});
    Matroid m = Matroid::graphic(g);

    FracPoint tree;  // basis of the refined matroid: contains edge 0
    tree.set(0, rat(1));
    tree.set(1, rat(1));
    tree.set(2, rat(1));
    CHECK_FALSE(is_aligned_point(m, g, fam, tree).has_value());

    FracPoint uniform;
    for (int id : g.edge_ids()) uniform.set(id, rat(3, 4));
    auto witness = is_aligned_point(m, g, fam, uniform);
    REQUIRE(witness.has_value());
    CHECK(*witness == 0);  // x(E({0,1})) = 3/4 != 1
}

TEST_CASE("rank axioms hold for every constructed kind") {
    Graph g = random_connected_graph(9, 6, 6);
    Matroid graphic = Matroid::graphic(g);
    CHECK_FALSE(check_rank_axioms(graphic, 1).has_value());

    Matroid part = Matroid::partition_matroid({{{0, 1, 2}, 2}, {{3, 4}, 1}, {{5, 6, 7}, 0}});
    CHECK_FALSE(check_rank_axioms(part, 2).has_value());

    Matroid minor = graphic.contracted({0, 1}).deleted({5});
    CHECK_FALSE(check_rank_axioms(minor, 3).has_value());

    IdSet half;
    for (int id : g.edge_ids())
        if (id % 2 == 0) half.push_back(id);
    if (!half.empty() && half != g.edge_ids()) {
        Matroid refined = graphic.refined(half);
        CHECK_FALSE(check_rank_axioms(refined, 4).has_value());
    }

    auto impl = graphic.impl_ptr();
    Matroid oracle = Matroid::from_oracle(g.edge_ids(),
                                          [impl](const IdSet& f) { return impl->rank_of(f); });
    CHECK_FALSE(check_rank_axioms(oracle, 5).has_value());
    Matroid oracle_minor = oracle.contracted({0});
    CHECK_FALSE(check_rank_axioms(oracle_minor, 6).has_value());
}

#include <catch2/catch_amalgamated.hpp>

#include "lamthin/harness.hpp"
#include "lamthin/reduction.hpp"

using namespace lamthin;

namespace {

Graph four_cycle() {
    return Graph(4, {{0, 0, 1}, {1, 1, 2}, {2, 2, 3}, {3, 3, 0}});
}

FracPoint uniform_point(const Graph& g, const Rat& v) {
    FracPoint x;
    for (int id : g.edge_ids()) x.set(id, v);
    return x;
}

LaminarFamily fam_of(std::vector<VertexSet> sets) {
    LaminarFamily f;
    int id = 0;
    for (auto& s : sets) f.add(LaminarSet{id++, s, std::nullopt});
    return f;
}

// point in the tree polytope as a uniform mix of a few random spanning trees
FracPoint random_tree_mix(const Graph& g, uint64_t seed, int count) {
    FracPoint x;
    for (int t = 0; t < count; ++t)
        for (int id : random_spanning_tree(g, seed * 31 + t)) x.set(id, x.at(id) + 1);
    return x.scaled(rat(1, count));
}

const VertexSet kSplitSet = {0, 1, 2, 3};

// Two tightly connected halves {0,1} and {2,3} joined inside S by one light
// edge; the split set is not well-connected and must be replaced by its halves.
struct SplitInstance {
    Graph graph{7, {{0, 0, 1}, {1, 2, 3}, {2, 1, 2}, {3, 0, 4},
                    {4, 4, 5}, {5, 5, 6}, {6, 3, 5}}};
    FracPoint x;
    SplitInstance() {
        Rat eps = rat(1, 10);  // eta * eps < 1
        x.set(0, rat(1));
        x.set(1, rat(1));
        x.set(2, eps);
        x.set(3, rat(1));
        x.set(4, rat(1));
        x.set(5, rat(1));
        x.set(6, rat(1) - eps);
    }
};

}  // namespace

TEST_CASE("keeping a set whole when the trivial partition already attains zero") {
    Graph g = four_cycle();
    FracPoint x = uniform_point(g, rat(3, 4));
    ReductionResult res = reduce_family(g, fam_of({{0, 1, 2, 3}}), x, default_eta());
    REQUIRE(res.new_family.size() == 1);
    CHECK(res.new_family.sets()[0].members == VertexSet{0, 1, 2, 3});
    CHECK(res.trace.size() == 1);
    CHECK(res.trace[0].min_value == 0);
}

TEST_CASE("a poorly connected set is replaced by its halves") {
    SplitInstance inst;
    // sanity: x is a convex combination of two spanning trees
    CHECK(inst.x.total() == rat(6));
    CHECK_FALSE(separate_forest(inst.graph, inst.x).has_value());

    LaminarFamily fam = fam_of({kSplitSet, {0, 1, 2, 3, 4, 5, 6}});
    ReductionResult res = reduce_family(inst.graph, fam, inst.x, default_eta());

    std::vector<VertexSet> members;
    for (const LaminarSet& s : res.new_family.sets()) members.push_back(s.members);
    std::sort(members.begin(), members.end());
    CHECK(members == std::vector<VertexSet>{{0, 1}, {0, 1, 2, 3, 4, 5, 6}, {2, 3}});

    // replacement map: the split set maps to its halves, the whole set to itself
    const auto& rep = res.replacement.at(0);
    std::vector<VertexSet> blocks;
    for (int id : rep) blocks.push_back(res.new_family.set_by_id(id).members);
    std::sort(blocks.begin(), blocks.end());
    CHECK(blocks == std::vector<VertexSet>{{0, 1}, {2, 3}});
    CHECK(res.replacement.at(1).size() == 1);

    // every rebuilt member is well-connected
    for (const LaminarSet& s : res.new_family.sets())
        CHECK(is_well_connected(inst.graph, inst.x, s.members, default_eta()));

    CHECK_FALSE(
        check_replacement_bound(inst.graph, fam, res, inst.x, default_eta()).has_value());
}

TEST_CASE("reduction preconditions") {
    Graph g = four_cycle();
    FracPoint x = uniform_point(g, rat(3, 4));
    CHECK_THROWS_AS(reduce_family(g, fam_of({{0, 1, 2, 3}}), x, rat(2)), input_error);
    CHECK_THROWS_AS(reduce_family(g, fam_of({{0, 1}}), x, default_eta()), input_error);

    FracPoint infeasible = uniform_point(g, rat(1));  // x(E) = 4 != 3
    CHECK_THROWS_AS(reduce_family(g, fam_of({{0, 1, 2, 3}}), infeasible, default_eta()),
                    input_error);

    LaminarFamily bounded = fam_of({{0, 1, 2, 3}});
    LaminarFamily tight;
    tight.add(LaminarSet{0, {0, 1}, 0L});  // x crosses it: precondition violated
    tight.add(LaminarSet{1, {0, 1, 2, 3}, std::nullopt});
    CHECK_THROWS_AS(reduce_family(g, tight, x, default_eta()), input_error);
}

TEST_CASE("random reductions satisfy every stage property") {
    for (uint64_t seed = 1; seed <= 40; ++seed) {
        Instance inst = gen_instance(4 + seed % 6, 2 + seed % 2, seed);
        Instance norm = normalized(inst);
        FracPoint x = random_tree_mix(norm.graph, seed, 2 + seed % 3);
        CHECK_FALSE(separate_forest(norm.graph, x).has_value());

        // strip bounds: the reduction only needs sets (keeps preconditions easy)
        LaminarFamily unbounded;
        for (LaminarSet s : norm.family.sets()) {
            s.bound = std::nullopt;
            unbounded.add(std::move(s));
        }
        Rat eta = default_eta();
        ReductionResult res = reduce_family(norm.graph, unbounded, x, eta);

        CHECK(res.trace.size() == unbounded.size());
        CHECK(res.trace.size() <= 2 * static_cast<std::size_t>(norm.graph.vertex_count()) - 1);
        CHECK_FALSE(validate_laminar(res.new_family).has_value());
        for (const LaminarSet& s : res.new_family.sets())
            CHECK(is_well_connected(norm.graph, x, s.members, eta));
        for (const LaminarSet& s : unbounded.sets()) {
            VertexSet covered;
            for (int nid : res.replacement.at(s.id))
                covered = set_union_sorted(covered,
                                           res.new_family.set_by_id(nid).members);
            CHECK(covered == s.members);
        }
        CHECK_FALSE(check_replacement_bound(norm.graph, unbounded, res, x, eta).has_value());

        // contracted-piece evaluation agrees with the direct induced one
        std::vector<VertexSet> pool;
        for (const LaminarSet& s : res.new_family.sets()) pool.push_back(s.members);
        for (const LaminarSet& s : res.new_family.sets()) {
            auto children = detail::maximal_sets_inside(pool, s.members, true);
            detail::PieceGraph piece = detail::piece_graph(norm.graph, s.members, children);
            FracPoint w;
            for (const Edge& e : piece.graph.edges()) w.set(e.id, x.at(e.id) * eta);
            bool via_piece = !separate_dominant(piece.graph, w).has_value();
            CHECK(via_piece == is_well_connected(norm.graph, x, s.members, eta));
        }
    }
}

TEST_CASE("aligned point on the worked 4-cycle example") {
    Graph g = four_cycle();
    FracPoint x = uniform_point(g, rat(3, 4));
    LaminarFamily fam = fam_of({{0, 1}, {0, 1, 2, 3}});
    FracPoint aligned = build_aligned_point(g, fam, x, default_eta());
    // the half {0,1} forces its single edge to 1; the contracted triangle
    // contributes a dominated point of total 2 (ascending order drops edge 1)
    CHECK(aligned.at(0) == rat(1));
    CHECK(aligned.at(1) == 0);
    CHECK(aligned.at(2) == rat(1));
    CHECK(aligned.at(3) == rat(1));
    CHECK(aligned.total() == rat(3));
    CHECK_FALSE(is_aligned_point(Matroid::graphic(g), g, fam, aligned).has_value());
}

TEST_CASE("aligned point after random reductions") {
    for (uint64_t seed = 1; seed <= 25; ++seed) {
        Instance inst = gen_instance(4 + seed % 6, 2, seed + 100);
        Instance norm = normalized(inst);
        FracPoint x = random_tree_mix(norm.graph, seed + 7, 2 + seed % 2);
        LaminarFamily unbounded;
        for (LaminarSet s : norm.family.sets()) {
            s.bound = std::nullopt;
            unbounded.add(std::move(s));
        }
        Rat eta = seed % 3 == 0 ? rat(5, 2) : default_eta();
        ReductionResult res = reduce_family(norm.graph, unbounded, x, eta);
        FracPoint aligned = build_aligned_point(norm.graph, res.new_family, x, eta);

        CHECK(aligned.dominated_by(x.scaled(eta)));
        CHECK(aligned.total() == Rat(norm.graph.vertex_count() - 1));
        CHECK_FALSE(separate_forest(norm.graph, aligned).has_value());
        CHECK_FALSE(is_aligned_point(Matroid::graphic(norm.graph), norm.graph,
                                     res.new_family, aligned)
                        .has_value());
        // the aligned point sits in the refined matroid's base polytope
        Matroid refined =
            refine_along_family(Matroid::graphic(norm.graph), norm.graph, res.new_family);
        CHECK_FALSE(separate_base_polytope(refined, aligned).has_value());
    }
}

TEST_CASE("build_aligned_point rejects a family with a poorly connected member") {
    SplitInstance inst;
    LaminarFamily fam = fam_of({kSplitSet, {0, 1, 2, 3, 4, 5, 6}});
    CHECK_THROWS_AS(build_aligned_point(inst.graph, fam, inst.x, default_eta()),
                    input_error);
}

TEST_CASE("replacement bound flags a fabricated counterexample") {
    Graph g = four_cycle();
    FracPoint x = uniform_point(g, rat(3, 4));
    LaminarFamily fam = fam_of({{0, 1, 2, 3}});
    ReductionResult res = reduce_family(g, fam, x, default_eta());
    // forge a replacement of the whole set by proper parts: lhs > 0 violates
    res.new_family = fam_of({{0, 1}, {2, 3}, {0, 1, 2, 3}});
    res.replacement[0] = {0, 1};
    auto viol = check_replacement_bound(g, fam, res, x, default_eta());
    REQUIRE(viol.has_value());
    CHECK(viol->set_id == 0);
    CHECK(viol->lhs > viol->rhs);
}

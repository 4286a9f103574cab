#include <set>
#include <vector>

#include "doctest.h"
#include "pmc/extract.hpp"
#include "pmc/families.hpp"
#include "pmc/flip.hpp"
#include "pmc/oracle.hpp"
#include "test_util.hpp"

using namespace pmc;
using pmc_test::bits_of;
using pmc_test::path_along;
using pmc_test::x_flip_along;

namespace {

FlipSpec make_spec(int m, int n, std::vector<std::vector<int>> classes,
                   std::vector<std::pair<int, int>> pairs) {
    FlipSpec spec;
    spec.m = m;
    spec.n = n;
    spec.classes = std::move(classes);
    for (auto [a, b] : pairs) spec.add_pair(a, b);
    validate_flip_spec(spec);
    return spec;
}

Graph flip_graph(const FlipSpec& spec) { return apply_flip(grid(spec.m, spec.n), spec); }

std::vector<VertexId> row_vertices(const Graph& g, int row) {
    std::vector<std::pair<int, VertexId>> found;
    for (VertexId v : g.vertices()) {
        auto rc = g.label(v);
        if (rc && rc->row == row) found.emplace_back(rc->col, v);
    }
    std::sort(found.begin(), found.end());
    std::vector<VertexId> out;
    for (auto [c, v] : found) out.push_back(v);
    return out;
}

void check_reduction(const Graph& input, const ReductionResult& r) {
    CHECK(replay(input, r.trace) == r.graph);
    REQUIRE(r.spec.has_value());
    CHECK(is_flip_of(r.graph, *r.spec));
}

} // namespace

TEST_CASE("find_cross_edge on a diagonal pair") {
    FlipSpec spec = make_spec(2, 2, {{1}}, {{0, 0}});
    Graph g = flip_graph(spec);
    auto [u, v] = find_cross_edge(g, spec, 0, 0, 1, 2);
    CHECK(u == 0);
    CHECK(v == 2);
    CHECK(g.has_edge(u, v));
    FlipSpec no_pair = make_spec(2, 2, {{1}}, {});
    CHECK_THROWS_AS(find_cross_edge(flip_graph(no_pair), no_pair, 0, 0, 1, 2), Error);
}

TEST_CASE("case1 drops a diagonal-free class") {
    FlipSpec spec = make_spec(3, 3, {{1}, {2}, {3}},
                              {{0, 1}, {0, 2}, {1, 1}, {1, 2}});
    Graph g = flip_graph(spec);
    ReductionResult r = case1_reduce(g, spec, 0);
    check_reduction(g, r);
    CHECK(r.spec->m == 1);
    CHECK(r.spec->classes == std::vector<std::vector<int>>{{2}, {3}});
    CHECK(r.spec->pairs == std::set<std::pair<int, int>>{{0, 0}, {0, 1}});
}

TEST_CASE("case1 with no partner deletes nothing") {
    FlipSpec spec = make_spec(3, 2, {{1}, {2}}, {{1, 1}});
    Graph g = flip_graph(spec);
    ReductionResult r = case1_reduce(g, spec, 0);
    check_reduction(g, r);
    CHECK(r.trace.size() == 0);
    CHECK(r.graph == g);
    CHECK(r.spec->classes == std::vector<std::vector<int>>{{2}});
    CHECK(r.spec->pairs == std::set<std::pair<int, int>>{{0, 0}});
    CHECK(r.spec->m == 3);
}

TEST_CASE("case1 requires the missing diagonal") {
    FlipSpec spec = make_spec(3, 2, {{1}, {2}}, {{0, 0}, {1, 1}});
    CHECK_THROWS_AS(case1_reduce(flip_graph(spec), spec, 0), Error);
}

TEST_CASE("case2 merges along paths of every base length") {
    struct Instance {
        int n;
        std::vector<int> x_cols, xp_cols;
    };
    for (int n = 2; n <= 5; ++n) {
        FlipSpec spec = make_spec(3, n, {{1}, {n}}, {{0, 0}, {1, 1}});
        Graph g = flip_graph(spec);
        std::vector<VertexId> q;
        for (int c = 0; c < n; ++c) q.push_back(static_cast<VertexId>(c));
        ReductionResult r = case2_reduce(g, spec, 0, 1, q);
        check_reduction(g, r);
        CHECK(r.spec->m == 1);
        CHECK(r.spec->classes == std::vector<std::vector<int>>{{1, n}});
        CHECK(r.spec->pairs == std::set<std::pair<int, int>>{{0, 0}});
    }
}

TEST_CASE("case2 validates its path") {
    FlipSpec spec = make_spec(3, 4, {{1}, {4}}, {{0, 0}, {1, 1}});
    Graph g = flip_graph(spec);
    CHECK_THROWS_AS(case2_reduce(g, spec, 0, 1, {0, 2, 3}), Error);   // gap
    CHECK_THROWS_AS(case2_reduce(g, spec, 0, 1, {1, 2, 3}), Error);   // starts uncovered
    FlipSpec crossed = make_spec(3, 4, {{1}, {4}}, {{0, 0}, {1, 1}, {0, 1}});
    CHECK_THROWS_AS(case2_reduce(flip_graph(crossed), crossed, 0, 1, {0, 1, 2, 3}), Error);
    FlipSpec covered_interior = make_spec(3, 4, {{1}, {2}, {4}}, {{0, 0}, {2, 2}});
    CHECK_THROWS_AS(
        case2_reduce(flip_graph(covered_interior), covered_interior, 0, 2, {0, 1, 2, 3}),
        Error);
}

TEST_CASE("cor branch a: missing diagonal") {
    FlipSpec spec = make_spec(5, 2, {{1}, {2}}, {{0, 1}});
    Graph g = flip_graph(spec);
    ReductionResult r = cor_reduce(g, spec);
    check_reduction(g, r);
    CHECK(r.spec->m == 1);
    CHECK(r.spec->classes == std::vector<std::vector<int>>{{2}});
    CHECK(r.spec->pairs.empty());
}

TEST_CASE("cor branch b: boundary pair missing") {
    FlipSpec spec = make_spec(5, 2, {{1}, {2}}, {{0, 0}, {1, 1}});
    Graph g = flip_graph(spec);
    ReductionResult r = cor_reduce(g, spec);
    check_reduction(g, r);
    CHECK(r.spec->m == 1);
    CHECK(r.spec->classes == std::vector<std::vector<int>>{{1, 2}});
    CHECK(r.spec->pairs == std::set<std::pair<int, int>>{{0, 0}});
}

TEST_CASE("cor branch c: agreeing classes merge with zero pivots") {
    FlipSpec spec = make_spec(5, 2, {{1}, {2}}, {{0, 0}, {1, 1}, {0, 1}});
    Graph g = flip_graph(spec);
    ReductionResult r = cor_reduce(g, spec);
    check_reduction(g, r);
    CHECK(r.trace.deletions_only());
    CHECK(r.spec->m == 1);
    CHECK(r.spec->classes == std::vector<std::vector<int>>{{1, 2}});
    CHECK(r.spec->pairs == std::set<std::pair<int, int>>{{0, 0}});
}

TEST_CASE("cor branch d: pivot through a third class then case2") {
    FlipSpec spec = make_spec(9, 3, {{1}, {2}, {3}},
                              {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}});
    Graph g = flip_graph(spec);
    ReductionResult r = cor_reduce(g, spec);
    check_reduction(g, r);
    CHECK(r.spec->m == 5);
    CHECK(r.spec->classes == std::vector<std::vector<int>>{{1, 2}, {3}});
    CHECK(r.spec->pairs == std::set<std::pair<int, int>>{{0, 0}, {1, 1}});
}

TEST_CASE("to_one_flip reaches a one-flip of the first row") {
    FlipSpec spec = make_spec(9, 3, {{1}, {2}, {3}},
                              {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}});
    Graph g = flip_graph(spec);
    PathReduction r = to_one_flip(g, spec);
    CHECK(replay(g, r.trace) == r.graph);
    CHECK(r.order == std::vector<VertexId>{0, 1, 2});
    CHECK(r.x.count() == 3);
    CHECK(x_flip_along(r.graph, r.order, r.x));
    // the all-flipped P3 has exactly the end-to-end chord
    CHECK(r.graph.num_edges() == 1);
    CHECK(r.graph.has_edge(0, 2));
}

TEST_CASE("to_one_flip on random small specs") {
    for (int n = 2; n <= 3; ++n) {
        for (std::uint64_t seed = 0; seed < 15; ++seed) {
            std::mt19937_64 rng(seed);
            FlipSpec spec = random_flip_spec(rng, 4 * n - 3, n);
            Graph g = flip_graph(spec);
            PathReduction r = to_one_flip(g, spec);
            CHECK(replay(g, r.trace) == r.graph);
            CHECK(static_cast<int>(r.order.size()) == n);
            CHECK(x_flip_along(r.graph, r.order, r.x));
            CHECK(verify_one_flip_of_path(r.graph, r.x));
        }
    }
}

TEST_CASE("to_one_flip needs enough rows") {
    FlipSpec spec = make_spec(4, 2, {{1}, {2}}, {{0, 0}, {1, 1}});
    CHECK_THROWS_AS(to_one_flip(flip_graph(spec), spec), Error);
}

TEST_CASE("pivot_far_pair turns the ten path figure into an eight cycle") {
    std::vector<VertexId> p{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    BitRow x = bits_of(10, {0, 2, 3, 4, 6, 7, 8, 9});
    Graph g = x_flip(path_graph(10), x);
    PathReduction r = pivot_far_pair(g, p, x, 3, 7);
    CHECK(r.order == std::vector<VertexId>{0, 1, 2, 4, 5, 6, 8, 9});
    CHECK(r.x.count() == 2);
    CHECK(r.x.test(0));
    CHECK(r.x.test(9));
    // an eight cycle: consecutive edges plus the closing chord
    CHECK(r.graph.num_edges() == 8);
    for (std::size_t i = 0; i + 1 < r.order.size(); ++i)
        CHECK(r.graph.has_edge(r.order[i], r.order[i + 1]));
    CHECK(r.graph.has_edge(0, 9));
    CHECK(replay(g, r.trace) == r.graph);
}

TEST_CASE("pivot_far_pair preconditions") {
    std::vector<VertexId> p{0, 1, 2, 3, 4, 5};
    BitRow x = bits_of(6, {0, 1, 2, 3, 4, 5});
    Graph g = x_flip(path_graph(6), x);
    CHECK_THROWS_AS(pivot_far_pair(g, p, x, 1, 3), Error); // distance 2
    BitRow partial = bits_of(6, {0, 5});
    Graph h = x_flip(path_graph(6), partial);
    CHECK_THROWS_AS(pivot_far_pair(h, p, partial, 1, 5), Error); // 1 not in x
}

TEST_CASE("shrink_flipped_block removes six from the block") {
    PathReduction r = shrink_flipped_block(complement(path_graph(6)),
                                           {0, 1, 2, 3, 4, 5}, bits_of(6, {0, 1, 2, 3, 4, 5}));
    CHECK(r.order.size() == 4);
    CHECK(r.x.count() == 0);
    CHECK(path_along(r.graph, r.order));

    Graph st = st_path(StPathSpec{8, 6, 2});
    std::vector<VertexId> p{0, 1, 2, 3, 4, 5, 6, 7};
    PathReduction r2 = shrink_flipped_block(st, p, bits_of(8, {1, 2, 3, 4, 5, 6}));
    CHECK(r2.order.size() == 6);
    CHECK(r2.x.count() == 0);
    CHECK(path_along(r2.graph, r2.order));
}

TEST_CASE("path_from_complement across all residues") {
    for (int s = 4; s <= 13; ++s) {
        int t = 1;
        while ((3 * (t + 1) + 1) / 2 + 1 <= s) ++t;
        Graph g = complement(path_graph(static_cast<std::size_t>(s)));
        std::vector<VertexId> p;
        for (int i = 0; i < s; ++i) p.push_back(static_cast<VertexId>(i));
        PathReduction r = path_from_complement(g, p, t);
        CHECK(static_cast<int>(r.order.size()) == t);
        CHECK(path_along(r.graph, r.order));
        CHECK(replay(g, r.trace) == r.graph);
    }
}

TEST_CASE("path_from_complement bound is enforced") {
    Graph g = complement(path_graph(5));
    CHECK_THROWS_AS(path_from_complement(g, {0, 1, 2, 3, 4}, 3), Error); // needs s >= 6
}

TEST_CASE("reduce_big_flip terminal branches") {
    // m = 0: induced complement-of-path prefix, no pivots
    BitRow all6 = bits_of(6, {0, 1, 2, 3, 4, 5});
    std::vector<VertexId> p6{0, 1, 2, 3, 4, 5};
    PathReduction r = reduce_big_flip(complement(path_graph(6)), p6, all6, 2, 0);
    CHECK(r.order == std::vector<VertexId>{0, 1});
    CHECK(r.trace.deletions_only());
    CHECK(is_complement_of_path(r.graph));

    // V = X with m > 0
    PathReduction r2 = reduce_big_flip(complement(path_graph(7)),
                                       {0, 1, 2, 3, 4, 5, 6}, bits_of(7, {0, 1, 2, 3, 4, 5, 6}),
                                       1, 1);
    CHECK(r2.order.size() == 2);
    CHECK(is_complement_of_path(r2.graph));
}

TEST_CASE("reduce_big_flip on a scattered flip set") {
    // first vertex plus eight scattered: ell = 1, m = 2 ends in a 3-vertex
    // complement of a path
    std::vector<VertexId> p;
    for (VertexId i = 0; i < 20; ++i) p.push_back(i);
    BitRow x = bits_of(20, {0, 2, 5, 7, 9, 12, 14, 17, 19});
    Graph g = x_flip(path_graph(20), x);
    PathReduction r = reduce_big_flip(g, p, x, 1, 2);
    CHECK(r.order.size() == 3);
    CHECK(is_complement_of_path(r.graph));
    CHECK(replay(g, r.trace) == r.graph);
}

TEST_CASE("flip_to_complement") {
    std::vector<VertexId> p10;
    for (VertexId i = 0; i < 10; ++i) p10.push_back(i);
    BitRow x = bits_of(10, {1, 3, 5, 7, 9});
    Graph g = x_flip(path_graph(10), x);
    PathReduction r = flip_to_complement(g, p10, x, 2);
    CHECK(r.order.size() == 2);
    CHECK(is_complement_of_path(r.graph));
    CHECK(replay(g, r.trace) == r.graph);

    std::mt19937_64 rng(77);
    for (int seed = 0; seed < 10; ++seed) {
        std::vector<VertexId> p30;
        for (VertexId i = 0; i < 30; ++i) p30.push_back(i);
        BitRow xs(30);
        while (xs.count() < 9) xs.set(rand_below(rng, 30));
        Graph h = x_flip(path_graph(30), xs);
        PathReduction rr = flip_to_complement(h, p30, xs, 3);
        CHECK(rr.order.size() == 3);
        CHECK(is_complement_of_path(rr.graph));
        CHECK(replay(h, rr.trace) == rr.graph);
    }
}

TEST_CASE("one_flip_to_path at t=2 over all branch shapes") {
    std::vector<VertexId> p15;
    for (VertexId i = 0; i < 15; ++i) p15.push_back(i);

    BitRow none(15);
    PathReduction empty_x = one_flip_to_path(path_graph(15), p15, none, 2);
    CHECK(empty_x.order.size() == 2);
    CHECK(path_along(empty_x.graph, empty_x.order));
    CHECK(empty_x.trace.deletions_only());

    BitRow all = bits_of(15, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14});
    Graph comp = x_flip(path_graph(15), all);
    PathReduction full_x = one_flip_to_path(comp, p15, all, 2);
    CHECK(full_x.order.size() == 2);
    CHECK(path_along(full_x.graph, full_x.order));
    CHECK(replay(comp, full_x.trace) == full_x.graph);

    std::mt19937_64 rng(88);
    for (int seed = 0; seed < 10; ++seed) {
        BitRow x(15);
        for (VertexId v = 0; v < 15; ++v)
            if (rand_below(rng, 2)) x.set(v);
        Graph g = x_flip(path_graph(15), x);
        PathReduction r = one_flip_to_path(g, p15, x, 2);
        CHECK(r.order.size() == 2);
        CHECK(path_along(r.graph, r.order));
        CHECK(replay(g, r.trace) == r.graph);
    }
}

TEST_CASE("one_flip_to_path with every third vertex flipped") {
    std::vector<VertexId> p42;
    BitRow x(42);
    for (VertexId i = 0; i < 42; ++i) {
        p42.push_back(i);
        if (i % 3 == 0) x.set(i);
    }
    Graph g = x_flip(path_graph(42), x);
    PathReduction r = one_flip_to_path(g, p42, x, 3);
    CHECK(r.order.size() == 3);
    CHECK(path_along(r.graph, r.order));
    CHECK(r.trace.deletions_only());
}

TEST_CASE("one_flip_to_path requires long enough paths") {
    std::vector<VertexId> p5{0, 1, 2, 3, 4};
    CHECK_THROWS_AS(one_flip_to_path(path_graph(5), p5, BitRow(5), 2), Error);
}

TEST_CASE("extract kk keeps the same indices on both sides") {
    ExtractResult r = extract_path(OutcomeKK{5}, 3);
    CHECK(r.target == ExtractTarget::kk);
    CHECK(r.trace.deletions_only());
    CHECK(replay(r.input, r.trace) == r.graph);
    REQUIRE(find_isomorphism(r.graph, tri_family(TriKind::kk, 3)).has_value());
}

TEST_CASE("extract oracle branches") {
    ExtractResult a = extract_path(OutcomeKKbar{4}, 3);
    CHECK(is_isomorphic(replay(a.input, a.trace), path_graph(3)));

    ExtractResult b = extract_path(OutcomeKbarKbar{2}, 2);
    CHECK(is_isomorphic(replay(b.input, b.trace), path_graph(2)));

    ExtractResult c = extract_path(OutcomeKbarKbar{3}, 3);
    CHECK(is_isomorphic(replay(c.input, c.trace), path_graph(3)));

    CHECK_THROWS_AS(extract_path(OutcomeKKbar{8}, 6), Error);   // t guard
    CHECK_THROWS_AS(extract_path(OutcomeKbarKbar{4}, 4), Error); // t guard
    CHECK_THROWS_AS(extract_path(OutcomeKbarKbar{1}, 3), Error); // s too small
}

TEST_CASE("extract from a flipped grid at t=2") {
    std::mt19937_64 rng(2024);
    FlipSpec spec = random_flip_spec(rng, 57, 15);
    Graph g = flip_graph(spec);
    ExtractResult r = extract_path(OutcomeFlippedGrid{g, spec}, 2);
    Graph end = replay(r.input, r.trace);
    CHECK(end == r.graph);
    CHECK(end.num_active() == 2);
    CHECK(end.num_edges() == 1);

    FlipSpec tiny = random_flip_spec(rng, 5, 2);
    Graph h = flip_graph(tiny);
    CHECK_THROWS_AS(extract_path(OutcomeFlippedGrid{h, tiny}, 2), Error);
}

#include <string>
#include <vector>

#include "doctest.h"
#include "pmc/families.hpp"
#include "pmc/oracle.hpp"
#include "pmc/trace.hpp"
#include "test_util.hpp"

using namespace pmc;
using pmc_test::random_graph;

TEST_CASE("trace json round trip") {
    PivotTrace tr;
    tr.pivot(0, 1);
    tr.del(2);
    CHECK(tr.to_json() == R"([{"pivot":[0,1]},{"delete":2}])");
    CHECK(PivotTrace::from_json(tr.to_json()) == tr);
    CHECK(!tr.deletions_only());
    PivotTrace dels;
    dels.del(0);
    CHECK(dels.deletions_only());
    CHECK_THROWS_AS(PivotTrace::from_json(R"([{"swap":[0,1]}])"), Error);
    CHECK_THROWS_AS(PivotTrace::from_json("not json"), Error);
}

TEST_CASE("replay applies steps and reports the faulting index") {
    Graph g = path_graph(4);
    PivotTrace tr;
    tr.pivot(1, 2);
    tr.del(0);
    Graph expect = pivot(g, 1, 2);
    expect.apply_delete(0);
    CHECK(replay(g, tr) == expect);

    PivotTrace empty;
    CHECK(replay(g, empty) == g);

    PivotTrace invol;
    invol.pivot(1, 2);
    invol.pivot(1, 2);
    CHECK(replay(g, invol) == g);

    PivotTrace bad;
    bad.del(3);
    bad.pivot(0, 3); // 3 is gone by now
    try {
        replay(g, bad);
        FAIL("expected a replay fault");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("step 1") != std::string::npos);
    }

    PivotTrace nonedge;
    nonedge.pivot(0, 2); // not an edge of P4
    CHECK_THROWS_AS(replay(g, nonedge), Error);
}

TEST_CASE("canonical form identifies isomorphic small graphs") {
    Graph c5 = Graph::from_edges(5, std::vector<std::pair<VertexId, VertexId>>{
                                        {0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    CHECK(canonical_form(c5) == canonical_form(complement(c5)));
    CHECK(is_isomorphic(c5, complement(c5)));

    Graph c4 = Graph::from_edges(4, std::vector<std::pair<VertexId, VertexId>>{
                                        {0, 1}, {1, 2}, {2, 3}, {0, 3}});
    CHECK(canonical_form(path_graph(4)) == canonical_form(pivot(c4, 1, 2)));
    CHECK(canonical_form(complete_graph(3)) != canonical_form(path_graph(3)));
    CHECK(!is_isomorphic(path_graph(4), complete_graph(4)));
    CHECK_THROWS_AS((void)is_isomorphic(Graph(11), Graph(11)), SizeLimitError);
}

TEST_CASE("canonical form is invariant under relabeling") {
    std::mt19937_64 rng(61);
    for (int seed = 0; seed < 30; ++seed) {
        std::size_t n = 2 + rand_below(rng, 7);
        Graph g = random_graph(rng, n);
        std::vector<VertexId> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<VertexId>(i);
        for (std::size_t i = n; i > 1; --i)
            std::swap(perm[i - 1], perm[rand_below(rng, i)]);
        Graph h(n);
        for (auto [u, v] : g.edges()) h.add_edge(perm[u], perm[v]);
        CHECK(canonical_form(g) == canonical_form(h));
    }
}

TEST_CASE("find_isomorphism works past the canonical bound") {
    Graph a = path_graph(12);
    Graph b(12);
    for (VertexId i = 0; i + 1 < 12; ++i) b.add_edge(11 - i, 11 - (i + 1));
    auto iso = find_isomorphism(a, b);
    REQUIRE(iso.has_value());
    CHECK(iso->size() == 12);
    CHECK(!find_isomorphism(path_graph(12), complete_graph(12)).has_value());
}

TEST_CASE("pivot minor search on known answers") {
    auto yes = has_pivot_minor(path_graph(5), path_graph(3));
    CHECK(yes.status == SearchStatus::yes);
    REQUIRE(yes.witness.has_value());
    Graph end = replay(path_graph(5), *yes.witness);
    CHECK(is_isomorphic(end, path_graph(3)));

    // the pivot orbit of a complete graph is itself, so P4 is unreachable
    CHECK(has_pivot_minor(complete_graph(4), path_graph(4)).status == SearchStatus::no);
    CHECK(has_pivot_minor(complete_graph(3), path_graph(3)).status == SearchStatus::no);

    Graph c5 = Graph::from_edges(5, std::vector<std::pair<VertexId, VertexId>>{
                                        {0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    CHECK(has_pivot_minor(c5, path_graph(4)).status == SearchStatus::yes);

    // pattern larger than the host is a definitive no
    CHECK(has_pivot_minor(path_graph(3), path_graph(4)).status == SearchStatus::no);
}

TEST_CASE("pivot minor search respects the budget") {
    Graph c5 = Graph::from_edges(5, std::vector<std::pair<VertexId, VertexId>>{
                                        {0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    SearchBudget tiny;
    tiny.max_states = 1;
    CHECK(has_pivot_minor(c5, path_graph(5), tiny).status == SearchStatus::unknown);
    CHECK_THROWS_AS(has_pivot_minor(Graph(11), path_graph(3)), SizeLimitError);
}

TEST_CASE("no answers are stable under relabeling") {
    Graph g = tri_family(TriKind::kk, 2);
    Graph h(4);
    std::vector<VertexId> perm{2, 0, 3, 1};
    for (auto [u, v] : g.edges()) h.add_edge(perm[u], perm[v]);
    CHECK(has_pivot_minor(g, path_graph(4)).status ==
          has_pivot_minor(h, path_graph(4)).status);
}

TEST_CASE("induced subgraph search") {
    auto r = has_induced_subgraph(complement(path_graph(7)), path_graph(4));
    CHECK(r.status == SearchStatus::yes);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->deletions_only());
    CHECK(is_isomorphic(replay(complement(path_graph(7)), *r.witness), path_graph(4)));

    CHECK(has_induced_subgraph(complete_graph(4), path_graph(3)).status == SearchStatus::no);
    CHECK(has_induced_subgraph(path_graph(5), path_graph(3)).status == SearchStatus::yes);

    SearchBudget tiny;
    tiny.max_states = 1;
    CHECK(has_induced_subgraph(path_graph(6), path_graph(3), tiny).status ==
          SearchStatus::unknown);
}

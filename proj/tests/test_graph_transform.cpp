#include <doctest.h>

#include <random>
#include <set>

#include "mgcn/error.hpp"
#include "mgcn/multigraph.hpp"
#include "oracles.hpp"

using namespace mgcn;

namespace {

std::set<Edge> edge_set(const EdgeList& edges) {
    return {edges.begin(), edges.end()};
}

// Expected counts recomputed from the definition, independently of the
// transformation code.
struct Counts {
    std::size_t entities = 0;
    std::size_t distinct_pairs = 0;
};

Counts count_oracle(const std::vector<Triple>& triples) {
    std::set<std::string> ents;
    std::set<std::pair<std::string, std::string>> pairs;
    for (const Triple& t : triples) {
        ents.insert(t.subject);
        ents.insert(t.object);
        pairs.insert({t.subject, t.object});
    }
    return {ents.size(), pairs.size()};
}

} // namespace

TEST_CASE("to_multigraph of a single triple, fully enumerated") {
    MultiGraph mg = to_multigraph({{"A", "p", "B"}});
    REQUIRE(mg.node_count() == 4); // A, B, p, global
    CHECK(mg.nodes[0].label == "A");
    CHECK(mg.nodes[1].label == "B");
    CHECK(mg.nodes[2].label == "p");
    CHECK(mg.nodes[2].kind == NodeKind::relation);
    CHECK(mg.nodes[3].kind == NodeKind::global);

    CHECK(edge_set(mg.edges(EdgeLabel::self)) ==
          std::set<Edge>{{0, 0}, {1, 1}, {2, 2}, {3, 3}});
    CHECK(edge_set(mg.edges(EdgeLabel::default1)) ==
          std::set<Edge>{{0, 2}, {2, 1}});
    CHECK(edge_set(mg.edges(EdgeLabel::reverse1)) ==
          std::set<Edge>{{2, 0}, {1, 2}});
    CHECK(edge_set(mg.edges(EdgeLabel::default2)) == std::set<Edge>{{0, 1}});
    CHECK(edge_set(mg.edges(EdgeLabel::reverse2)) == std::set<Edge>{{1, 0}});
    CHECK(edge_set(mg.edges(EdgeLabel::global)) ==
          std::set<Edge>{{3, 0}, {3, 1}, {3, 2}});
}

TEST_CASE("to_multigraph edge counts for a two-triple chain") {
    MultiGraph mg = to_multigraph({{"A", "p", "B"}, {"B", "q", "C"}});
    CHECK(mg.node_count() == 6);
    CHECK(mg.edges(EdgeLabel::self).size() == 6);
    CHECK(mg.edges(EdgeLabel::default1).size() == 4);
    CHECK(mg.edges(EdgeLabel::reverse1).size() == 4);
    CHECK(mg.edges(EdgeLabel::default2).size() == 2);
    CHECK(mg.edges(EdgeLabel::reverse2).size() == 2);
    CHECK(mg.edges(EdgeLabel::global).size() == 5);
}

TEST_CASE("duplicate triples collapse upstream") {
    KnowledgeGraph kg =
        KnowledgeGraph::build({{"A", "p", "B"}, {"A", "p", "B"}});
    MultiGraph dup = to_multigraph(kg.triples());
    MultiGraph single = to_multigraph({{"A", "p", "B"}});
    CHECK(dup.node_count() == single.node_count());
    for (EdgeLabel l : kAllEdgeLabels)
        CHECK(edge_set(dup.edges(l)) == edge_set(single.edges(l)));
}

TEST_CASE("to_multigraph rejects an empty triple set") {
    CHECK_THROWS_AS(to_multigraph({}), DataError);
    CHECK_THROWS_AS(to_levi({}), DataError);
}

TEST_CASE("to_levi of a single triple") {
    LeviGraph lg = to_levi({{"A", "p", "B"}});
    REQUIRE(lg.nodes.size() == 3);
    CHECK(edge_set(lg.edges) == std::set<Edge>{{0, 2}, {2, 1}});
}

TEST_CASE("to_levi node and edge counts") {
    LeviGraph lg = to_levi({{"A", "p", "B"}, {"B", "q", "C"}});
    CHECK(lg.nodes.size() == 5); // E + M
    CHECK(lg.edges.size() == 4); // 2M
}

TEST_CASE("levi edges equal default1 restricted to non-global nodes") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        auto triples = oracle::random_triples(rng, 8, 12);
        KnowledgeGraph kg = KnowledgeGraph::build(triples);
        MultiGraph mg = to_multigraph(kg.triples());
        LeviGraph lg = to_levi(kg.triples());
        CHECK(edge_set(lg.edges) == edge_set(mg.edges(EdgeLabel::default1)));
    }
}

TEST_CASE("node-count and edge-count laws hold on random triple sets") {
    std::mt19937_64 rng(18);
    for (int trial = 0; trial < 200; ++trial) {
        auto triples = oracle::random_triples(rng, 10, 20);
        KnowledgeGraph kg = KnowledgeGraph::build(triples);
        const std::size_t m = kg.triple_count();
        Counts want = count_oracle(kg.triples());
        MultiGraph mg = to_multigraph(kg.triples());

        CHECK(mg.node_count() == want.entities + m + 1);
        CHECK(mg.edges(EdgeLabel::self).size() == want.entities + m + 1);
        CHECK(mg.edges(EdgeLabel::default1).size() == 2 * m);
        CHECK(mg.edges(EdgeLabel::reverse1).size() == 2 * m);
        CHECK(mg.edges(EdgeLabel::default2).size() == want.distinct_pairs);
        CHECK(mg.edges(EdgeLabel::reverse2).size() == want.distinct_pairs);
        CHECK(mg.edges(EdgeLabel::global).size() == want.entities + m);
    }
}

TEST_CASE("reverse graphs are exact transposes") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 100; ++trial) {
        auto triples = oracle::random_triples(rng, 9, 15);
        MultiGraph mg =
            to_multigraph(KnowledgeGraph::build(triples).triples());
        for (auto [fwd, rev] :
             {std::pair{EdgeLabel::default1, EdgeLabel::reverse1},
              std::pair{EdgeLabel::default2, EdgeLabel::reverse2}}) {
            std::set<Edge> transposed;
            for (const Edge& e : mg.edges(fwd))
                transposed.insert({e.dst, e.src});
            CHECK(edge_set(mg.edges(rev)) == transposed);
        }
    }
}

TEST_CASE("multi-graph strictly extends levi with entity-entity edges") {
    std::mt19937_64 rng(20);
    for (int trial = 0; trial < 50; ++trial) {
        auto triples = oracle::random_triples(rng, 8, 10);
        MultiGraph mg =
            to_multigraph(KnowledgeGraph::build(triples).triples());
        CHECK(!mg.edges(EdgeLabel::default2).empty());
    }
}

TEST_CASE("construction is deterministic") {
    std::mt19937_64 rng(99);
    auto triples = oracle::random_triples(rng, 8, 12);
    MultiGraph a = to_multigraph(triples);
    MultiGraph b = to_multigraph(triples);
    REQUIRE(a.node_count() == b.node_count());
    for (std::size_t i = 0; i < a.node_count(); ++i)
        CHECK(a.nodes[i].label == b.nodes[i].label);
    for (EdgeLabel l : kAllEdgeLabels) {
        REQUIRE(a.edges(l).size() == b.edges(l).size());
        for (std::size_t i = 0; i < a.edges(l).size(); ++i)
            CHECK(a.edges(l)[i] == b.edges(l)[i]);
    }
}

TEST_CASE("drop_graphs removes only what was asked") {
    MultiGraph mg = to_multigraph({{"A", "p", "B"}, {"B", "q", "C"}});

    MultiGraph no_global = drop_graphs(mg, {EdgeLabel::global});
    CHECK(no_global.edges(EdgeLabel::global).empty());
    CHECK(!no_global.is_active(EdgeLabel::global));
    CHECK(no_global.node_count() == mg.node_count());
    for (EdgeLabel l :
         {EdgeLabel::self, EdgeLabel::default1, EdgeLabel::reverse1,
          EdgeLabel::default2, EdgeLabel::reverse2})
        CHECK(no_global.edges(l).size() == mg.edges(l).size());

    MultiGraph same = drop_graphs(mg, {});
    for (EdgeLabel l : kAllEdgeLabels) {
        CHECK(same.is_active(l));
        CHECK(edge_set(same.edges(l)) == edge_set(mg.edges(l)));
    }

    CHECK_THROWS_AS(drop_graphs(mg, {EdgeLabel::self}), InternalError);
}

TEST_CASE("dropping entity-entity graphs leaves levi plus self and global") {
    std::mt19937_64 rng(21);
    auto triples = oracle::random_triples(rng, 8, 12);
    KnowledgeGraph kg = KnowledgeGraph::build(triples);
    MultiGraph mg = to_multigraph(kg.triples());
    MultiGraph dropped =
        drop_graphs(mg, {EdgeLabel::default2, EdgeLabel::reverse2});
    LeviGraph lg = to_levi(kg.triples());

    CHECK(dropped.edges(EdgeLabel::default2).empty());
    CHECK(dropped.edges(EdgeLabel::reverse2).empty());
    CHECK(edge_set(dropped.edges(EdgeLabel::default1)) == edge_set(lg.edges));
    std::set<Edge> rev1_expected;
    for (const Edge& e : lg.edges)
        rev1_expected.insert({e.dst, e.src});
    CHECK(edge_set(dropped.edges(EdgeLabel::reverse1)) == rev1_expected);
    CHECK(dropped.edges(EdgeLabel::self).size() == dropped.node_count());
    CHECK(dropped.edges(EdgeLabel::global).size() ==
          dropped.node_count() - 1);
}

TEST_CASE("validate accepts constructor output") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 20; ++trial) {
        auto triples = oracle::random_triples(rng, 8, 12);
        MultiGraph mg =
            to_multigraph(KnowledgeGraph::build(triples).triples());
        CHECK(validate(mg).empty());
        CHECK(validate(drop_graphs(mg, {EdgeLabel::global})).empty());
    }
}

TEST_CASE("validate flags a corrupted reverse edge") {
    MultiGraph mg = to_multigraph({{"A", "p", "B"}});
    mg.adjacency[static_cast<std::size_t>(EdgeLabel::reverse1)][0] = {0, 1};
    auto violations = validate(mg);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].find("transpose") != std::string::npos);
    CHECK(violations[0].find("reverse1") != std::string::npos);
}

TEST_CASE("validate flags a missing self loop") {
    MultiGraph mg = to_multigraph({{"A", "p", "B"}});
    auto& self = mg.adjacency[static_cast<std::size_t>(EdgeLabel::self)];
    self.erase(self.begin() + 3); // drop the global node's loop
    auto violations = validate(mg);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].find("self-graph") != std::string::npos);
    CHECK(violations[0].find("3") != std::string::npos);
}

TEST_CASE("the global node only emits edges") {
    std::mt19937_64 rng(23);
    auto triples = oracle::random_triples(rng, 7, 10);
    MultiGraph mg = to_multigraph(KnowledgeGraph::build(triples).triples());
    const auto g = static_cast<std::uint32_t>(mg.global_index());
    for (EdgeLabel l : {EdgeLabel::default1, EdgeLabel::reverse1,
                        EdgeLabel::default2, EdgeLabel::reverse2,
                        EdgeLabel::global})
        for (const Edge& e : mg.edges(l))
            CHECK(e.dst != g);
}

TEST_CASE("dump format stays stable") {
    MultiGraph mg = to_multigraph({{"A", "p", "B"}});
    const std::string dump = dump_multigraph(mg);
    CHECK(dump.find("nodes 4") == 0);
    CHECK(dump.find("0\tA\tentity") != std::string::npos);
    CHECK(dump.find("2\tp\trelation") != std::string::npos);
    CHECK(dump.find("3\t<global>\tglobal") != std::string::npos);
    CHECK(dump.find("default1 2") != std::string::npos);
    CHECK(dump.find("global 3") != std::string::npos);

    const std::string levi = dump_levi(to_levi({{"A", "p", "B"}}));
    CHECK(levi.find("nodes 3") == 0);
    CHECK(levi.find("edges 2") != std::string::npos);
}

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "mgcn/error.hpp"
#include "mgcn/io.hpp"
#include "mgcn/pagerank.hpp"
#include "mgcn/preprocess.hpp"
#include "mgcn/stats.hpp"
#include "mgcn/subgraph.hpp"
#include "mgcn/synth.hpp"
#include "oracles.hpp"

using namespace mgcn;

TEST_CASE("build_graph on an empty list") {
    KnowledgeGraph kg = KnowledgeGraph::build({});
    CHECK(kg.triple_count() == 0);
    CHECK(kg.entity_count() == 0);
}

TEST_CASE("build_graph deduplicates by value equality") {
    KnowledgeGraph kg =
        KnowledgeGraph::build({{"A", "p", "B"}, {"A", "p", "B"}});
    CHECK(kg.triple_count() == 1);
    CHECK(kg.entity_count() == 2);
}

TEST_CASE("entity index covers both roles") {
    KnowledgeGraph kg =
        KnowledgeGraph::build({{"A", "p", "B"}, {"B", "q", "C"}});
    const auto& hits = kg.incident("B");
    REQUIRE(hits.size() == 2);
    CHECK(kg.triples()[hits[0]] == Triple{"A", "p", "B"});
    CHECK(kg.triples()[hits[1]] == Triple{"B", "q", "C"});
}

TEST_CASE("build_graph rejects malformed triples with their position") {
    std::vector<Triple> bad{{"A", "p", "B"}, {"X", "  ", "Y"}};
    CHECK_THROWS_WITH_AS(KnowledgeGraph::build(bad),
                         doctest::Contains("triple 1"), DataError);
}

TEST_CASE("extract_subgraph gathers neighbors and 2-hop paths") {
    KnowledgeGraph kg = KnowledgeGraph::build(
        {{"M", "r1", "X"}, {"X", "r2", "T"}, {"Y", "r3", "T"},
         {"M", "r4", "Z"}});
    SubgraphResult res = extract_subgraph(kg, "M", {"T"});
    REQUIRE(res.triples.size() == 3);
    CHECK(res.triples[0] == Triple{"M", "r1", "X"});
    CHECK(res.triples[1] == Triple{"X", "r2", "T"});
    CHECK(res.triples[2] == Triple{"M", "r4", "Z"});
    CHECK(res.warnings.empty());
}

TEST_CASE("a direct edge is both neighbor triple and 1-hop path") {
    KnowledgeGraph kg = KnowledgeGraph::build({{"M", "r", "T"}});
    SubgraphResult res = extract_subgraph(kg, "M", {"T"});
    REQUIRE(res.triples.size() == 1);
    CHECK(res.triples[0] == Triple{"M", "r", "T"});
}

TEST_CASE("unknown topics warn instead of failing") {
    KnowledgeGraph kg = KnowledgeGraph::build({{"M", "r", "X"}});
    SubgraphResult res = extract_subgraph(kg, "M", {"T"});
    REQUIRE(res.triples.size() == 1);
    REQUIRE(res.warnings.size() == 1);
    CHECK(res.warnings[0].find("T") != std::string::npos);
}

TEST_CASE("unknown main entity is an error naming the entity") {
    KnowledgeGraph kg = KnowledgeGraph::build({{"A", "p", "B"}});
    CHECK_THROWS_WITH_AS(extract_subgraph(kg, "M", {}),
                         doctest::Contains("'M'"), DataError);
}

TEST_CASE("extract_subgraph matches the brute-force oracle") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 300; ++trial) {
        auto triples = oracle::random_triples(rng, 12, 18);
        KnowledgeGraph kg = KnowledgeGraph::build(triples);
        const std::string main = triples[0].subject;
        std::vector<std::string> topics;
        auto entities = kg.entities();
        for (std::size_t i = 0; i < 3 && i < entities.size(); ++i)
            topics.push_back(entities[rng() % entities.size()]);
        const int hops = 1 + static_cast<int>(rng() % 2);

        SubgraphResult got = extract_subgraph(kg, main, topics, hops);
        auto want =
            oracle::subgraph_bruteforce(kg.triples(), main, topics, hops);
        REQUIRE(got.triples.size() == want.size());
        for (std::size_t i = 0; i < want.size(); ++i)
            CHECK(got.triples[i] == want[i]);
    }
}

TEST_CASE("extract_subgraph is monotone in topics") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        auto triples = oracle::random_triples(rng, 10, 15);
        KnowledgeGraph kg = KnowledgeGraph::build(triples);
        const std::string main = triples[0].subject;
        auto entities = kg.entities();
        std::vector<std::string> topics;
        topics.push_back(entities[rng() % entities.size()]);
        SubgraphResult small = extract_subgraph(kg, main, topics);
        topics.push_back(entities[rng() % entities.size()]);
        SubgraphResult big = extract_subgraph(kg, main, topics);
        for (const Triple& t : small.triples)
            CHECK(std::find(big.triples.begin(), big.triples.end(), t) !=
                  big.triples.end());
    }
}

TEST_CASE("pagerank of a 3-cycle is uniform") {
    KnowledgeGraph kg = KnowledgeGraph::build(
        {{"A", "r", "B"}, {"B", "r", "C"}, {"C", "r", "A"}});
    auto scores = pagerank(kg);
    for (const auto& [node, score] : scores)
        CHECK(score == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("pagerank of a symmetric pair is half/half") {
    KnowledgeGraph kg =
        KnowledgeGraph::build({{"A", "r", "B"}, {"B", "r", "A"}});
    auto scores = pagerank(kg);
    CHECK(scores["A"] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(scores["B"] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("pagerank matches an independent dense power iteration") {
    std::vector<Triple> triples{
        {"A", "r", "B"}, {"A", "r", "C"}, {"B", "r", "C"}, {"C", "r", "A"}};
    KnowledgeGraph kg = KnowledgeGraph::build(triples);
    auto got = pagerank(kg, 0.85, 1e-14, 500);
    auto want = oracle::pagerank_dense(triples, 0.85, 500);
    for (const auto& [node, score] : want)
        CHECK(got[node] == doctest::Approx(score).epsilon(1e-8));
}

TEST_CASE("pagerank scores are non-negative and sum to one") {
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 50; ++trial) {
        auto triples = oracle::random_triples(rng, 9, 14);
        KnowledgeGraph kg = KnowledgeGraph::build(triples);
        auto scores = pagerank(kg);
        double total = 0.0;
        for (const auto& [node, score] : scores) {
            CHECK(score >= 0.0);
            total += score;
        }
        CHECK(std::fabs(total - 1.0) < 1e-9);
    }
}

TEST_CASE("pagerank rejects an empty graph") {
    CHECK_THROWS_AS(pagerank(KnowledgeGraph::build({})), DataError);
}

TEST_CASE("dangling nodes redistribute their mass") {
    // A -> B leaves B dangling; fixpoint solved by hand:
    // a = 0.075 + 0.425 b, b = 0.075 + 0.85 a + 0.425 b
    std::vector<Triple> triples{{"A", "r", "B"}};
    auto scores = pagerank(KnowledgeGraph::build(triples), 0.85, 1e-14, 500);
    CHECK(scores["A"] == doctest::Approx(0.350877192982).epsilon(1e-9));
    CHECK(scores["B"] == doctest::Approx(0.649122807018).epsilon(1e-9));
    auto want = oracle::pagerank_dense(triples, 0.85, 500);
    CHECK(scores["A"] == doctest::Approx(want["A"]).epsilon(1e-10));
}

TEST_CASE("dataset_stats single-instance averages") {
    Instance inst;
    inst.main_entity = "a";
    inst.triples = {{"a", "p", "b"}, {"b", "q", "c"}};
    inst.text = {"one", "two", "three", "four", "five"};
    Stats s = dataset_stats({inst});
    CHECK(s.instances == 1);
    CHECK(s.avg_triples_per_input == 2.0);
    CHECK(s.avg_words_per_output == 5.0);
    CHECK(s.entities == 3);
    CHECK(s.relations == 2);
}

TEST_CASE("dataset_stats averages across instances") {
    Instance a;
    a.main_entity = "x";
    a.triples = {{"x", "p", "y"}};
    a.text = {"hi"};
    Instance b;
    b.main_entity = "x";
    b.triples = {{"x", "p", "y"}, {"x", "p", "z"}, {"z", "q", "x"}};
    b.text = {"hello", "there", "friend"};
    Stats s = dataset_stats({a, b});
    CHECK(s.avg_triples_per_input == 2.0);
    CHECK(s.avg_words_per_output == 2.0);
}

TEST_CASE("dataset_stats is permutation-invariant") {
    auto corpus = synth_corpus(5, 10, 12, 4, 4);
    Stats forward = dataset_stats(corpus);
    std::reverse(corpus.begin(), corpus.end());
    Stats backward = dataset_stats(corpus);
    CHECK(forward.instances == backward.instances);
    CHECK(forward.input_vocab == backward.input_vocab);
    CHECK(forward.output_vocab == backward.output_vocab);
    CHECK(forward.entities == backward.entities);
    CHECK(forward.relations == backward.relations);
    CHECK(forward.avg_triples_per_input == backward.avg_triples_per_input);
    CHECK(forward.avg_words_per_output == backward.avg_words_per_output);
}

TEST_CASE("dataset_stats rejects an empty list") {
    CHECK_THROWS_AS(dataset_stats({}), DataError);
}

TEST_CASE("synth_corpus is deterministic per seed") {
    auto a = synth_corpus(9, 16, 24, 6, 5);
    auto b = synth_corpus(9, 16, 24, 6, 5);
    REQUIRE(a.size() == b.size());
    std::string sa, sb;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sa += instance_to_json_line(a[i]);
        sb += instance_to_json_line(b[i]);
    }
    CHECK(sa == sb);

    auto c = synth_corpus(10, 16, 24, 6, 5);
    std::string sc;
    for (const auto& inst : c)
        sc += instance_to_json_line(inst);
    CHECK(sa != sc);
}

TEST_CASE("synth_corpus instances satisfy the instance invariants") {
    auto corpus = synth_corpus(3, 16, 8, 3, 5);
    REQUIRE(corpus.size() == 16);
    for (const Instance& inst : corpus) {
        CHECK_NOTHROW(inst.validate("synth"));
        CHECK(!inst.triples.empty());
        // reference mentions the main label and the first topic label
        const std::string joined = " " + join_tokens(inst.text) + " ";
        CHECK(joined.find(" " + inst.main_entity + " ") != std::string::npos);
        CHECK(joined.find(" " + inst.topic_entities[0] + " ") !=
              std::string::npos);
    }
}

TEST_CASE("synth_corpus rejects zero counts") {
    CHECK_THROWS_AS(synth_corpus(1, 0, 4, 2, 3), DataError);
}

TEST_CASE("instance files round-trip through JSON lines") {
    auto corpus = synth_corpus(21, 6, 10, 3, 4);
    const std::string path = "kgcore_instances.jsonl";
    save_instances(corpus, path);
    auto loaded = load_instances(path);
    REQUIRE(loaded.size() == corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        CHECK(loaded[i].main_entity == corpus[i].main_entity);
        CHECK(loaded[i].topic_entities == corpus[i].topic_entities);
        CHECK(loaded[i].triples == corpus[i].triples);
        CHECK(loaded[i].text == corpus[i].text);
    }
    std::remove(path.c_str());
}

TEST_CASE("unknown instance keys are ignored") {
    std::istringstream is(
        R"({"main_entity":"a","topic_entities":[],"triples":[["a","p","b"]],"text":"a b","wikidata_id":"Q42"})"
        "\n");
    auto instances = read_instances(is, "mem");
    REQUIRE(instances.size() == 1);
    CHECK(instances[0].main_entity == "a");
}

TEST_CASE("instance parse errors carry the line number") {
    std::istringstream is(
        R"({"main_entity":"a","topic_entities":[],"triples":[["a","p","b"]],"text":"a b"})"
        "\nnot json\n");
    CHECK_THROWS_WITH_AS(read_instances(is, "mem"), doctest::Contains("mem:2"),
                         DataError);
}

TEST_CASE("instance invariant violations are reported on load") {
    // main entity missing from a non-empty triple set
    std::istringstream is(
        R"({"main_entity":"z","topic_entities":[],"triples":[["a","p","b"]],"text":"a"})"
        "\n");
    CHECK_THROWS_WITH_AS(read_instances(is, "mem"),
                         doctest::Contains("appears in no triple"), DataError);

    std::istringstream dup(
        R"({"main_entity":"a","topic_entities":["b","b"],"triples":[["a","p","b"]],"text":"a"})"
        "\n");
    CHECK_THROWS_WITH_AS(read_instances(dup, "mem"),
                         doctest::Contains("duplicate topic"), DataError);

    std::istringstream main_topic(
        R"({"main_entity":"a","topic_entities":["a"],"triples":[["a","p","b"]],"text":"a"})"
        "\n");
    CHECK_THROWS_WITH_AS(read_instances(main_topic, "mem"),
                         doctest::Contains("equals main"), DataError);
}

TEST_CASE("triple files round-trip") {
    std::vector<Triple> triples{{"a b", "p", "c"}, {"c", "q r", "a b"}};
    const std::string path = "kgcore_triples.tsv";
    save_triples(triples, path);
    auto loaded = load_triples(path);
    CHECK(loaded == triples);
    std::remove(path.c_str());

    std::ofstream bad(path);
    bad << "only\ttwo\n";
    bad.close();
    CHECK_THROWS_WITH_AS(load_triples(path), doctest::Contains(":1"),
                         DataError);
    std::remove(path.c_str());
}

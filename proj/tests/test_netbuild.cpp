#include "doctest.h"

#include <cmath>
#include <random>

#include "coword/netbuild.hpp"

#include "coword/common.hpp"
#include "test_util.hpp"

using namespace coword;
using Doc = std::vector<std::string>;

TEST_CASE("matrix rows are binary, sorted, deduplicated") {
    DocTermMatrix m = build_matrix({{"b", "a", "b"}, {"a"}, {"c", "zzz"}},
                                   {"a", "b", "c"});
    REQUIRE(m.rows.size() == 3);
    CHECK(m.rows[0] == std::vector<std::size_t>{0, 1});
    CHECK(m.rows[1] == std::vector<std::size_t>{0});
    CHECK(m.rows[2] == std::vector<std::size_t>{2});  // zzz not in the set
    CHECK(m.column_sums == std::vector<std::int64_t>{2, 1, 1});
}

TEST_CASE("documents without selected terms are dropped") {
    DocTermMatrix m = build_matrix({{"a"}, {"nope"}, {"a"}}, {"a"});
    CHECK(m.rows.size() == 2);
}

TEST_CASE("matrix construction rejects broken term sets") {
    CHECK_THROWS_AS((void)build_matrix({{"a"}}, {}), error);
    CHECK_THROWS_AS((void)build_matrix({{"a"}}, {"a", "a"}), error);
    // a selected term that never occurs would produce a zero cosine column
    CHECK_THROWS_AS((void)build_matrix({{"a"}}, {"a", "ghost"}), error);
}

TEST_CASE("co-occurrence counts document pairs and the diagonal") {
    DocTermMatrix m = build_matrix({{"a", "b", "c"}, {"a", "b"}, {"b", "c"}},
                                   {"a", "b", "c"});
    CoocCounts c = cooccurrence(m);
    CHECK(c.at(0, 1) == 2);
    CHECK(c.at(1, 0) == 2);
    CHECK(c.at(0, 2) == 1);
    CHECK(c.at(1, 2) == 2);
    CHECK(c.at(0, 0) == 2);  // diagonal = term frequency
    CHECK(c.at(1, 1) == 3);
    CHECK(c.at(2, 2) == 2);
}

TEST_CASE("cosine normalization matches the closed form") {
    DocTermMatrix m = build_matrix({{"a", "b"}, {"a", "b"}, {"a"}, {"b", "c"}},
                                   {"a", "b", "c"});
    CoocCounts c = cooccurrence(m);
    auto sim = cosine_normalize(c, m.column_sums);
    // f_a=3 f_b=3 f_c=1, c_ab=2, c_bc=1
    CHECK(sim[0][1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(sim[1][2] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(sim[0][2] == 0.0);
    CHECK(sim[1][0] == sim[0][1]);
}

TEST_CASE("cosine validates its inputs") {
    DocTermMatrix m = build_matrix({{"a"}}, {"a"});
    CoocCounts c = cooccurrence(m);
    CHECK_THROWS_AS((void)cosine_normalize(c, {}), error);
    CHECK_THROWS_AS((void)cosine_normalize(c, {0}), error);
}

TEST_CASE("cosine similarity equals brute-force vector cosine on random matrices") {
    std::mt19937_64 rng(11); // property check; the frozen oracle run lives in the acceptance suite
    for (int round = 0; round < 40; ++round) {
        std::uniform_int_distribution<std::size_t> dd(2, 30), td(2, 10);
        std::size_t docs = dd(rng), terms = td(rng);
        std::vector<std::vector<int>> cells(docs, std::vector<int>(terms, 0));
        std::vector<Doc> corpus(docs);
        std::bernoulli_distribution bit(0.4);
        for (std::size_t d = 0; d < docs; ++d) {
            for (std::size_t t = 0; t < terms; ++t) {
                if (bit(rng)) {
                    cells[d][t] = 1;
                    corpus[d].push_back("t" + std::to_string(t));
                }
            }
        }
        std::vector<std::string> term_set;
        std::vector<std::size_t> col_of;
        for (std::size_t t = 0; t < terms; ++t) {
            bool occurs = false;
            for (std::size_t d = 0; d < docs; ++d) occurs |= cells[d][t] != 0;
            if (occurs) {
                term_set.push_back("t" + std::to_string(t));
                col_of.push_back(t);
            }
        }
        if (term_set.size() < 2) continue;
        DocTermMatrix m = build_matrix(corpus, term_set);
        CoocCounts c = cooccurrence(m);
        auto sim = cosine_normalize(c, m.column_sums);
        for (std::size_t i = 0; i < term_set.size(); ++i) {
            for (std::size_t j = i + 1; j < term_set.size(); ++j) {
                double dot = 0.0, ni = 0.0, nj = 0.0;
                for (std::size_t d = 0; d < docs; ++d) {
                    dot += cells[d][col_of[i]] * cells[d][col_of[j]];
                    ni += cells[d][col_of[i]];
                    nj += cells[d][col_of[j]];
                }
                double expected = dot / std::sqrt(ni * nj);
                CHECK(std::fabs(sim[i][j] - expected) <= 1e-12);
            }
        }
    }
}

TEST_CASE("graph edges carry counts and display weights count all pairs") {
    CoocGraph g = build_graph({{"a", "b"}, {"a", "b"}, {"b", "c"}}, {"a", "b", "c"},
                              std::nullopt);
    REQUIRE(g.nodes.size() == 3);
    REQUIRE(g.edges.size() == 2);
    CHECK(g.edges[0].i == 0);
    CHECK(g.edges[0].j == 1);
    CHECK(g.edges[0].count == 2);
    CHECK(g.nodes[0].display_weight == 2);      // a-b pairs
    CHECK(g.nodes[1].display_weight == 3);      // a-b twice + b-c once
    CHECK(g.nodes[1].frequency == 3);

    // filtering drops weak edges from the edge list but not the weights
    CoocGraph strict = build_graph({{"a", "b"}, {"a", "b"}, {"b", "c"}},
                                   {"a", "b", "c"}, 0.6);
    CHECK(strict.edges.size() == 1);  // b-c cosine 1/sqrt(3) ~ 0.58 dropped
    CHECK(strict.nodes[1].display_weight == 3);
}

TEST_CASE("pajek output is stable and quoted") {
    CoocGraph g;
    g.nodes.resize(2);
    g.nodes[0].label = "climate_change";
    g.nodes[1].label = "say \"hi\"";
    g.nodes[0].frequency = g.nodes[1].frequency = 1;
    CoocEdge e;
    e.i = 0;
    e.j = 1;
    e.similarity = 0.125;
    e.count = 1;
    g.edges.push_back(e);
    CHECK(write_pajek(g) ==
          "*Vertices 2\n"
          "1 \"climate_change\"\n"
          "2 \"say \"\"hi\"\"\"\n"
          "*Edges\n"
          "1 2 0.1250\n");
}

TEST_CASE("pajek reader recovers the writer's graph") {
    std::mt19937_64 rng(99);
    for (int round = 0; round < 50; ++round) {
        CoocGraph g = testutil::random_graph(rng, 12);
        CoocGraph back = read_pajek(write_pajek(g));
        REQUIRE(back.nodes.size() == g.nodes.size());
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            CHECK(back.nodes[i].label == g.nodes[i].label);
        }
        REQUIRE(back.edges.size() == g.edges.size());
        for (std::size_t k = 0; k < g.edges.size(); ++k) {
            CHECK(back.edges[k].i == g.edges[k].i);
            CHECK(back.edges[k].j == g.edges[k].j);
            CHECK(back.edges[k].similarity ==
                  doctest::Approx(g.edges[k].similarity).epsilon(1e-9));
        }
        // write(read(write(g))) is a fixed point
        CHECK(write_pajek(back) == write_pajek(g));
    }
}

TEST_CASE("pajek reader reports malformed input with line numbers") {
    auto read = [](const std::string& s) { return read_pajek(s); };
    CHECK_THROWS_WITH_AS(read("nope\n"), doctest::Contains("line 1"), error);
    CHECK_THROWS_WITH_AS(read("*Vertices 2\n1 \"a\"\n3 \"b\"\n*Edges\n"),
                         doctest::Contains("line 3"), error);
    CHECK_THROWS_WITH_AS(read("*Vertices 1\n1 \"a\"\n*Edges\n1 1 0.5\n"),
                         doctest::Contains("line 4"), error);
    CHECK_THROWS_WITH_AS(
        read("*Vertices 2\n1 \"a\"\n2 \"b\"\n*Edges\n1 2 0.5\n1 2 0.5\n"),
        doctest::Contains("line 6"), error);
    CHECK_THROWS_WITH_AS(read("*Vertices 2\n1 \"a\"\n2 \"b\"\n*Edges\n1 2 0.5 junk\n"),
                         doctest::Contains("line 5"), error);
    CHECK_THROWS_WITH_AS(read("*Vertices 2\n1 \"a\"\n2 \"b\"\n*Edges\n1 3 0.5\n"),
                         doctest::Contains("line 5"), error);
    CHECK_THROWS_AS(read("*Vertices 2\n1 \"a\"\n*Edges\n"), error);
}

TEST_CASE("pajek reader accepts blank lines and CRLF") {
    CoocGraph g = read_pajek("*Vertices 2\r\n1 \"a\"\r\n\r\n2 \"b\"\r\n*Edges\r\n1 2 0.5\r\n");
    CHECK(g.nodes.size() == 2);
    CHECK(g.edges.size() == 1);
}

TEST_CASE("counts sidecar restores counts and display weights") {
    testutil::TempDir dir("counts");
    CoocGraph g = build_graph({{"a", "b"}, {"a", "b"}, {"b", "c"}}, {"a", "b", "c"},
                              std::nullopt);
    std::string tsv = write_counts_tsv(g);
    CHECK(tsv.rfind("i\tj\tcount\n", 0) == 0);

    CoocGraph back = read_pajek(write_pajek(g));
    CHECK(back.nodes[1].display_weight == 0);  // pajek alone has no counts
    apply_counts_tsv(back, tsv);
    CHECK(back.nodes[0].display_weight == g.nodes[0].display_weight);
    CHECK(back.nodes[1].display_weight == g.nodes[1].display_weight);
    REQUIRE(back.edges.size() == 2);
    CHECK(back.edges[0].count == 2);

    std::string path = dir.write("c.tsv", tsv);
    CoocGraph again = read_pajek(write_pajek(g));
    apply_counts_file(again, path);
    CHECK(again.nodes[2].display_weight == g.nodes[2].display_weight);
}

TEST_CASE("map file round trips placements and clusters") {
    testutil::TempDir dir("map");
    CoocGraph g = build_graph({{"a", "b"}, {"a", "b"}}, {"a", "b"}, std::nullopt);
    std::vector<NodePlacement> layout = {{0.25, -1.5}, {3.0, 2.0}};
    std::vector<int> clusters = {1, 2};
    std::string content = write_map_file(g, layout, clusters);
    CHECK(content.rfind("id\tlabel\tx\ty\tcluster\tweight\n", 0) == 0);
    std::string path = dir.write("m.tsv", content);
    auto rows = read_map_file(path);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].id == 1);
    CHECK(rows[0].label == "a");
    CHECK(rows[0].x == doctest::Approx(0.25));
    CHECK(rows[0].y == doctest::Approx(-1.5));
    CHECK(rows[0].cluster == 1);
    CHECK(rows[1].cluster == 2);

    CHECK_THROWS_AS(write_map_file(g, layout, std::vector<int>{1}), error);
    CHECK_THROWS_AS(write_map_file(g, layout, std::vector<int>{1, 0}), error);
}

#include "doctest.h"

#include <cmath>

#include "coword/report.hpp"

#include "coword/common.hpp"
#include "test_util.hpp"

using namespace coword;

namespace {

PublicationRecord pub(const std::string& doi, const std::string& journal) {
    PublicationRecord p;
    p.doi = doi;
    p.year = 2015;
    p.journal = journal;
    return p;
}

}  // namespace

TEST_CASE("overlap table counts intersections with min-size percentages") {
    OverlapTable t = overlap_table({{"left", {"a", "b", "c"}},
                                    {"right", {"b", "c", "d", "e"}}});
    CHECK(t.sizes == std::vector<std::size_t>{3, 4});
    CHECK(t.counts[0][1] == 2);
    CHECK(t.counts[1][0] == 2);
    CHECK(t.counts[0][0] == 3);
    CHECK(t.percentage(0, 1) == doctest::Approx(100.0 * 2.0 / 3.0));

    std::string csv = overlap_csv(t);
    CHECK(csv ==
          "set,left,right\n"
          "left,3,66.7\n"
          "right,2,4\n");
}

TEST_CASE("overlap handles duplicate terms by set semantics") {
    OverlapTable t = overlap_table({{"x", {"a", "a", "b"}}, {"y", {"a"}}});
    CHECK(t.sizes == std::vector<std::size_t>{2, 1});
    CHECK(t.counts[0][1] == 1);
    CHECK_THROWS_AS((void)overlap_table({{"x", {}}}), error);
    CHECK_THROWS_AS((void)overlap_table({}), error);
}

TEST_CASE("journal importance folds names and ranks by count") {
    std::vector<PublicationRecord> pubs = {
        pub("10.1/a", "PLOS ONE"),       pub("10.1/b", "Plos One"),
        pub("10.1/c", " plos one "),     pub("10.1/d", "Nature"),
        pub("10.1/e", "Nature"),         pub("10.1/f", "Science"),
        pub("10.1/g", ""),  // unjournaled papers are skipped
    };
    Segmentation seg;
    for (Segment s : kSegments) seg.members[s];
    for (const auto& p : pubs) seg.members[Segment::all].insert(p.doi);
    seg.members[Segment::tweeted2] = {"10.1/a", "10.1/d"};
    seg.members[Segment::tweeted2_news] = {"10.1/d"};
    seg.members[Segment::not_tweeted] = {"10.1/b", "10.1/c", "10.1/e", "10.1/f",
                                         "10.1/g"};

    JournalImportance ji = journal_importance(seg, pubs, 2);
    CHECK(ji.top_n == 2);
    CHECK(ji.segment_sizes[0] == 7);
    REQUIRE(ji.top[0].size() == 2);
    CHECK(ji.top[0][0] == std::pair<std::string, std::int64_t>{"PLOS ONE", 3});
    CHECK(ji.top[0][1] == std::pair<std::string, std::int64_t>{"NATURE", 2});
    CHECK(ji.count_of(Segment::all, "SCIENCE") == 1);
    CHECK(ji.count_of(Segment::tweeted2_news, "NATURE") == 1);
    CHECK(ji.share_of(Segment::tweeted2, "NATURE") == doctest::Approx(0.5));
    // union: every journal in some top list; news-share order puts NATURE first
    REQUIRE(ji.union_journals.size() >= 2);
    CHECK(ji.union_journals[0] == "NATURE");

    std::string csv = journal_importance_csv(ji);
    CHECK(csv.find("journal,all_count,all_share") == 0);
    CHECK(csv.find("NATURE") != std::string::npos);
}

TEST_CASE("fold journal trims and uppercases") {
    CHECK(fold_journal("  Nature Climate Change ") == "NATURE CLIMATE CHANGE");
    CHECK(fold_journal("plos one") == "PLOS ONE");
}

TEST_CASE("hashtag histogram bins the per-paper distribution") {
    HashtagStats stats;
    stats.per_paper_distribution = {{1, 10}, {2, 5}, {3, 2}, {8, 1}, {40, 1}};
    HashtagHistogram h = hashtag_histogram(stats, 1, 5);
    CHECK(h.lo == 1);
    CHECK(h.hi == 5);
    REQUIRE(h.bins.size() == 5);
    CHECK(h.bins[0] == 10);
    CHECK(h.bins[1] == 5);
    CHECK(h.bins[2] == 2);
    CHECK(h.bins[3] == 0);
    CHECK(h.bins[4] == 0);
    CHECK(h.within_range == 17);
    CHECK(h.papers_with_hashtags == 19);

    std::string csv = histogram_csv(h);
    CHECK(csv.rfind("hashtags_per_paper,papers\n", 0) == 0);
    CHECK(csv.find("1,10\n") != std::string::npos);
    CHECK(csv.find("5,0\n") != std::string::npos);

    std::string svg = histogram_svg(h);
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);

    CHECK_THROWS_AS((void)hashtag_histogram(stats, 5, 1), error);
}

TEST_CASE("network svg encodes nodes, clusters, and proportions") {
    CoocGraph g;
    g.nodes.resize(3);
    g.nodes[0] = {"alpha", 4, 16};
    g.nodes[1] = {"beta <x>", 4, 4};
    g.nodes[2] = {"gamma", 1, 1};
    CoocEdge e;
    e.i = 0;
    e.j = 1;
    e.similarity = 0.5;
    e.count = 4;
    g.edges.push_back(e);
    e.i = 1;
    e.j = 2;
    e.similarity = 0.25;
    e.count = 1;
    g.edges.push_back(e);
    std::vector<NodePlacement> layout = {{0.0, 0.0}, {2.0, 0.0}, {1.0, 1.5}};
    std::vector<int> clusters = {1, 1, 2};

    std::string svg = render_network_svg(g, layout, clusters);
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("beta &lt;x&gt;") != std::string::npos);  // labels escaped
    CHECK(svg.find("<circle") != std::string::npos);

    // radius scales with sqrt(display weight): 16 vs 4 gives a 2:1 ratio
    auto radius_after = [&](std::size_t from) {
        std::size_t at = svg.find("r=\"", from);
        REQUIRE(at != std::string::npos);
        std::size_t end = svg.find('"', at + 3);
        return std::stod(svg.substr(at + 3, end - at - 3));
    };
    std::size_t first = svg.find("<circle");
    double r0 = radius_after(first);
    double r1 = radius_after(svg.find("<circle", first + 1));
    CHECK(r0 == doctest::Approx(2.0 * r1).epsilon(1e-6));
    CHECK(r0 == doctest::Approx(28.0));  // heaviest node takes max_radius

    // deterministic output
    CHECK(render_network_svg(g, layout, clusters) == svg);

    // input validation
    CHECK_THROWS_AS(
        (void)render_network_svg(g, {{0, 0}}, clusters), error);
    CHECK_THROWS_AS(
        (void)render_network_svg(g, layout, std::vector<int>{1, 1, 0}), error);
}

TEST_CASE("rendering without labels drops the text group") {
    CoocGraph g;
    g.nodes.resize(2);
    g.nodes[0] = {"one", 1, 1};
    g.nodes[1] = {"two", 1, 1};
    CoocEdge e;
    e.i = 0;
    e.j = 1;
    e.similarity = 1.0;
    e.count = 1;
    g.edges.push_back(e);
    RenderOptions options;
    options.labels = false;
    std::string svg =
        render_network_svg(g, {{0.0, 0.0}, {1.0, 1.0}}, {1, 2}, options);
    CHECK(svg.find("<text") == std::string::npos);
}

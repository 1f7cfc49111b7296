#include "doctest.h"

#include <random>
#include <set>

#include "coword/terms.hpp"

#include "coword/common.hpp"
#include "test_util.hpp"

using namespace coword;
using Doc = std::vector<std::string>;

TEST_CASE("hashtags are maximal word-character runs, uppercased") {
    CHECK(extract_hashtags("Join the #climatechange debate") ==
          std::vector<std::string>{"#CLIMATECHANGE"});
    CHECK(extract_hashtags("#COP21 and #cop21 again") ==
          std::vector<std::string>{"#COP21", "#COP21"});
    CHECK(extract_hashtags("#global_warming #co2!") ==
          std::vector<std::string>{"#GLOBAL_WARMING", "#CO2"});
    CHECK(extract_hashtags("punctuation #tag, stops") ==
          std::vector<std::string>{"#TAG"});
    CHECK(extract_hashtags("no tags here") == std::vector<std::string>{});
    CHECK(extract_hashtags("lone # sign and ## doubles") ==
          std::vector<std::string>{});
}

TEST_CASE("hashtag extraction skips url fragments and mid-word hashes") {
    CHECK(extract_hashtags("see https://t.co/page#section for more") ==
          std::vector<std::string>{});
    CHECK(extract_hashtags("www.example.com/#anchor then #real") ==
          std::vector<std::string>{"#REAL"});
    CHECK(extract_hashtags("C#minor is not a tag") == std::vector<std::string>{});
    CHECK(extract_hashtags("(#bracketed) works") ==
          std::vector<std::string>{"#BRACKETED"});
}

TEST_CASE("hashtags keep non-ascii letters and duplicates stay in order") {
    CHECK(extract_hashtags("#extinci\xc3\xb3n alert") ==
          std::vector<std::string>{"#EXTINCI\xc3\x93N"});
    CHECK(extract_hashtags("#a b #b c #a") ==
          std::vector<std::string>{"#A", "#B", "#A"});
}

TEST_CASE("keyword normalization lowercases and joins with underscores") {
    CHECK(normalize_keyword("Climate Change") == "climate_change");
    CHECK(normalize_keyword("  Sea-Level   Rise  ") == "sea_level_rise");
    CHECK(normalize_keyword("CO2") == "co2");
    CHECK(normalize_keyword("life cycle assessment (lca)") ==
          "life_cycle_assessment_(lca)");
    CHECK(normalize_keyword("") == std::nullopt);
    CHECK(normalize_keyword("   ") == std::nullopt);
}

TEST_CASE("thesaurus maps variants to canonicals, identity elsewhere") {
    Thesaurus t;
    t.add_rule("modelling", "modeling", TermKind::keyword);
    t.add_rule("Global Warming", "climate change", TermKind::keyword);
    CHECK(t.apply("modelling") == "modeling");
    CHECK(t.apply("global_warming") == "climate_change");
    CHECK(t.apply("untouched") == "untouched");
    Doc mapped = apply_thesaurus({"modelling", "other"}, t);
    CHECK(mapped == Doc{"modeling", "other"});
}

TEST_CASE("thesaurus application is idempotent") {
    Thesaurus t;
    t.add_rule("#COP22", "#COP21", TermKind::hashtag);
    t.add_rule("modelling", "modeling", TermKind::keyword);
    std::vector<std::string> terms{"#COP22", "#COP21", "modelling", "modeling", "x"};
    auto once = apply_thesaurus(terms, t);
    CHECK(apply_thesaurus(once, t) == once);
}

TEST_CASE("thesaurus rejects chains and conflicts") {
    Thesaurus t;
    t.add_rule("a b", "c d", TermKind::keyword);
    CHECK_THROWS_AS(t.add_rule("c d", "e f", TermKind::keyword), error);  // canonical is a variant
    CHECK_THROWS_AS(t.add_rule("x", "a b", TermKind::keyword), error);    // variant as canonical
    CHECK_THROWS_AS(t.add_rule("a b", "other", TermKind::keyword), error);
    t.add_rule("a b", "c d", TermKind::keyword);  // exact repeat is fine
    t.add_rule("same", "same", TermKind::keyword);  // identity ignored
    CHECK(t.apply("same") == "same");
}

TEST_CASE("thesaurus files use per-kind comment syntax") {
    testutil::TempDir dir("thesaurus");
    std::string kw = dir.write("kw.txt",
                               "# plain comment\n"
                               "modelling => modeling\n"
                               "\n"
                               "\\#hashtagish => kept\n");
    Thesaurus t = Thesaurus::load(kw, TermKind::keyword);
    CHECK(t.apply("modelling") == "modeling");
    CHECK(t.apply("#hashtagish") == "kept");

    std::string ht = dir.write("ht.txt",
                               "\\# comment in a hashtag thesaurus\n"
                               "#COP22 => #COP21\n");
    Thesaurus h = Thesaurus::load(ht, TermKind::hashtag);
    CHECK(h.apply("#COP22") == "#COP21");

    std::string bad = dir.write("bad.txt", "no arrow here\n");
    CHECK_THROWS_WITH_AS((void)Thesaurus::load(bad, TermKind::keyword),
                         doctest::Contains("bad.txt:1"), error);
}

TEST_CASE("frequencies count documents, not occurrences") {
    RankedTerms r = rank_frequencies({{"a", "a", "b"}, {"a", "c"}, {"b"}});
    REQUIRE(r.entries.size() == 3);
    CHECK(r.entries[0].term == "a");
    CHECK(r.entries[0].frequency == 2);  // duplicate inside one document ignored
    CHECK(r.entries[1].term == "b");
    CHECK(r.entries[1].frequency == 2);
    CHECK(r.entries[2].term == "c");
    CHECK(r.entries[2].frequency == 1);
    CHECK(r.total_occurrences == 5);
}

TEST_CASE("ranks use competition numbering 1,2,2,4") {
    RankedTerms r = rank_frequencies({{"w", "x", "y", "z"},
                                      {"w", "x", "y"},
                                      {"w", "x"},
                                      {"w"}});
    // w:4 x:3 y:2 z:1 -> ranks 1..4
    CHECK(r.entries[0].rank == 1);
    CHECK(r.entries[1].rank == 2);
    RankedTerms tie = rank_frequencies({{"a", "b"}, {"a", "b"}, {"c"}});
    // a:2 b:2 c:1
    CHECK(tie.entries[0].rank == 1);
    CHECK(tie.entries[1].rank == 1);
    CHECK(tie.entries[2].rank == 3);
}

TEST_CASE("selection never splits a tie group") {
    // frequencies: 5,4,4,4,1 with target 3: the 4-group would overflow
    RankedTerms r;
    r.entries = {{"t1", 5, 1}, {"t2", 4, 2}, {"t3", 4, 2}, {"t4", 4, 2}, {"t5", 1, 5}};
    TermSet s = select_top(r, 3);
    CHECK(s.terms == std::vector<std::string>{"t1"});
    CHECK(s.threshold == 4);
    CHECK(s.threshold_description() == "more than 4");
    CHECK_FALSE(s.truncated_warning);

    TermSet s4 = select_top(r, 4);
    CHECK(s4.terms.size() == 4);
    CHECK(s4.threshold == 1);

    TermSet all = select_top(r, 5);
    CHECK(all.terms.size() == 5);
    CHECK(all.threshold == 0);
}

TEST_CASE("selection warns when the first tie group alone exceeds the target") {
    RankedTerms r;
    r.entries = {{"a", 7, 1}, {"b", 7, 1}, {"c", 7, 1}};
    TermSet s = select_top(r, 2);
    CHECK(s.terms.empty());
    CHECK(s.truncated_warning);
    CHECK(s.threshold == 7);
}

TEST_CASE("tie groups are whole: property over random frequency lists") {
    std::mt19937_64 rng(20240817);
    for (int round = 0; round < 200; ++round) {
        std::vector<Doc> docs;
        std::uniform_int_distribution<int> terms(3, 30), freq(1, 8);
        int vocab = terms(rng);
        for (int t = 0; t < vocab; ++t) {
            int f = freq(rng);
            for (int d = 0; d < f; ++d) {
                docs.push_back({"term" + std::to_string(t)});
            }
        }
        RankedTerms ranked = rank_frequencies(docs);
        std::uniform_int_distribution<std::size_t> td(1, ranked.entries.size());
        TermSet s = select_top(ranked, td(rng));
        CHECK(s.terms.size() <= s.target);
        // every kept term is strictly above the threshold, every dropped
        // one at or below it
        std::set<std::string> kept(s.terms.begin(), s.terms.end());
        for (const RankedEntry& e : ranked.entries) {
            if (kept.count(e.term)) CHECK(e.frequency > s.threshold);
            else CHECK(e.frequency <= s.threshold);
        }
    }
}

TEST_CASE("default target is one percent of the vocabulary") {
    CHECK(default_target(8722) == 87);
    CHECK(default_target(100) == 1);
    CHECK(default_target(10) == 1);  // floor of 1
    CHECK(default_target(8450) == 85);  // 84.5 rounds half away
    CHECK_THROWS_AS((void)default_target(0), error);
}

TEST_CASE("term files round trip") {
    testutil::TempDir dir("terms");
    RankedTerms r = rank_frequencies({{"a", "b"}, {"a"}});
    CHECK(ranked_terms_tsv(r) == "a\t2\t1\nb\t1\t2\n");
    TermSet s = select_top(r, 2);
    std::string path = dir.write("set.txt", term_set_lines(s));
    CHECK(load_term_set_lines(path) == std::vector<std::string>{"a", "b"});
}

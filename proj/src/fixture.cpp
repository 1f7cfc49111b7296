#include "coword/fixture.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"

#include "coword/common.hpp"

namespace coword {

namespace {

using json = nlohmann::ordered_json;

constexpr std::size_t kTopics = 4;

const std::array<std::vector<const char*>, kTopics> kKeywordPools = {{
    {"climate change", "global warming", "climate model", "sea level rise",
     "temperature", "precipitation", "modeling", "ocean circulation", "el nino",
     "ice sheet", "permafrost", "carbon cycle", "paleoclimate", "climate sensitivity"},
    {"biodiversity", "species distribution", "extinction risk", "phenology",
     "coral reef", "ecosystem services", "habitat loss", "range shift",
     "forest dieback", "invasive species", "marine ecosystem", "pollination",
     "food web", "conservation planning"},
    {"renewable energy", "carbon capture", "emission reduction", "energy policy",
     "solar power", "wind energy", "bioenergy", "carbon tax", "life cycle assessment",
     "energy efficiency", "electric vehicles", "carbon footprint", "green building",
     "smart grid"},
    {"adaptation", "vulnerability", "resilience", "risk perception", "food security",
     "water resources", "urban planning", "public health", "migration", "governance",
     "drought management", "coastal management", "stakeholder engagement",
     "climate policy"},
}};

const std::array<std::vector<const char*>, kTopics> kHashtagPools = {{
    {"#climatechange", "#globalwarming", "#climate", "#sealevel", "#arctic", "#ice",
     "#ocean", "#carbon"},
    {"#biodiversity", "#extinction", "#coralreef", "#wildlife", "#forests", "#species",
     "#ecology", "#conservation"},
    {"#renewables", "#solar", "#wind", "#energy", "#emissions", "#carbontax",
     "#cleantech", "#climateaction"},
    {"#adaptation", "#resilience", "#foodsecurity", "#water", "#health", "#cities",
     "#policy", "#COP"},
}};

const std::array<std::vector<const char*>, kTopics> kJournalPools = {{
    {"Journal of Climate", "Nature Climate Change", "Climate Dynamics",
     "Geophysical Research Letters", "Cryosphere"},
    {"Global Change Biology", "Conservation Biology", "Ecology Letters",
     "Biological Conservation", "Diversity and Distributions"},
    {"Energy Policy", "Renewable Energy", "Applied Energy",
     "Environmental Science and Technology", "Journal of Cleaner Production"},
    {"Climate Policy", "Global Environmental Change", "Regional Environmental Change",
     "Climatic Change", "Environmental Research Letters"},
}};

const char* kSharedJournals[] = {"PLOS ONE", "PNAS"};

const char* kTweetPhrases[] = {
    "New paper on %s out today",
    "Reading about %s - worth a look",
    "Our study of %s just appeared",
    "Interesting results on %s",
};

const char* kKeywordThesaurus =
    "# default keyword thesaurus: spelling variants fold into one form\n"
    "greenhouse_gas => greenhouse_gases\n"
    "modelling => modeling\n"
    "models_and_modeling => modeling\n"
    "palaeoclimate => paleoclimate\n"
    "co2 => carbon_dioxide\n"
    "lca => life_cycle_assessment\n"
    "life_cycle_assessment_(lca) => life_cycle_assessment\n";

const char* kHashtagThesaurus =
    "\\# default hashtag thesaurus: variants and translations fold into one tag\n"
    "#ANTARCTIC => #ANTARCTICA\n"
    "#BIODIVERSIDAD => #BIODIVERSITY\n"
    "#CAMBIOCLIMTICO => #CAMBIOCLIMATICO\n"
    "#COP21 => #COP\n"
    "#COP22 => #COP\n"
    "#FOREST => #FORESTS\n"
    "#OA => #OPENACCESS\n"
    "#EXTINCIÓN => #EXTINCTION\n"
    "#EXTINCTIONS => #EXTINCTION\n";

std::string paper_doi(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "10.5555/fx.%04zu", i);
    return buf;
}

std::chrono::sys_seconds tweet_time(std::size_t paper, std::size_t k) {
    using namespace std::chrono;
    // a couple of percent of tweets land after the study window
    if ((paper * 7 + k) % 53 == 0) {
        return sys_days{year{2018} / February / day{1}} + hours((paper + k) % 600);
    }
    sys_seconds base = sys_days{year{2014} / January / day{1}};
    auto offset = hours(((paper * 97 + k * 131) % (4 * 365 * 24)));
    return base + offset;
}

}  // namespace

void FixtureSpec::validate() const {
    if (papers < 50) throw error("fixture: papers must be >= 50");
    std::size_t n_tweeted = papers * 2 / 5;
    std::size_t n_tweeted2 = papers * 3 / 10;
    if (tweet_total < 2 * n_tweeted2 + (n_tweeted - n_tweeted2)) {
        throw error("fixture: tweet_total too small for the paper count");
    }
}

FixtureData make_fixture(const FixtureSpec& spec) {
    spec.validate();
    FixtureData data;
    const std::size_t n = spec.papers;
    const std::size_t n_tweeted = n * 2 / 5;
    const std::size_t n_tweeted2 = n * 3 / 10;
    const std::size_t n_news = n * 2 / 25;

    Rng kw_rng(derive_seed(spec.seed, "fixture-keywords"));
    Rng jr_rng(derive_seed(spec.seed, "fixture-journals"));
    Rng ct_rng(derive_seed(spec.seed, "fixture-counts"));
    Rng tw_rng(derive_seed(spec.seed, "fixture-tweets"));

    // publications
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t topic = i % kTopics;
        PublicationRecord rec;
        rec.doi = paper_doi(i);
        rec.year = 2012 + static_cast<int>((i * 7) % 6);
        if (jr_rng.below(5) == 0) {
            rec.journal = kSharedJournals[jr_rng.below(2)];
        } else {
            const auto& pool = kJournalPools[topic];
            rec.journal = pool[jr_rng.below(pool.size())];
        }
        if (kw_rng.below(20) != 0) {  // 5% of papers carry no keywords
            const auto& pool = kKeywordPools[topic];
            std::size_t want = 4 + kw_rng.below(3);
            std::vector<std::size_t> picked;
            while (picked.size() < want) {
                std::size_t p = kw_rng.below(pool.size());
                if (std::find(picked.begin(), picked.end(), p) == picked.end()) {
                    picked.push_back(p);
                }
            }
            for (std::size_t p : picked) {
                std::string kw = pool[p];
                // spelling variants the default thesaurus folds back
                if (kw == "modeling" && kw_rng.below(3) == 0) kw = "modelling";
                if (kw == "life cycle assessment" && kw_rng.below(3) == 0) {
                    kw = "life cycle assessment (lca)";
                }
                rec.keywords.push_back(std::move(kw));
            }
            if (kw_rng.below(100) < 15) {  // cross-topic borrowing ties topics together
                const auto& other = kKeywordPools[(topic + 1) % kTopics];
                rec.keywords.back() = other[kw_rng.below(other.size())];
            }
        }
        rec.title = "Fixture study " + std::to_string(i) + " (" +
                    (rec.keywords.empty() ? std::string("uncatalogued")
                                          : rec.keywords.front()) +
                    ")";  // optional in the schema, always set here
        data.publications.push_back(std::move(rec));
    }

    // tweet counts per tweeted paper, padded to the exact requested total
    std::vector<std::int64_t> counts(n_tweeted, 0);
    std::vector<std::int64_t> floors(n_tweeted, 1);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < n_tweeted; ++i) {
        if (i < n_tweeted2) {
            floors[i] = 2;
            counts[i] = 2 + static_cast<std::int64_t>(ct_rng.below(16));
        } else {
            counts[i] = 1 + static_cast<std::int64_t>(ct_rng.below(6));
        }
        if (i < 10) counts[i] *= 8;  // a few heavily tweeted papers
        sum += counts[i];
    }
    std::int64_t want_total = static_cast<std::int64_t>(spec.tweet_total);
    for (std::size_t k = 0; sum < want_total; k = (k + 1) % n_tweeted) {
        ++counts[k];
        ++sum;
    }
    for (std::size_t k = 0; sum > want_total; k = (k + 1) % n_tweeted) {
        if (counts[k] > floors[k]) {
            --counts[k];
            --sum;
        }
    }

    // altmetric records and tweets
    for (std::size_t i = 0; i < n_tweeted; ++i) {
        std::size_t topic = i % kTopics;
        AltmetricRecord alt;
        alt.doi = paper_doi(i);
        alt.tweet_count = counts[i];
        if (i < n_tweeted2) {
            alt.account_count =
                std::min<std::int64_t>(counts[i], 2 + static_cast<std::int64_t>(ct_rng.below(3)));
        } else {
            alt.account_count = 1;
        }
        alt.news_count = i < n_news ? 1 + static_cast<std::int64_t>(ct_rng.below(3)) : 0;

        const PublicationRecord& pub = data.publications[i];
        std::string subject =
            pub.keywords.empty() ? std::string("this work") : pub.keywords.front();
        for (std::int64_t k = 0; k < counts[i]; ++k) {
            TweetRecord tw;
            tw.doi = alt.doi;
            tw.author = "user" + std::to_string((i * 131 + static_cast<std::size_t>(k) * 17) % 211);
            tw.url = "https://twitter.example/" + tw.author + "/status/" +
                     std::to_string(i * 10000 + static_cast<std::size_t>(k));
            tw.timestamp = tweet_time(i, static_cast<std::size_t>(k));
            tw.year = utc_year(tw.timestamp);

            char text[256];
            std::snprintf(text, sizeof(text), kTweetPhrases[tw_rng.below(4)],
                          subject.c_str());
            tw.text = text;
            std::size_t tag_draw = tw_rng.below(100);
            std::size_t tags = tag_draw < 25 ? 0 : tag_draw < 60 ? 1 : tag_draw < 90 ? 2 : 3;
            for (std::size_t t = 0; t < tags; ++t) {
                const auto& pool =
                    tw_rng.below(10) == 0 ? kHashtagPools[tw_rng.below(kTopics)]
                                          : kHashtagPools[topic];
                std::string tag = pool[tw_rng.below(pool.size())];
                if (tag == "#COP") {
                    std::size_t variant = tw_rng.below(3);
                    if (variant == 1) tag = "#COP21";
                    if (variant == 2) tag = "#COP22";
                }
                tw.text += " " + tag;
            }
            if (tw_rng.below(8) == 0) {
                tw.text += " https://t.example/s#" + std::to_string(i % 97);
            }
            alt.tweet_urls.push_back(tw.url);
            data.tweets.push_back(std::move(tw));
        }
        data.altmetrics.push_back(std::move(alt));
    }

    // serialized forms
    {
        std::ostringstream out;
        for (const PublicationRecord& p : data.publications) {
            json obj;
            obj["doi"] = p.doi;
            obj["year"] = p.year;
            obj["journal"] = p.journal;
            if (!p.keywords.empty()) {
                std::string joined;
                for (std::size_t k = 0; k < p.keywords.size(); ++k) {
                    if (k) joined += "; ";
                    joined += p.keywords[k];
                }
                obj["keywords"] = joined;
            }
            if (p.title) obj["title"] = *p.title;
            out << obj.dump() << '\n';
        }
        data.publications_jsonl = out.str();
    }
    {
        std::ostringstream out;
        for (const AltmetricRecord& a : data.altmetrics) {
            json obj;
            obj["doi"] = a.doi;
            obj["tweet_count"] = a.tweet_count;
            obj["account_count"] = a.account_count;
            obj["news_count"] = a.news_count;
            obj["tweet_urls"] = a.tweet_urls;
            out << obj.dump() << '\n';
        }
        data.altmetric_jsonl = out.str();
    }
    {
        std::ostringstream out;
        for (const TweetRecord& t : data.tweets) out << t.url << '\t' << t.doi << '\n';
        data.manifest_tsv = out.str();
    }
    data.tweet_store_jsonl = tweet_store_lines(data.tweets);
    data.keyword_thesaurus = kKeywordThesaurus;
    data.hashtag_thesaurus = kHashtagThesaurus;

    {
        json cfg;
        cfg["publications"] = "publications.jsonl";
        cfg["altmetric"] = "altmetric.jsonl";
        cfg["tweet_store"] = "tweet_store.jsonl";
        cfg["keyword_thesaurus"] = "keyword_thesaurus.txt";
        cfg["hashtag_thesaurus"] = "hashtag_thesaurus.txt";
        cfg["year_from"] = 2012;
        cfg["year_to"] = 2017;
        cfg["min_accounts"] = 2;
        cfg["min_news"] = 1;
        cfg["keyword_target"] = 48;
        cfg["journal_top_n"] = 8;
        cfg["histogram_lo"] = 1;
        cfg["histogram_hi"] = 30;
        cfg["seed"] = 0;
        cfg["cluster"] = {{"target_clusters", 4},
                          {"gamma_min", 0.0},
                          {"gamma_max", 1.0},
                          {"max_probes", 32},
                          {"min_cluster_size", 3},
                          {"random_starts", 10},
                          {"iterations", 10},
                          {"merge_small", true},
                          {"threads", 1}};
        cfg["layout"] = {{"scale", 1.0},
                         {"max_iterations", 20000},
                         {"tolerance", 1e-4},
                         {"per_component", true}};
        data.config_json = cfg.dump(2) + "\n";
    }
    return data;
}

std::vector<std::string> write_fixture(const FixtureSpec& spec, const std::string& dir) {
    FixtureData data = make_fixture(spec);
    std::filesystem::create_directories(dir);
    std::vector<std::pair<std::string, const std::string*>> files = {
        {"publications.jsonl", &data.publications_jsonl},
        {"altmetric.jsonl", &data.altmetric_jsonl},
        {"manifest.tsv", &data.manifest_tsv},
        {"tweet_store.jsonl", &data.tweet_store_jsonl},
        {"keyword_thesaurus.txt", &data.keyword_thesaurus},
        {"hashtag_thesaurus.txt", &data.hashtag_thesaurus},
        {"config.json", &data.config_json},
    };
    std::vector<std::string> written;
    for (const auto& [name, content] : files) {
        std::string path = (std::filesystem::path(dir) / name).string();
        write_file_atomic(path, *content);
        written.push_back(path);
    }
    return written;
}

}  // namespace coword

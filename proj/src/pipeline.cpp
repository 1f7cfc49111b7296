#include "coword/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <set>
#include <sstream>

#include "json.hpp"

#include "coword/common.hpp"
#include "coword/netbuild.hpp"
#include "coword/report.hpp"
#include "coword/terms.hpp"

namespace coword {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string resolve(const fs::path& base, const std::string& path) {
    if (path.empty()) return path;
    fs::path p(path);
    if (p.is_absolute()) return p.lexically_normal().string();
    return (base / p).lexically_normal().string();
}

void require_key_set(const json& obj, const std::set<std::string>& known,
                     const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (!known.count(key)) {
            throw validation_error("config: unknown key '" + key + "' in " + where);
        }
    }
}

std::string out_path(const std::string& out_dir, const std::string& name) {
    return (fs::path(out_dir) / name).string();
}

Thesaurus load_thesaurus_or_empty(const std::string& path, TermKind kind) {
    if (path.empty()) return {};
    return Thesaurus::load(path, kind);
}

}  // namespace

PipelineConfig PipelineConfig::load(const std::string& path) {
    std::string content;
    try {
        content = read_file(path);
    } catch (const error& e) {
        throw validation_error(e.what());
    }
    json obj = json::parse(content, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
        throw validation_error("config: " + path + " is not a JSON object");
    }
    require_key_set(obj,
                    {"publications", "altmetric", "tweet_store", "manifest", "endpoint",
                     "keyword_thesaurus", "hashtag_thesaurus", "year_from", "year_to",
                     "min_accounts", "min_news", "keyword_target", "journal_top_n",
                     "histogram_lo", "histogram_hi", "seed", "cluster", "layout",
                     "fetch"},
                    "top level");

    PipelineConfig cfg;
    fs::path base = fs::path(path).parent_path();
    auto get_string = [&](const char* key) -> std::string {
        if (!obj.contains(key)) return {};
        if (!obj[key].is_string()) {
            throw validation_error(std::string("config: ") + key + " must be a string");
        }
        return obj[key].get<std::string>();
    };
    auto get_int = [&](const json& from, const char* key, auto fallback) {
        using T = decltype(fallback);
        if (!from.contains(key)) return fallback;
        if (!from[key].is_number_integer()) {
            throw validation_error(std::string("config: ") + key + " must be an integer");
        }
        return from[key].get<T>();
    };
    auto get_double = [&](const json& from, const char* key, double fallback) {
        if (!from.contains(key)) return fallback;
        if (!from[key].is_number()) {
            throw validation_error(std::string("config: ") + key + " must be a number");
        }
        return from[key].get<double>();
    };

    cfg.publications = resolve(base, get_string("publications"));
    cfg.altmetric = resolve(base, get_string("altmetric"));
    cfg.tweet_store = resolve(base, get_string("tweet_store"));
    cfg.manifest = resolve(base, get_string("manifest"));
    cfg.endpoint = get_string("endpoint");
    cfg.keyword_thesaurus = resolve(base, get_string("keyword_thesaurus"));
    cfg.hashtag_thesaurus = resolve(base, get_string("hashtag_thesaurus"));
    cfg.year_from = get_int(obj, "year_from", 0);
    cfg.year_to = get_int(obj, "year_to", 0);
    cfg.segments.min_accounts = get_int(obj, "min_accounts", std::int64_t{2});
    cfg.segments.min_news = get_int(obj, "min_news", std::int64_t{1});
    cfg.keyword_target = get_int(obj, "keyword_target", std::size_t{0});
    cfg.journal_top_n = get_int(obj, "journal_top_n", std::size_t{20});
    cfg.histogram_lo = get_int(obj, "histogram_lo", std::int64_t{1});
    cfg.histogram_hi = get_int(obj, "histogram_hi", std::int64_t{30});
    cfg.seed = get_int(obj, "seed", std::uint64_t{0});

    if (obj.contains("cluster")) {
        const json& c = obj["cluster"];
        if (!c.is_object()) throw validation_error("config: cluster must be an object");
        require_key_set(c,
                        {"target_clusters", "resolution", "gamma_min", "gamma_max",
                         "max_probes", "min_cluster_size", "random_starts", "iterations",
                         "merge_small", "threads"},
                        "cluster");
        cfg.target_clusters = get_int(c, "target_clusters", std::size_t{0});
        cfg.cluster.resolution = get_double(c, "resolution", cfg.cluster.resolution);
        cfg.gamma_min = get_double(c, "gamma_min", cfg.gamma_min);
        cfg.gamma_max = get_double(c, "gamma_max", cfg.gamma_max);
        cfg.max_probes = get_int(c, "max_probes", cfg.max_probes);
        cfg.cluster.min_cluster_size =
            get_int(c, "min_cluster_size", cfg.cluster.min_cluster_size);
        cfg.cluster.random_starts = get_int(c, "random_starts", cfg.cluster.random_starts);
        cfg.cluster.iterations = get_int(c, "iterations", cfg.cluster.iterations);
        if (c.contains("merge_small")) {
            if (!c["merge_small"].is_boolean()) {
                throw validation_error("config: merge_small must be a boolean");
            }
            cfg.cluster.merge_small = c["merge_small"].get<bool>();
        }
        cfg.cluster.threads = get_int(c, "threads", cfg.cluster.threads);
    }

    if (obj.contains("layout")) {
        const json& l = obj["layout"];
        if (!l.is_object()) throw validation_error("config: layout must be an object");
        require_key_set(l, {"scale", "max_iterations", "tolerance", "per_component"},
                        "layout");
        cfg.layout.scale = get_double(l, "scale", cfg.layout.scale);
        cfg.layout.max_iterations = get_int(l, "max_iterations", cfg.layout.max_iterations);
        cfg.layout.tolerance = get_double(l, "tolerance", cfg.layout.tolerance);
        if (l.contains("per_component")) {
            if (!l["per_component"].is_boolean()) {
                throw validation_error("config: per_component must be a boolean");
            }
            cfg.layout.per_component = l["per_component"].get<bool>();
        }
    }

    if (obj.contains("fetch")) {
        const json& f = obj["fetch"];
        if (!f.is_object()) throw validation_error("config: fetch must be an object");
        require_key_set(f, {"max_parallel", "rate_limit", "max_retries", "timeout_ms"},
                        "fetch");
        cfg.fetch.max_parallel = get_int(f, "max_parallel", cfg.fetch.max_parallel);
        cfg.fetch.rate_limit = get_double(f, "rate_limit", cfg.fetch.rate_limit);
        cfg.fetch.max_retries = get_int(f, "max_retries", cfg.fetch.max_retries);
        cfg.fetch.timeout = std::chrono::milliseconds(
            get_int(f, "timeout_ms", cfg.fetch.timeout.count()));
    }
    cfg.validate();
    return cfg;
}

void PipelineConfig::validate() const {
    auto require_file = [](const std::string& path, const char* what) {
        if (path.empty()) {
            throw validation_error(std::string("config: missing ") + what + " path");
        }
        if (!fs::exists(path)) {
            throw validation_error(std::string("config: ") + what + " not found: " + path);
        }
    };
    require_file(publications, "publications");
    require_file(altmetric, "altmetric");
    if (tweet_store.empty() == manifest.empty()) {
        throw validation_error(
            "config: exactly one of tweet_store and manifest must be set");
    }
    if (!tweet_store.empty()) require_file(tweet_store, "tweet_store");
    if (!manifest.empty()) require_file(manifest, "manifest");
    if (!keyword_thesaurus.empty()) require_file(keyword_thesaurus, "keyword_thesaurus");
    if (!hashtag_thesaurus.empty()) require_file(hashtag_thesaurus, "hashtag_thesaurus");
    if (year_from == 0 || year_to == 0 || year_from > year_to) {
        throw validation_error("config: invalid year window");
    }
    if (segments.min_accounts < 1 || segments.min_news < 1) {
        throw validation_error("config: segment thresholds must be >= 1");
    }
    if (keyword_target < 1) throw validation_error("config: keyword_target must be >= 1");
    if (journal_top_n < 1) throw validation_error("config: journal_top_n must be >= 1");
    if (histogram_lo < 0 || histogram_hi < histogram_lo) {
        throw validation_error("config: invalid histogram range");
    }
    try {
        cluster.validate();
        layout.validate();
        fetch.validate();
    } catch (const error& e) {
        throw validation_error(std::string("config: ") + e.what());
    }
    if (target_clusters > 0) {
        if (!(gamma_min >= 0.0) || !(gamma_max >= gamma_min)) {
            throw validation_error("config: invalid resolution search range");
        }
        if (max_probes < 1) throw validation_error("config: max_probes must be >= 1");
    }
}

std::uint64_t stage_seed(const PipelineConfig& cfg, const std::string& label) {
    return derive_seed(cfg.seed, label);
}

namespace stage {

void ingest(const PipelineConfig& cfg, const std::string& out_dir) {
    YearWindow window{cfg.year_from, cfg.year_to};
    PublicationParse pubs = parse_publications_file(cfg.publications, window);
    AltmetricParse alts = parse_altmetric_links_file(cfg.altmetric);
    CorpusStats stats = validate_corpus(pubs, alts);
    write_file_atomic(out_path(out_dir, "corpus_stats.json"), corpus_stats_json(stats));
}

void tweets(const PipelineConfig& cfg, const std::string& out_dir) {
    std::vector<TweetRecord> records;
    if (!cfg.tweet_store.empty()) {
        records = load_tweet_store(cfg.tweet_store);
    } else {
        std::vector<ManifestEntry> entries = load_manifest(cfg.manifest);
        std::vector<std::string> urls;
        urls.reserve(entries.size());
        for (const ManifestEntry& e : entries) urls.push_back(e.url);
        std::vector<FetchResult> results = fetch_manifest(urls, cfg.fetch, cfg.endpoint);
        AvailabilityStats stats = availability_stats(results);
        write_file_atomic(out_path(out_dir, "availability.json"),
                          availability_stats_json(stats));
        for (std::size_t i = 0; i < results.size(); ++i) {
            if (results[i].status == FetchStatus::ok) {
                records.push_back(
                    extract_tweet(*results[i].body, entries[i].url, entries[i].doi));
            }
        }
    }
    YearFilterResult filtered =
        filter_by_year(std::move(records), cfg.year_from, cfg.year_to);
    write_file_atomic(out_path(out_dir, "tweets.jsonl"),
                      tweet_store_lines(filtered.retained));
}

void segments(const PipelineConfig& cfg, const std::string& out_dir) {
    YearWindow window{cfg.year_from, cfg.year_to};
    PublicationParse pubs = parse_publications_file(cfg.publications, window);
    AltmetricParse alts = parse_altmetric_links_file(cfg.altmetric);
    Segmentation seg = classify_papers(pubs.records, alts.records, cfg.segments);
    write_file_atomic(out_path(out_dir, "segments.tsv"), segmentation_tsv(seg));

    Thesaurus kw = load_thesaurus_or_empty(cfg.keyword_thesaurus, TermKind::keyword);
    for (Segment s : kSegments) {
        TermCorpus corpus = keyword_corpus(seg.of(s), pubs.records, kw);
        write_file_atomic(out_path(out_dir, "keywords_" + segment_name(s) + ".txt"),
                          corpus_lines(corpus));
    }

    Thesaurus ht = load_thesaurus_or_empty(cfg.hashtag_thesaurus, TermKind::hashtag);
    std::vector<TweetRecord> tweets = load_tweet_store(out_path(out_dir, "tweets.jsonl"));
    TermCorpus hashtags = hashtag_corpus(tweets, seg.of(Segment::tweeted2), ht);
    write_file_atomic(out_path(out_dir, "hashtags_tweeted2.txt"), corpus_lines(hashtags));
    HashtagStats stats = hashtag_stats(hashtags, alts.records, pubs.records);
    write_file_atomic(out_path(out_dir, "hashtag_stats.json"), hashtag_stats_json(stats));
}

void rank(const PipelineConfig& cfg, const std::string& out_dir) {
    for (Segment s : kSegments) {
        std::string name = segment_name(s);
        auto docs = load_corpus_lines(out_path(out_dir, "keywords_" + name + ".txt"));
        RankedTerms ranked = rank_frequencies(docs);
        write_file_atomic(out_path(out_dir, "freq_" + name + ".tsv"),
                          ranked_terms_tsv(ranked));
        TermSet selected = select_top(ranked, cfg.keyword_target);
        write_file_atomic(out_path(out_dir, "terms_" + name + ".txt"),
                          term_set_lines(selected));
    }
}

void networks(const PipelineConfig& cfg, const std::string& out_dir) {
    for (Segment s : kSegments) {
        std::string name = segment_name(s);
        auto docs = load_corpus_lines(out_path(out_dir, "keywords_" + name + ".txt"));
        auto terms = load_term_set_lines(out_path(out_dir, "terms_" + name + ".txt"));
        CoocGraph graph = build_graph(docs, terms, std::nullopt);
        write_pajek_file(graph, out_path(out_dir, "net_" + name + ".paj"));
        write_file_atomic(out_path(out_dir, "net_" + name + "_counts.tsv"),
                          write_counts_tsv(graph));
    }
    (void)cfg;
}

void clusters(const PipelineConfig& cfg, const std::string& out_dir) {
    for (Segment s : kSegments) {
        std::string name = segment_name(s);
        CoocGraph graph = read_pajek_file(out_path(out_dir, "net_" + name + ".paj"));
        ClusterParams params = cfg.cluster;
        params.seed = stage_seed(cfg, "cluster-" + name);

        ClusterAssignment assignment;
        double resolution = params.resolution;
        std::string warning;
        if (cfg.target_clusters > 0) {
            TuneResult tuned = tune_resolution(graph, cfg.target_clusters, params,
                                               cfg.gamma_min, cfg.gamma_max,
                                               cfg.max_probes);
            assignment = std::move(tuned.assignment);
            resolution = tuned.resolution;
            warning = tuned.warning;
        } else {
            assignment = cluster(graph, params);
        }
        write_file_atomic(out_path(out_dir, "clusters_" + name + ".tsv"),
                          cluster_tsv(graph, assignment));
        json info;
        info["resolution"] = resolution;
        info["clusters"] = assignment.cluster_count;
        info["quality"] = assignment.quality;
        info["seed"] = params.seed;
        if (!warning.empty()) info["warning"] = warning;
        write_file_atomic(out_path(out_dir, "resolution_" + name + ".json"),
                          info.dump(2) + "\n");
    }
}

void layouts(const PipelineConfig& cfg, const std::string& out_dir) {
    for (Segment s : kSegments) {
        std::string name = segment_name(s);
        CoocGraph graph = read_pajek_file(out_path(out_dir, "net_" + name + ".paj"));
        apply_counts_file(graph, out_path(out_dir, "net_" + name + "_counts.tsv"));
        std::vector<int> labels = load_cluster_tsv(
            graph, read_file(out_path(out_dir, "clusters_" + name + ".tsv")));
        LayoutOptions options = cfg.layout;
        options.seed = stage_seed(cfg, "layout-" + name);
        Layout layout = layout_kk(graph, options);
        write_map_file_to(graph, layout.positions, labels,
                          out_path(out_dir, "map_" + name + ".tsv"));
    }
}

void render(const PipelineConfig& cfg, const std::string& out_dir) {
    for (Segment s : kSegments) {
        std::string name = segment_name(s);
        CoocGraph graph = read_pajek_file(out_path(out_dir, "net_" + name + ".paj"));
        apply_counts_file(graph, out_path(out_dir, "net_" + name + "_counts.tsv"));
        std::vector<MapRow> rows = read_map_file(out_path(out_dir, "map_" + name + ".tsv"));
        if (rows.size() != graph.nodes.size()) {
            throw error("map file does not cover the network: " + name);
        }
        std::vector<NodePlacement> positions(rows.size());
        std::vector<int> labels(rows.size());
        for (const MapRow& row : rows) {
            if (row.id < 1 || static_cast<std::size_t>(row.id) > rows.size()) {
                throw error("map file id out of range in segment " + name);
            }
            positions[static_cast<std::size_t>(row.id) - 1] = {row.x, row.y};
            labels[static_cast<std::size_t>(row.id) - 1] = row.cluster;
        }
        write_file_atomic(out_path(out_dir, "network_" + name + ".svg"),
                          render_network_svg(graph, positions, labels));
    }
    (void)cfg;
}

void reports(const PipelineConfig& cfg, const std::string& out_dir) {
    std::vector<std::pair<std::string, std::vector<std::string>>> sets;
    for (Segment s : kSegments) {
        std::string name = segment_name(s);
        sets.emplace_back(name,
                          load_term_set_lines(out_path(out_dir, "terms_" + name + ".txt")));
    }
    write_file_atomic(out_path(out_dir, "overlap.csv"), overlap_csv(overlap_table(sets)));

    YearWindow window{cfg.year_from, cfg.year_to};
    PublicationParse pubs = parse_publications_file(cfg.publications, window);
    Segmentation seg = load_segmentation_tsv(out_path(out_dir, "segments.tsv"));
    JournalImportance ji = journal_importance(seg, pubs.records, cfg.journal_top_n);
    write_file_atomic(out_path(out_dir, "journals.csv"), journal_importance_csv(ji));

    HashtagStats stats = load_hashtag_stats_json(out_path(out_dir, "hashtag_stats.json"));
    HashtagHistogram hist = hashtag_histogram(stats, cfg.histogram_lo, cfg.histogram_hi);
    write_file_atomic(out_path(out_dir, "hashtag_hist.csv"), histogram_csv(hist));
    write_file_atomic(out_path(out_dir, "hashtag_hist.svg"), histogram_svg(hist));
}

}  // namespace stage

std::string ArtifactManifest::json() const {
    nlohmann::json files = nlohmann::json::array();
    for (const Entry& e : entries) {
        files.push_back({{"path", e.path}, {"fnv64", e.fnv64}});
    }
    nlohmann::json root;
    root["files"] = files;
    return root.dump(2) + "\n";
}

const ArtifactManifest::Entry* ArtifactManifest::find(const std::string& path) const {
    for (const Entry& e : entries) {
        if (e.path == path) return &e;
    }
    return nullptr;
}

ArtifactManifest load_artifact_manifest(const std::string& path) {
    json obj = json::parse(read_file(path), nullptr, false);
    if (obj.is_discarded() || !obj.contains("files") || !obj["files"].is_array()) {
        throw error("artifact manifest: malformed " + path);
    }
    ArtifactManifest manifest;
    for (const auto& f : obj["files"]) {
        manifest.entries.push_back(
            {f.at("path").get<std::string>(), f.at("fnv64").get<std::string>()});
    }
    return manifest;
}

ArtifactManifest run_pipeline(const PipelineConfig& cfg, const std::string& out_dir) {
    cfg.validate();
    fs::create_directories(out_dir);

    const std::pair<const char*, void (*)(const PipelineConfig&, const std::string&)>
        stages[] = {
            {"ingest", stage::ingest},     {"tweets", stage::tweets},
            {"segments", stage::segments}, {"rank", stage::rank},
            {"networks", stage::networks}, {"clusters", stage::clusters},
            {"layouts", stage::layouts},   {"render", stage::render},
            {"reports", stage::reports},
        };
    for (const auto& [name, fn] : stages) {
        try {
            fn(cfg, out_dir);
        } catch (const std::exception& e) {
            throw error(std::string("stage ") + name + ": " + e.what());
        }
    }

    std::vector<std::string> names = {"corpus_stats.json", "tweets.jsonl",
                                      "segments.tsv",      "hashtags_tweeted2.txt",
                                      "hashtag_stats.json"};
    if (cfg.tweet_store.empty()) names.push_back("availability.json");
    for (Segment s : kSegments) {
        std::string n = segment_name(s);
        for (const char* pattern :
             {"keywords_%s.txt", "freq_%s.tsv", "terms_%s.txt", "net_%s.paj",
              "net_%s_counts.tsv", "clusters_%s.tsv", "resolution_%s.json",
              "map_%s.tsv", "network_%s.svg"}) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), pattern, n.c_str());
            names.push_back(buf);
        }
    }
    names.push_back("overlap.csv");
    names.push_back("journals.csv");
    names.push_back("hashtag_hist.csv");
    names.push_back("hashtag_hist.svg");
    std::sort(names.begin(), names.end());

    ArtifactManifest manifest;
    for (const std::string& name : names) {
        manifest.entries.push_back({name, fnv1a64_hex(read_file(out_path(out_dir, name)))});
    }
    write_file_atomic(out_path(out_dir, "manifest.json"), manifest.json());
    return manifest;
}

}  // namespace coword

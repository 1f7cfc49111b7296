#include "coword/cli.hpp"

#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "coword/cluster.hpp"
#include "coword/common.hpp"
#include "coword/fixture.hpp"
#include "coword/harvest.hpp"
#include "coword/ingest.hpp"
#include "coword/layout.hpp"
#include "coword/netbuild.hpp"
#include "coword/pipeline.hpp"
#include "coword/report.hpp"
#include "coword/segment.hpp"
#include "coword/terms.hpp"

namespace coword {

namespace fs = std::filesystem;

namespace {

std::optional<YearWindow> year_window(int from, int to) {
    if (from == 0 && to == 0) return std::nullopt;
    if (from == 0 || to == 0 || from > to) {
        throw validation_error("--year-from/--year-to must be given together, from <= to");
    }
    return YearWindow{from, to};
}

std::string stem_of(const std::string& path) {
    return fs::path(path).stem().string();
}

struct IngestArgs {
    std::string publications, altmetric, out;
    int year_from = 0, year_to = 0;
};

struct HarvestArgs {
    std::string manifest, out_dir, endpoint;
    FetchPolicy policy;
    long timeout_ms = 5000;
    int year_from = 0, year_to = 0;
};

struct SegmentArgs {
    std::string publications, altmetric, out;
    std::int64_t min_accounts = 2, min_news = 1;
    int year_from = 0, year_to = 0;
};

struct RankArgs {
    std::string corpus, freq_out, terms_out;
    std::size_t target = 0;
};

struct BuildNetArgs {
    std::string corpus, terms, out, counts_out;
    double min_edge_weight = 0.0;
    bool has_min_edge = false;
};

struct ClusterArgs {
    std::string in, out, info_out;
    ClusterParams params;
    std::size_t target_clusters = 0;
    double gamma_min = 0.0, gamma_max = 1.0;
    std::size_t max_probes = 32;
};

struct LayoutArgs {
    std::string in, clusters, counts, out;
    LayoutOptions options;
};

struct OverlapArgs {
    std::vector<std::string> sets;
    std::vector<std::string> names;
    std::string out = "overlap.csv";
};

struct JournalArgs {
    std::string segments, publications, out = "journals.csv";
    std::size_t top_n = 20;
    int year_from = 0, year_to = 0;
};

struct HistArgs {
    std::string stats, out_csv = "hashtag_hist.csv", out_svg = "hashtag_hist.svg";
    std::int64_t lo = 1, hi = 30;
};

struct RenderArgs {
    std::string in, map, counts, out;
};

struct RunArgs {
    std::string config, out_dir;
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::size_t threads = 0;
};

struct FixtureArgs {
    std::string out_dir;
    FixtureSpec spec;
};

void do_ingest(const IngestArgs& a) {
    auto window = year_window(a.year_from, a.year_to);
    PublicationParse pubs = parse_publications_file(a.publications, window);
    AltmetricParse alts = parse_altmetric_links_file(a.altmetric);
    CorpusStats stats = validate_corpus(pubs, alts);
    std::cout << corpus_stats_summary(stats);
    std::cout << "publication lines rejected: " << pubs.report.rejections.size() << "\n";
    std::cout << "altmetric lines rejected: " << alts.report.rejections.size() << "\n";
    std::cout << "tweet urls dropped: " << alts.report.dropped_urls << "\n";
    if (auto cov = alts.url_coverage()) {
        std::cout << "tweet url coverage: " << format_percent(*cov, 1) << "\n";
    }
    if (!a.out.empty()) write_file_atomic(a.out, corpus_stats_json(stats));
}

void do_harvest(const HarvestArgs& a) {
    FetchPolicy policy = a.policy;
    policy.timeout = std::chrono::milliseconds(a.timeout_ms);
    policy.validate();
    std::vector<ManifestEntry> entries = load_manifest(a.manifest);
    std::vector<std::string> urls;
    urls.reserve(entries.size());
    for (const ManifestEntry& e : entries) urls.push_back(e.url);

    fs::create_directories(a.out_dir);
    std::vector<FetchResult> results = fetch_manifest(urls, policy, a.endpoint);
    std::vector<TweetRecord> tweets;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (results[i].status != FetchStatus::ok) continue;
        std::string body_name = fnv1a64_hex(entries[i].url) + ".html";
        write_file_atomic((fs::path(a.out_dir) / body_name).string(), *results[i].body);
        tweets.push_back(extract_tweet(*results[i].body, entries[i].url, entries[i].doi));
    }
    if (a.year_from != 0 || a.year_to != 0) {
        auto window = year_window(a.year_from, a.year_to);
        YearFilterResult filtered =
            filter_by_year(std::move(tweets), window->from, window->to);
        std::cout << "tweets outside year window: " << filtered.removed << "\n";
        tweets = std::move(filtered.retained);
    }
    AvailabilityStats stats = availability_stats(results);
    write_file_atomic((fs::path(a.out_dir) / "availability.json").string(),
                      availability_stats_json(stats));
    write_file_atomic((fs::path(a.out_dir) / "tweets.jsonl").string(),
                      tweet_store_lines(tweets));
    std::cout << "fetched " << stats.ok << "/" << stats.total << " pages, " << stats.dead
              << " dead, " << stats.failed << " failed\n";
    std::cout << "dead fraction: " << format_percent(stats.dead_fraction(), 1) << "\n";
}

void do_segment(const SegmentArgs& a) {
    auto window = year_window(a.year_from, a.year_to);
    PublicationParse pubs = parse_publications_file(a.publications, window);
    AltmetricParse alts = parse_altmetric_links_file(a.altmetric);
    SegmentRule rule{a.min_accounts, a.min_news};
    Segmentation seg = classify_papers(pubs.records, alts.records, rule);
    write_file_atomic(a.out, segmentation_tsv(seg));
    for (Segment s : kSegments) {
        std::cout << segment_name(s) << ": " << seg.size(s) << " ("
                  << format_percent(seg.fraction(s), 1) << ")\n";
    }
    std::cout << "tweeted at least once: " << seg.tweeted_count << " ("
              << format_percent(seg.tweeted_fraction(), 1) << ")\n";
}

void do_rank(const RankArgs& a) {
    auto docs = load_corpus_lines(a.corpus);
    RankedTerms ranked = rank_frequencies(docs);
    std::size_t target = a.target > 0 ? a.target : default_target(ranked.entries.size());
    TermSet selected = select_top(ranked, target);
    std::string freq_out = a.freq_out.empty() ? a.corpus + ".freq.tsv" : a.freq_out;
    std::string terms_out = a.terms_out.empty() ? a.corpus + ".terms.txt" : a.terms_out;
    write_file_atomic(freq_out, ranked_terms_tsv(ranked));
    write_file_atomic(terms_out, term_set_lines(selected));
    std::cout << "vocabulary: " << ranked.entries.size() << " terms, "
              << ranked.total_occurrences << " occurrences\n";
    std::cout << "selected " << selected.terms.size() << " terms (target " << target
              << ", " << selected.threshold_description() << ")\n";
    if (selected.truncated_warning) {
        std::cout << "warning: leading tie group exceeds the target; selection is empty\n";
    }
}

void do_build_net(const BuildNetArgs& a) {
    auto docs = load_corpus_lines(a.corpus);
    auto terms = load_term_set_lines(a.terms);
    std::optional<double> min_edge;
    if (a.has_min_edge) min_edge = a.min_edge_weight;
    CoocGraph graph = build_graph(docs, terms, min_edge);
    write_pajek_file(graph, a.out);
    std::string counts_out = a.counts_out.empty() ? a.out + ".counts.tsv" : a.counts_out;
    write_file_atomic(counts_out, write_counts_tsv(graph));
    std::cout << "network: " << graph.nodes.size() << " nodes, " << graph.edges.size()
              << " edges\n";
}

void do_cluster(const ClusterArgs& a) {
    CoocGraph graph = read_pajek_file(a.in);
    ClusterAssignment assignment;
    double resolution = a.params.resolution;
    std::string warning;
    if (a.target_clusters > 0) {
        TuneResult tuned = tune_resolution(graph, a.target_clusters, a.params,
                                           a.gamma_min, a.gamma_max, a.max_probes);
        assignment = std::move(tuned.assignment);
        resolution = tuned.resolution;
        warning = tuned.warning;
    } else {
        assignment = cluster(graph, a.params);
    }
    write_file_atomic(a.out, cluster_tsv(graph, assignment));
    std::cout << "resolution " << format_fixed(resolution, 6) << "\n";
    std::cout << "clusters " << assignment.cluster_count << "\n";
    std::cout << "quality " << format_fixed(assignment.quality, 6) << "\n";
    if (!warning.empty()) std::cout << "warning: " << warning << "\n";
}

void do_layout(const LayoutArgs& a) {
    CoocGraph graph = read_pajek_file(a.in);
    if (!a.counts.empty()) apply_counts_file(graph, a.counts);
    std::vector<int> labels = load_cluster_tsv(graph, read_file(a.clusters));
    Layout layout = layout_kk(graph, a.options);
    write_map_file_to(graph, layout.positions, labels, a.out);
    std::cout << "energy " << format_fixed(layout.energy, 6) << " after "
              << layout.iterations << " iterations\n";
}

void do_overlap(const OverlapArgs& a) {
    if (a.sets.size() < 2) throw validation_error("report overlap: need at least 2 sets");
    if (!a.names.empty() && a.names.size() != a.sets.size()) {
        throw validation_error("report overlap: --names must match --sets");
    }
    std::vector<std::pair<std::string, std::vector<std::string>>> sets;
    for (std::size_t i = 0; i < a.sets.size(); ++i) {
        std::string name = a.names.empty() ? stem_of(a.sets[i]) : a.names[i];
        sets.emplace_back(name, load_term_set_lines(a.sets[i]));
    }
    write_file_atomic(a.out, overlap_csv(overlap_table(sets)));
    std::cout << "wrote " << a.out << "\n";
}

void do_journals(const JournalArgs& a) {
    auto window = year_window(a.year_from, a.year_to);
    PublicationParse pubs = parse_publications_file(a.publications, window);
    Segmentation seg = load_segmentation_tsv(a.segments);
    JournalImportance ji = journal_importance(seg, pubs.records, a.top_n);
    write_file_atomic(a.out, journal_importance_csv(ji));
    std::cout << "union of top-" << a.top_n << " lists: " << ji.union_journals.size()
              << " journals\n";
}

void do_hist(const HistArgs& a) {
    HashtagStats stats = load_hashtag_stats_json(a.stats);
    HashtagHistogram hist = hashtag_histogram(stats, a.lo, a.hi);
    write_file_atomic(a.out_csv, histogram_csv(hist));
    write_file_atomic(a.out_svg, histogram_svg(hist));
    std::cout << "papers in range: " << hist.within_range << " of "
              << hist.papers_with_hashtags << " with hashtags\n";
}

void do_render(const RenderArgs& a) {
    CoocGraph graph = read_pajek_file(a.in);
    if (!a.counts.empty()) apply_counts_file(graph, a.counts);
    std::vector<MapRow> rows = read_map_file(a.map);
    if (rows.size() != graph.nodes.size()) {
        throw error("map file does not cover the network");
    }
    std::vector<NodePlacement> positions(rows.size());
    std::vector<int> labels(rows.size());
    for (const MapRow& row : rows) {
        if (row.id < 1 || static_cast<std::size_t>(row.id) > rows.size()) {
            throw error("map file id out of range");
        }
        positions[static_cast<std::size_t>(row.id) - 1] = {row.x, row.y};
        labels[static_cast<std::size_t>(row.id) - 1] = row.cluster;
    }
    write_file_atomic(a.out, render_network_svg(graph, positions, labels));
    std::cout << "wrote " << a.out << "\n";
}

void do_run(const RunArgs& a) {
    PipelineConfig cfg = PipelineConfig::load(a.config);
    if (a.has_seed) cfg.seed = a.seed;
    if (a.threads > 0) cfg.cluster.threads = a.threads;
    ArtifactManifest manifest = run_pipeline(cfg, a.out_dir);
    std::cout << "wrote " << manifest.entries.size() << " artifacts to " << a.out_dir
              << "\n";
}

void do_fixture(const FixtureArgs& a) {
    std::vector<std::string> written = write_fixture(a.spec, a.out_dir);
    std::cout << "wrote " << written.size() << " fixture files to " << a.out_dir << "\n";
}

void add_year_options(CLI::App* sub, int& from, int& to) {
    sub->add_option("--year-from", from, "start of the publication year window");
    sub->add_option("--year-to", to, "end of the publication year window");
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
    std::vector<std::string> argv_storage;
    argv_storage.push_back("coword");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const std::string& s : argv_storage) argv.push_back(s.c_str());
    return cli_main(static_cast<int>(argv.size()), argv.data());
}

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"co-word attention network toolkit"};
    app.require_subcommand(1);

    IngestArgs ingest_args;
    HarvestArgs harvest_args;
    SegmentArgs segment_args;
    RankArgs rank_args;
    BuildNetArgs net_args;
    ClusterArgs cluster_args;
    LayoutArgs layout_args;
    OverlapArgs overlap_args;
    JournalArgs journal_args;
    HistArgs hist_args;
    RenderArgs render_args;
    RunArgs run_args;
    FixtureArgs fixture_args;

    auto* ingest = app.add_subcommand("ingest", "parse and validate the input corpora");
    ingest->add_option("--publications", ingest_args.publications, "publication JSONL")
        ->required();
    ingest->add_option("--altmetric", ingest_args.altmetric, "altmetric JSONL")
        ->required();
    ingest->add_option("--out", ingest_args.out, "write corpus stats JSON here");
    add_year_options(ingest, ingest_args.year_from, ingest_args.year_to);
    ingest->callback([&] { do_ingest(ingest_args); });

    auto* harvest = app.add_subcommand("harvest", "fetch tweet pages from a manifest");
    harvest->add_option("--manifest", harvest_args.manifest, "url<TAB>doi manifest")
        ->required();
    harvest->add_option("--out", harvest_args.out_dir, "directory for fetched bodies")
        ->required();
    harvest->add_option("--endpoint", harvest_args.endpoint,
                        "redirect all requests to this server");
    harvest->add_option("--max-parallel", harvest_args.policy.max_parallel,
                        "worker threads");
    harvest->add_option("--rate-limit", harvest_args.policy.rate_limit,
                        "requests per second per host");
    harvest->add_option("--max-retries", harvest_args.policy.max_retries,
                        "retries for retryable failures");
    harvest->add_option("--timeout-ms", harvest_args.timeout_ms, "per-request timeout");
    add_year_options(harvest, harvest_args.year_from, harvest_args.year_to);
    harvest->callback([&] { do_harvest(harvest_args); });

    auto* segment = app.add_subcommand("segment", "classify papers into segments");
    segment->add_option("--publications", segment_args.publications, "publication JSONL")
        ->required();
    segment->add_option("--altmetric", segment_args.altmetric, "altmetric JSONL")
        ->required();
    segment->add_option("--out", segment_args.out, "segments TSV")->required();
    segment->add_option("--min-accounts", segment_args.min_accounts,
                        "accounts needed for the tweeted segment");
    segment->add_option("--min-news", segment_args.min_news,
                        "news mentions needed for the news segment");
    add_year_options(segment, segment_args.year_from, segment_args.year_to);
    segment->callback([&] { do_segment(segment_args); });

    auto* rank = app.add_subcommand("rank", "rank a term corpus and select the top set");
    rank->add_option("--corpus", rank_args.corpus, "corpus file, one document per line")
        ->required();
    rank->add_option("--target", rank_args.target,
                     "target set size (default: 1% of the vocabulary)");
    rank->add_option("--freq-out", rank_args.freq_out, "frequency TSV path");
    rank->add_option("--terms-out", rank_args.terms_out, "term set path");
    rank->callback([&] { do_rank(rank_args); });

    auto* net = app.add_subcommand("build-net", "build a co-occurrence network");
    net->add_option("--corpus", net_args.corpus, "corpus file")->required();
    net->add_option("--terms", net_args.terms, "selected term set")->required();
    net->add_option("--out", net_args.out, "Pajek output")->required();
    net->add_option("--counts-out", net_args.counts_out, "co-occurrence counts TSV");
    auto* mew = net->add_option("--min-edge-weight", net_args.min_edge_weight,
                                "drop edges below this cosine similarity");
    net->callback([&] {
        net_args.has_min_edge = mew->count() > 0;
        do_build_net(net_args);
    });

    auto* cl = app.add_subcommand("cluster", "cluster a network");
    cl->add_option("--in", cluster_args.in, "Pajek network")->required();
    cl->add_option("--out", cluster_args.out, "cluster TSV")->required();
    cl->add_option("--resolution", cluster_args.params.resolution,
                   "resolution parameter");
    cl->add_option("--target-clusters", cluster_args.target_clusters,
                   "tune the resolution to reach this cluster count");
    cl->add_option("--min-cluster-size", cluster_args.params.min_cluster_size,
                   "clusters below this size are merged");
    cl->add_option("--starts", cluster_args.params.random_starts, "random starts");
    cl->add_option("--iterations", cluster_args.params.iterations,
                   "local moving sweeps per start");
    cl->add_option("--seed", cluster_args.params.seed, "random seed");
    cl->add_flag("--merge-small,!--no-merge-small", cluster_args.params.merge_small,
                 "merge clusters below the minimum size");
    cl->add_option("--threads", cluster_args.params.threads, "parallel starts");
    cl->add_option("--gamma-min", cluster_args.gamma_min, "resolution search lower bound");
    cl->add_option("--gamma-max", cluster_args.gamma_max, "resolution search upper bound");
    cl->add_option("--max-probes", cluster_args.max_probes, "resolution search probes");
    cl->callback([&] { do_cluster(cluster_args); });

    auto* lay = app.add_subcommand("layout", "compute a 2-D layout");
    lay->add_option("--in", layout_args.in, "Pajek network")->required();
    lay->add_option("--clusters", layout_args.clusters, "cluster TSV")->required();
    lay->add_option("--counts", layout_args.counts, "co-occurrence counts TSV");
    lay->add_option("--out", layout_args.out, "map file output")->required();
    lay->add_option("--scale", layout_args.options.scale, "ideal distance scale");
    lay->add_option("--max-iterations", layout_args.options.max_iterations,
                    "iteration cap");
    lay->add_option("--tolerance", layout_args.options.tolerance,
                    "gradient norm stopping threshold");
    lay->add_option("--seed", layout_args.options.seed, "random seed");
    lay->add_flag("--per-component", layout_args.options.per_component,
                  "lay out disconnected components separately");
    lay->callback([&] { do_layout(layout_args); });

    auto* report = app.add_subcommand("report", "comparison reports");
    report->require_subcommand(1);

    auto* overlap = report->add_subcommand("overlap", "term set overlap table");
    overlap->add_option("--sets", overlap_args.sets, "term set files")
        ->required()
        ->expected(-2);
    overlap->add_option("--names", overlap_args.names, "names for the sets");
    overlap->add_option("--out", overlap_args.out, "CSV output");
    overlap->callback([&] { do_overlap(overlap_args); });

    auto* journals = report->add_subcommand("journals", "journal importance comparison");
    journals->add_option("--segments", journal_args.segments, "segments TSV")->required();
    journals->add_option("--publications", journal_args.publications, "publication JSONL")
        ->required();
    journals->add_option("--top", journal_args.top_n, "top-N journals per segment");
    journals->add_option("--out", journal_args.out, "CSV output");
    add_year_options(journals, journal_args.year_from, journal_args.year_to);
    journals->callback([&] { do_journals(journal_args); });

    auto* hist = report->add_subcommand("hist", "hashtags-per-paper histogram");
    hist->add_option("--stats", hist_args.stats, "hashtag stats JSON")->required();
    hist->add_option("--lo", hist_args.lo, "range start");
    hist->add_option("--hi", hist_args.hi, "range end");
    hist->add_option("--out-csv", hist_args.out_csv, "CSV output");
    hist->add_option("--out-svg", hist_args.out_svg, "SVG output");
    hist->callback([&] { do_hist(hist_args); });

    auto* render = report->add_subcommand("render", "render a clustered network SVG");
    render->add_option("--in", render_args.in, "Pajek network")->required();
    render->add_option("--map", render_args.map, "map file with layout and clusters")
        ->required();
    render->add_option("--counts", render_args.counts, "co-occurrence counts TSV");
    render->add_option("--out", render_args.out, "SVG output")->required();
    render->callback([&] { do_render(render_args); });

    auto* run = app.add_subcommand("run", "run the full pipeline from a config file");
    run->add_option("--config", run_args.config, "pipeline config JSON")->required();
    run->add_option("--out-dir", run_args.out_dir, "output directory")->required();
    auto* seed_opt = run->add_option("--seed", run_args.seed, "override the config seed");
    run->add_option("--threads", run_args.threads, "override clustering threads");
    run->callback([&] {
        run_args.has_seed = seed_opt->count() > 0;
        do_run(run_args);
    });

    auto* fixture = app.add_subcommand("fixture", "generate the bundled demo corpus");
    fixture->add_option("--out-dir", fixture_args.out_dir, "output directory")
        ->required();
    fixture->add_option("--papers", fixture_args.spec.papers, "paper count");
    fixture->add_option("--tweets", fixture_args.spec.tweet_total, "total tweet count");
    fixture->add_option("--seed", fixture_args.spec.seed, "generator seed");
    fixture->callback([&] { do_fixture(fixture_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

}  // namespace coword

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coword/cluster.hpp"
#include "coword/common.hpp"
#include "coword/harvest.hpp"
#include "coword/layout.hpp"
#include "coword/segment.hpp"

namespace coword {

// configuration problems (bad schema, missing files) as opposed to
// failures while running a stage
struct validation_error : error {
    using error::error;
};

struct PipelineConfig {
    // inputs; relative paths are resolved against the config file's dir
    std::string publications;
    std::string altmetric;
    std::string tweet_store;  // exactly one of tweet_store / manifest
    std::string manifest;
    std::string endpoint;  // optional override for manifest fetching
    std::string keyword_thesaurus;
    std::string hashtag_thesaurus;

    int year_from = 0;
    int year_to = 0;
    SegmentRule segments;
    std::size_t keyword_target = 0;
    std::size_t journal_top_n = 20;
    std::int64_t histogram_lo = 1;
    std::int64_t histogram_hi = 30;
    std::uint64_t seed = 0;

    ClusterParams cluster;  // resolution used only when target_clusters == 0
    std::size_t target_clusters = 0;
    double gamma_min = 0.0;
    double gamma_max = 1.0;
    std::size_t max_probes = 32;

    LayoutOptions layout;
    FetchPolicy fetch;

    static PipelineConfig load(const std::string& path);
    void validate() const;
};

struct ArtifactManifest {
    struct Entry {
        std::string path;  // relative to the output directory
        std::string fnv64;
    };
    std::vector<Entry> entries;  // sorted by path

    std::string json() const;
    const Entry* find(const std::string& path) const;
};

// Every stage reads only input files and files written by earlier stages,
// so the monolithic run and a stage-by-stage run produce identical bytes.
namespace stage {
void ingest(const PipelineConfig& cfg, const std::string& out_dir);
void tweets(const PipelineConfig& cfg, const std::string& out_dir);
void segments(const PipelineConfig& cfg, const std::string& out_dir);
void rank(const PipelineConfig& cfg, const std::string& out_dir);
void networks(const PipelineConfig& cfg, const std::string& out_dir);
void clusters(const PipelineConfig& cfg, const std::string& out_dir);
void layouts(const PipelineConfig& cfg, const std::string& out_dir);
void render(const PipelineConfig& cfg, const std::string& out_dir);
void reports(const PipelineConfig& cfg, const std::string& out_dir);
}  // namespace stage

// per-stage seed derivation, shared with the CLI so stages can be rerun
// in isolation with the exact seed the pipeline used
std::uint64_t stage_seed(const PipelineConfig& cfg, const std::string& label);

ArtifactManifest run_pipeline(const PipelineConfig& cfg, const std::string& out_dir);

ArtifactManifest load_artifact_manifest(const std::string& path);

}  // namespace coword

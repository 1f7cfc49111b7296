#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "coword/harvest.hpp"
#include "coword/ingest.hpp"

namespace coword {

// Deterministic demo corpus: four keyword topics spread evenly over the
// attention segments so every segment network carries the same 4-group
// structure.
struct FixtureSpec {
    std::size_t papers = 500;
    std::size_t tweet_total = 5000;
    std::uint64_t seed = 42;

    void validate() const;
};

struct FixtureData {
    std::vector<PublicationRecord> publications;
    std::vector<AltmetricRecord> altmetrics;
    std::vector<TweetRecord> tweets;

    std::string publications_jsonl;
    std::string altmetric_jsonl;
    std::string manifest_tsv;
    std::string tweet_store_jsonl;
    std::string config_json;
    std::string hashtag_thesaurus;
    std::string keyword_thesaurus;
};

FixtureData make_fixture(const FixtureSpec& spec = {});

// Writes the corpus files plus a ready-to-run config.json into dir;
// returns the written paths.
std::vector<std::string> write_fixture(const FixtureSpec& spec, const std::string& dir);

}  // namespace coword

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vkg/catalogue.hpp"
#include "vkg/invariants.hpp"

// End-to-end UMIP check: run the tiered invariant ladder over the eligible
// groups of one order, partition them into families, report which pairs
// remain unseparated, and render the result tables.

namespace vkg {

inline constexpr const char* kToolkitVersion = "vkg 1.0.0";

struct Family {
    int center_order_log2 = 0;
    int frattini_order_log2 = 0;
    std::vector<int> ids;
};

struct PairResolution {
    int a = 0, b = 0;
    std::string separated_by;  // empty = unresolved
};

struct SplitReport {
    int order = 0;
    unsigned tiers = 0;
    std::vector<Family> families;               // sorted by (center, frattini)
    std::vector<PairResolution> resolutions;    // all same-family pairs
    std::vector<std::pair<int, int>> unresolved_pairs;
    std::vector<InvariantRecord> records;       // sorted by id
    std::vector<std::pair<int, std::string>> failures;
    std::string toolkit_version = kToolkitVersion;
};

struct PipelineOptions {
    int threads = 1;
    int split_bits = 8;
    std::string cache_dir;  // empty = no cache
    bool force = false;     // recompute even on cache hit
    // stop computing tiers for a group once it is uniquely separated
    bool early_stop = true;
};

SplitReport split_groups(const Catalogue& cat, int order, unsigned tiers,
                         const PipelineOptions& opt = {});

std::string render_markdown(const SplitReport& report);
std::string render_csv(const SplitReport& report);

// Invariant records are cached one self-describing text file per group,
// keyed by a content hash of the presentation so catalogue edits cannot
// silently serve stale values.
std::uint64_t presentation_hash(const PcPresentation& pres);

bool cache_load(const std::string& dir, int order, int id, std::uint64_t phash,
                InvariantRecord& out);
void cache_store(const std::string& dir, const InvariantRecord& rec, std::uint64_t phash);

// Computes (or loads) a record covering the requested tiers; merges with
// any cached tiers and writes the union back to the cache.
InvariantRecord record_for(const CatalogueEntry& entry, unsigned tiers,
                           const PipelineOptions& opt);

// 2^k * odd rendering used in the tables ("2^18*19", "2^24", "4095").
std::string factored(std::int64_t n);

}  // namespace vkg

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "metasearch/expansion.hpp"
#include "metasearch/response.hpp"
#include "metasearch/results.hpp"

namespace metasearch {

// Count-based rank aggregation over the ok pages. Duplicate URLs inside one
// engine collapse to their best rank first; then each URL's count is the number
// of engines listing it. Output order: count desc, best_rank asc, url asc.
// Title and snippet come from the (engine, rank) pair achieving best_rank,
// earlier pages winning rank ties. Throws EmptyInputError without ok pages.
std::vector<AggregatedResult> aggregate(std::span<const EngineResultPage> pages);

struct ClusterPages {
    ClusterQuery query;
    std::vector<EngineResultPage> pages;
};

// Maps a normalized URL to its category label, if known.
using CategoryLookup = std::function<std::optional<std::string>(std::string_view url)>;

// Majority label of the first `top_n` results; ties go to the label seen first.
// Empty when nothing is labeled.
std::string majority_category(std::span<const AggregatedResult> results, const CategoryLookup& lookup,
                              std::size_t top_n = 10);

// One entry per provider in first-seen order. A provider is ok only if every
// one of its pages was; otherwise it reports its first failure. elapsed_ms is
// the slowest page.
std::vector<ProviderStatus> summarize_provider_status(std::span<const ClusterPages> clusters);

// Aggregates each cluster independently, keeping sense order and allowing the
// same URL in several clusters. Clusters whose providers all failed come back
// empty; EmptyInputError only when no cluster has an ok page.
SearchResponse cluster_and_aggregate(std::span<const ClusterPages> clusters,
                                     const CategoryLookup& lookup = {});

}  // namespace metasearch

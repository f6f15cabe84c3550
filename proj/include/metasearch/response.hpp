#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "metasearch/dictionary.hpp"
#include "metasearch/expansion.hpp"
#include "metasearch/results.hpp"

namespace metasearch {

/// A link merged across engines. `count` is the number of distinct engines
/// that listed it; title and snippet come from the engine holding best_rank.
struct AggregatedResult {
    std::string url;
    std::string title;
    std::string snippet;
    std::uint32_t count = 1;
    std::uint32_t best_rank = 1;
    std::vector<std::string> sources;  // sorted provider ids, one per engine

    bool operator==(const AggregatedResult&) const = default;
};

/// One sense's results. `category` is empty when no result carries a label.
struct Cluster {
    Sense sense;
    ClusterQuery cluster_query;
    std::vector<AggregatedResult> results;
    std::string category;

    bool operator==(const Cluster&) const = default;
};

struct ProviderStatus {
    std::string provider;
    PageStatus status = PageStatus::ok;
    std::int64_t elapsed_ms = 0;

    bool operator==(const ProviderStatus&) const = default;
};

struct SearchResponse {
    std::string query;
    std::string reduced_query;
    std::string pivot_word;
    std::vector<Cluster> clusters;
    std::vector<ProviderStatus> provider_status;
    bool served_from_cache = false;

    bool operator==(const SearchResponse&) const = default;
};

void to_json(nlohmann::json& j, const Sense& sense);
void from_json(const nlohmann::json& j, Sense& sense);
void to_json(nlohmann::json& j, const ClusterQuery& query);
void from_json(const nlohmann::json& j, ClusterQuery& query);
void to_json(nlohmann::json& j, const AggregatedResult& result);
void from_json(const nlohmann::json& j, AggregatedResult& result);
void to_json(nlohmann::json& j, const Cluster& cluster);
void from_json(const nlohmann::json& j, Cluster& cluster);
void to_json(nlohmann::json& j, const ProviderStatus& status);
void from_json(const nlohmann::json& j, ProviderStatus& status);
void to_json(nlohmann::json& j, const SearchResponse& response);
void from_json(const nlohmann::json& j, SearchResponse& response);

// Compact JSON body shared by the HTTP service and `search --json`.
std::string serialize(const SearchResponse& response);

}  // namespace metasearch

#include "metasearch/response.hpp"

#include "metasearch/errors.hpp"

namespace metasearch {

using nlohmann::json;

void to_json(json& j, const Sense& sense) {
    j = json{{"headword", sense.headword},
             {"pos", to_string(sense.pos)},
             {"gloss", sense.gloss},
             {"is_fallback", sense.is_fallback}};
}

void from_json(const json& j, Sense& sense) {
    sense.headword = j.at("headword").get<std::string>();
    const auto pos = parse_part_of_speech(j.at("pos").get<std::string>());
    if (!pos) throw ValidationError("unknown part of speech in sense JSON");
    sense.pos = *pos;
    sense.gloss = j.at("gloss").get<std::string>();
    sense.is_fallback = j.at("is_fallback").get<bool>();
}

void to_json(json& j, const ClusterQuery& query) {
    j = json{{"provider_query", query.provider_query}, {"strategy", to_string(query.strategy)}};
}

void from_json(const json& j, ClusterQuery& query) {
    query.provider_query = j.at("provider_query").get<std::string>();
    const auto strategy = parse_expansion_strategy(j.at("strategy").get<std::string>());
    if (!strategy) throw ValidationError("unknown strategy in cluster query JSON");
    query.strategy = *strategy;
}

void to_json(json& j, const AggregatedResult& result) {
    j = json{{"url", result.url},
             {"title", result.title},
             {"snippet", result.snippet},
             {"count", result.count},
             {"best_rank", result.best_rank},
             {"sources", result.sources}};
}

void from_json(const json& j, AggregatedResult& result) {
    result.url = j.at("url").get<std::string>();
    result.title = j.at("title").get<std::string>();
    result.snippet = j.at("snippet").get<std::string>();
    result.count = j.at("count").get<std::uint32_t>();
    result.best_rank = j.at("best_rank").get<std::uint32_t>();
    result.sources = j.at("sources").get<std::vector<std::string>>();
}

void to_json(json& j, const Cluster& cluster) {
    j = json{{"sense", cluster.sense},
             {"cluster_query", cluster.cluster_query},
             {"category", cluster.category.empty() ? json(nullptr) : json(cluster.category)},
             {"results", cluster.results}};
}

void from_json(const json& j, Cluster& cluster) {
    cluster.sense = j.at("sense").get<Sense>();
    cluster.cluster_query = j.at("cluster_query").get<ClusterQuery>();
    cluster.cluster_query.sense = cluster.sense;
    const auto& category = j.at("category");
    cluster.category = category.is_null() ? std::string{} : category.get<std::string>();
    cluster.results = j.at("results").get<std::vector<AggregatedResult>>();
}

void to_json(json& j, const ProviderStatus& status) {
    j = json{{"provider", status.provider},
             {"status", to_string(status.status)},
             {"elapsed_ms", status.elapsed_ms}};
}

void from_json(const json& j, ProviderStatus& status) {
    status.provider = j.at("provider").get<std::string>();
    const auto parsed = parse_page_status(j.at("status").get<std::string>());
    if (!parsed) throw ValidationError("unknown provider status in JSON");
    status.status = *parsed;
    status.elapsed_ms = j.at("elapsed_ms").get<std::int64_t>();
}

void to_json(json& j, const SearchResponse& response) {
    j = json{{"query", response.query},
             {"reduced_query", response.reduced_query},
             {"pivot_word", response.pivot_word},
             {"clusters", response.clusters},
             {"provider_status", response.provider_status},
             {"served_from_cache", response.served_from_cache}};
}

void from_json(const json& j, SearchResponse& response) {
    response.query = j.at("query").get<std::string>();
    response.reduced_query = j.at("reduced_query").get<std::string>();
    response.pivot_word = j.at("pivot_word").get<std::string>();
    response.clusters = j.at("clusters").get<std::vector<Cluster>>();
    response.provider_status = j.at("provider_status").get<std::vector<ProviderStatus>>();
    response.served_from_cache = j.at("served_from_cache").get<bool>();
}

std::string serialize(const SearchResponse& response) {
    return json(response).dump(-1, ' ', false, json::error_handler_t::replace);
}

}  // namespace metasearch

#include "metasearch/service.hpp"

#include <future>

#include "metasearch/aggregator.hpp"
#include "metasearch/expansion.hpp"
#include "metasearch/text.hpp"

namespace metasearch {

nlohmann::json ServiceError::body() const {
    return {{"code", code_}, {"message", what()}, {"detail", detail_}};
}

void to_json(nlohmann::json& j, const SensesResult& result) {
    j = nlohmann::json{{"query", result.query}, {"term", result.term}, {"senses", result.senses}};
}

void to_json(nlohmann::json& j, const ProviderDescriptor& d) {
    j = nlohmann::json{{"id", d.id},
                       {"kind", to_string(d.kind)},
                       {"endpoint", d.endpoint},
                       {"timeout_ms", d.timeout_ms},
                       {"enabled", d.enabled}};
}

ServiceParts assemble(const ServiceConfig& config, std::shared_ptr<const Clock> clock) {
    ServiceParts parts;
    parts.clock = std::move(clock);
    parts.inventory = std::make_shared<const SenseInventory>(load_inventory(config.dictionary_path, *parts.clock));
    parts.index = std::make_shared<const Index>(index_corpus(load_corpus(config.corpus_path)));
    parts.providers = build_providers(config.providers, parts.index);
    if (config.stopwords_path) parts.stopwords = StopwordSet::load(*config.stopwords_path);
    if (config.history_path) parts.history = std::make_shared<HistoryStore>(*config.history_path);
    return parts;
}

SearchService::SearchService(ServiceConfig config, ServiceParts parts)
    : config_(std::move(config)), parts_(std::move(parts)) {
    if (!parts_.inventory) throw ConfigError("service needs a sense inventory");
    if (!parts_.history) parts_.history = std::make_shared<HistoryStore>();
    if (!parts_.clock) parts_.clock = std::make_shared<SystemClock>();
    if (config_.cache_enabled) {
        cache_ = std::make_unique<ResponseCache>(config_.cache_capacity, parts_.clock);
        if (config_.cache_snapshot_path) cache_->load_snapshot(*config_.cache_snapshot_path);
    }
}

SearchService::SearchService(ServiceConfig config, std::shared_ptr<const Clock> clock)
    : SearchService(config, assemble(config, std::move(clock))) {}

SearchService::~SearchService() {
    if (cache_ && config_.cache_snapshot_path) cache_->save_snapshot(*config_.cache_snapshot_path);
}

std::shared_ptr<const SenseInventory> SearchService::inventory() const {
    std::lock_guard lock(inventory_mutex_);
    return parts_.inventory;
}

void SearchService::replace_inventory(std::shared_ptr<const SenseInventory> inventory) {
    if (!inventory) throw PreconditionError("replacement inventory is null");
    std::lock_guard lock(inventory_mutex_);
    parts_.inventory = std::move(inventory);
}

std::vector<std::string> SearchService::query_tokens(std::string_view query) const {
    auto tokens = tokenize(query, 1);
    if (tokens.empty()) throw ServiceError(400, "empty_query", "query must contain at least one word");
    return tokens;
}

SearchResponse SearchService::handle_search(const SearchRequest& request) {
    const auto tokens = query_tokens(request.query);
    const std::size_t k = request.k.value_or(config_.default_k);
    if (k < 1 || k > config_.max_k) {
        throw ServiceError(400, "invalid_k", "k must be between 1 and " + std::to_string(config_.max_k));
    }
    const auto strategy = request.strategy.value_or(config_.strategy);
    const auto inv = inventory();

    const auto reduced = reduce_query(tokens, parts_.stopwords);
    const auto reduced_query = join(reduced, " ");
    const auto pivot = select_pivot_word(*inv, reduced, parts_.stopwords);
    const auto senses = lookup_senses(*inv, pivot);
    const auto cluster_queries = build_cluster_queries(reduced_query, senses, strategy, config_.limits,
                                                       parts_.stopwords);

    std::vector<std::string> enabled;
    for (const auto& p : parts_.providers) {
        if (p.descriptor.enabled) enabled.push_back(p.descriptor.id);
    }
    if (enabled.empty()) throw ServiceError(503, "no_providers", "no search provider is enabled");
    const auto key = make_cache_key(request.query, enabled, static_cast<std::uint32_t>(k), strategy);

    SearchResponse response;
    std::optional<SearchResponse> cached = cache_ ? cache_->get(key) : std::nullopt;
    if (cached) {
        response = std::move(*cached);
        response.served_from_cache = true;
    } else {
        std::vector<std::future<std::vector<EngineResultPage>>> fetches;
        fetches.reserve(cluster_queries.size());
        for (const auto& cq : cluster_queries) {
            fetches.push_back(std::async(std::launch::async, [this, &cq, k] {
                return fan_out(parts_.providers, cq.provider_query, k, parts_.clock);
            }));
        }
        std::vector<ClusterPages> cluster_pages;
        cluster_pages.reserve(cluster_queries.size());
        for (std::size_t i = 0; i < cluster_queries.size(); ++i) {
            cluster_pages.push_back(ClusterPages{cluster_queries[i], fetches[i].get()});
        }

        const auto index = parts_.index;
        CategoryLookup lookup;
        if (index) {
            lookup = [index](std::string_view url) -> std::optional<std::string> {
                if (const auto* doc = index->document_by_url(url)) return doc->category;
                return std::nullopt;
            };
        }
        try {
            response = cluster_and_aggregate(cluster_pages, lookup);
        } catch (const EmptyInputError& e) {
            throw ServiceError(502, "providers_failed", e.what(),
                               nlohmann::json{{"provider_status", summarize_provider_status(cluster_pages)}});
        }
        response.query = request.query;
        response.reduced_query = reduced_query;
        response.pivot_word = pivot;
        response.served_from_cache = false;
        if (cache_) cache_->put(key, response, config_.cache_ttl_ms);
    }

    if (request.user_id && !request.user_id->empty()) {
        response.clusters = bias_cluster_order(std::move(response.clusters), *request.user_id, *parts_.history,
                                               config_.history_half_life_ms, parts_.clock->now_ms());
    }
    return response;
}

SensesResult SearchService::handle_senses(std::string_view query) const {
    const auto tokens = query_tokens(query);
    const auto inv = inventory();
    const auto reduced = reduce_query(tokens, parts_.stopwords);
    const auto pivot = select_pivot_word(*inv, reduced, parts_.stopwords);
    return SensesResult{std::string(query), pivot, lookup_senses(*inv, pivot)};
}

HistoryEntry SearchService::handle_history_post(const nlohmann::json& body) {
    if (!body.is_object()) throw ServiceError(400, "invalid_history_entry", "history body must be a JSON object");
    HistoryEntry entry;
    try {
        entry.user_id = body.value("user_id", std::string{});
        entry.query = body.value("query", std::string{});
        entry.chosen_category = body.value("chosen_category", std::string{});
    } catch (const nlohmann::json::exception& e) {
        throw ServiceError(400, "invalid_history_entry", "history fields must be strings", e.what());
    }
    entry.timestamp_ms = parts_.clock->now_ms();
    try {
        parts_.history->record_selection(entry);
    } catch (const ValidationError& e) {
        throw ServiceError(400, "invalid_history_entry", e.what());
    } catch (const PersistenceError& e) {
        throw ServiceError(500, "history_unavailable", e.what());
    }
    return entry;
}

std::vector<ProviderDescriptor> SearchService::handle_providers() const {
    std::vector<ProviderDescriptor> out;
    for (const auto& p : parts_.providers) out.push_back(p.descriptor);
    return out;
}

nlohmann::json SearchService::handle_health() const {
    return {{"status", "ok"}};
}

}  // namespace metasearch

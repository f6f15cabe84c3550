#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "metasearch/cache.hpp"
#include "metasearch/clock.hpp"
#include "metasearch/config.hpp"
#include "metasearch/dictionary.hpp"
#include "metasearch/errors.hpp"
#include "metasearch/history.hpp"
#include "metasearch/providers.hpp"
#include "metasearch/response.hpp"
#include "metasearch/simengine.hpp"

namespace metasearch {

// Request failure with an HTTP status class and a machine-readable body.
class ServiceError : public Error {
public:
    ServiceError(int status, std::string code, const std::string& message,
                 nlohmann::json detail = nullptr)
        : Error(message), status_(status), code_(std::move(code)), detail_(std::move(detail)) {}

    int status() const noexcept { return status_; }
    const std::string& code() const noexcept { return code_; }
    const nlohmann::json& detail() const noexcept { return detail_; }

    // {code, message, detail}
    nlohmann::json body() const;

private:
    int status_;
    std::string code_;
    nlohmann::json detail_;
};

struct SearchRequest {
    std::string query;
    std::optional<std::size_t> k;
    std::optional<std::string> user_id;
    std::optional<ExpansionStrategy> strategy;
};

struct SensesResult {
    std::string query;
    std::string term;
    std::vector<Sense> senses;
};

void to_json(nlohmann::json& j, const SensesResult& result);
void to_json(nlohmann::json& j, const ProviderDescriptor& descriptor);

/// Everything a SearchService runs on. Built from a ServiceConfig by
/// `assemble`, or piecewise in tests.
struct ServiceParts {
    std::shared_ptr<const SenseInventory> inventory;
    std::shared_ptr<const Index> index;
    std::vector<Provider> providers;
    StopwordSet stopwords = StopwordSet::builtin();
    std::shared_ptr<HistoryStore> history = std::make_shared<HistoryStore>();
    std::shared_ptr<const Clock> clock = std::make_shared<SystemClock>();
};

// Loads dictionary, corpus, stopwords and history and builds the providers.
// Throws LoadError / ConfigError / PersistenceError.
ServiceParts assemble(const ServiceConfig& config,
                      std::shared_ptr<const Clock> clock = std::make_shared<SystemClock>());

/// The end-user search flow:
///   reduce_query -> select_pivot_word -> lookup_senses -> build_cluster_queries
///   -> cache -> fan_out per cluster query -> cluster_and_aggregate
///   -> bias_cluster_order.
/// The cache holds responses before history bias so users never see each
/// other's ordering. Safe to call from many threads.
class SearchService {
public:
    SearchService(ServiceConfig config, ServiceParts parts);
    explicit SearchService(ServiceConfig config,
                           std::shared_ptr<const Clock> clock = std::make_shared<SystemClock>());
    ~SearchService();

    // Throws ServiceError: 400 empty/invalid request, 502 all providers failed.
    SearchResponse handle_search(const SearchRequest& request);
    SensesResult handle_senses(std::string_view query) const;
    // Stamps the entry with the service clock. Throws ServiceError 400/500.
    HistoryEntry handle_history_post(const nlohmann::json& body);
    std::vector<ProviderDescriptor> handle_providers() const;
    nlohmann::json handle_health() const;

    // Swaps in a new dictionary; in-flight requests keep the old one.
    void replace_inventory(std::shared_ptr<const SenseInventory> inventory);

    const ServiceConfig& config() const noexcept { return config_; }
    const HistoryStore& history() const noexcept { return *parts_.history; }
    ResponseCache* cache() noexcept { return cache_.get(); }

private:
    std::shared_ptr<const SenseInventory> inventory() const;
    std::vector<std::string> query_tokens(std::string_view query) const;

    ServiceConfig config_;
    ServiceParts parts_;
    std::unique_ptr<ResponseCache> cache_;
    mutable std::mutex inventory_mutex_;
};

}  // namespace metasearch

#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "metasearch/clock.hpp"
#include "metasearch/results.hpp"
#include "metasearch/simengine.hpp"

namespace metasearch {

/// Static description of one search engine. For simulated providers the
/// endpoint names a ranking mode ("tf", "tfidf", "title_boost"), optionally
/// followed by "?delay_ms=N" to inject latency. For http kinds it is the base
/// URL; the query goes out as `q` and the result cap as `k`.
struct ProviderDescriptor {
    std::string id;
    ProviderKind kind = ProviderKind::simulated;
    std::string endpoint;
    std::int64_t timeout_ms = 2000;
    bool enabled = true;
    std::map<std::string, std::string> headers;  // passed through verbatim on http requests

    bool operator==(const ProviderDescriptor&) const = default;
};

// Throws ConfigError on empty or duplicate ids or timeout_ms < 1.
void validate_registry(std::span<const ProviderDescriptor> registry);

// Fetches one engine's links. Implementations signal failure by throwing
// TimeoutError, TransportError or ParseError; query_provider maps those to
// page statuses.
class SearchClient {
public:
    virtual ~SearchClient() = default;
    virtual std::vector<ResultLink> fetch(std::string_view query, std::size_t k,
                                          std::chrono::milliseconds timeout) const = 0;
};

class SimulatedClient final : public SearchClient {
public:
    SimulatedClient(std::shared_ptr<const Index> index, RankingMode mode, std::string provider_id,
                    std::chrono::milliseconds delay = std::chrono::milliseconds{0});

    std::vector<ResultLink> fetch(std::string_view query, std::size_t k,
                                  std::chrono::milliseconds timeout) const override;

private:
    std::shared_ptr<const Index> index_;
    RankingMode mode_;
    std::string provider_id_;
    std::chrono::milliseconds delay_;
};

class HttpClient final : public SearchClient {
public:
    explicit HttpClient(ProviderDescriptor descriptor);

    std::vector<ResultLink> fetch(std::string_view query, std::size_t k,
                                  std::chrono::milliseconds timeout) const override;

private:
    ProviderDescriptor descriptor_;
    std::string origin_;  // scheme://host[:port]
    std::string path_;    // path plus any fixed query string
};

struct Provider {
    ProviderDescriptor descriptor;
    std::shared_ptr<const SearchClient> client;
};

// Builds the client matching the descriptor's kind. Simulated providers need
// `index`. Throws ConfigError for bad endpoints.
std::shared_ptr<const SearchClient> make_client(const ProviderDescriptor& descriptor,
                                                std::shared_ptr<const Index> index);

std::vector<Provider> build_providers(std::span<const ProviderDescriptor> registry,
                                      std::shared_ptr<const Index> index);

// Queries one provider, giving up after descriptor.timeout_ms. Never throws on
// remote failure; the outcome is encoded in the page status. Throws
// PreconditionError if the provider is disabled, k is 0 or the query is empty.
EngineResultPage query_provider(const Provider& provider, std::string_view query, std::size_t k,
                                std::shared_ptr<const Clock> clock = std::make_shared<SystemClock>());

// Queries every enabled provider concurrently and returns one page per enabled
// provider in registry order. Each provider is bounded by its own timeout, so
// the call takes about max(timeout_ms), not the sum. Throws ConfigError when
// nothing is enabled.
std::vector<EngineResultPage> fan_out(std::span<const Provider> registry, std::string_view query,
                                      std::size_t k,
                                      std::shared_ptr<const Clock> clock = std::make_shared<SystemClock>());

}  // namespace metasearch

#include "metasearch/providers.hpp"

#include <future>
#include <set>
#include <thread>

#include <httplib.h>

#include "metasearch/errors.hpp"
#include "metasearch/parsers.hpp"
#include "metasearch/text.hpp"

namespace metasearch {
namespace {

using Millis = std::chrono::milliseconds;
using SteadyClock = std::chrono::steady_clock;

struct Pending {
    const Provider* provider = nullptr;
    std::string query;
    std::int64_t started_ms = 0;
    SteadyClock::time_point deadline;
    std::future<std::pair<std::vector<ResultLink>, std::int64_t>> result;
};

void check_preconditions(const Provider& provider, std::string_view query, std::size_t k) {
    if (!provider.descriptor.enabled) {
        throw PreconditionError("provider '" + provider.descriptor.id + "' is disabled");
    }
    if (!provider.client) throw PreconditionError("provider '" + provider.descriptor.id + "' has no client");
    if (normalize_text(query).empty()) throw PreconditionError("provider query must be nonempty");
    if (k == 0) throw PreconditionError("result cap k must be >= 1");
}

// The worker runs detached so an unresponsive provider can be abandoned at
// its deadline; its late result lands in a shared state nobody reads.
Pending launch(const Provider& provider, std::string_view query, std::size_t k,
               const std::shared_ptr<const Clock>& clock) {
    const auto timeout = Millis{provider.descriptor.timeout_ms};
    Pending pending;
    pending.provider = &provider;
    pending.query = std::string(query);
    pending.started_ms = clock->now_ms();
    pending.deadline = SteadyClock::now() + timeout;

    std::promise<std::pair<std::vector<ResultLink>, std::int64_t>> promise;
    pending.result = promise.get_future();
    std::thread([promise = std::move(promise), client = provider.client, clock, q = pending.query, k,
                 timeout, started = pending.started_ms]() mutable {
        try {
            auto links = client->fetch(q, k, timeout);
            promise.set_value({std::move(links), clock->now_ms() - started});
        } catch (...) {
            promise.set_exception(std::current_exception());
        }
    }).detach();
    return pending;
}

EngineResultPage collect(Pending& pending, const Clock& clock, std::size_t k) {
    const auto& desc = pending.provider->descriptor;
    EngineResultPage page;
    page.provider = desc.id;
    page.query = pending.query;

    if (pending.result.wait_until(pending.deadline) != std::future_status::ready) {
        page.status = PageStatus::timeout;
        page.elapsed_ms = clock.now_ms() - pending.started_ms;
        page.error = "no response within " + std::to_string(desc.timeout_ms) + " ms";
        return page;
    }
    try {
        auto [links, elapsed] = pending.result.get();
        if (links.size() > k) links.resize(k);
        for (std::size_t i = 0; i < links.size(); ++i) {
            links[i].rank = static_cast<std::uint32_t>(i + 1);
            links[i].source_engine = desc.id;
        }
        page.links = std::move(links);
        page.elapsed_ms = elapsed;
        page.status = PageStatus::ok;
        return page;
    } catch (const TimeoutError& e) {
        page.status = PageStatus::timeout;
        page.error = e.what();
    } catch (const ParseError& e) {
        page.status = PageStatus::parse_error;
        page.error = e.what();
    } catch (const std::exception& e) {
        page.status = PageStatus::transport_error;
        page.error = e.what();
    } catch (...) {
        page.status = PageStatus::transport_error;
        page.error = "unknown provider failure";
    }
    page.elapsed_ms = clock.now_ms() - pending.started_ms;
    return page;
}

// "tfidf?delay_ms=40" -> (tfidf, 40ms)
std::pair<RankingMode, Millis> parse_simulated_endpoint(const ProviderDescriptor& desc) {
    std::string_view endpoint = desc.endpoint;
    Millis delay{0};
    if (const auto q = endpoint.find('?'); q != std::string_view::npos) {
        const auto option = endpoint.substr(q + 1);
        endpoint = endpoint.substr(0, q);
        constexpr std::string_view kDelay = "delay_ms=";
        if (!option.starts_with(kDelay)) {
            throw ConfigError("provider '" + desc.id + "': unknown endpoint option '" + std::string(option) + "'");
        }
        try {
            delay = Millis{std::stoll(std::string(option.substr(kDelay.size())))};
        } catch (const std::exception&) {
            throw ConfigError("provider '" + desc.id + "': bad delay_ms");
        }
    }
    const auto mode = parse_ranking_mode(endpoint.empty() ? "tfidf" : endpoint);
    if (!mode) throw ConfigError("provider '" + desc.id + "': unknown ranking mode '" + std::string(endpoint) + "'");
    return {*mode, delay};
}

}  // namespace

void validate_registry(std::span<const ProviderDescriptor> registry) {
    std::set<std::string> ids;
    for (const auto& desc : registry) {
        if (desc.id.empty()) throw ConfigError("provider id must be nonempty");
        if (!ids.insert(desc.id).second) throw ConfigError("duplicate provider id '" + desc.id + "'");
        if (desc.timeout_ms < 1) throw ConfigError("provider '" + desc.id + "': timeout_ms must be >= 1");
    }
}

SimulatedClient::SimulatedClient(std::shared_ptr<const Index> index, RankingMode mode,
                                 std::string provider_id, Millis delay)
    : index_(std::move(index)), mode_(mode), provider_id_(std::move(provider_id)), delay_(delay) {
    if (!index_) throw ConfigError("simulated provider '" + provider_id_ + "' needs a corpus index");
}

std::vector<ResultLink> SimulatedClient::fetch(std::string_view query, std::size_t k, Millis) const {
    if (delay_.count() > 0) std::this_thread::sleep_for(delay_);
    return search_index(*index_, query, mode_, k, provider_id_);
}

HttpClient::HttpClient(ProviderDescriptor descriptor) : descriptor_(std::move(descriptor)) {
    const std::string_view endpoint = descriptor_.endpoint;
    const auto sep = endpoint.find("://");
    if (sep == std::string_view::npos) {
        throw ConfigError("provider '" + descriptor_.id + "': endpoint must be an absolute URL");
    }
    const auto path_start = endpoint.find('/', sep + 3);
    origin_ = std::string(endpoint.substr(0, path_start));
    path_ = path_start == std::string_view::npos ? "/" : std::string(endpoint.substr(path_start));
}

std::vector<ResultLink> HttpClient::fetch(std::string_view query, std::size_t k, Millis timeout) const {
    httplib::Client client(origin_);
    if (!client.is_valid()) throw TransportError("unsupported endpoint " + origin_);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    client.set_keep_alive(false);

    httplib::Headers headers;
    for (const auto& [name, value] : descriptor_.headers) headers.emplace(name, value);

    const std::string target = path_ + (path_.find('?') == std::string::npos ? "?" : "&") +
                               "q=" + httplib::detail::encode_query_param(std::string(query)) +
                               "&k=" + std::to_string(k);
    const auto started = SteadyClock::now();
    const auto res = client.Get(target, headers);
    if (!res) {
        const auto err = res.error();
        const bool timed_out = err == httplib::Error::ConnectionTimeout ||
                               ((err == httplib::Error::Read || err == httplib::Error::Connection) &&
                                SteadyClock::now() - started >= timeout);
        const auto what = "request to " + origin_ + " failed: " + httplib::to_string(err);
        if (timed_out) throw TimeoutError(what);
        throw TransportError(what);
    }
    if (res->status != 200) {
        throw TransportError("HTTP " + std::to_string(res->status) + " from " + origin_);
    }
    return parse_results(res->body, descriptor_.kind, descriptor_.id, k);
}

std::shared_ptr<const SearchClient> make_client(const ProviderDescriptor& descriptor,
                                                std::shared_ptr<const Index> index) {
    if (descriptor.kind == ProviderKind::simulated) {
        const auto [mode, delay] = parse_simulated_endpoint(descriptor);
        return std::make_shared<SimulatedClient>(std::move(index), mode, descriptor.id, delay);
    }
    return std::make_shared<HttpClient>(descriptor);
}

std::vector<Provider> build_providers(std::span<const ProviderDescriptor> registry,
                                      std::shared_ptr<const Index> index) {
    validate_registry(registry);
    std::vector<Provider> providers;
    providers.reserve(registry.size());
    for (const auto& desc : registry) providers.push_back(Provider{desc, make_client(desc, index)});
    return providers;
}

EngineResultPage query_provider(const Provider& provider, std::string_view query, std::size_t k,
                                std::shared_ptr<const Clock> clock) {
    check_preconditions(provider, query, k);
    auto pending = launch(provider, query, k, clock);
    return collect(pending, *clock, k);
}

std::vector<EngineResultPage> fan_out(std::span<const Provider> registry, std::string_view query,
                                      std::size_t k, std::shared_ptr<const Clock> clock) {
    std::vector<const Provider*> enabled;
    for (const auto& provider : registry) {
        if (provider.descriptor.enabled) enabled.push_back(&provider);
    }
    if (enabled.empty()) throw ConfigError("no enabled providers");
    for (const auto* provider : enabled) check_preconditions(*provider, query, k);

    std::vector<Pending> pending;
    pending.reserve(enabled.size());
    for (const auto* provider : enabled) pending.push_back(launch(*provider, query, k, clock));

    std::vector<EngineResultPage> pages;
    pages.reserve(pending.size());
    for (auto& p : pending) pages.push_back(collect(p, *clock, k));
    return pages;
}

}  // namespace metasearch

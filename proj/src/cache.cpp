#include "metasearch/cache.hpp"

#include <algorithm>
#include <fstream>

#include "metasearch/errors.hpp"
#include "metasearch/text.hpp"

namespace metasearch {
namespace {

constexpr int kSnapshotVersion = 1;

nlohmann::json key_to_json(const CacheKey& key) {
    return {{"normalized_query", key.normalized_query},
            {"provider_set", key.provider_set},
            {"k", key.k},
            {"strategy", to_string(key.strategy)}};
}

CacheKey key_from_json(const nlohmann::json& j) {
    const auto strategy = parse_expansion_strategy(j.at("strategy").get<std::string>());
    if (!strategy) throw ValidationError("bad strategy in cache snapshot");
    return make_cache_key(j.at("normalized_query").get<std::string>(),
                          j.at("provider_set").get<std::vector<std::string>>(),
                          j.at("k").get<std::uint32_t>(), *strategy);
}

}  // namespace

CacheKey make_cache_key(std::string_view query, std::vector<std::string> providers, std::uint32_t k,
                        ExpansionStrategy strategy) {
    std::sort(providers.begin(), providers.end());
    return CacheKey{normalize_text(query), std::move(providers), k, strategy};
}

ResponseCache::ResponseCache(std::size_t capacity, std::shared_ptr<const Clock> clock)
    : capacity_(capacity), clock_(std::move(clock)) {
    if (capacity_ == 0) throw PreconditionError("cache capacity must be >= 1");
    if (!clock_) throw PreconditionError("cache needs a clock");
}

std::string ResponseCache::encode(const CacheKey& key) {
    std::string out = key.normalized_query;
    out += '\x1f';
    out += join(key.provider_set, "\x1e");
    out += '\x1f';
    out += std::to_string(key.k);
    out += '\x1f';
    out += to_string(key.strategy);
    return out;
}

std::optional<SearchResponse> ResponseCache::get(const CacheKey& key) {
    std::lock_guard lock(mutex_);
    const auto it = index_.find(encode(key));
    if (it == index_.end()) return std::nullopt;
    if (it->second->expires_at_ms <= clock_->now_ms()) {
        lru_.erase(it->second);
        index_.erase(it);
        return std::nullopt;
    }
    lru_.splice(lru_.begin(), lru_, it->second);
    return it->second->response;
}

void ResponseCache::put(const CacheKey& key, SearchResponse response, std::int64_t ttl_ms) {
    if (ttl_ms < 1) throw PreconditionError("cache ttl_ms must be >= 1");
    std::lock_guard lock(mutex_);
    insert_locked(key, std::move(response), clock_->now_ms() + ttl_ms);
}

void ResponseCache::insert_locked(const CacheKey& key, SearchResponse response, std::int64_t expires_at_ms) {
    const auto encoded = encode(key);
    if (const auto it = index_.find(encoded); it != index_.end()) {
        lru_.erase(it->second);
        index_.erase(it);
    }
    while (lru_.size() >= capacity_) {
        index_.erase(encode(lru_.back().key));
        lru_.pop_back();
    }
    lru_.push_front(Entry{key, std::move(response), expires_at_ms});
    index_.emplace(encoded, lru_.begin());
}

std::size_t ResponseCache::size() const {
    std::lock_guard lock(mutex_);
    return lru_.size();
}

void ResponseCache::clear() {
    std::lock_guard lock(mutex_);
    lru_.clear();
    index_.clear();
}

bool ResponseCache::save_snapshot(const std::filesystem::path& path) const {
    nlohmann::json entries = nlohmann::json::array();
    {
        std::lock_guard lock(mutex_);
        const auto now = clock_->now_ms();
        for (const auto& e : lru_) {
            if (e.expires_at_ms <= now) continue;
            entries.push_back({{"key", key_to_json(e.key)},
                               {"expires_at_ms", e.expires_at_ms},
                               {"response", e.response}});
        }
    }
    try {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << nlohmann::json{{"version", kSnapshotVersion}, {"entries", entries}}.dump();
        out.flush();
        return static_cast<bool>(out);
    } catch (const std::exception&) {
        return false;
    }
}

std::size_t ResponseCache::load_snapshot(const std::filesystem::path& path) {
    try {
        std::ifstream in(path, std::ios::binary);
        if (!in) return 0;
        const auto doc = nlohmann::json::parse(in);
        if (doc.at("version").get<int>() != kSnapshotVersion) return 0;

        std::lock_guard lock(mutex_);
        const auto now = clock_->now_ms();
        std::size_t loaded = 0;
        const auto& entries = doc.at("entries");
        // Stored most-recent first; insert oldest first to rebuild recency.
        for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
            const auto expires = it->at("expires_at_ms").get<std::int64_t>();
            if (expires <= now) continue;
            insert_locked(key_from_json(it->at("key")), it->at("response").get<SearchResponse>(), expires);
            ++loaded;
        }
        return std::min(loaded, capacity_);
    } catch (const std::exception&) {
        return 0;
    }
}

}  // namespace metasearch

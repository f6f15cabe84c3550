#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "metasearch/clock.hpp"
#include "metasearch/expansion.hpp"
#include "metasearch/response.hpp"

namespace metasearch {

struct CacheKey {
    std::string normalized_query;
    std::vector<std::string> provider_set;  // sorted ascending
    std::uint32_t k = 0;
    ExpansionStrategy strategy = ExpansionStrategy::concatenated;

    bool operator==(const CacheKey&) const = default;
};

// Normalizes the query text and sorts the provider ids, so keys that differ
// only in provider order compare equal.
CacheKey make_cache_key(std::string_view query, std::vector<std::string> providers, std::uint32_t k,
                        ExpansionStrategy strategy);

/// In-memory LRU cache of search responses with per-entry TTL. Thread-safe.
class ResponseCache {
public:
    static constexpr std::int64_t kDefaultTtlMs = 300'000;
    static constexpr std::size_t kDefaultCapacity = 1024;

    explicit ResponseCache(std::size_t capacity = kDefaultCapacity,
                           std::shared_ptr<const Clock> clock = std::make_shared<SystemClock>());

    // A hit refreshes recency. Expired entries are dropped on access.
    std::optional<SearchResponse> get(const CacheKey& key);

    // Throws PreconditionError if ttl_ms < 1. Evicts the least recently used
    // entry when full.
    void put(const CacheKey& key, SearchResponse response, std::int64_t ttl_ms = kDefaultTtlMs);

    std::size_t size() const;
    std::size_t capacity() const noexcept { return capacity_; }
    void clear();

    // Versioned JSON snapshot of the live entries. Best-effort: returns false
    // (save) or 0 (load) on any I/O or format problem instead of throwing.
    bool save_snapshot(const std::filesystem::path& path) const;
    std::size_t load_snapshot(const std::filesystem::path& path);

private:
    struct Entry {
        CacheKey key;
        SearchResponse response;
        std::int64_t expires_at_ms = 0;
    };

    static std::string encode(const CacheKey& key);
    void insert_locked(const CacheKey& key, SearchResponse response, std::int64_t expires_at_ms);

    std::size_t capacity_;
    std::shared_ptr<const Clock> clock_;
    mutable std::mutex mutex_;
    std::list<Entry> lru_;  // front = most recently used
    std::unordered_map<std::string, std::list<Entry>::iterator> index_;
};

}  // namespace metasearch

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "metasearch/expansion.hpp"
#include "metasearch/providers.hpp"

namespace metasearch {

struct ServiceConfig {
    std::filesystem::path dictionary_path;
    std::filesystem::path corpus_path;
    std::optional<std::filesystem::path> stopwords_path;
    std::optional<std::filesystem::path> history_path;
    std::vector<ProviderDescriptor> providers;

    std::size_t default_k = 20;
    std::size_t max_k = 100;
    ExpansionStrategy strategy = ExpansionStrategy::concatenated;
    ExpansionLimits limits;
    std::int64_t history_half_life_ms = 7LL * 24 * 60 * 60 * 1000;

    bool cache_enabled = true;
    std::int64_t cache_ttl_ms = 300'000;
    std::size_t cache_capacity = 1024;
    std::optional<std::filesystem::path> cache_snapshot_path;

    std::string host = "127.0.0.1";
    int port = 8080;

    // Bundled dictionary and corpus with three simulated engines (tf, tfidf, title_boost).
    static ServiceConfig defaults();
};

// Reads a TOML-style file: top-level keys, [cache] and [server] tables, and
// one [[provider]] table per engine. Relative paths resolve against the
// file's directory. Unknown keys are errors. Throws ConfigError.
ServiceConfig load_config(const std::filesystem::path& path);

// Same, from text; relative paths resolve against `base_dir`.
ServiceConfig parse_config(std::string_view text, const std::filesystem::path& base_dir);

using EnvLookup = std::function<std::optional<std::string>(const std::string& name)>;

EnvLookup process_environment();

// Applies METASEARCH_* overrides: DICTIONARY, CORPUS, STOPWORDS, HISTORY,
// DEFAULT_K, STRATEGY, CACHE_ENABLED, CACHE_TTL_MS, CACHE_CAPACITY, HOST, PORT.
void apply_env_overrides(ServiceConfig& config, const EnvLookup& env);

}  // namespace metasearch

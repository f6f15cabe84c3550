#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace metasearch {

enum class ProviderKind { simulated, http_json, http_html, http_rss };

std::string_view to_string(ProviderKind kind);
std::optional<ProviderKind> parse_provider_kind(std::string_view s);

/// One parsed hit. `url` is already normalized; `rank` is 1-based within
/// the engine's own list.
struct ResultLink {
    std::string url;
    std::string title;
    std::string snippet;
    std::string source_engine;
    std::uint32_t rank = 1;

    bool operator==(const ResultLink&) const = default;
};

enum class PageStatus { ok, timeout, parse_error, transport_error };

std::string_view to_string(PageStatus status);
std::optional<PageStatus> parse_page_status(std::string_view s);

/// What one provider returned for one query. Non-ok pages carry no links;
/// ok pages have ranks 1..n without gaps.
struct EngineResultPage {
    std::string provider;
    std::string query;
    std::vector<ResultLink> links;
    std::int64_t elapsed_ms = 0;
    PageStatus status = PageStatus::ok;
    std::string error;  // human-readable cause for non-ok pages

    bool operator==(const EngineResultPage&) const = default;
};

}  // namespace metasearch

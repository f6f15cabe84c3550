#include "metasearch/results.hpp"

namespace metasearch {

std::string_view to_string(ProviderKind kind) {
    switch (kind) {
        case ProviderKind::simulated: return "simulated";
        case ProviderKind::http_json: return "http_json";
        case ProviderKind::http_html: return "http_html";
        case ProviderKind::http_rss: return "http_rss";
    }
    return "simulated";
}

std::optional<ProviderKind> parse_provider_kind(std::string_view s) {
    if (s == "simulated") return ProviderKind::simulated;
    if (s == "http_json" || s == "json") return ProviderKind::http_json;
    if (s == "http_html" || s == "html") return ProviderKind::http_html;
    if (s == "http_rss" || s == "rss") return ProviderKind::http_rss;
    return std::nullopt;
}

std::string_view to_string(PageStatus status) {
    switch (status) {
        case PageStatus::ok: return "ok";
        case PageStatus::timeout: return "timeout";
        case PageStatus::parse_error: return "parse_error";
        case PageStatus::transport_error: return "transport_error";
    }
    return "ok";
}

std::optional<PageStatus> parse_page_status(std::string_view s) {
    if (s == "ok") return PageStatus::ok;
    if (s == "timeout") return PageStatus::timeout;
    if (s == "parse_error") return PageStatus::parse_error;
    if (s == "transport_error") return PageStatus::transport_error;
    return std::nullopt;
}

}  // namespace metasearch

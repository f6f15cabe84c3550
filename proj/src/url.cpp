#include "metasearch/url.hpp"

#include <cctype>

#include "metasearch/errors.hpp"
#include "metasearch/text.hpp"

namespace metasearch {
namespace {

bool is_scheme_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.';
}

bool is_host_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_' ||
           c == '~' || c == '%';
}

[[noreturn]] void fail(std::string_view raw, std::string_view why) {
    throw NormalizationError("cannot normalize url '" + std::string(raw) + "': " + std::string(why));
}

}  // namespace

std::string normalize_url(std::string_view raw) {
    std::string_view s = raw;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) fail(raw, "empty");
    for (char c : s) {
        const auto u = static_cast<unsigned char>(c);
        if (u <= 0x20 || u == 0x7F) fail(raw, "contains whitespace or control characters");
    }

    const auto sep = s.find("://");
    if (sep == std::string_view::npos || sep == 0) fail(raw, "missing scheme");
    const auto scheme = to_lower_ascii(s.substr(0, sep));
    if (!std::isalpha(static_cast<unsigned char>(scheme.front()))) fail(raw, "bad scheme");
    for (char c : scheme) {
        if (!is_scheme_char(c)) fail(raw, "bad scheme");
    }

    s.remove_prefix(sep + 3);
    const auto authority_end = s.find_first_of("/?#");
    auto authority = s.substr(0, authority_end);
    s.remove_prefix(authority_end == std::string_view::npos ? s.size() : authority_end);

    std::string userinfo;
    if (const auto at = authority.rfind('@'); at != std::string_view::npos) {
        userinfo = std::string(authority.substr(0, at + 1));
        authority.remove_prefix(at + 1);
    }

    std::string host;
    std::string_view port;
    if (authority.starts_with('[')) {
        const auto close = authority.find(']');
        if (close == std::string_view::npos || close == 1) fail(raw, "bad IPv6 host");
        for (char c : authority.substr(1, close - 1)) {
            if (!std::isxdigit(static_cast<unsigned char>(c)) && c != ':' && c != '.') {
                fail(raw, "bad IPv6 host");
            }
        }
        host = to_lower_ascii(authority.substr(0, close + 1));
        authority.remove_prefix(close + 1);
        if (!authority.empty()) {
            if (authority.front() != ':') fail(raw, "junk after IPv6 host");
            port = authority.substr(1);
        }
    } else {
        const auto colon = authority.find(':');
        host = to_lower_ascii(authority.substr(0, colon));
        if (colon != std::string_view::npos) port = authority.substr(colon + 1);
        if (host.empty()) fail(raw, "empty host");
        for (char c : host) {
            if (!is_host_char(c)) fail(raw, "bad host character");
        }
    }

    std::string port_text;
    if (!port.empty()) {
        if (port.size() > 5) fail(raw, "bad port");
        unsigned value = 0;
        for (char c : port) {
            if (!std::isdigit(static_cast<unsigned char>(c))) fail(raw, "bad port");
            value = value * 10 + static_cast<unsigned>(c - '0');
        }
        if (value == 0 || value > 65535) fail(raw, "port out of range");
        const bool is_default = (scheme == "http" && value == 80) || (scheme == "https" && value == 443);
        if (!is_default) port_text = ":" + std::to_string(value);
    }

    const auto fragment = s.find('#');
    if (fragment != std::string_view::npos) s = s.substr(0, fragment);
    const auto query_start = s.find('?');
    std::string path(s.substr(0, query_start));
    const auto query = query_start == std::string_view::npos ? std::string_view{} : s.substr(query_start);

    while (path.size() > 1 && path.back() == '/') path.pop_back();
    if (path.empty() || path == "/") path = "/";

    return scheme + "://" + userinfo + host + port_text + path + std::string(query);
}

}  // namespace metasearch

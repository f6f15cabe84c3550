#include "metasearch/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <variant>

#include "metasearch/errors.hpp"

namespace metasearch {
namespace {

using Value = std::variant<std::string, std::int64_t, bool>;

struct Assignment {
    std::string table;      // "", "cache", "server", "provider"
    std::size_t array_index = 0;  // which [[provider]] table
    std::string key;        // may be dotted, e.g. headers.X-Api-Key
    Value value;
    std::size_t line = 0;
};

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool is_bare_key_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

// Parses a value and returns the remainder of the line after it.
Value parse_value(std::string_view s, std::size_t line, std::string_view& rest) {
    if (s.empty()) fail(line, "missing value");
    if (s.front() == '"') {
        std::string out;
        std::size_t i = 1;
        for (; i < s.size() && s[i] != '"'; ++i) {
            if (s[i] != '\\') {
                out.push_back(s[i]);
                continue;
            }
            if (++i >= s.size()) break;
            switch (s[i]) {
                case 'n': out.push_back('\n'); break;
                case 't': out.push_back('\t'); break;
                case '"': out.push_back('"'); break;
                case '\\': out.push_back('\\'); break;
                default: fail(line, std::string("unsupported escape \\") + s[i]);
            }
        }
        if (i >= s.size()) fail(line, "unterminated string");
        rest = s.substr(i + 1);
        return out;
    }
    if (s.front() == '\'') {
        const auto end = s.find('\'', 1);
        if (end == std::string_view::npos) fail(line, "unterminated string");
        rest = s.substr(end + 1);
        return std::string(s.substr(1, end - 1));
    }
    const auto end = s.find_first_of(" \t#");
    const auto token = s.substr(0, end);
    rest = end == std::string_view::npos ? std::string_view{} : s.substr(end);
    if (token == "true") return true;
    if (token == "false") return false;
    std::string digits;
    for (std::size_t i = 0; i < token.size(); ++i) {
        const char c = token[i];
        if (c == '_') continue;
        if (std::isdigit(static_cast<unsigned char>(c)) || (i == 0 && (c == '-' || c == '+'))) {
            digits.push_back(c);
            continue;
        }
        fail(line, "unsupported value '" + std::string(token) + "'");
    }
    try {
        return static_cast<std::int64_t>(std::stoll(digits));
    } catch (const std::exception&) {
        fail(line, "bad integer '" + std::string(token) + "'");
    }
}

struct ParsedToml {
    std::vector<Assignment> assignments;
    std::size_t provider_tables = 0;
};

ParsedToml parse_toml(std::string_view text) {
    std::vector<Assignment> out;
    std::string table;
    std::size_t provider_count = 0;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;

        if (line.starts_with("[[")) {
            const auto end = line.find("]]");
            if (end == std::string_view::npos) fail(line_no, "unterminated table header");
            table = std::string(trim(line.substr(2, end - 2)));
            if (table != "provider") fail(line_no, "unknown table array [[" + table + "]]");
            ++provider_count;
            continue;
        }
        if (line.front() == '[') {
            const auto end = line.find(']');
            if (end == std::string_view::npos) fail(line_no, "unterminated table header");
            table = std::string(trim(line.substr(1, end - 1)));
            if (table != "cache" && table != "server") fail(line_no, "unknown table [" + table + "]");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) fail(line_no, "expected key = value");
        const auto key = trim(line.substr(0, eq));
        if (key.empty()) fail(line_no, "empty key");
        for (char c : key) {
            if (!is_bare_key_char(c)) fail(line_no, "bad key '" + std::string(key) + "'");
        }
        std::string_view rest;
        auto value = parse_value(trim(line.substr(eq + 1)), line_no, rest);
        rest = trim(rest);
        if (!rest.empty() && rest.front() != '#') fail(line_no, "trailing characters after value");
        out.push_back(Assignment{table, provider_count == 0 ? 0 : provider_count - 1, std::string(key),
                                 std::move(value), line_no});
    }
    return ParsedToml{std::move(out), provider_count};
}

const std::string& as_string(const Assignment& a) {
    if (const auto* s = std::get_if<std::string>(&a.value)) return *s;
    fail(a.line, "'" + a.key + "' must be a string");
}

std::int64_t as_int(const Assignment& a, std::int64_t min) {
    const auto* v = std::get_if<std::int64_t>(&a.value);
    if (!v) fail(a.line, "'" + a.key + "' must be an integer");
    if (*v < min) fail(a.line, "'" + a.key + "' must be >= " + std::to_string(min));
    return *v;
}

bool as_bool(const Assignment& a) {
    if (const auto* b = std::get_if<bool>(&a.value)) return *b;
    fail(a.line, "'" + a.key + "' must be true or false");
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

ExpansionStrategy strategy_from(const std::string& s, const std::string& where) {
    const auto strategy = parse_expansion_strategy(s);
    if (!strategy) throw ConfigError(where + ": unknown strategy '" + s + "'");
    return *strategy;
}

}  // namespace

ServiceConfig ServiceConfig::defaults() {
    ServiceConfig config;
    const std::filesystem::path data(METASEARCH_DATA_DIR);
    config.dictionary_path = data / "dictionary.tsv";
    config.corpus_path = data / "corpus.jsonl";
    config.providers = {
        {"alpha", ProviderKind::simulated, "tf", 2000, true, {}},
        {"beta", ProviderKind::simulated, "tfidf", 2000, true, {}},
        {"gamma", ProviderKind::simulated, "title_boost", 2000, true, {}},
    };
    return config;
}

ServiceConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
    ServiceConfig config = ServiceConfig::defaults();
    const auto parsed = parse_toml(text);
    std::vector<ProviderDescriptor> providers(parsed.provider_tables);

    for (const auto& a : parsed.assignments) {
        if (a.table.empty()) {
            if (a.key == "dictionary") config.dictionary_path = resolve(base_dir, as_string(a));
            else if (a.key == "corpus") config.corpus_path = resolve(base_dir, as_string(a));
            else if (a.key == "stopwords") config.stopwords_path = resolve(base_dir, as_string(a));
            else if (a.key == "history") config.history_path = resolve(base_dir, as_string(a));
            else if (a.key == "default_k") config.default_k = static_cast<std::size_t>(as_int(a, 1));
            else if (a.key == "max_k") config.max_k = static_cast<std::size_t>(as_int(a, 1));
            else if (a.key == "strategy") config.strategy = strategy_from(as_string(a), "config line " + std::to_string(a.line));
            else if (a.key == "max_senses") config.limits.max_senses = static_cast<std::size_t>(as_int(a, 1));
            else if (a.key == "max_gloss_words") config.limits.max_gloss_words = static_cast<std::size_t>(as_int(a, 1));
            else if (a.key == "half_life_ms") config.history_half_life_ms = as_int(a, 1);
            else fail(a.line, "unknown key '" + a.key + "'");
        } else if (a.table == "cache") {
            if (a.key == "enabled") config.cache_enabled = as_bool(a);
            else if (a.key == "ttl_ms") config.cache_ttl_ms = as_int(a, 1);
            else if (a.key == "capacity") config.cache_capacity = static_cast<std::size_t>(as_int(a, 1));
            else if (a.key == "snapshot") config.cache_snapshot_path = resolve(base_dir, as_string(a));
            else fail(a.line, "unknown key 'cache." + a.key + "'");
        } else if (a.table == "server") {
            if (a.key == "host") config.host = as_string(a);
            else if (a.key == "port") config.port = static_cast<int>(as_int(a, 0));
            else fail(a.line, "unknown key 'server." + a.key + "'");
        } else {
            auto& p = providers[a.array_index];
            if (a.key == "id") p.id = as_string(a);
            else if (a.key == "kind") {
                const auto kind = parse_provider_kind(as_string(a));
                if (!kind) fail(a.line, "unknown provider kind '" + as_string(a) + "'");
                p.kind = *kind;
            } else if (a.key == "endpoint") p.endpoint = as_string(a);
            else if (a.key == "timeout_ms") p.timeout_ms = as_int(a, 1);
            else if (a.key == "enabled") p.enabled = as_bool(a);
            else if (a.key.starts_with("headers.") && a.key.size() > 8) p.headers[a.key.substr(8)] = as_string(a);
            else fail(a.line, "unknown key 'provider." + a.key + "'");
        }
    }
    if (parsed.provider_tables > 0) config.providers = std::move(providers);
    if (config.port > 65535) throw ConfigError("server.port out of range");
    validate_registry(config.providers);
    return config;
}

ServiceConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path.parent_path());
}

EnvLookup process_environment() {
    return [](const std::string& name) -> std::optional<std::string> {
        if (const char* v = std::getenv(name.c_str())) return std::string(v);
        return std::nullopt;
    };
}

void apply_env_overrides(ServiceConfig& config, const EnvLookup& env) {
    auto integer = [&](const std::string& name, std::int64_t min) -> std::optional<std::int64_t> {
        const auto v = env(name);
        if (!v) return std::nullopt;
        try {
            std::size_t used = 0;
            const auto n = std::stoll(*v, &used);
            if (used != v->size() || n < min) throw std::invalid_argument(name);
            return n;
        } catch (const std::exception&) {
            throw ConfigError(name + " must be an integer >= " + std::to_string(min));
        }
    };

    if (auto v = env("METASEARCH_DICTIONARY")) config.dictionary_path = *v;
    if (auto v = env("METASEARCH_CORPUS")) config.corpus_path = *v;
    if (auto v = env("METASEARCH_STOPWORDS")) config.stopwords_path = std::filesystem::path(*v);
    if (auto v = env("METASEARCH_HISTORY")) config.history_path = std::filesystem::path(*v);
    if (auto v = env("METASEARCH_STRATEGY")) config.strategy = strategy_from(*v, "METASEARCH_STRATEGY");
    if (auto v = env("METASEARCH_HOST")) config.host = *v;
    if (auto v = env("METASEARCH_CACHE_ENABLED")) {
        if (*v == "1" || *v == "true") config.cache_enabled = true;
        else if (*v == "0" || *v == "false") config.cache_enabled = false;
        else throw ConfigError("METASEARCH_CACHE_ENABLED must be true/false/1/0");
    }
    if (auto n = integer("METASEARCH_DEFAULT_K", 1)) config.default_k = static_cast<std::size_t>(*n);
    if (auto n = integer("METASEARCH_CACHE_TTL_MS", 1)) config.cache_ttl_ms = *n;
    if (auto n = integer("METASEARCH_CACHE_CAPACITY", 1)) config.cache_capacity = static_cast<std::size_t>(*n);
    if (auto n = integer("METASEARCH_PORT", 0)) {
        if (*n > 65535) throw ConfigError("METASEARCH_PORT out of range");
        config.port = static_cast<int>(*n);
    }
}

}  // namespace metasearch

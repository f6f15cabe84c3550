#include "metasearch/cli.hpp"

#include <csignal>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "metasearch/config.hpp"
#include "metasearch/http_server.hpp"
#include "metasearch/parsers.hpp"
#include "metasearch/service.hpp"
#include "metasearch/simengine.hpp"

namespace metasearch {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct GlobalOptions {
    std::string config_path;
    bool json = false;
    std::size_t k = 0;
    std::string strategy;
    std::string user;
    std::int64_t now_ms = 0;
    bool no_cache = false;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ServiceConfig resolve_config(const GlobalOptions& g) {
    ServiceConfig config = g.config_path.empty() ? ServiceConfig::defaults() : load_config(g.config_path);
    apply_env_overrides(config, process_environment());
    if (g.k > 0) config.default_k = g.k;
    if (!g.strategy.empty()) {
        const auto s = parse_expansion_strategy(g.strategy);
        if (!s) throw UsageError("--strategy must be meaning_only or concatenated");
        config.strategy = *s;
    }
    if (g.no_cache) config.cache_enabled = false;
    return config;
}

std::shared_ptr<const Clock> make_clock(const GlobalOptions& g) {
    if (g.now_ms > 0) return std::make_shared<ManualClock>(g.now_ms);
    return std::make_shared<SystemClock>();
}

void print_table(std::ostream& out, const SearchResponse& r) {
    out << "query: " << r.query << "  (reduced: " << r.reduced_query << ", pivot: " << r.pivot_word << ")\n";
    for (std::size_t i = 0; i < r.clusters.size(); ++i) {
        const auto& c = r.clusters[i];
        out << "\n[" << (i + 1) << "] " << c.cluster_query.provider_query << "  <" << to_string(c.sense.pos)
            << ": " << c.sense.gloss << ">";
        if (!c.category.empty()) out << "  category=" << c.category;
        out << "\n";
        if (c.results.empty()) {
            out << "    (no results)\n";
            continue;
        }
        out << "    " << std::left << std::setw(4) << "#" << std::setw(7) << "count" << std::setw(6) << "rank"
            << "url / title\n";
        for (std::size_t j = 0; j < c.results.size(); ++j) {
            const auto& res = c.results[j];
            out << "    " << std::setw(4) << (j + 1) << std::setw(7) << res.count << std::setw(6) << res.best_rank
                << res.url << "\n" << std::string(21, ' ') << res.title << "\n";
        }
    }
    out << "\nproviders:";
    for (const auto& s : r.provider_status) {
        out << " " << s.provider << "=" << to_string(s.status) << "(" << s.elapsed_ms << "ms)";
    }
    out << (r.served_from_cache ? "  [cached]\n" : "\n");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

HttpServer* g_running_server = nullptr;

void handle_stop_signal(int) {
    if (g_running_server) g_running_server->stop();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sense-clustered metasearch", "metasearch"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--config", g.config_path, "TOML-style configuration file");
    app.add_flag("--json", g.json, "Print JSON instead of a table");
    app.add_option("--k", g.k, "Results requested per provider")->check(CLI::Range(1, 1000));
    app.add_option("--strategy", g.strategy, "meaning_only or concatenated");
    app.add_option("--user", g.user, "User id for history-biased cluster order");
    app.add_option("--now", g.now_ms, "Pin the clock to this epoch-ms value")->check(CLI::PositiveNumber);
    app.add_flag("--no-cache", g.no_cache, "Disable the response cache");

    std::string query;
    auto* search = app.add_subcommand("search", "Run the clustered metasearch pipeline");
    search->add_option("query", query, "Search query")->required();

    std::string senses_query;
    auto* senses = app.add_subcommand("senses", "List dictionary senses for a query's pivot word");
    senses->add_option("query", senses_query, "Word or query")->required();

    std::string corpus_path;
    auto* index = app.add_subcommand("index", "Index a JSON Lines corpus and print statistics");
    index->add_option("corpus", corpus_path, "Corpus file")->required();

    std::string fixture_path;
    std::string kind_name;
    std::size_t limit = 20;
    std::string provider_id = "fixture";
    auto* parse = app.add_subcommand("parse", "Parse a saved result page");
    parse->add_option("file", fixture_path, "Result page file")->required();
    parse->add_option("--kind", kind_name, "json, html or rss")->required();
    parse->add_option("--limit", limit, "Maximum links")->check(CLI::PositiveNumber);
    parse->add_option("--provider", provider_id, "Provider id to stamp on links");

    std::string host;
    int port = -1;
    auto* serve = app.add_subcommand("serve", "Serve the JSON API over HTTP");
    serve->add_option("--host", host, "Listen address");
    serve->add_option("--port", port, "Listen port")->check(CLI::Range(0, 65535));

    auto* providers = app.add_subcommand("providers", "List configured providers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream cli_out;
        std::ostringstream cli_err;
        const int code = app.exit(e, cli_out, cli_err);
        out << cli_out.str();
        err << cli_err.str();
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*search) {
            if (normalize_text(query).empty()) throw UsageError("search query must not be empty");
            SearchService service(resolve_config(g), make_clock(g));
            SearchRequest request{query, std::nullopt, std::nullopt, std::nullopt};
            if (!g.user.empty()) request.user_id = g.user;
            const auto response = service.handle_search(request);
            if (g.json) {
                out << serialize(response) << "\n";
            } else {
                print_table(out, response);
            }
        } else if (*senses) {
            if (normalize_text(senses_query).empty()) throw UsageError("query must not be empty");
            const auto config = resolve_config(g);
            const auto clock = make_clock(g);
            ServiceParts parts;
            parts.clock = clock;
            parts.inventory = std::make_shared<const SenseInventory>(load_inventory(config.dictionary_path, *clock));
            if (config.stopwords_path) parts.stopwords = StopwordSet::load(*config.stopwords_path);
            SearchService service(config, std::move(parts));
            const auto result = service.handle_senses(senses_query);
            if (g.json) {
                out << nlohmann::json(result).dump() << "\n";
            } else {
                for (const auto& s : result.senses) {
                    out << s.headword << "\t" << to_string(s.pos) << "\t" << s.gloss
                        << (s.is_fallback ? "\t(fallback)" : "") << "\n";
                }
            }
        } else if (*index) {
            const auto idx = index_corpus(load_corpus(corpus_path));
            if (g.json) {
                out << nlohmann::json{{"doc_count", idx.doc_count()}, {"term_count", idx.term_count()}}.dump()
                    << "\n";
            } else {
                out << "doc_count " << idx.doc_count() << "\n" << "term_count " << idx.term_count() << "\n";
            }
        } else if (*parse) {
            const auto kind = parse_provider_kind(kind_name);
            if (!kind || *kind == ProviderKind::simulated) throw UsageError("--kind must be json, html or rss");
            const auto links = parse_results(read_file(fixture_path), *kind, provider_id, limit);
            if (g.json) {
                auto rows = nlohmann::json::array();
                for (const auto& l : links) {
                    rows.push_back({{"rank", l.rank}, {"url", l.url}, {"title", l.title},
                                    {"snippet", l.snippet}, {"source_engine", l.source_engine}});
                }
                out << rows.dump() << "\n";
            } else {
                for (const auto& l : links) out << l.rank << "\t" << l.url << "\t" << l.title << "\n";
            }
        } else if (*serve) {
            auto config = resolve_config(g);
            if (!host.empty()) config.host = host;
            if (port >= 0) config.port = port;
            SearchService service(config, make_clock(g));
            HttpServer server(service);
            g_running_server = &server;
            std::signal(SIGINT, handle_stop_signal);
            std::signal(SIGTERM, handle_stop_signal);
            err << "listening on " << config.host << ":" << config.port << "\n";
            const bool ok = server.listen(config.host, config.port);
            g_running_server = nullptr;
            if (!ok) {
                err << "error: cannot listen on " << config.host << ":" << config.port << "\n";
                return kExitFailure;
            }
        } else if (*providers) {
            const auto config = resolve_config(g);
            if (g.json) {
                out << nlohmann::json{{"providers", config.providers}}.dump() << "\n";
            } else {
                for (const auto& p : config.providers) {
                    out << p.id << "\t" << to_string(p.kind) << "\t" << p.endpoint << "\t" << p.timeout_ms
                        << "ms\t" << (p.enabled ? "enabled" : "disabled") << "\n";
                }
            }
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ServiceError& e) {
        err << "error: " << e.body().dump() << "\n";
        return e.status() < 500 ? kExitUsage : kExitFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace metasearch

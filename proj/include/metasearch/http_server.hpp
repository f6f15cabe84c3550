#pragma once

#include <memory>
#include <string>

#include "metasearch/service.hpp"

namespace httplib {
class Server;
}

namespace metasearch {

/// JSON-over-HTTP front for a SearchService:
///   GET  /api/search?q=&k=&strategy=&user=
///   GET  /api/senses?q=
///   POST /api/history     {user_id, query, chosen_category}
///   GET  /api/providers
///   GET  /api/healthz
/// Errors are {code, message, detail} with a 4xx/5xx status.
class HttpServer {
public:
    explicit HttpServer(SearchService& service);
    ~HttpServer();

    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    // Blocks until stop(). Returns false if the address cannot be bound.
    bool listen(const std::string& host, int port);

    // Binds an ephemeral port and returns it (or -1); then call listen_after_bind().
    int bind_to_any_port(const std::string& host);
    bool listen_after_bind();

    void stop();
    bool is_running() const;
    void wait_until_ready() const;

private:
    SearchService& service_;
    std::unique_ptr<httplib::Server> server_;
};

}  // namespace metasearch

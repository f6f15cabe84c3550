#include "metasearch/http_server.hpp"

#include <httplib.h>

namespace metasearch {
namespace {

constexpr const char* kJson = "application/json; charset=utf-8";

void send_json(httplib::Response& res, int status, const nlohmann::json& body) {
    res.status = status;
    res.set_content(body.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace), kJson);
}

void send_error(httplib::Response& res, const ServiceError& e) {
    send_json(res, e.status(), e.body());
}

std::optional<std::string> param(const httplib::Request& req, const char* name) {
    if (!req.has_param(name)) return std::nullopt;
    return req.get_param_value(name);
}

SearchRequest parse_search_request(const httplib::Request& req) {
    SearchRequest request;
    request.query = param(req, "q").value_or("");
    if (auto k = param(req, "k"); k && !k->empty()) {
        try {
            std::size_t used = 0;
            const auto n = std::stoll(*k, &used);
            if (used != k->size() || n < 1) throw std::invalid_argument("k");
            request.k = static_cast<std::size_t>(n);
        } catch (const std::exception&) {
            throw ServiceError(400, "invalid_k", "k must be a positive integer");
        }
    }
    if (auto s = param(req, "strategy"); s && !s->empty()) {
        request.strategy = parse_expansion_strategy(*s);
        if (!request.strategy) {
            throw ServiceError(400, "invalid_strategy", "strategy must be meaning_only or concatenated");
        }
    }
    if (auto u = param(req, "user"); u && !u->empty()) request.user_id = *u;
    return request;
}

template <typename Handler>
httplib::Server::Handler guarded(Handler handler) {
    return [handler](const httplib::Request& req, httplib::Response& res) {
        try {
            handler(req, res);
        } catch (const ServiceError& e) {
            send_error(res, e);
        } catch (const std::exception& e) {
            send_error(res, ServiceError(500, "internal_error", e.what()));
        }
    };
}

}  // namespace

HttpServer::HttpServer(SearchService& service)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
    auto& svc = service_;

    server_->Get("/api/search", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
        const auto response = svc.handle_search(parse_search_request(req));
        res.status = 200;
        res.set_content(serialize(response), kJson);
    }));

    server_->Get("/api/senses", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
        send_json(res, 200, svc.handle_senses(param(req, "q").value_or("")));
    }));

    server_->Post("/api/history", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
        nlohmann::json body;
        try {
            body = nlohmann::json::parse(req.body);
        } catch (const nlohmann::json::parse_error& e) {
            throw ServiceError(400, "invalid_json", "request body is not JSON", e.what());
        }
        send_json(res, 201, svc.handle_history_post(body));
    }));

    server_->Get("/api/providers", guarded([&svc](const httplib::Request&, httplib::Response& res) {
        send_json(res, 200, nlohmann::json{{"providers", svc.handle_providers()}});
    }));

    server_->Get("/api/healthz", guarded([&svc](const httplib::Request&, httplib::Response& res) {
        send_json(res, 200, svc.handle_health());
    }));

    server_->set_error_handler([](const httplib::Request& req, httplib::Response& res) {
        if (!res.body.empty()) return;
        const int status = res.status;
        const auto code = status == 404 ? "not_found" : "http_error";
        send_json(res, status,
                  ServiceError(status, code, "no route for " + req.method + " " + req.path).body());
    });
}

HttpServer::~HttpServer() { stop(); }

bool HttpServer::listen(const std::string& host, int port) { return server_->listen(host, port); }

int HttpServer::bind_to_any_port(const std::string& host) { return server_->bind_to_any_port(host); }

bool HttpServer::listen_after_bind() { return server_->listen_after_bind(); }

void HttpServer::stop() {
    if (server_) server_->stop();
}

bool HttpServer::is_running() const { return server_->is_running(); }

void HttpServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace metasearch

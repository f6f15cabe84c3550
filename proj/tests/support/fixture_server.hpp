#pragma once

// Local HTTP server standing in for remote search engines.

#include <chrono>
#include <condition_variable>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>

#include <httplib.h>

namespace testsupport {

inline std::string fixture_path(const std::string& name) {
    return std::string(METASEARCH_FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name), std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

class FixtureServer {
public:
    FixtureServer() {
        serve_file("/json", "results.json", "application/json");
        serve_file("/html", "results.html", "text/html");
        serve_file("/rss", "results.rss", "application/rss+xml");
        serve_file("/truncated", "results_truncated.json", "application/json");
        server_.Get("/fail", [](const httplib::Request&, httplib::Response& res) {
            res.status = 503;
            res.set_content("unavailable", "text/plain");
        });
        server_.Get("/echo", [this](const httplib::Request& req, httplib::Response& res) {
            {
                std::lock_guard lock(mutex_);
                last_query_ = req.get_param_value("q");
                last_k_ = req.get_param_value("k");
                last_api_key_ = req.get_header_value("X-Api-Key");
            }
            res.set_content(R"({"results":[{"url":"http://echo.example/","title":"echo"}]})", "application/json");
        });
        server_.Get("/stall", [this](const httplib::Request&, httplib::Response& res) {
            std::unique_lock lock(mutex_);
            released_cv_.wait_for(lock, std::chrono::seconds(10), [this] { return released_; });
            res.set_content(R"({"results":[]})", "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    ~FixtureServer() {
        {
            std::lock_guard lock(mutex_);
            released_ = true;
        }
        released_cv_.notify_all();
        server_.stop();
        if (thread_.joinable()) thread_.join();
    }

    std::string url(const std::string& path) const {
        return "http://127.0.0.1:" + std::to_string(port_) + path;
    }

    std::string last_query() const {
        std::lock_guard lock(mutex_);
        return last_query_;
    }
    std::string last_k() const {
        std::lock_guard lock(mutex_);
        return last_k_;
    }
    std::string last_api_key() const {
        std::lock_guard lock(mutex_);
        return last_api_key_;
    }

private:
    void serve_file(const std::string& route, const std::string& file, const std::string& type) {
        const auto body = read_fixture(file);
        server_.Get(route, [body, type](const httplib::Request&, httplib::Response& res) {
            res.set_content(body, type);
        });
    }

    httplib::Server server_;
    std::thread thread_;
    int port_ = -1;
    mutable std::mutex mutex_;
    std::condition_variable released_cv_;
    bool released_ = false;
    std::string last_query_;
    std::string last_k_;
    std::string last_api_key_;
};

}  // namespace testsupport

#include <gtest/gtest.h>

#include <chrono>
#include <thread>

#include <httplib.h>

#include "metasearch/aggregator.hpp"
#include "metasearch/errors.hpp"
#include "metasearch/http_server.hpp"
#include "metasearch/service.hpp"
#include "support/aggregation_oracle.hpp"
#include "support/fixture_server.hpp"

using namespace metasearch;
using namespace std::chrono_literals;

namespace {

constexpr std::int64_t kNow = 1'700'100'000'000;

ServiceConfig base_config() {
    auto config = ServiceConfig::defaults();
    config.cache_enabled = false;
    return config;
}

std::vector<std::string> cluster_queries(const SearchResponse& r) {
    std::vector<std::string> out;
    for (const auto& c : r.clusters) out.push_back(c.cluster_query.provider_query);
    return out;
}

std::vector<std::string> cluster_categories(const SearchResponse& r) {
    std::vector<std::string> out;
    for (const auto& c : r.clusters) out.push_back(c.category);
    return out;
}

int expect_service_error(const std::function<void()>& fn, const std::string& code) {
    try {
        fn();
    } catch (const ServiceError& e) {
        EXPECT_EQ(e.code(), code);
        return e.status();
    }
    ADD_FAILURE() << "expected ServiceError " << code;
    return 0;
}

ProviderDescriptor simulated(std::string id, std::string endpoint, std::int64_t timeout_ms) {
    ProviderDescriptor d;
    d.id = std::move(id);
    d.endpoint = std::move(endpoint);
    d.timeout_ms = timeout_ms;
    return d;
}

}  // namespace

TEST(SearchService, BankGivesThreeSenseClusters) {
    SearchService service(base_config(), std::make_shared<ManualClock>(kNow));
    const auto resp = service.handle_search({"bank"});
    EXPECT_EQ(resp.query, "bank");
    EXPECT_EQ(resp.pivot_word, "bank");
    ASSERT_EQ(resp.clusters.size(), 3u);
    EXPECT_EQ(cluster_queries(resp), (std::vector<std::string>{"bank financial institution", "bank sides water body",
                                                               "bank rely upon"}));
    EXPECT_EQ(cluster_categories(resp), (std::vector<std::string>{"finance", "nature", "society"}));
    ASSERT_EQ(resp.provider_status.size(), 3u);
    for (const auto& s : resp.provider_status) EXPECT_EQ(s.status, PageStatus::ok);
    for (const auto& c : resp.clusters) {
        ASSERT_FALSE(c.results.empty());
        for (std::size_t i = 1; i < c.results.size(); ++i) EXPECT_GE(c.results[i - 1].count, c.results[i].count);
    }
    EXPECT_FALSE(resp.served_from_cache);
}

TEST(SearchService, ClustersMatchPerClusterOracle) {
    auto config = base_config();
    auto parts = assemble(config, std::make_shared<ManualClock>(kNow));
    const auto providers = parts.providers;
    SearchService service(config, std::move(parts));
    const auto resp = service.handle_search({"bank"});
    for (const auto& c : resp.clusters) {
        const auto pages = fan_out(providers, c.cluster_query.provider_query, config.default_k);
        EXPECT_TRUE(testsupport::matches_oracle(c.results, testsupport::oracle_aggregate(pages)))
            << c.cluster_query.provider_query;
    }
}

TEST(SearchService, MultiwordQueryReducesAndPivots) {
    SearchService service(base_config(), std::make_shared<ManualClock>(kNow));
    const auto bangalore = service.handle_search({"Where is Bangalore"});
    EXPECT_EQ(bangalore.reduced_query, "bangalore");
    EXPECT_EQ(bangalore.pivot_word, "bangalore");
    ASSERT_EQ(bangalore.clusters.size(), 1u);
    EXPECT_TRUE(bangalore.clusters[0].sense.is_fallback);
    EXPECT_EQ(bangalore.clusters[0].category, "geography");

    const auto river = service.handle_search({"river bank"});
    EXPECT_EQ(river.pivot_word, "bank");
    EXPECT_EQ(river.clusters.size(), 3u);
    EXPECT_EQ(river.clusters[0].cluster_query.provider_query, "river bank financial institution");
}

TEST(SearchService, DeterministicWithFixedClock) {
    SearchService a(base_config(), std::make_shared<ManualClock>(kNow));
    SearchService b(base_config(), std::make_shared<ManualClock>(kNow));
    EXPECT_EQ(serialize(a.handle_search({"keyboard"})), serialize(b.handle_search({"keyboard"})));
}

TEST(SearchService, CacheServesRepeatQueries) {
    auto config = base_config();
    config.cache_enabled = true;
    config.cache_ttl_ms = 1000;
    auto clock = std::make_shared<ManualClock>(kNow);
    SearchService service(config, clock);
    const auto first = service.handle_search({"bank"});
    const auto second = service.handle_search({"  BANK "});
    EXPECT_FALSE(first.served_from_cache);
    EXPECT_TRUE(second.served_from_cache);
    EXPECT_EQ(second.clusters, first.clusters);
    EXPECT_FALSE(service.handle_search({"bank", 5}).served_from_cache);
    EXPECT_FALSE(service.handle_search({"bank", std::nullopt, std::nullopt, ExpansionStrategy::meaning_only})
                     .served_from_cache);
    clock->advance(1000);
    EXPECT_FALSE(service.handle_search({"bank"}).served_from_cache);
}

TEST(SearchService, RejectsBadRequests) {
    SearchService service(base_config(), std::make_shared<ManualClock>(kNow));
    EXPECT_EQ(expect_service_error([&] { service.handle_search({""}); }, "empty_query"), 400);
    EXPECT_EQ(expect_service_error([&] { service.handle_search({" ?! "}); }, "empty_query"), 400);
    EXPECT_EQ(expect_service_error([&] { service.handle_search({"bank", 0}); }, "invalid_k"), 400);
    EXPECT_EQ(expect_service_error([&] { service.handle_search({"bank", 101}); }, "invalid_k"), 400);
    EXPECT_EQ(expect_service_error([&] { (void)service.handle_senses(""); }, "empty_query"), 400);
}

TEST(SearchService, AllProvidersFailingIs502) {
    auto config = base_config();
    config.providers = {simulated("slow1", "tf?delay_ms=1000", 20), simulated("slow2", "tfidf?delay_ms=1000", 20)};
    SearchService service(config, std::make_shared<ManualClock>(kNow));
    try {
        service.handle_search({"bank"});
        FAIL() << "expected 502";
    } catch (const ServiceError& e) {
        EXPECT_EQ(e.status(), 502);
        EXPECT_EQ(e.code(), "providers_failed");
        EXPECT_EQ(e.body()["detail"]["provider_status"].size(), 2u);
    }
}

TEST(SearchService, NoEnabledProvidersIs503) {
    auto config = base_config();
    for (auto& p : config.providers) p.enabled = false;
    SearchService service(config, std::make_shared<ManualClock>(kNow));
    EXPECT_EQ(expect_service_error([&] { service.handle_search({"bank"}); }, "no_providers"), 503);
}

TEST(SearchService, StalledProviderIsBoundedByItsTimeout) {
    auto config = base_config();
    config.providers = {simulated("alpha", "tf", 2000), simulated("stalled", "tfidf?delay_ms=5000", 150),
                        simulated("gamma", "title_boost", 2000)};
    SearchService service(config);
    const auto start = std::chrono::steady_clock::now();
    const auto resp = service.handle_search({"bank"});
    EXPECT_LT(std::chrono::steady_clock::now() - start, 1500ms);
    ASSERT_EQ(resp.provider_status.size(), 3u);
    EXPECT_EQ(resp.provider_status[1].status, PageStatus::timeout);
    EXPECT_EQ(resp.clusters.size(), 3u);
}

TEST(SearchService, HistoryBiasReordersClustersForThatUserOnly) {
    auto config = base_config();
    config.cache_enabled = true;
    config.history_path = testsupport::fixture_path("history_alice.jsonl");
    SearchService service(config, std::make_shared<ManualClock>(kNow));
    const auto plain = service.handle_search({"keyboard"});
    ASSERT_EQ(cluster_categories(plain), (std::vector<std::string>{"technology", "music"}));
    const auto alice = service.handle_search({"keyboard", std::nullopt, std::string("alice")});
    EXPECT_EQ(cluster_categories(alice), (std::vector<std::string>{"music", "technology"}));
    const auto carol = service.handle_search({"keyboard", std::nullopt, std::string("carol")});
    EXPECT_EQ(cluster_categories(carol), (std::vector<std::string>{"technology", "music"}));
    // The cached copy is unbiased.
    const auto again = service.handle_search({"keyboard"});
    EXPECT_TRUE(again.served_from_cache);
    EXPECT_EQ(cluster_categories(again), (std::vector<std::string>{"technology", "music"}));
}

TEST(SearchService, HistoryPostIsStampedAndValidated) {
    auto clock = std::make_shared<ManualClock>(kNow);
    SearchService service(base_config(), clock);
    const auto entry = service.handle_history_post({{"user_id", "dave"}, {"query", "bank"}, {"chosen_category", "finance"}});
    EXPECT_EQ(entry.timestamp_ms, kNow);
    EXPECT_EQ(service.history().entries_for("dave").size(), 1u);
    EXPECT_EQ(expect_service_error([&] { service.handle_history_post({{"user_id", "dave"}, {"query", "bank"}}); },
                                   "invalid_history_entry"),
              400);
    EXPECT_EQ(expect_service_error([&] { service.handle_history_post({{"user_id", 5}, {"chosen_category", "x"}}); },
                                   "invalid_history_entry"),
              400);
    EXPECT_EQ(expect_service_error([&] { service.handle_history_post(nlohmann::json::array()); },
                                   "invalid_history_entry"),
              400);
}

TEST(SearchService, SensesAndProviders) {
    SearchService service(base_config(), std::make_shared<ManualClock>(kNow));
    const auto senses = service.handle_senses("river bank");
    EXPECT_EQ(senses.term, "bank");
    EXPECT_EQ(senses.senses.size(), 3u);
    EXPECT_EQ(service.handle_providers().size(), 3u);
    EXPECT_EQ(service.handle_health(), (nlohmann::json{{"status", "ok"}}));
}

TEST(SearchService, ReplaceInventoryTakesEffect) {
    SearchService service(base_config(), std::make_shared<ManualClock>(kNow));
    service.replace_inventory(std::make_shared<SenseInventory>(
        std::vector<Sense>{{"bank", PartOfSpeech::noun, "financial institution", false}}, InventorySource::remote, kNow));
    EXPECT_EQ(service.handle_search({"bank"}).clusters.size(), 1u);
}

TEST(SearchService, CacheSnapshotSurvivesRestart) {
    auto config = base_config();
    config.cache_enabled = true;
    config.cache_snapshot_path = std::filesystem::temp_directory_path() / "metasearch_service_cache.json";
    std::filesystem::remove(*config.cache_snapshot_path);
    auto clock = std::make_shared<ManualClock>(kNow);
    {
        SearchService service(config, clock);
        service.handle_search({"bank"});
    }
    SearchService restarted(config, clock);
    EXPECT_TRUE(restarted.handle_search({"bank"}).served_from_cache);
    std::filesystem::remove(*config.cache_snapshot_path);
}

class HttpApi : public ::testing::Test {
protected:
    void SetUp() override {
        auto config = base_config();
        config.cache_enabled = true;
        service_ = std::make_unique<SearchService>(config, std::make_shared<ManualClock>(kNow));
        server_ = std::make_unique<HttpServer>(*service_);
        port_ = server_->bind_to_any_port("127.0.0.1");
        ASSERT_GT(port_, 0);
        thread_ = std::thread([this] { server_->listen_after_bind(); });
        server_->wait_until_ready();
        client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    }

    void TearDown() override {
        server_->stop();
        if (thread_.joinable()) thread_.join();
    }

    std::unique_ptr<SearchService> service_;
    std::unique_ptr<HttpServer> server_;
    std::unique_ptr<httplib::Client> client_;
    std::thread thread_;
    int port_ = -1;
};

TEST_F(HttpApi, SearchReturnsSerializedResponse) {
    const auto res = client_->Get("/api/search?q=bank&k=10");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    EXPECT_TRUE(res->get_header_value("Content-Type").starts_with("application/json"));
    const auto body = nlohmann::json::parse(res->body);
    EXPECT_EQ(body["clusters"].size(), 3u);
    EXPECT_EQ(body["clusters"][0]["cluster_query"]["provider_query"], "bank financial institution");
    const auto direct = service_->handle_search({"bank", 10});
    EXPECT_EQ(body.get<SearchResponse>().clusters, direct.clusters);
}

TEST_F(HttpApi, ErrorsAreJson) {
    for (const auto& [path, status, code] : std::vector<std::tuple<std::string, int, std::string>>{
             {"/api/search?q=", 400, "empty_query"},
             {"/api/search", 400, "empty_query"},
             {"/api/search?q=bank&k=abc", 400, "invalid_k"},
             {"/api/search?q=bank&k=0", 400, "invalid_k"},
             {"/api/search?q=bank&strategy=both", 400, "invalid_strategy"},
             {"/api/nope", 404, "not_found"}}) {
        const auto res = client_->Get(path);
        ASSERT_TRUE(res) << path;
        EXPECT_EQ(res->status, status) << path;
        const auto body = nlohmann::json::parse(res->body);
        EXPECT_EQ(body["code"], code) << path;
        EXPECT_TRUE(body.contains("message"));
        EXPECT_TRUE(body.contains("detail"));
    }
}

TEST_F(HttpApi, SensesProvidersHealth) {
    auto res = client_->Get("/api/senses?q=bank");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    EXPECT_EQ(nlohmann::json::parse(res->body)["senses"].size(), 3u);

    res = client_->Get("/api/providers");
    ASSERT_TRUE(res);
    EXPECT_EQ(nlohmann::json::parse(res->body)["providers"].size(), 3u);

    res = client_->Get("/api/healthz");
    ASSERT_TRUE(res);
    EXPECT_EQ(nlohmann::json::parse(res->body), (nlohmann::json{{"status", "ok"}}));
}

TEST_F(HttpApi, HistoryPost) {
    auto res = client_->Post("/api/history", R"({"user_id":"erin","query":"bank","chosen_category":"finance"})",
                             "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 201);
    EXPECT_EQ(nlohmann::json::parse(res->body)["timestamp"], kNow);
    EXPECT_EQ(service_->history().entries_for("erin").size(), 1u);

    res = client_->Post("/api/history", R"({"user_id":"erin","query":"bank"})", "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 400);
    EXPECT_EQ(nlohmann::json::parse(res->body)["code"], "invalid_history_entry");

    res = client_->Post("/api/history", "{not json", "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 400);
    EXPECT_EQ(nlohmann::json::parse(res->body)["code"], "invalid_json");
}

TEST_F(HttpApi, ConcurrentRequests) {
    std::vector<std::thread> threads;
    std::atomic<int> ok{0};
    for (int t = 0; t < 4; ++t) {
        threads.emplace_back([this, &ok, t] {
            httplib::Client client("127.0.0.1", port_);
            const auto res = client.Get(t % 2 ? "/api/search?q=keyboard" : "/api/search?q=bank");
            if (res && res->status == 200) ++ok;
        });
    }
    for (auto& th : threads) th.join();
    EXPECT_EQ(ok.load(), 4);
}

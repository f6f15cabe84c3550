#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "metasearch/aggregator.hpp"
#include "metasearch/errors.hpp"
#include "support/aggregation_oracle.hpp"

using namespace metasearch;

namespace {

EngineResultPage page(std::string provider, const std::vector<std::string>& urls) {
    EngineResultPage p;
    p.provider = provider;
    p.query = "q";
    for (std::size_t i = 0; i < urls.size(); ++i) {
        p.links.push_back(ResultLink{"http://" + urls[i] + "/", urls[i] + " from " + provider, "", provider,
                                     static_cast<std::uint32_t>(i + 1)});
    }
    return p;
}

EngineResultPage failed(std::string provider, PageStatus status) {
    EngineResultPage p;
    p.provider = std::move(provider);
    p.status = status;
    return p;
}

std::vector<std::string> order(const std::vector<AggregatedResult>& results) {
    std::vector<std::string> out;
    for (const auto& r : results) out.push_back(r.url.substr(7, r.url.size() - 8));
    return out;
}

std::vector<std::tuple<std::string, std::uint32_t, std::uint32_t>> skeleton(const std::vector<AggregatedResult>& rs) {
    std::vector<std::tuple<std::string, std::uint32_t, std::uint32_t>> out;
    for (const auto& r : rs) out.emplace_back(r.url, r.count, r.best_rank);
    return out;
}

ClusterQuery cq(std::string gloss) {
    ClusterQuery q;
    q.sense = Sense{"bank", PartOfSpeech::noun, gloss, false};
    q.provider_query = "bank " + gloss;
    return q;
}

}  // namespace

TEST(Aggregate, CountThenBestRank) {
    const std::vector<EngineResultPage> pages{page("e1", {"a", "b", "c"}), page("e2", {"b", "c", "d"}),
                                              page("e3", {"c", "e", "a"})};
    const auto out = aggregate(pages);
    // Hand count: c 3 engines; a and b 2 engines, both best rank 1, so url order;
    // e best rank 2 (e3) precedes d best rank 3 (e2).
    EXPECT_EQ(order(out), (std::vector<std::string>{"c", "a", "b", "e", "d"}));
    std::map<std::string, std::uint32_t> counts;
    for (const auto& r : out) counts[r.url] = r.count;
    EXPECT_EQ(counts["http://c/"], 3u);
    EXPECT_EQ(counts["http://a/"], 2u);
    EXPECT_EQ(counts["http://b/"], 2u);
    EXPECT_EQ(counts["http://d/"], 1u);
    EXPECT_EQ(counts["http://e/"], 1u);
    EXPECT_EQ(out[0].sources, (std::vector<std::string>{"e1", "e2", "e3"}));
    EXPECT_EQ(out[1].best_rank, 1u);
    EXPECT_EQ(out[1].title, "a from e1");
    EXPECT_TRUE(testsupport::matches_oracle(out, testsupport::oracle_aggregate(pages)));
}

TEST(Aggregate, SingleEngineKeepsOrder) {
    const auto out = aggregate(std::vector{page("e1", {"x", "y", "z"})});
    EXPECT_EQ(order(out), (std::vector<std::string>{"x", "y", "z"}));
    for (const auto& r : out) EXPECT_EQ(r.count, 1u);
}

TEST(Aggregate, IdenticalEnginesDoubleCounts) {
    const auto out = aggregate(std::vector{page("e1", {"x", "y", "z"}), page("e2", {"x", "y", "z"})});
    EXPECT_EQ(order(out), (std::vector<std::string>{"x", "y", "z"}));
    for (const auto& r : out) EXPECT_EQ(r.count, 2u);
    EXPECT_EQ(out[0].title, "x from e1");  // rank tie goes to the earlier page
}

TEST(Aggregate, DuplicatesWithinOneEngineCountOnce) {
    const auto out = aggregate(std::vector{page("e1", {"x", "y", "x"}), page("e2", {"y"})});
    EXPECT_EQ(order(out), (std::vector<std::string>{"y", "x"}));
    EXPECT_EQ(out[0].count, 2u);
    EXPECT_EQ(out[1].count, 1u);
    EXPECT_EQ(out[1].best_rank, 1u);
}

TEST(Aggregate, IgnoresFailedPages) {
    const auto out = aggregate(std::vector{failed("t", PageStatus::timeout), page("e1", {"x"})});
    EXPECT_EQ(order(out), (std::vector<std::string>{"x"}));
    EXPECT_THROW(aggregate(std::vector{failed("t", PageStatus::timeout), failed("p", PageStatus::parse_error)}),
                 EmptyInputError);
    EXPECT_THROW(aggregate(std::vector<EngineResultPage>{}), EmptyInputError);
}

TEST(Aggregate, OkPageWithoutLinksGivesEmptyResult) {
    EXPECT_TRUE(aggregate(std::vector{page("e1", {})}).empty());
}

TEST(Aggregate, MatchesOracleOnRandomInstances) {
    std::mt19937_64 rng(20240611);
    for (int i = 0; i < 300; ++i) {
        const auto pages = testsupport::random_instance(rng);
        const auto out = aggregate(pages);
        ASSERT_TRUE(testsupport::matches_oracle(out, testsupport::oracle_aggregate(pages))) << "instance " << i;

        // Count dominance.
        for (std::size_t j = 1; j < out.size(); ++j) ASSERT_GE(out[j - 1].count, out[j].count);

        // Conservation and union.
        std::set<std::pair<std::string, std::string>> pairs;
        std::set<std::string> input_urls;
        for (const auto& p : pages) {
            for (const auto& l : p.links) {
                pairs.emplace(p.provider, l.url);
                input_urls.insert(l.url);
            }
        }
        std::size_t total = 0;
        std::set<std::string> output_urls;
        for (const auto& r : out) {
            total += r.count;
            output_urls.insert(r.url);
            ASSERT_EQ(r.count, r.sources.size());
        }
        ASSERT_EQ(total, pairs.size());
        ASSERT_EQ(output_urls, input_urls);
    }
}

TEST(Aggregate, EngineOrderInvariance) {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 100; ++i) {
        auto pages = testsupport::random_instance(rng);
        const auto reference = skeleton(aggregate(pages));
        std::shuffle(pages.begin(), pages.end(), rng);
        ASSERT_EQ(skeleton(aggregate(pages)), reference);
    }
}

TEST(MajorityCategory, MostCommonLabelWithFirstSeenTieBreak) {
    const auto results = aggregate(std::vector{page("e1", {"f1", "m1", "f2", "m2", "x"})});
    const std::map<std::string, std::string> labels{{"http://f1/", "finance"}, {"http://f2/", "finance"},
                                                    {"http://m1/", "music"}, {"http://m2/", "music"}};
    const CategoryLookup lookup = [&](std::string_view url) -> std::optional<std::string> {
        const auto it = labels.find(std::string(url));
        if (it == labels.end()) return std::nullopt;
        return it->second;
    };
    EXPECT_EQ(majority_category(results, lookup), "finance");
    EXPECT_EQ(majority_category(results, lookup, 2), "finance");
    EXPECT_EQ(majority_category(std::span(results).subspan(1), lookup, 3), "music");
    EXPECT_EQ(majority_category(results, {}), "");
}

TEST(ClusterAndAggregate, OneClusterPerSenseInOrder) {
    std::vector<ClusterPages> clusters{
        {cq("financial institution"), {page("e1", {"a", "b"}), page("e2", {"b"})}},
        {cq("sides water body"), {page("e1", {"b", "c"}), failed("e2", PageStatus::timeout)}},
        {cq("rely upon"), {failed("e1", PageStatus::parse_error), failed("e2", PageStatus::timeout)}},
    };
    const auto resp = cluster_and_aggregate(clusters);
    ASSERT_EQ(resp.clusters.size(), 3u);
    EXPECT_EQ(resp.clusters[0].sense.gloss, "financial institution");
    EXPECT_EQ(order(resp.clusters[0].results), (std::vector<std::string>{"b", "a"}));
    EXPECT_EQ(order(resp.clusters[1].results), (std::vector<std::string>{"b", "c"}));  // no cross-cluster dedup
    EXPECT_TRUE(resp.clusters[2].results.empty());
    EXPECT_EQ(resp.provider_status,
              (std::vector<ProviderStatus>{{"e1", PageStatus::parse_error, 0}, {"e2", PageStatus::timeout, 0}}));
}

TEST(ClusterAndAggregate, SingleSenseSingleEngine) {
    const std::vector<ClusterPages> clusters{{cq("financial institution"), {page("e1", {"x", "y"})}}};
    const auto resp = cluster_and_aggregate(clusters);
    ASSERT_EQ(resp.clusters.size(), 1u);
    EXPECT_EQ(order(resp.clusters[0].results), (std::vector<std::string>{"x", "y"}));
}

TEST(ClusterAndAggregate, AllProvidersFailing) {
    const std::vector<ClusterPages> clusters{{cq("a"), {failed("e1", PageStatus::timeout)}},
                                             {cq("b"), {failed("e1", PageStatus::timeout)}}};
    EXPECT_THROW(cluster_and_aggregate(clusters), EmptyInputError);
    EXPECT_THROW(cluster_and_aggregate(std::vector<ClusterPages>{}), PreconditionError);
}

TEST(SummarizeProviderStatus, SlowestPageAndFirstFailure) {
    auto slow = page("e1", {"a"});
    slow.elapsed_ms = 40;
    auto fast = page("e1", {"a"});
    fast.elapsed_ms = 5;
    auto bad = failed("e2", PageStatus::transport_error);
    bad.elapsed_ms = 7;
    const std::vector<ClusterPages> clusters{{cq("a"), {fast, page("e2", {"a"})}}, {cq("b"), {slow, bad}}};
    EXPECT_EQ(summarize_provider_status(clusters),
              (std::vector<ProviderStatus>{{"e1", PageStatus::ok, 40}, {"e2", PageStatus::transport_error, 7}}));
}

#pragma once

// Brute-force reference for count-based aggregation, kept deliberately naive
// and independent of metasearch::aggregate.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "metasearch/response.hpp"
#include "metasearch/results.hpp"

namespace testsupport {

struct OracleRow {
    std::string url;
    std::uint32_t count = 0;
    std::uint32_t best_rank = 0;
    std::string title;
    std::string snippet;
    std::vector<std::string> sources;
};

inline std::vector<OracleRow> oracle_aggregate(const std::vector<metasearch::EngineResultPage>& pages) {
    std::set<std::string> urls;
    for (const auto& page : pages) {
        if (page.status != metasearch::PageStatus::ok) continue;
        for (const auto& link : page.links) urls.insert(link.url);
    }

    std::vector<OracleRow> rows;
    for (const auto& url : urls) {
        OracleRow row;
        row.url = url;
        std::set<std::string> engines;
        std::uint32_t best = UINT32_MAX;
        for (const auto& page : pages) {
            if (page.status != metasearch::PageStatus::ok) continue;
            for (const auto& link : page.links) {
                if (link.url != url) continue;
                engines.insert(page.provider);
                best = std::min(best, link.rank);
            }
        }
        // Attribution: first page (in list order) holding the best rank.
        bool attributed = false;
        for (const auto& page : pages) {
            if (page.status != metasearch::PageStatus::ok || attributed) continue;
            for (const auto& link : page.links) {
                if (link.url == url && link.rank == best) {
                    row.title = link.title;
                    row.snippet = link.snippet;
                    attributed = true;
                    break;
                }
            }
        }
        row.count = static_cast<std::uint32_t>(engines.size());
        row.best_rank = best;
        row.sources.assign(engines.begin(), engines.end());
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const OracleRow& a, const OracleRow& b) {
        return std::make_tuple(-static_cast<long>(a.count), a.best_rank, a.url) <
               std::make_tuple(-static_cast<long>(b.count), b.best_rank, b.url);
    });
    return rows;
}

inline bool matches_oracle(const std::vector<metasearch::AggregatedResult>& got,
                           const std::vector<OracleRow>& want) {
    if (got.size() != want.size()) return false;
    for (std::size_t i = 0; i < got.size(); ++i) {
        const auto& g = got[i];
        const auto& w = want[i];
        if (g.url != w.url || g.count != w.count || g.best_rank != w.best_rank || g.title != w.title ||
            g.snippet != w.snippet || g.sources != w.sources) {
            return false;
        }
    }
    return true;
}

// Random ok pages: `engines` engines, 5..50 links each drawn with replacement
// from an alphabet of `alphabet` URLs, ranks 1..n.
inline std::vector<metasearch::EngineResultPage> random_instance(std::mt19937_64& rng, int min_engines = 2,
                                                                 int max_engines = 5, int alphabet = 30) {
    std::uniform_int_distribution<int> engine_count(min_engines, max_engines);
    std::uniform_int_distribution<int> link_count(5, 50);
    std::uniform_int_distribution<int> url_pick(0, alphabet - 1);
    std::vector<metasearch::EngineResultPage> pages;
    const int engines = engine_count(rng);
    for (int e = 0; e < engines; ++e) {
        metasearch::EngineResultPage page;
        page.provider = "e" + std::to_string(e + 1);
        page.query = "q";
        const int n = link_count(rng);
        for (int r = 1; r <= n; ++r) {
            const int u = url_pick(rng);
            const auto url = "http://u" + std::to_string(u) + ".example/";
            page.links.push_back(metasearch::ResultLink{url, "t" + std::to_string(u) + "@" + page.provider,
                                                        "s" + std::to_string(r), page.provider,
                                                        static_cast<std::uint32_t>(r)});
        }
        pages.push_back(std::move(page));
    }
    return pages;
}

}  // namespace testsupport

#include "metasearch/aggregator.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "metasearch/errors.hpp"

namespace metasearch {
namespace {

struct Merged {
    AggregatedResult result;
    std::size_t best_page = 0;
};

}  // namespace

std::vector<AggregatedResult> aggregate(std::span<const EngineResultPage> pages) {
    std::unordered_map<std::string, Merged> merged;
    bool any_ok = false;

    for (std::size_t p = 0; p < pages.size(); ++p) {
        const auto& page = pages[p];
        if (page.status != PageStatus::ok) continue;
        any_ok = true;

        // Collapse within-engine duplicates to their best rank.
        std::map<std::string_view, const ResultLink*> best_in_page;
        for (const auto& link : page.links) {
            auto [it, inserted] = best_in_page.emplace(link.url, &link);
            if (!inserted && link.rank < it->second->rank) it->second = &link;
        }

        for (const auto& [url, link] : best_in_page) {
            auto [it, inserted] = merged.try_emplace(link->url);
            auto& m = it->second;
            auto& sources = m.result.sources;
            if (inserted) {
                m.result = AggregatedResult{link->url, link->title, link->snippet, 0, link->rank, {}};
                m.best_page = p;
            } else if (link->rank < m.result.best_rank) {
                m.result.best_rank = link->rank;
                m.result.title = link->title;
                m.result.snippet = link->snippet;
                m.best_page = p;
            }
            const auto pos = std::lower_bound(sources.begin(), sources.end(), page.provider);
            if (pos == sources.end() || *pos != page.provider) sources.insert(pos, page.provider);
            m.result.count = static_cast<std::uint32_t>(sources.size());
        }
    }
    if (!any_ok) throw EmptyInputError("no provider page with status ok to aggregate");

    std::vector<AggregatedResult> out;
    out.reserve(merged.size());
    for (auto& [url, m] : merged) out.push_back(std::move(m.result));
    std::sort(out.begin(), out.end(), [](const AggregatedResult& a, const AggregatedResult& b) {
        if (a.count != b.count) return a.count > b.count;
        if (a.best_rank != b.best_rank) return a.best_rank < b.best_rank;
        return a.url < b.url;
    });
    return out;
}

std::string majority_category(std::span<const AggregatedResult> results, const CategoryLookup& lookup,
                              std::size_t top_n) {
    if (!lookup) return {};
    std::vector<std::pair<std::string, std::size_t>> tally;  // first-seen order
    for (std::size_t i = 0; i < results.size() && i < top_n; ++i) {
        const auto label = lookup(results[i].url);
        if (!label || label->empty()) continue;
        auto it = std::find_if(tally.begin(), tally.end(), [&](const auto& t) { return t.first == *label; });
        if (it == tally.end()) {
            tally.emplace_back(*label, 1);
        } else {
            ++it->second;
        }
    }
    std::string best;
    std::size_t best_count = 0;
    for (const auto& [label, n] : tally) {
        if (n > best_count) {
            best = label;
            best_count = n;
        }
    }
    return best;
}

std::vector<ProviderStatus> summarize_provider_status(std::span<const ClusterPages> clusters) {
    std::vector<ProviderStatus> out;
    for (const auto& cluster : clusters) {
        for (const auto& page : cluster.pages) {
            auto it = std::find_if(out.begin(), out.end(),
                                   [&](const ProviderStatus& s) { return s.provider == page.provider; });
            if (it == out.end()) {
                out.push_back(ProviderStatus{page.provider, page.status, page.elapsed_ms});
                continue;
            }
            if (it->status == PageStatus::ok && page.status != PageStatus::ok) it->status = page.status;
            it->elapsed_ms = std::max(it->elapsed_ms, page.elapsed_ms);
        }
    }
    return out;
}

SearchResponse cluster_and_aggregate(std::span<const ClusterPages> clusters, const CategoryLookup& lookup) {
    if (clusters.empty()) throw PreconditionError("cluster_and_aggregate needs at least one cluster");

    SearchResponse response;
    response.provider_status = summarize_provider_status(clusters);
    bool any_ok = false;
    for (const auto& cluster : clusters) {
        Cluster out;
        out.sense = cluster.query.sense;
        out.cluster_query = cluster.query;
        try {
            out.results = aggregate(cluster.pages);
            any_ok = true;
        } catch (const EmptyInputError&) {
            // every provider failed for this sense; keep the cluster, empty
        }
        out.category = majority_category(out.results, lookup);
        response.clusters.push_back(std::move(out));
    }
    if (!any_ok) throw EmptyInputError("every provider failed for every cluster");
    return response;
}

}  // namespace metasearch

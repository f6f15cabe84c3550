#include "metasearch/expansion.hpp"

#include <algorithm>

#include "metasearch/errors.hpp"

namespace metasearch {
namespace {

std::vector<std::string> gloss_content_words(const Sense& sense, const StopwordSet& stopwords) {
    auto words = tokenize(sense.gloss, 1);
    if (words.empty()) words = split_whitespace(normalize_text(sense.gloss));

    std::vector<std::string> content;
    std::copy_if(words.begin(), words.end(), std::back_inserter(content),
                 [&](const std::string& w) { return !stopwords.contains(w); });
    return content.empty() ? words : content;
}

}  // namespace

std::string_view to_string(ExpansionStrategy strategy) {
    return strategy == ExpansionStrategy::meaning_only ? "meaning_only" : "concatenated";
}

std::optional<ExpansionStrategy> parse_expansion_strategy(std::string_view s) {
    if (s == "meaning_only") return ExpansionStrategy::meaning_only;
    if (s == "concatenated") return ExpansionStrategy::concatenated;
    return std::nullopt;
}

std::vector<ClusterQuery> build_cluster_queries(std::string_view user_query,
                                                std::span<const Sense> senses,
                                                ExpansionStrategy strategy,
                                                ExpansionLimits limits,
                                                const StopwordSet& stopwords) {
    const auto query = normalize_text(user_query);
    if (query.empty()) throw PreconditionError("user query must be nonempty");
    if (senses.empty()) throw PreconditionError("build_cluster_queries needs at least one sense");
    if (limits.max_senses == 0 || limits.max_gloss_words == 0) {
        throw PreconditionError("expansion limits must be positive");
    }
    const auto query_words = split_whitespace(query);

    std::vector<ClusterQuery> out;
    const auto n = std::min(senses.size(), limits.max_senses);
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Sense& sense = senses[i];
        auto words = gloss_content_words(sense, stopwords);

        if (strategy == ExpansionStrategy::concatenated && sense.is_fallback) {
            std::erase_if(words, [&](const std::string& w) {
                return std::find(query_words.begin(), query_words.end(), w) != query_words.end();
            });
        }
        if (words.size() > limits.max_gloss_words) words.resize(limits.max_gloss_words);

        std::string provider_query;
        if (strategy == ExpansionStrategy::concatenated) {
            provider_query = words.empty() ? query : query + " " + join(words, " ");
        } else {
            provider_query = words.empty() ? query : join(words, " ");
        }
        out.push_back(ClusterQuery{sense, std::move(provider_query), strategy});
    }
    return out;
}

}  // namespace metasearch

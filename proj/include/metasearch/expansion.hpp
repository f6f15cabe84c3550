#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "metasearch/dictionary.hpp"
#include "metasearch/text.hpp"

namespace metasearch {

enum class ExpansionStrategy { meaning_only, concatenated };

std::string_view to_string(ExpansionStrategy strategy);
std::optional<ExpansionStrategy> parse_expansion_strategy(std::string_view s);

/// A provider query derived from one sense; its results form that sense's cluster.
struct ClusterQuery {
    Sense sense;
    std::string provider_query;
    ExpansionStrategy strategy = ExpansionStrategy::concatenated;

    bool operator==(const ClusterQuery&) const = default;
};

struct ExpansionLimits {
    std::size_t max_senses = 8;
    std::size_t max_gloss_words = 4;
};

// One query per sense (up to max_senses), in sense order. Glosses lose their
// stopwords and are cut to max_gloss_words. Concatenated queries are
// "<user query> <gloss words>"; fallback senses never repeat a query word.
std::vector<ClusterQuery> build_cluster_queries(std::string_view user_query,
                                                std::span<const Sense> senses,
                                                ExpansionStrategy strategy,
                                                ExpansionLimits limits = {},
                                                const StopwordSet& stopwords = StopwordSet::builtin());

}  // namespace metasearch

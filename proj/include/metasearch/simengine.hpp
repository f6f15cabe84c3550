#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "metasearch/results.hpp"

namespace metasearch {

struct Document {
    std::string doc_id;
    std::string url;
    std::string title;
    std::string body;
    std::string category;

    bool operator==(const Document&) const = default;
};

struct Posting {
    std::string doc_id;
    std::uint32_t term_frequency = 0;   // occurrences in title + body
    std::uint32_t title_frequency = 0;  // occurrences in the title alone

    bool operator==(const Posting&) const = default;
};

enum class RankingMode { tf, tfidf, title_boost };

std::string_view to_string(RankingMode mode);
std::optional<RankingMode> parse_ranking_mode(std::string_view s);

// Inverted index over a fixed corpus. Immutable once built; postings are
// sorted by doc_id so the index does not depend on input order.
class Index {
public:
    const std::vector<Posting>* postings(std::string_view term) const;
    const Document* document(std::string_view doc_id) const;
    // Lookup by normalized URL (the smallest doc_id wins on collisions).
    const Document* document_by_url(std::string_view url) const;

    std::size_t doc_count() const noexcept { return doc_lengths_.size(); }
    std::size_t term_count() const noexcept { return postings_.size(); }
    std::optional<std::size_t> doc_length(std::string_view doc_id) const;

    // ln(doc_count / (1 + df)) + 1; positive for every indexed term.
    double idf(std::string_view term) const;

private:
    friend Index index_corpus(std::vector<Document> docs);

    std::unordered_map<std::string, std::vector<Posting>> postings_;
    std::map<std::string, std::size_t, std::less<>> doc_lengths_;
    std::map<std::string, Document, std::less<>> documents_;
    std::map<std::string, std::string, std::less<>> url_to_id_;
};

// JSON Lines with doc_id, url, title, body, category. Blank lines are ignored.
// Throws LoadError naming the offending line.
std::vector<Document> load_corpus(const std::filesystem::path& path);

// Throws PreconditionError on an empty corpus, IndexingError on a duplicate
// doc_id or an unnormalizable url. Stored urls are normalized.
Index index_corpus(std::vector<Document> docs);

// Top-k documents by score (desc), doc_id asc on ties, ranked 1..n.
//   tf:          sum of term frequencies over distinct query terms
//   tfidf:       sum of tf * idf
//   title_boost: sum of (tf + 2 * title tf) * idf
std::vector<ResultLink> search_index(const Index& index, std::string_view query, RankingMode mode,
                                     std::size_t k, std::string_view source_engine = "simengine");

}  // namespace metasearch

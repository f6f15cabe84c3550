#include "metasearch/simengine.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "metasearch/errors.hpp"
#include "metasearch/text.hpp"
#include "metasearch/url.hpp"

namespace metasearch {
namespace {

constexpr std::size_t kSnippetChars = 160;

std::string make_snippet(std::string_view body) {
    const auto words = split_whitespace(body);
    std::string out;
    for (const auto& w : words) {
        if (!out.empty() && out.size() + 1 + w.size() > kSnippetChars) {
            out += " ...";
            break;
        }
        if (!out.empty()) out.push_back(' ');
        out += w;
    }
    return out;
}

}  // namespace

std::string_view to_string(RankingMode mode) {
    switch (mode) {
        case RankingMode::tf: return "tf";
        case RankingMode::tfidf: return "tfidf";
        case RankingMode::title_boost: return "title_boost";
    }
    return "tf";
}

std::optional<RankingMode> parse_ranking_mode(std::string_view s) {
    if (s == "tf") return RankingMode::tf;
    if (s == "tfidf") return RankingMode::tfidf;
    if (s == "title_boost") return RankingMode::title_boost;
    return std::nullopt;
}

const std::vector<Posting>* Index::postings(std::string_view term) const {
    const auto it = postings_.find(std::string(term));
    return it == postings_.end() ? nullptr : &it->second;
}

const Document* Index::document(std::string_view doc_id) const {
    const auto it = documents_.find(doc_id);
    return it == documents_.end() ? nullptr : &it->second;
}

const Document* Index::document_by_url(std::string_view url) const {
    const auto it = url_to_id_.find(url);
    return it == url_to_id_.end() ? nullptr : document(it->second);
}

std::optional<std::size_t> Index::doc_length(std::string_view doc_id) const {
    const auto it = doc_lengths_.find(doc_id);
    if (it == doc_lengths_.end()) return std::nullopt;
    return it->second;
}

double Index::idf(std::string_view term) const {
    const auto* list = postings(term);
    const double df = list ? static_cast<double>(list->size()) : 0.0;
    return std::log(static_cast<double>(doc_count()) / (1.0 + df)) + 1.0;
}

std::vector<Document> load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError("cannot read corpus file " + path.string());

    std::vector<Document> docs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (split_whitespace(line).empty()) continue;
        const auto where = path.string() + ":" + std::to_string(line_no);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw LoadError(where + ": malformed JSON at byte " + std::to_string(e.byte));
        }
        Document doc;
        try {
            doc.doc_id = j.at("doc_id").get<std::string>();
            doc.url = j.at("url").get<std::string>();
            doc.title = j.at("title").get<std::string>();
            doc.body = j.at("body").get<std::string>();
            doc.category = j.at("category").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw LoadError(where + ": " + e.what());
        }
        docs.push_back(std::move(doc));
    }
    return docs;
}

Index index_corpus(std::vector<Document> docs) {
    if (docs.empty()) throw PreconditionError("cannot index an empty corpus");

    Index index;
    for (auto& doc : docs) {
        if (index.documents_.contains(doc.doc_id)) {
            throw IndexingError("duplicate doc_id '" + doc.doc_id + "'");
        }
        try {
            doc.url = normalize_url(doc.url);
        } catch (const NormalizationError& e) {
            throw IndexingError("document '" + doc.doc_id + "': " + e.what());
        }

        std::unordered_map<std::string, Posting> counts;
        for (const auto& term : tokenize(doc.title)) {
            auto& p = counts[term];
            ++p.term_frequency;
            ++p.title_frequency;
        }
        const auto body_terms = tokenize(doc.body);
        for (const auto& term : body_terms) ++counts[term].term_frequency;

        std::size_t length = 0;
        for (auto& [term, posting] : counts) {
            length += posting.term_frequency;
            posting.doc_id = doc.doc_id;
            index.postings_[term].push_back(std::move(posting));
        }
        index.doc_lengths_.emplace(doc.doc_id, length);

        auto [it, inserted] = index.url_to_id_.emplace(doc.url, doc.doc_id);
        if (!inserted && doc.doc_id < it->second) it->second = doc.doc_id;
        index.documents_.emplace(doc.doc_id, std::move(doc));
    }
    for (auto& [term, list] : index.postings_) {
        std::sort(list.begin(), list.end(),
                  [](const Posting& a, const Posting& b) { return a.doc_id < b.doc_id; });
    }
    return index;
}

std::vector<ResultLink> search_index(const Index& index, std::string_view query, RankingMode mode,
                                     std::size_t k, std::string_view source_engine) {
    if (k == 0) throw PreconditionError("search_index k must be >= 1");

    std::vector<std::string> terms;
    std::unordered_set<std::string> seen;
    for (auto& term : tokenize(query)) {
        if (seen.insert(term).second) terms.push_back(std::move(term));
    }

    std::map<std::string, double, std::less<>> scores;
    for (const auto& term : terms) {
        const auto* list = index.postings(term);
        if (!list) continue;
        const double idf = mode == RankingMode::tf ? 1.0 : index.idf(term);
        for (const auto& p : *list) {
            double weight = p.term_frequency;
            if (mode == RankingMode::title_boost) weight += 2.0 * p.title_frequency;
            scores[p.doc_id] += weight * idf;
        }
    }

    std::vector<std::pair<std::string, double>> ranked;
    for (const auto& [id, score] : scores) {
        if (score > 0.0) ranked.emplace_back(id, score);
    }
    const auto n = std::min(k, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(n), ranked.end(),
                      [](const auto& a, const auto& b) {
                          if (a.second != b.second) return a.second > b.second;
                          return a.first < b.first;
                      });

    std::vector<ResultLink> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Document* doc = index.document(ranked[i].first);
        out.push_back(ResultLink{doc->url, doc->title, make_snippet(doc->body),
                                 std::string(source_engine), static_cast<std::uint32_t>(i + 1)});
    }
    return out;
}

}  // namespace metasearch

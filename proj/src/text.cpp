#include "metasearch/text.hpp"

#include <array>
#include <fstream>

#include "metasearch/errors.hpp"

namespace metasearch {
namespace {

bool is_space(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_alnum(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

// Folding for U+00C0..U+00FF; empty entries are not letters.
constexpr std::array<const char*, 64> kLatin1Fold = {
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
    "d", "n", "o", "o", "o", "o", "o", "",  "o", "u", "u", "u", "u", "y", "th", "ss",
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
    "d", "n", "o", "o", "o", "o", "o", "",  "o", "u", "u", "u", "u", "y", "th", "y",
};

// Decodes one UTF-8 code point at `i`; returns its length or 0 when invalid.
std::size_t decode_utf8(std::string_view s, std::size_t i, char32_t& cp) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    if (b0 < 0x80) {
        cp = b0;
        return 1;
    } else if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        return 0;
    }
    if (i + len > s.size()) return 0;
    for (std::size_t k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) return 0;
        cp = (cp << 6) | (b & 0x3F);
    }
    // Reject overlong forms, surrogates, and out-of-range values.
    static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
    return len;
}

}  // namespace

std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    for (auto& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

std::string normalize_text(std::string_view s) {
    return join(split_whitespace(to_lower_ascii(s)), " ");
}

std::vector<std::string> split_whitespace(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && is_space(static_cast<unsigned char>(s[i]))) ++i;
        const std::size_t start = i;
        while (i < s.size() && !is_space(static_cast<unsigned char>(s[i]))) ++i;
        if (i > start) out.emplace_back(s.substr(start, i - start));
    }
    return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += sep;
        out += parts[i];
    }
    return out;
}

std::vector<std::string> tokenize(std::string_view text, std::size_t min_length) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (!current.empty() && current.size() >= min_length) tokens.push_back(current);
        current.clear();
    };

    std::size_t i = 0;
    while (i < text.size()) {
        const auto c = static_cast<unsigned char>(text[i]);
        if (c < 0x80) {
            if (is_alnum(c)) {
                current.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
            } else {
                flush();
            }
            ++i;
            continue;
        }
        char32_t cp = 0;
        const std::size_t len = decode_utf8(text, i, cp);
        if (len == 0) {
            flush();
            ++i;
            continue;
        }
        if (cp >= 0xC0 && cp <= 0xFF && *kLatin1Fold[cp - 0xC0] != '\0') {
            current += kLatin1Fold[cp - 0xC0];
        } else if (cp == 0x152 || cp == 0x153) {
            current += "oe";
        } else {
            flush();
        }
        i += len;
    }
    flush();
    return tokens;
}

std::optional<std::size_t> find_invalid_utf8(std::string_view bytes) {
    std::size_t i = 0;
    while (i < bytes.size()) {
        char32_t cp = 0;
        const std::size_t len = decode_utf8(bytes, i, cp);
        if (len == 0) return i;
        i += len;
    }
    return std::nullopt;
}

const StopwordSet& StopwordSet::builtin() {
    static const StopwordSet kBuiltin(std::unordered_set<std::string>{
        "a",       "about",   "above",   "after",  "again",   "against", "all",     "am",
        "an",      "and",     "any",     "are",    "as",      "at",      "be",      "because",
        "been",    "before",  "being",   "below",  "between", "both",    "but",     "by",
        "can",     "could",   "did",     "do",     "does",    "doing",   "down",    "during",
        "each",    "few",     "for",     "from",   "further", "had",     "has",     "have",
        "having",  "he",      "her",     "here",   "hers",    "herself", "him",     "himself",
        "his",     "how",     "i",       "if",     "in",      "into",    "is",      "it",
        "its",     "itself",  "just",    "me",     "more",    "most",    "my",      "myself",
        "no",      "nor",     "not",     "now",    "of",      "off",     "on",      "once",
        "only",    "or",      "other",   "our",    "ours",    "ourselves", "out",   "over",
        "own",     "same",    "she",     "should", "so",      "some",    "such",    "than",
        "that",    "the",     "their",   "theirs", "them",    "themselves", "then", "there",
        "these",   "they",    "this",    "those",  "through", "to",      "too",     "under",
        "until",   "up",      "very",    "was",    "we",      "were",    "what",    "when",
        "where",   "which",   "while",   "who",    "whom",    "why",     "will",    "with",
        "would",   "you",     "your",    "yours",  "yourself", "yourselves", "s",   "t",
    });
    return kBuiltin;
}

StopwordSet StopwordSet::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot read stopword file " + path.string());
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        const auto parts = split_whitespace(line);
        if (parts.empty() || parts.front().starts_with('#')) continue;
        words.insert(to_lower_ascii(parts.front()));
    }
    return StopwordSet(std::move(words));
}

}  // namespace metasearch

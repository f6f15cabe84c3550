#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace metasearch {

std::string to_lower_ascii(std::string_view s);

// Lowercases ASCII, trims, and collapses every run of whitespace to one space.
std::string normalize_text(std::string_view s);

std::vector<std::string> split_whitespace(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// ASCII-folds Latin-1 letters, lowercases, splits on anything that is not
// [a-z0-9], and drops tokens shorter than `min_length` bytes.
std::vector<std::string> tokenize(std::string_view text, std::size_t min_length = 2);

// Returns the byte offset of the first invalid UTF-8 sequence, if any.
std::optional<std::size_t> find_invalid_utf8(std::string_view bytes);

class StopwordSet {
public:
    StopwordSet() = default;
    explicit StopwordSet(std::unordered_set<std::string> words) : words_(std::move(words)) {}

    // Fixed English list used when no stopword file is configured.
    static const StopwordSet& builtin();

    // One word per line; blank lines and `#` comments ignored. Throws LoadError.
    static StopwordSet load(const std::filesystem::path& path);

    bool contains(std::string_view word) const { return words_.contains(std::string(word)); }
    std::size_t size() const { return words_.size(); }

private:
    std::unordered_set<std::string> words_;
};

}  // namespace metasearch

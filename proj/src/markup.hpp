#pragma once

// Minimal tag scanner shared by the HTML and RSS result parsers.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace metasearch::markup {

struct Token {
    enum class Kind { start_tag, end_tag, text };

    Kind kind = Kind::text;
    std::string name;  // lowercased tag name
    std::vector<std::pair<std::string, std::string>> attributes;  // names lowercased, values decoded
    bool self_closing = false;
    std::string text;  // decoded text (CDATA is passed through verbatim)
    std::size_t offset = 0;

    const std::string* attribute(std::string_view attr) const;
    bool has_class(std::string_view cls) const;
};

enum class Mode { html, xml };

// Throws ParseError("byte N") for unterminated comments, tags, quotes and
// CDATA sections, and (xml mode) for stray '<'.
std::vector<Token> scan(std::string_view document, Mode mode);

std::string decode_entities(std::string_view s);

// Trims and collapses whitespace runs to a single space, preserving case.
std::string collapse_spaces(std::string_view s);

}  // namespace metasearch::markup

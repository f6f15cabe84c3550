#include "metasearch/parsers.hpp"

#include <json.hpp>

#include "markup.hpp"
#include "metasearch/errors.hpp"
#include "metasearch/text.hpp"
#include "metasearch/url.hpp"

namespace metasearch {
namespace {

using markup::Token;

class LinkCollector {
public:
    LinkCollector(std::string_view provider, std::size_t limit) : provider_(provider), limit_(limit) {}

    bool full() const { return links_.size() >= limit_; }

    void add(std::string_view raw_url, std::string title, std::string snippet) {
        if (full()) return;
        std::string url;
        try {
            url = normalize_url(raw_url);
        } catch (const NormalizationError&) {
            return;
        }
        const auto rank = static_cast<std::uint32_t>(links_.size() + 1);
        links_.push_back(ResultLink{std::move(url), markup::collapse_spaces(title),
                                    markup::collapse_spaces(snippet), provider_, rank});
    }

    std::vector<ResultLink> take() { return std::move(links_); }

private:
    std::string provider_;
    std::size_t limit_;
    std::vector<ResultLink> links_;
};

std::string element_path(std::size_t index, std::string_view field = {}) {
    std::string path = "$.results[" + std::to_string(index) + "]";
    if (!field.empty()) path += "." + std::string(field);
    return path;
}

std::vector<ResultLink> parse_json(std::string_view raw, LinkCollector collector) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(raw.begin(), raw.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("byte " + std::to_string(e.byte), "malformed JSON");
    }
    if (!doc.is_object() || !doc.contains("results")) {
        throw ParseError("$.results", "missing top-level results array");
    }
    const auto& results = doc["results"];
    if (!results.is_array()) throw ParseError("$.results", "results is not an array");

    for (std::size_t i = 0; i < results.size() && !collector.full(); ++i) {
        const auto& item = results[i];
        if (!item.is_object()) throw ParseError(element_path(i), "result entry is not an object");
        const auto url = item.find("url");
        if (url == item.end() || !url->is_string()) throw ParseError(element_path(i, "url"), "missing string url");
        const auto title = item.find("title");
        if (title == item.end() || !title->is_string()) {
            throw ParseError(element_path(i, "title"), "missing string title");
        }
        std::string snippet;
        if (const auto s = item.find("snippet"); s != item.end() && !s->is_null()) {
            if (!s->is_string()) throw ParseError(element_path(i, "snippet"), "snippet is not a string");
            snippet = s->get<std::string>();
        }
        collector.add(url->get<std::string>(), title->get<std::string>(), std::move(snippet));
    }
    return collector.take();
}

// Concatenated text of tokens[from..) up to the end tag closing the element
// opened at tokens[from - 1]. Returns the index just past that end tag, or
// npos when the element is never closed.
std::size_t collect_element_text(const std::vector<Token>& tokens, std::size_t from,
                                 const std::string& name, std::string& text) {
    int depth = 1;
    for (std::size_t i = from; i < tokens.size(); ++i) {
        const auto& t = tokens[i];
        if (t.kind == Token::Kind::text) {
            text += t.text;
            continue;
        }
        if (t.name != name) {
            // Inline tags like <b> separate words only when they are block-ish.
            if (t.name == "br" || t.name == "p" || t.name == "div") text.push_back(' ');
            continue;
        }
        if (t.kind == Token::Kind::start_tag && !t.self_closing) ++depth;
        if (t.kind == Token::Kind::end_tag && --depth == 0) return i + 1;
    }
    return std::string::npos;
}

bool is_result_anchor(const Token& t) {
    return t.kind == Token::Kind::start_tag && t.name == "a" && t.has_class("result");
}

std::vector<ResultLink> parse_html(std::string_view raw, LinkCollector collector) {
    const auto tokens = markup::scan(raw, markup::Mode::html);
    std::size_t i = 0;
    while (i < tokens.size() && !collector.full()) {
        const auto& anchor = tokens[i];
        if (!is_result_anchor(anchor)) {
            ++i;
            continue;
        }
        std::string title;
        const std::size_t after = collect_element_text(tokens, i + 1, "a", title);
        if (after == std::string::npos) {
            throw ParseError("byte " + std::to_string(anchor.offset), "result anchor is never closed");
        }

        std::string snippet;
        std::size_t next = after;
        for (std::size_t j = after; j < tokens.size(); ++j) {
            const auto& t = tokens[j];
            if (is_result_anchor(t)) break;
            if (t.kind == Token::Kind::start_tag && t.has_class("snippet")) {
                next = t.self_closing ? j + 1 : collect_element_text(tokens, j + 1, t.name, snippet);
                if (next == std::string::npos) next = tokens.size();
                break;
            }
        }

        const auto* href = anchor.attribute("href");
        collector.add(href ? std::string_view(*href) : std::string_view{}, std::move(title), std::move(snippet));
        i = next;
    }
    return collector.take();
}

struct XmlNode {
    std::string name;
    std::string text;
    std::vector<XmlNode> children;

    const XmlNode* child(std::string_view n) const {
        for (const auto& c : children) {
            if (c.name == n) return &c;
        }
        return nullptr;
    }
};

XmlNode build_xml_tree(const std::vector<Token>& tokens) {
    XmlNode document;
    std::vector<XmlNode*> stack{&document};
    std::vector<std::size_t> open_offsets{0};
    for (const auto& t : tokens) {
        switch (t.kind) {
            case Token::Kind::text:
                stack.back()->text += t.text;
                break;
            case Token::Kind::start_tag: {
                stack.back()->children.push_back(XmlNode{t.name, {}, {}});
                if (!t.self_closing) {
                    stack.push_back(&stack.back()->children.back());
                    open_offsets.push_back(t.offset);
                }
                break;
            }
            case Token::Kind::end_tag:
                if (stack.size() == 1 || stack.back()->name != t.name) {
                    const std::string expected = stack.size() == 1 ? "no open element" : "</" + stack.back()->name + ">";
                    throw ParseError("byte " + std::to_string(t.offset),
                                     "unexpected </" + t.name + ">, expected " + expected);
                }
                stack.pop_back();
                open_offsets.pop_back();
                break;
        }
    }
    if (stack.size() > 1) {
        throw ParseError("byte " + std::to_string(open_offsets.back()),
                         "element <" + stack.back()->name + "> is never closed");
    }
    return document;
}

std::string strip_tags(std::string_view s) {
    std::string out;
    bool in_tag = false;
    for (char c : s) {
        if (c == '<') {
            in_tag = true;
            out.push_back(' ');
        } else if (c == '>' && in_tag) {
            in_tag = false;
        } else if (!in_tag) {
            out.push_back(c);
        }
    }
    return out;
}

std::vector<ResultLink> parse_rss(std::string_view raw, LinkCollector collector) {
    const auto doc = build_xml_tree(markup::scan(raw, markup::Mode::xml));
    const XmlNode* rss = doc.child("rss");
    if (!rss) throw ParseError("rss", "missing <rss> root element");
    const XmlNode* channel = rss->child("channel");
    if (!channel) throw ParseError("rss/channel", "missing <channel> element");

    for (const auto& item : channel->children) {
        if (collector.full()) break;
        if (item.name != "item") continue;
        const XmlNode* link = item.child("link");
        if (!link) continue;
        const XmlNode* title = item.child("title");
        const XmlNode* description = item.child("description");
        collector.add(markup::collapse_spaces(link->text), title ? title->text : std::string{},
                      description ? strip_tags(description->text) : std::string{});
    }
    return collector.take();
}

}  // namespace

std::vector<ResultLink> parse_results(std::string_view raw, ProviderKind kind,
                                      std::string_view provider_id, std::size_t limit) {
    if (limit == 0) throw PreconditionError("parse_results limit must be >= 1");
    if (auto bad = find_invalid_utf8(raw)) {
        throw ParseError("byte " + std::to_string(*bad), "payload is not valid UTF-8");
    }
    LinkCollector collector(provider_id, limit);
    switch (kind) {
        case ProviderKind::http_json: return parse_json(raw, std::move(collector));
        case ProviderKind::http_html: return parse_html(raw, std::move(collector));
        case ProviderKind::http_rss: return parse_rss(raw, std::move(collector));
        case ProviderKind::simulated: break;
    }
    throw PreconditionError("simulated providers have no wire format to parse");
}

}  // namespace metasearch

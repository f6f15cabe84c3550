#include "markup.hpp"

#include <cctype>
#include <cstdint>

#include "metasearch/errors.hpp"
#include "metasearch/text.hpp"

namespace metasearch::markup {
namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == ':' || c == '.';
}

[[noreturn]] void fail(std::size_t offset, const std::string& what) {
    throw ParseError("byte " + std::to_string(offset), what);
}

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

class Scanner {
public:
    Scanner(std::string_view doc, Mode mode) : doc_(doc), mode_(mode) {}

    std::vector<Token> run() {
        std::size_t text_start = 0;
        while (pos_ < doc_.size()) {
            if (doc_[pos_] != '<') {
                ++pos_;
                continue;
            }
            const std::size_t lt = pos_;
            if (!starts_markup(lt)) {
                if (mode_ == Mode::xml) fail(lt, "unescaped '<' in text");
                ++pos_;
                continue;
            }
            emit_text(text_start, lt);
            read_markup();
            text_start = pos_;
        }
        emit_text(text_start, doc_.size());
        return std::move(tokens_);
    }

private:
    bool starts_markup(std::size_t at) const {
        if (at + 1 >= doc_.size()) return false;
        const char c = doc_[at + 1];
        return std::isalpha(static_cast<unsigned char>(c)) || c == '/' || c == '!' || c == '?';
    }

    void emit_text(std::size_t from, std::size_t to) {
        if (to <= from) return;
        Token t;
        t.kind = Token::Kind::text;
        t.text = decode_entities(doc_.substr(from, to - from));
        t.offset = from;
        tokens_.push_back(std::move(t));
    }

    void read_markup() {
        const std::size_t lt = pos_;
        const auto rest = doc_.substr(lt);
        if (rest.starts_with("<!--")) {
            const auto end = doc_.find("-->", lt + 4);
            if (end == std::string_view::npos) fail(lt, "unterminated comment");
            pos_ = end + 3;
        } else if (rest.starts_with("<![CDATA[")) {
            const auto end = doc_.find("]]>", lt + 9);
            if (end == std::string_view::npos) fail(lt, "unterminated CDATA section");
            Token t;
            t.kind = Token::Kind::text;
            t.text = std::string(doc_.substr(lt + 9, end - lt - 9));
            t.offset = lt;
            tokens_.push_back(std::move(t));
            pos_ = end + 3;
        } else if (rest.starts_with("<?")) {
            const auto end = doc_.find("?>", lt + 2);
            if (end == std::string_view::npos) fail(lt, "unterminated processing instruction");
            pos_ = end + 2;
        } else if (rest.starts_with("<!")) {
            const auto end = doc_.find('>', lt + 2);
            if (end == std::string_view::npos) fail(lt, "unterminated declaration");
            pos_ = end + 1;
        } else if (rest.starts_with("</")) {
            pos_ = lt + 2;
            Token t;
            t.kind = Token::Kind::end_tag;
            t.offset = lt;
            t.name = read_name();
            if (t.name.empty()) fail(lt, "end tag without a name");
            skip_spaces();
            if (pos_ >= doc_.size() || doc_[pos_] != '>') fail(lt, "unterminated end tag");
            ++pos_;
            tokens_.push_back(std::move(t));
        } else {
            pos_ = lt + 1;
            Token t;
            t.kind = Token::Kind::start_tag;
            t.offset = lt;
            t.name = read_name();
            read_attributes(t);
            const std::string name = t.name;
            const bool closed = t.self_closing;
            tokens_.push_back(std::move(t));
            if (mode_ == Mode::html && !closed && (name == "script" || name == "style")) {
                skip_raw_text(name, lt);
            }
        }
    }

    std::string read_name() {
        const std::size_t start = pos_;
        while (pos_ < doc_.size() && is_name_char(doc_[pos_])) ++pos_;
        return to_lower_ascii(doc_.substr(start, pos_ - start));
    }

    void skip_spaces() {
        while (pos_ < doc_.size() && is_space(doc_[pos_])) ++pos_;
    }

    void read_attributes(Token& t) {
        while (true) {
            skip_spaces();
            if (pos_ >= doc_.size()) fail(t.offset, "unterminated tag <" + t.name + ">");
            const char c = doc_[pos_];
            if (c == '>') {
                ++pos_;
                return;
            }
            if (c == '/' && pos_ + 1 < doc_.size() && doc_[pos_ + 1] == '>') {
                t.self_closing = true;
                pos_ += 2;
                return;
            }
            const std::size_t name_start = pos_;
            while (pos_ < doc_.size() && !is_space(doc_[pos_]) && doc_[pos_] != '=' &&
                   doc_[pos_] != '>' && !(doc_[pos_] == '/' && pos_ + 1 < doc_.size() && doc_[pos_ + 1] == '>')) {
                if (doc_[pos_] == '<' || doc_[pos_] == '"' || doc_[pos_] == '\'') {
                    fail(pos_, "unexpected character in tag <" + t.name + ">");
                }
                ++pos_;
            }
            auto attr_name = to_lower_ascii(doc_.substr(name_start, pos_ - name_start));
            skip_spaces();
            std::string value;
            if (pos_ < doc_.size() && doc_[pos_] == '=') {
                ++pos_;
                skip_spaces();
                if (pos_ >= doc_.size()) fail(t.offset, "unterminated tag <" + t.name + ">");
                const char q = doc_[pos_];
                if (q == '"' || q == '\'') {
                    const auto end = doc_.find(q, pos_ + 1);
                    if (end == std::string_view::npos) fail(pos_, "unterminated attribute value");
                    value = decode_entities(doc_.substr(pos_ + 1, end - pos_ - 1));
                    pos_ = end + 1;
                } else {
                    if (mode_ == Mode::xml) fail(pos_, "unquoted attribute value");
                    const std::size_t vstart = pos_;
                    while (pos_ < doc_.size() && !is_space(doc_[pos_]) && doc_[pos_] != '>') ++pos_;
                    value = decode_entities(doc_.substr(vstart, pos_ - vstart));
                }
            }
            if (!attr_name.empty()) t.attributes.emplace_back(std::move(attr_name), std::move(value));
        }
    }

    void skip_raw_text(const std::string& name, std::size_t tag_offset) {
        const std::string close = "</" + name;
        while (pos_ < doc_.size()) {
            const auto hit = doc_.find("</", pos_);
            if (hit == std::string_view::npos) break;
            if (to_lower_ascii(doc_.substr(hit, close.size())) == close) {
                pos_ = hit;
                return;
            }
            pos_ = hit + 2;
        }
        fail(tag_offset, "unterminated <" + name + "> element");
    }

    std::string_view doc_;
    Mode mode_;
    std::size_t pos_ = 0;
    std::vector<Token> tokens_;
};

}  // namespace

const std::string* Token::attribute(std::string_view attr) const {
    for (const auto& [name, value] : attributes) {
        if (name == attr) return &value;
    }
    return nullptr;
}

bool Token::has_class(std::string_view cls) const {
    const auto* value = attribute("class");
    if (!value) return false;
    for (const auto& c : split_whitespace(*value)) {
        if (c == cls) return true;
    }
    return false;
}

std::vector<Token> scan(std::string_view document, Mode mode) {
    return Scanner(document, mode).run();
}

std::string decode_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out.push_back(s[i++]);
            continue;
        }
        const auto semi = s.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 10) {
            out.push_back(s[i++]);
            continue;
        }
        const auto name = s.substr(i + 1, semi - i - 1);
        bool decoded = true;
        if (name == "amp") out.push_back('&');
        else if (name == "lt") out.push_back('<');
        else if (name == "gt") out.push_back('>');
        else if (name == "quot") out.push_back('"');
        else if (name == "apos") out.push_back('\'');
        else if (name == "nbsp") out.push_back(' ');
        else if (name.size() > 1 && name[0] == '#') {
            std::uint32_t cp = 0;
            const bool hex = name[1] == 'x' || name[1] == 'X';
            const auto digits = name.substr(hex ? 2 : 1);
            decoded = !digits.empty();
            for (char c : digits) {
                const auto u = static_cast<unsigned char>(c);
                if (hex ? !std::isxdigit(u) : !std::isdigit(u)) {
                    decoded = false;
                    break;
                }
                cp = cp * (hex ? 16 : 10) +
                     static_cast<std::uint32_t>(std::isdigit(u) ? c - '0' : (std::tolower(u) - 'a' + 10));
                if (cp > 0x10FFFF) cp = 0x110000;
            }
            if (decoded) append_utf8(out, cp);
        } else {
            decoded = false;
        }
        if (decoded) {
            i = semi + 1;
        } else {
            out.push_back(s[i++]);
        }
    }
    return out;
}

std::string collapse_spaces(std::string_view s) {
    std::string out;
    bool pending = false;
    for (char c : s) {
        if (is_space(c) || c == '\v') {
            pending = !out.empty();
            continue;
        }
        if (pending) out.push_back(' ');
        pending = false;
        out.push_back(c);
    }
    return out;
}

}  // namespace metasearch::markup

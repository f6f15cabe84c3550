#include "metasearch/dictionary.hpp"

#include <fstream>

#include "metasearch/errors.hpp"

namespace metasearch {
namespace {

bool is_blank(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool has_control(std::string_view s) {
    for (char c : s) {
        if (c == '\t' || c == '\n' || c == '\r') return true;
    }
    return false;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
    return s;
}

// Lowercased single-token form of a lookup term; internal blank runs become '_'.
std::string canonical_term(std::string_view term) {
    const auto trimmed = trim(term);
    if (trimmed.empty()) throw PreconditionError("lookup term must be nonempty");
    std::string out;
    out.reserve(trimmed.size());
    bool in_blank = false;
    for (char c : trimmed) {
        if (is_blank(c) || static_cast<unsigned char>(c) < 0x20) {
            if (!in_blank) out.push_back('_');
            in_blank = true;
            continue;
        }
        in_blank = false;
        out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
    }
    return out;
}

void validate(const Sense& sense) {
    if (sense.headword.empty()) throw ValidationError("sense headword is empty");
    for (char c : sense.headword) {
        if (is_blank(c)) throw ValidationError("sense headword has whitespace: " + sense.headword);
        if (c >= 'A' && c <= 'Z') throw ValidationError("sense headword not lowercase: " + sense.headword);
    }
    if (sense.gloss.empty()) throw ValidationError("sense gloss is empty for " + sense.headword);
    if (has_control(sense.gloss)) throw ValidationError("sense gloss has tab or newline for " + sense.headword);
}

std::optional<Sense> parse_line(std::string_view line) {
    const auto tab1 = line.find('\t');
    if (tab1 == std::string_view::npos) return std::nullopt;
    const auto tab2 = line.find('\t', tab1 + 1);
    if (tab2 == std::string_view::npos) return std::nullopt;
    if (line.find('\t', tab2 + 1) != std::string_view::npos) return std::nullopt;

    const auto headword = trim(line.substr(0, tab1));
    const auto pos = parse_part_of_speech(trim(line.substr(tab1 + 1, tab2 - tab1 - 1)));
    const auto gloss = trim(line.substr(tab2 + 1));
    if (headword.empty() || gloss.empty() || !pos) return std::nullopt;
    for (char c : headword) {
        if (is_blank(c)) return std::nullopt;
    }
    return Sense{to_lower_ascii(headword), *pos, std::string(gloss), false};
}

}  // namespace

std::string_view to_string(PartOfSpeech pos) {
    switch (pos) {
        case PartOfSpeech::noun: return "n";
        case PartOfSpeech::verb: return "v";
        case PartOfSpeech::adj: return "adj";
        case PartOfSpeech::adv: return "adv";
        case PartOfSpeech::unknown: return "u";
    }
    return "u";
}

std::optional<PartOfSpeech> parse_part_of_speech(std::string_view s) {
    if (s == "n") return PartOfSpeech::noun;
    if (s == "v") return PartOfSpeech::verb;
    if (s == "adj") return PartOfSpeech::adj;
    if (s == "adv") return PartOfSpeech::adv;
    if (s == "u") return PartOfSpeech::unknown;
    return std::nullopt;
}

SenseInventory::SenseInventory(std::vector<Sense> senses, InventorySource source,
                               std::int64_t loaded_at_ms, std::size_t skipped_lines)
    : source_(source), loaded_at_ms_(loaded_at_ms), skipped_lines_(skipped_lines) {
    for (auto& sense : senses) {
        validate(sense);
        sense.is_fallback = false;
        auto& list = entries_[sense.headword];
        list.push_back(std::move(sense));
        ++sense_count_;
    }
}

const std::vector<Sense>* SenseInventory::find(std::string_view headword) const {
    const auto it = entries_.find(std::string(headword));
    return it == entries_.end() ? nullptr : &it->second;
}

SenseInventory load_inventory(const std::filesystem::path& path, const Clock& clock) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError("cannot read dictionary file " + path.string());

    std::vector<Sense> senses;
    std::size_t skipped = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || line.starts_with('#')) continue;
        if (auto sense = parse_line(line)) {
            senses.push_back(std::move(*sense));
        } else {
            ++skipped;
        }
    }
    if (in.bad()) throw LoadError("read failure on dictionary file " + path.string());
    if (senses.empty()) {
        throw EmptyInventoryError("dictionary file " + path.string() + " has no valid sense lines");
    }
    return SenseInventory(std::move(senses), InventorySource::offline_file, clock.now_ms(), skipped);
}

SenseInventory load_inventory(const RemoteDictionaryClient& client,
                              std::span<const std::string> terms, const Clock& clock) {
    std::vector<Sense> senses;
    for (const auto& term : terms) {
        const auto headword = canonical_term(term);
        for (auto sense : client.fetch_senses(headword)) {
            sense.headword = headword;
            senses.push_back(std::move(sense));
        }
    }
    if (senses.empty()) throw EmptyInventoryError("remote dictionary returned no senses");
    return SenseInventory(std::move(senses), InventorySource::remote, clock.now_ms());
}

std::vector<Sense> lookup_senses(const SenseInventory& inventory, std::string_view term) {
    auto key = canonical_term(term);
    if (const auto* found = inventory.find(key)) return *found;
    // Not in the dictionary; the query may be a proper noun.
    Sense fallback{key, PartOfSpeech::unknown, key, true};
    return {std::move(fallback)};
}

std::size_t count_senses(const SenseInventory& inventory, std::string_view term) {
    const auto* found = inventory.find(canonical_term(term));
    return found ? found->size() : 0;
}

std::string select_pivot_word(const SenseInventory& inventory,
                              std::span<const std::string> tokens,
                              const StopwordSet& stopwords) {
    if (tokens.empty()) throw PreconditionError("select_pivot_word needs at least one token");

    std::size_t best = 0;
    std::size_t best_count = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto n = count_senses(inventory, tokens[i]);
        if (n > best_count) {
            best = i;
            best_count = n;
        }
    }
    if (best_count > 0) return to_lower_ascii(tokens[best]);

    for (const auto& token : tokens) {
        if (!stopwords.contains(to_lower_ascii(token))) return to_lower_ascii(token);
    }
    return to_lower_ascii(tokens.front());
}

std::vector<std::string> reduce_query(std::span<const std::string> tokens,
                                      const StopwordSet& stopwords) {
    if (tokens.empty()) throw PreconditionError("reduce_query needs at least one token");
    std::vector<std::string> kept;
    for (const auto& token : tokens) {
        if (!stopwords.contains(to_lower_ascii(token))) kept.push_back(token);
    }
    if (kept.empty()) return {tokens.begin(), tokens.end()};
    return kept;
}

}  // namespace metasearch

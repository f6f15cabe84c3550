#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "metasearch/clock.hpp"
#include "metasearch/text.hpp"

namespace metasearch {

enum class PartOfSpeech { noun, verb, adj, adv, unknown };

// TSV spelling: n, v, adj, adv, u.
std::string_view to_string(PartOfSpeech pos);
std::optional<PartOfSpeech> parse_part_of_speech(std::string_view s);

/// One dictionary meaning of a term. A fallback sense is the term echoed
/// back when the dictionary has nothing for it (proper nouns, typos).
struct Sense {
    std::string headword;
    PartOfSpeech pos = PartOfSpeech::unknown;
    std::string gloss;
    bool is_fallback = false;

    bool operator==(const Sense&) const = default;
};

enum class InventorySource { offline_file, remote };

/// Immutable headword -> senses map. Sense order per headword is file order.
class SenseInventory {
public:
    // Groups `senses` by headword keeping relative order. Throws
    // ValidationError when a sense breaks the Sense invariants.
    SenseInventory(std::vector<Sense> senses, InventorySource source, std::int64_t loaded_at_ms,
                   std::size_t skipped_lines = 0);

    const std::vector<Sense>* find(std::string_view headword) const;

    InventorySource source() const noexcept { return source_; }
    std::int64_t loaded_at_ms() const noexcept { return loaded_at_ms_; }
    std::size_t skipped_lines() const noexcept { return skipped_lines_; }
    std::size_t headword_count() const noexcept { return entries_.size(); }
    std::size_t sense_count() const noexcept { return sense_count_; }

private:
    std::unordered_map<std::string, std::vector<Sense>> entries_;
    InventorySource source_;
    std::int64_t loaded_at_ms_;
    std::size_t skipped_lines_;
    std::size_t sense_count_ = 0;
};

// Optional online dictionary. Implementations return an empty list for
// unknown terms; failures may throw LoadError.
class RemoteDictionaryClient {
public:
    virtual ~RemoteDictionaryClient() = default;
    virtual std::vector<Sense> fetch_senses(std::string_view term) const = 0;
};

// Parses `headword<TAB>pos<TAB>gloss` lines. Malformed lines are skipped and
// counted. Throws LoadError if unreadable, EmptyInventoryError if nothing valid.
SenseInventory load_inventory(const std::filesystem::path& path,
                              const Clock& clock = SystemClock{});

// Snapshots the remote dictionary's senses for `terms` into an inventory.
SenseInventory load_inventory(const RemoteDictionaryClient& client,
                              std::span<const std::string> terms,
                              const Clock& clock = SystemClock{});

// Never empty: unknown terms yield exactly one fallback sense whose gloss is the term.
std::vector<Sense> lookup_senses(const SenseInventory& inventory, std::string_view term);

// Number of real (non-fallback) senses for the term.
std::size_t count_senses(const SenseInventory& inventory, std::string_view term);

// Picks the token with the most senses, leftmost on ties. With no known token,
// the leftmost non-stopword (or the leftmost token) wins.
std::string select_pivot_word(const SenseInventory& inventory,
                              std::span<const std::string> tokens,
                              const StopwordSet& stopwords = StopwordSet::builtin());

// Drops stopwords keeping order; returns the input unchanged if that would empty it.
std::vector<std::string> reduce_query(std::span<const std::string> tokens,
                                      const StopwordSet& stopwords = StopwordSet::builtin());

}  // namespace metasearch

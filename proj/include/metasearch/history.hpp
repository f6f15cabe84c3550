#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "metasearch/response.hpp"

namespace metasearch {

struct HistoryEntry {
    std::string user_id;
    std::string query;
    std::string chosen_category;
    std::int64_t timestamp_ms = 0;

    bool operator==(const HistoryEntry&) const = default;
};

// Throws ValidationError on an empty user_id or category or a non-positive timestamp.
void validate(const HistoryEntry& entry);

void to_json(nlohmann::json& j, const HistoryEntry& entry);
void from_json(const nlohmann::json& j, HistoryEntry& entry);

/// Per-user record of which result categories were chosen. Optionally backed
/// by an append-only JSON Lines file that is replayed on construction.
/// Appends and reads may happen concurrently.
class HistoryStore {
public:
    HistoryStore() = default;

    // Replays `file` if it exists (malformed lines are skipped and counted).
    // Throws PersistenceError if it exists but cannot be read.
    explicit HistoryStore(std::filesystem::path file);

    HistoryStore(const HistoryStore&) = delete;
    HistoryStore& operator=(const HistoryStore&) = delete;

    // Validates, appends to the file (if any), then makes the entry visible.
    // Throws ValidationError or PersistenceError; nothing is recorded on error.
    void record_selection(const HistoryEntry& entry);

    std::vector<HistoryEntry> entries_for(std::string_view user_id) const;
    std::size_t size() const;
    std::size_t skipped_lines() const noexcept { return skipped_lines_; }

private:
    std::optional<std::filesystem::path> file_;
    mutable std::shared_mutex mutex_;
    std::unordered_map<std::string, std::vector<HistoryEntry>> by_user_;
    std::size_t total_ = 0;
    std::size_t skipped_lines_ = 0;
};

// Sum over the entries chosen for `category` of 2^(-age / half_life_ms);
// future timestamps count as age 0.
double category_weight(std::span<const HistoryEntry> entries, std::string_view category,
                       std::int64_t now_ms, std::int64_t half_life_ms);

// Stable re-sort of clusters by decayed selection weight of their category,
// heaviest first. Unknown users and unlabeled clusters weigh 0, so without
// history the order is unchanged.
std::vector<Cluster> bias_cluster_order(std::vector<Cluster> clusters, std::string_view user_id,
                                        const HistoryStore& store, std::int64_t half_life_ms,
                                        std::int64_t now_ms);

}  // namespace metasearch

#include "metasearch/history.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>

#include "metasearch/errors.hpp"
#include "metasearch/text.hpp"

namespace metasearch {

void validate(const HistoryEntry& entry) {
    if (entry.user_id.empty()) throw ValidationError("history entry needs a user_id");
    if (entry.chosen_category.empty()) throw ValidationError("history entry needs a chosen_category");
    if (entry.timestamp_ms <= 0) throw ValidationError("history entry timestamp must be positive");
}

void to_json(nlohmann::json& j, const HistoryEntry& entry) {
    j = nlohmann::json{{"user_id", entry.user_id},
                       {"query", entry.query},
                       {"chosen_category", entry.chosen_category},
                       {"timestamp", entry.timestamp_ms}};
}

void from_json(const nlohmann::json& j, HistoryEntry& entry) {
    entry.user_id = j.at("user_id").get<std::string>();
    entry.query = j.value("query", std::string{});
    entry.chosen_category = j.at("chosen_category").get<std::string>();
    entry.timestamp_ms = j.at("timestamp").get<std::int64_t>();
}

HistoryStore::HistoryStore(std::filesystem::path file) : file_(std::move(file)) {
    std::error_code ec;
    if (!std::filesystem::exists(*file_, ec)) return;

    std::ifstream in(*file_, std::ios::binary);
    if (!in) throw PersistenceError("cannot read history file " + file_->string());
    std::string line;
    while (std::getline(in, line)) {
        if (split_whitespace(line).empty()) continue;
        try {
            auto entry = nlohmann::json::parse(line).get<HistoryEntry>();
            validate(entry);
            by_user_[entry.user_id].push_back(std::move(entry));
            ++total_;
        } catch (const std::exception&) {
            ++skipped_lines_;
        }
    }
}

void HistoryStore::record_selection(const HistoryEntry& entry) {
    validate(entry);
    std::unique_lock lock(mutex_);
    if (file_) {
        std::ofstream out(*file_, std::ios::app | std::ios::binary);
        out << nlohmann::json(entry).dump() << '\n';
        out.flush();
        if (!out) throw PersistenceError("cannot append to history file " + file_->string());
    }
    by_user_[entry.user_id].push_back(entry);
    ++total_;
}

std::vector<HistoryEntry> HistoryStore::entries_for(std::string_view user_id) const {
    std::shared_lock lock(mutex_);
    const auto it = by_user_.find(std::string(user_id));
    return it == by_user_.end() ? std::vector<HistoryEntry>{} : it->second;
}

std::size_t HistoryStore::size() const {
    std::shared_lock lock(mutex_);
    return total_;
}

double category_weight(std::span<const HistoryEntry> entries, std::string_view category,
                       std::int64_t now_ms, std::int64_t half_life_ms) {
    if (half_life_ms <= 0) throw PreconditionError("half_life_ms must be positive");
    if (category.empty()) return 0.0;
    double weight = 0.0;
    for (const auto& e : entries) {
        if (e.chosen_category != category) continue;
        const auto age = std::max<std::int64_t>(0, now_ms - e.timestamp_ms);
        weight += std::exp2(-static_cast<double>(age) / static_cast<double>(half_life_ms));
    }
    return weight;
}

std::vector<Cluster> bias_cluster_order(std::vector<Cluster> clusters, std::string_view user_id,
                                        const HistoryStore& store, std::int64_t half_life_ms,
                                        std::int64_t now_ms) {
    if (half_life_ms <= 0) throw PreconditionError("half_life_ms must be positive");
    if (clusters.empty() || user_id.empty()) return clusters;

    const auto entries = store.entries_for(user_id);
    if (entries.empty()) return clusters;

    std::vector<std::pair<double, std::size_t>> keyed;
    keyed.reserve(clusters.size());
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        keyed.emplace_back(category_weight(entries, clusters[i].category, now_ms, half_life_ms), i);
    }
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });

    std::vector<Cluster> out;
    out.reserve(clusters.size());
    for (const auto& [weight, i] : keyed) out.push_back(std::move(clusters[i]));
    return out;
}

}  // namespace metasearch

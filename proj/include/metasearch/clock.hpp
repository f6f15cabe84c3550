#pragma once

#include <atomic>
#include <cstdint>

namespace metasearch {

// Wall-clock source in epoch milliseconds. Injected everywhere time matters
// (history decay, cache expiry, reported latencies) so runs can be pinned.
class Clock {
public:
    virtual ~Clock() = default;
    virtual std::int64_t now_ms() const = 0;
};

class SystemClock final : public Clock {
public:
    std::int64_t now_ms() const override;
};

class ManualClock final : public Clock {
public:
    explicit ManualClock(std::int64_t start_ms = 0) : now_(start_ms) {}

    std::int64_t now_ms() const override { return now_.load(); }
    void set(std::int64_t ms) { now_.store(ms); }
    void advance(std::int64_t ms) { now_.fetch_add(ms); }

private:
    std::atomic<std::int64_t> now_;
};

}  // namespace metasearch

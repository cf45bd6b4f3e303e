#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>

namespace regatta {

struct TimeoutError : std::runtime_error {
    TimeoutError() : std::runtime_error("timeout") {}
};

/// Cooperative wall--clock budget. Engines poll it inside their main
/// loops; an expired deadline aborts the computation via TimeoutError.
class Deadline {
public:
    Deadline() = default;

    static Deadline after(double seconds) {
        Deadline d;
        d.at_ = std::chrono::steady_clock::now() +
                std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(seconds));
        return d;
    }

    bool unlimited() const { return !at_.has_value(); }

    bool expired() const {
        return at_.has_value() && std::chrono::steady_clock::now() >= *at_;
    }

    void poll() const {
        if (expired()) throw TimeoutError{};
    }

private:
    std::optional<std::chrono::steady_clock::time_point> at_;
};

inline uint64_t hash_combine(uint64_t h, uint64_t v) {
    // splitmix-style mixing
    v += 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ull;
    v = (v ^ (v >> 27)) * 0x94d049bb133111ebull;
    return h ^ (v ^ (v >> 31));
}

}  // namespace regatta

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace regatta {

/// A set of automaton states as a fixed-width bit vector. Subset tests are
/// word-parallel; they dominate antichain runtimes.
class Config {
public:
    Config() = default;
    explicit Config(uint32_t num_bits)
        : nbits_(num_bits), w_((num_bits + 63) / 64, 0) {}

    static Config of(uint32_t num_bits, const std::vector<uint32_t>& bits) {
        Config c(num_bits);
        for (uint32_t b : bits) c.set(b);
        return c;
    }

    uint32_t size() const { return nbits_; }

    bool test(uint32_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(uint32_t i, bool v = true) {
        uint64_t mask = uint64_t{1} << (i & 63);
        if (v) w_[i >> 6] |= mask; else w_[i >> 6] &= ~mask;
    }

    bool subset_of(const Config& other) const {
        for (size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & ~other.w_[k]) return false;
        return true;
    }

    uint32_t count() const {
        uint32_t n = 0;
        for (uint64_t w : w_) n += static_cast<uint32_t>(__builtin_popcountll(w));
        return n;
    }

    bool none() const {
        for (uint64_t w : w_) if (w) return false;
        return true;
    }

    std::vector<uint32_t> bits() const {
        std::vector<uint32_t> out;
        for (uint32_t i = 0; i < nbits_; ++i)
            if (test(i)) out.push_back(i);
        return out;
    }

    bool operator==(const Config& other) const = default;
    bool operator<(const Config& other) const {
        if (nbits_ != other.nbits_) return nbits_ < other.nbits_;
        for (size_t k = w_.size(); k-- > 0;)
            if (w_[k] != other.w_[k]) return w_[k] < other.w_[k];
        return false;
    }

    uint64_t hash() const;
    std::string to_string() const;  // "{0,3}"

private:
    uint32_t nbits_ = 0;
    std::vector<uint64_t> w_;
};

struct ConfigHash {
    size_t operator()(const Config& c) const { return static_cast<size_t>(c.hash()); }
};

/// A set of pairwise subset-incomparable configurations, kept minimal:
/// inserting an element removes its supersets and is refused when a subset
/// is already present.
class AntichainSet {
public:
    /// True iff some retained element is a subset of c.
    bool dominates(const Config& c) const {
        for (const auto& e : elems_)
            if (e.subset_of(c)) return true;
        return false;
    }

    /// Returns false (and leaves the set unchanged) when c is dominated.
    bool insert(const Config& c) {
        if (dominates(c)) return false;
        std::erase_if(elems_, [&](const Config& e) { return c.subset_of(e); });
        elems_.push_back(c);
        return true;
    }

    const std::vector<Config>& elements() const { return elems_; }
    size_t size() const { return elems_.size(); }

private:
    std::vector<Config> elems_;
};

}  // namespace regatta

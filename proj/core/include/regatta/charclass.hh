#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace regatta {

using CodePoint = uint32_t;

/// Exclusive upper bound of the default symbol universe.
inline constexpr uint64_t kDefaultAlphabetMax = 0x110000;
/// Largest supported universe (full 32-bit code points).
inline constexpr uint64_t kMaxAlphabetMax = uint64_t{1} << 32;

/// A set of code points stored as sorted, pairwise disjoint, non-adjacent
/// inclusive ranges.
class CharClass {
public:
    using Range = std::pair<CodePoint, CodePoint>;  // [lo, hi], inclusive

    CharClass() = default;
    static CharClass point(CodePoint cp) { return range(cp, cp); }
    static CharClass range(CodePoint lo, CodePoint hi);
    /// Normalizes arbitrary (possibly overlapping, unsorted) ranges.
    static CharClass of_ranges(std::vector<Range> ranges);
    static CharClass full(uint64_t alphabet_max);

    bool empty() const { return ranges_.empty(); }
    uint64_t count() const;
    bool contains(CodePoint cp) const;
    bool subset_of(const CharClass& other) const;
    bool intersects(const CharClass& other) const;

    CharClass union_with(const CharClass& other) const;
    CharClass intersect_with(const CharClass& other) const;
    CharClass complement(uint64_t alphabet_max) const;

    /// Smallest member; class must be nonempty.
    CodePoint min_code_point() const;

    const std::vector<Range>& ranges() const { return ranges_; }

    bool operator==(const CharClass& other) const = default;
    bool operator<(const CharClass& other) const { return ranges_ < other.ranges_; }
    uint64_t hash() const;

    /// Hex range list, e.g. "61-7a,30".
    std::string to_string() const;

    /// Throws std::invalid_argument when the representation invariants or
    /// the alphabet bound are violated.
    void validate(uint64_t alphabet_max = kMaxAlphabetMax) const;

private:
    std::vector<Range> ranges_;
};

/// Partition of the used alphabet into classes of symbols that no source
/// predicate can tell apart.
struct MintermTable {
    std::vector<CharClass> minterms;             // sorted by smallest member
    std::vector<CharClass> source_predicates;
    std::vector<std::vector<uint32_t>> membership;  // predicate index -> minterm ids
    std::optional<uint32_t> residual;            // id of the class outside all predicates
    uint64_t alphabet_max = kDefaultAlphabetMax;

    uint32_t size() const { return static_cast<uint32_t>(minterms.size()); }

    /// True when the minterms cover the whole alphabet [0, alphabet_max).
    bool covers_alphabet() const;

    /// Ids of all minterms contained in cls. For a source predicate this is
    /// exactly its membership row.
    std::vector<uint32_t> ids_subset_of(const CharClass& cls) const;

    /// Canonical representative of a minterm (its smallest code point).
    CodePoint representative(uint32_t minterm) const;

    bool operator==(const MintermTable& other) const = default;

    void validate() const;
};

/// Computes the minterm partition of the given predicates. The residual
/// class (symbols outside every predicate) is materialized only on request;
/// callers that complement languages need it.
MintermTable mintermize(const std::vector<CharClass>& predicates,
                        uint64_t alphabet_max = kDefaultAlphabetMax,
                        bool with_residual = false);

}  // namespace regatta

#pragma once

#include <span>

#include "regatta/bench/problem.hh"
#include "regatta/util.hh"

namespace regatta::bench {

struct OracleResult {
    bool nonempty;                  // definitive when true
    std::vector<uint32_t> witness;  // shortest, in length-lexicographic order
    uint32_t bound;                 // the searched length bound
};

/// Direct-semantics membership: leaf NFAs are simulated on the fly and the
/// Boolean structure is evaluated on the membership bits. No product,
/// subset or complement construction is involved.
bool bre_member(const Bre& e, std::span<const uint32_t> word);

/// Membership through the full (non-minimized) configuration relation of
/// the forward interpretation; exponential in the state count and intended
/// for small instances only.
bool afa_member_brute(const Afa& a, std::span<const uint32_t> word);

bool problem_member(const Problem& p, std::span<const uint32_t> word);

/// Enumerates all words over the problem's minterm alphabet up to max_len.
/// Nonempty verdicts are definitive; an empty result only covers the bound.
OracleResult oracle_empty(const Problem& p, uint32_t max_len,
                          const Deadline& deadline = {});

}  // namespace regatta::bench

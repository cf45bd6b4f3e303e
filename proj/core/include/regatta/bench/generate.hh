#pragma once

#include <array>
#include <random>

#include "regatta/bench/problem.hh"

namespace regatta::bench {

/// Parametric problem families (see docs/benchmarks.md):
///   1  [a-c]a[a-c]{n+1} ∩ [a-c]a[a-c]{n}               (long strings)
///   2  ⋂ᵢ ([01]^{i-1}0[01]^{n-1}0[01]^{n-i}αᵢ | ...1...1...αᵢ)  (exponential branching)
///   3  ⋂ᵢ .*(.^{p_{10+i}})+αᵢ                          (exponential paths 1)
///   4  ⋂ᵢ .+αᵢ0(.^{p_{10+i}})+                         (exponential paths 2)
///   5  [01]*1[01]{n} ∖ [01]*0[01]{n-1}                 (sat. difference)
///   6  [01]*11[01]{n} ∖ [01]*1[01]{n+1}                (unsat. difference)
///   7  [01]*1[01]{n} ∩ [01]*0[01]{n-1}                 (sat. intersection)
///   8  [01]*1[01]{n} ∩ [01]*0[01]{n}                   (unsat. intersection)
/// The marker classes αᵢ are the disjoint singletons 'A'+i; p_j is the j-th
/// prime (p_1 = 2). Families 5-8 carry their expected verdict; 1-4 are left
/// to the oracle. Differences are encoded as X ∩ ¬Y.
Problem gen_param(int family, uint32_t n,
                  uint64_t alphabet_max = kDefaultAlphabetMax);

/// Builds from five regexes the inclusion problem r5 ⊆ r1∩r2∩r3∩r4 (does a
/// new filter add anything?) plus the corresponding equivalence problem
/// r1∩..∩r4 = r1∩..∩r5 for equivalence-based engines.
std::vector<Problem> gen_regex_inclusion(const std::array<std::string, 5>& regexes,
                                         const std::string& id_prefix = "regex",
                                         uint64_t alphabet_max = kDefaultAlphabetMax);

/// Alphabet of num_symbols singleton classes over code points 0..k-1; the
/// minterms cover the alphabet exactly, so complementation never needs a
/// residual class.
std::shared_ptr<const MintermTable> small_table(uint32_t num_symbols);

Nfa random_nfa(std::mt19937_64& rng, uint32_t max_states,
               const std::shared_ptr<const MintermTable>& table);

Afa random_afa(std::mt19937_64& rng, uint32_t max_states, uint32_t num_minterms);

Bre random_bre(std::mt19937_64& rng, uint32_t depth, uint32_t max_leaf_states,
               const std::shared_ptr<const MintermTable>& table);

Problem random_afa_problem(uint64_t seed, uint32_t index, uint32_t max_states = 6,
                           uint32_t num_minterms = 3);

Problem random_bre_problem(uint64_t seed, uint32_t index, uint32_t depth = 3,
                           uint32_t max_leaf_states = 4);

/// Plain clause list over variables 0..num_vars-1 (var, positive?).
std::vector<std::vector<std::pair<uint32_t, bool>>> random_cnf(
    std::mt19937_64& rng, uint32_t num_vars, uint32_t num_clauses,
    uint32_t max_width = 3);

uint32_t nth_prime(uint32_t j);  // 1-based, nth_prime(1) == 2

}  // namespace regatta::bench

#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "regatta/config.hh"
#include "regatta/nfa.hh"
#include "regatta/util.hh"

namespace regatta {

/// Deterministic automaton produced by the subset construction. Macro-state
/// contents are retained for inspection; the transition function is total
/// over the minterm alphabet (the empty macro-state acts as the sink).
struct Dfa {
    std::vector<Config> states;               // macro-state contents
    std::vector<std::vector<uint32_t>> next;  // [state][minterm]
    uint32_t initial = 0;
    std::vector<bool> final_flags;
    std::shared_ptr<const MintermTable> table;

    uint32_t num_states() const { return static_cast<uint32_t>(states.size()); }
    bool accepts_empty_language() const;
};

struct EmptinessResult {
    bool empty;
    std::vector<uint32_t> witness;  // shortest accepted word (minterm ids) when nonempty
};

struct InclusionResult {
    bool included;
    std::vector<uint32_t> counterexample;  // word in L(a) \ L(b) when not included
};

struct EquivalenceResult {
    bool equivalent;
    std::vector<uint32_t> counterexample;  // word in the symmetric difference
};

/// Subset construction over reachable macro-states only.
Dfa determinize(const Nfa& a, const Deadline& deadline = {});

Nfa dfa_to_nfa(const Dfa& d);

/// Complement wrt the word universe of the table's minterm set (which is
/// the full alphabet whenever the residual class is materialized).
Nfa complement(const Nfa& a, const Deadline& deadline = {});

/// Product over reachable pairs. Tables must agree; with
/// remintermize_if_needed the operands are rebuilt over a joint table.
Nfa intersect(const Nfa& a, const Nfa& b, bool remintermize_if_needed = true,
              const Deadline& deadline = {});

/// Disjoint-union construction.
Nfa union_nfa(const Nfa& a, const Nfa& b, bool remintermize_if_needed = true);

/// BFS emptiness; the witness is a shortest accepted word.
EmptinessResult is_empty(const Nfa& a, const Deadline& deadline = {});

/// Antichain-based inclusion check L(a) ⊆ L(b): explores pairs of an
/// a-state and a b-macro-state, pruning pairs subsumed by a retained pair
/// with a smaller macro-state. FIFO order, so counterexamples are shortest.
InclusionResult antichain_included(const Nfa& a, const Nfa& b,
                                   const Deadline& deadline = {});

/// Language equivalence via bisimulation up to congruence: a pair of
/// macro-states is skipped when it lies in the congruence closure (wrt
/// union) of the processed pairs, decided by rewriting to normal form.
EquivalenceResult hkc_equivalent(const Nfa& a, const Nfa& b,
                                 const Deadline& deadline = {});

/// Quotient by the coarsest forward bisimulation (partition refinement).
Nfa reduce_bisim(const Nfa& a, const Deadline& deadline = {});

/// Moore minimization of a DFA.
Dfa moore_minimize(const Dfa& d, const Deadline& deadline = {});

/// Rebuilds an NFA over another table; every old minterm must be an exact
/// union of new minterms.
Nfa retable(const Nfa& a, std::shared_ptr<const MintermTable> table);

/// Joint table for two automata (their minterms re-mintermized together).
std::shared_ptr<const MintermTable> joint_table(const Nfa& a, const Nfa& b);

}  // namespace regatta

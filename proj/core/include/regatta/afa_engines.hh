#pragma once

#include <span>
#include <vector>

#include "regatta/afa.hh"
#include "regatta/bre.hh"
#include "regatta/config.hh"
#include "regatta/nfa.hh"
#include "regatta/util.hh"

namespace regatta {

struct AfaEmptiness {
    bool empty;
    std::vector<uint32_t> witness;  // minterm ids, meaningful when nonempty
};

/// Exploration bookkeeping for witness reconstruction: every discovered
/// configuration keeps its predecessor in the search and the minterm used.
struct FrontierItem {
    Config config;
    int64_t parent;  // index into the item list, -1 for seeds
    uint32_t via_minterm;
};

/// All subset-minimal models of a positive state formula over n variables.
/// Exhaustive over the formula's support when it is small, SAT-backed
/// enumeration otherwise; both paths return the same sorted antichain.
std::vector<Config> minimal_models(const Formula& f, uint32_t n,
                                   const Deadline& deadline = {});

/// All subset-maximal models (over the full variable range; variables the
/// formula does not mention are set).
std::vector<Config> maximal_models(const Formula& f, uint32_t n,
                                   const Deadline& deadline = {});

bool formula_satisfiable(const Formula& f, uint32_t n);

/// Subset-minimal successor configurations of c under one minterm: the
/// minimal models of the conjunction of delta over c's states. Pairwise
/// incomparable.
std::vector<Config> fw_successors(const Afa& a, const Config& c, uint32_t minterm,
                                  const Deadline& deadline = {});

/// The unique subset-largest forward-predecessor source: all states whose
/// transition formula is satisfied by (target, minterm).
Config bw_predecessor(const Afa& a, const Config& target, uint32_t minterm);

/// Forward de-alternation: the NFA of reachable minimal configurations.
/// Language-preserving.
Nfa dealternate_fw(const Afa& a, const Deadline& deadline = {});

/// Backward de-alternation from the maximal models of the final condition;
/// the result is empty exactly when the AFA is empty.
Nfa dealternate_bw(const Afa& a, const Deadline& deadline = {});

/// Forward antichain emptiness: BFS over minimal configurations with
/// subsumption pruning (a configuration is dropped when a retained subset
/// exists).
AfaEmptiness antichain_empty_fw(const Afa& a, const Deadline& deadline = {});

/// Backward antichain emptiness driven by an incremental SAT solver:
/// predecessors of the downward closure of each dequeued configuration are
/// enumerated as maximal models, with discovered configurations excluded by
/// blocking clauses.
AfaEmptiness antisat_empty(const Afa& a, const Deadline& deadline = {});

/// Linear-size AFA for a Boolean combination of NFAs; complement is handled
/// by the boolean-automaton doubling, so the result has at most twice the
/// total leaf size.
Afa afa_of_bre(const Bre& e);

/// Replays a word through the forward interpretation (used to validate
/// witnesses).
bool afa_accepts_fw(const Afa& a, std::span<const uint32_t> word);

}  // namespace regatta

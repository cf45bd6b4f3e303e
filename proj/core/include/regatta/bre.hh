#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "regatta/nfa.hh"
#include "regatta/nfa_ops.hh"

namespace regatta {

struct BreNode;
using Bre = std::shared_ptr<const BreNode>;

/// Boolean combination of regular languages with explicit NFA leaves. All
/// leaves must share one minterm table.
struct BreNode {
    enum class Kind { Leaf, And, Or, Not };
    Kind kind;
    std::optional<Nfa> leaf;
    std::vector<Bre> kids;
    // leaf provenance (atom name and, when built from a regex, its text)
    std::string name;
    std::optional<std::string> regex_src;
};

namespace bre {

Bre leaf(Nfa nfa, std::string name = {}, std::optional<std::string> regex_src = {});
Bre conj(std::vector<Bre> kids);
Bre disj(std::vector<Bre> kids);
Bre neg(Bre kid);

bool contains_complement(const Bre& e);
void collect_leaves(const Bre& e, std::vector<const BreNode*>& out);
const MintermTable& table_of(const Bre& e);
std::shared_ptr<const MintermTable> table_ptr_of(const Bre& e);

}  // namespace bre

enum class BreStrategy { Nfa, Dfa };

struct BreEvalOptions {
    BreStrategy strategy = BreStrategy::Nfa;
    /// The Nfa strategy applies reduce_bisim once every reduce_every
    /// operations; the Dfa strategy minimizes after every operation.
    uint32_t reduce_every = 2;
    Deadline deadline;
};

/// Bottom-up emptiness of a Boolean combination. The Nfa strategy keeps
/// nondeterminism and determinizes only under complement; the Dfa strategy
/// determinizes and Moore-minimizes after every operation.
EmptinessResult eval_bre(const Bre& e, const BreEvalOptions& opts = {});

}  // namespace regatta

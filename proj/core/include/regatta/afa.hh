#pragma once

#include <memory>
#include <vector>

#include "regatta/charclass.hh"
#include "regatta/formula.hh"

namespace regatta {

/// Alternating finite automaton in the general (non-separated) form:
/// transition formulas over states and symbol predicates, a positive
/// initial formula and a negative final formula. Formulas are put into NNF
/// on construction; polarity violations are rejected.
class Afa {
public:
    Afa(uint32_t num_states, std::vector<Formula> delta, Formula init, Formula fin,
        std::shared_ptr<const MintermTable> table);

    uint32_t num_states() const { return num_states_; }
    const Formula& delta(uint32_t q) const { return delta_[q]; }
    const std::vector<Formula>& delta() const { return delta_; }
    const Formula& init() const { return init_; }
    const Formula& fin() const { return fin_; }
    const MintermTable& table() const { return *table_; }
    const std::shared_ptr<const MintermTable>& table_ptr() const { return table_; }

private:
    uint32_t num_states_;
    std::vector<Formula> delta_;
    Formula init_, fin_;
    std::shared_ptr<const MintermTable> table_;
};

/// Boolean finite automaton: same shape, no polarity restriction, formulas
/// kept as authored.
class Bfa {
public:
    Bfa(uint32_t num_states, std::vector<Formula> delta, Formula init, Formula fin,
        std::shared_ptr<const MintermTable> table);

    uint32_t num_states() const { return num_states_; }
    const Formula& delta(uint32_t q) const { return delta_[q]; }
    const Formula& init() const { return init_; }
    const Formula& fin() const { return fin_; }
    const MintermTable& table() const { return *table_; }
    const std::shared_ptr<const MintermTable>& table_ptr() const { return table_; }

    /// Whether state q alone is accepting (the final formula evaluated on
    /// the singleton {q}).
    bool final_on_singleton(uint32_t q) const;

private:
    uint32_t num_states_;
    std::vector<Formula> delta_;
    Formula init_, fin_;
    std::shared_ptr<const MintermTable> table_;
};

/// Encodes a BFA as an AFA of exactly twice the size: each state gains a
/// dual tracking its negation, formulas are NNF-rewritten with negated
/// state literals redirected to the duals, and the final condition is
/// extended so a dual of an accepting state rejects the empty suffix.
Afa bfa_to_afa(const Bfa& b);

}  // namespace regatta

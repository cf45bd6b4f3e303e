#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "regatta/charclass.hh"
#include "regatta/config.hh"

namespace regatta {

struct Transition {
    uint32_t minterm;
    uint32_t target;
    auto operator<=>(const Transition&) const = default;
};

/// Explicit NFA over minterm ids. Transitions from a state are kept sorted
/// by (minterm, target): the minterm groups form the first layer of the
/// two-layer structure, targets the second layer.
class Nfa {
public:
    Nfa(uint32_t num_states, std::shared_ptr<const MintermTable> table);

    uint32_t num_states() const { return num_states_; }
    const MintermTable& table() const { return *table_; }
    const std::shared_ptr<const MintermTable>& table_ptr() const { return table_; }
    uint32_t num_minterms() const { return table_->size(); }

    void add_transition(uint32_t q, uint32_t minterm, uint32_t r);
    void add_initial(uint32_t q);
    void add_final(uint32_t q);

    std::span<const Transition> transitions_from(uint32_t q) const {
        return delta_[q];
    }
    const std::vector<uint32_t>& initial() const { return initial_; }
    const std::vector<uint32_t>& final_states() const { return final_; }
    bool is_initial(uint32_t q) const { return initial_flag_[q]; }
    bool is_final(uint32_t q) const { return final_flag_[q]; }

    Config initial_config() const { return Config::of(num_states_, initial_); }
    Config final_config() const { return Config::of(num_states_, final_); }

    /// Successor macro-state of a set of states under one minterm.
    Config post(const Config& set, uint32_t minterm) const;

    /// Direct membership test of a word of minterm ids (on-the-fly subset
    /// simulation; no automata construction involved).
    bool accepts(std::span<const uint32_t> word) const;

    size_t num_transitions() const;

    /// Checks id ranges and per-state ordering.
    void validate() const;

private:
    uint32_t num_states_;
    std::shared_ptr<const MintermTable> table_;
    std::vector<std::vector<Transition>> delta_;
    std::vector<uint32_t> initial_, final_;
    std::vector<bool> initial_flag_, final_flag_;
};

}  // namespace regatta

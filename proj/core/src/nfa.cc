#include "regatta/nfa.hh"

#include <algorithm>
#include <stdexcept>

namespace regatta {

Nfa::Nfa(uint32_t num_states, std::shared_ptr<const MintermTable> table)
    : num_states_(num_states),
      table_(std::move(table)),
      delta_(num_states),
      initial_flag_(num_states, false),
      final_flag_(num_states, false) {
    if (!table_) throw std::invalid_argument("Nfa: null minterm table");
}

void Nfa::add_transition(uint32_t q, uint32_t minterm, uint32_t r) {
    if (q >= num_states_ || r >= num_states_)
        throw std::out_of_range("Nfa: state id out of range");
    if (minterm >= table_->size())
        throw std::out_of_range("Nfa: minterm id out of range");
    auto& row = delta_[q];
    Transition t{minterm, r};
    auto it = std::lower_bound(row.begin(), row.end(), t);
    if (it != row.end() && *it == t) return;
    row.insert(it, t);
}

void Nfa::add_initial(uint32_t q) {
    if (q >= num_states_) throw std::out_of_range("Nfa: state id out of range");
    if (initial_flag_[q]) return;
    initial_flag_[q] = true;
    initial_.insert(std::lower_bound(initial_.begin(), initial_.end(), q), q);
}

void Nfa::add_final(uint32_t q) {
    if (q >= num_states_) throw std::out_of_range("Nfa: state id out of range");
    if (final_flag_[q]) return;
    final_flag_[q] = true;
    final_.insert(std::lower_bound(final_.begin(), final_.end(), q), q);
}

Config Nfa::post(const Config& set, uint32_t minterm) const {
    Config out(num_states_);
    for (uint32_t q = 0; q < num_states_; ++q) {
        if (!set.test(q)) continue;
        const auto& row = delta_[q];
        auto it = std::lower_bound(row.begin(), row.end(), Transition{minterm, 0});
        for (; it != row.end() && it->minterm == minterm; ++it) out.set(it->target);
    }
    return out;
}

bool Nfa::accepts(std::span<const uint32_t> word) const {
    Config cur = initial_config();
    for (uint32_t m : word) {
        if (cur.none()) return false;
        cur = post(cur, m);
    }
    for (uint32_t q : final_) if (cur.test(q)) return true;
    return false;
}

size_t Nfa::num_transitions() const {
    size_t n = 0;
    for (const auto& row : delta_) n += row.size();
    return n;
}

void Nfa::validate() const {
    for (uint32_t q = 0; q < num_states_; ++q) {
        const auto& row = delta_[q];
        for (size_t i = 0; i < row.size(); ++i) {
            if (row[i].target >= num_states_ || row[i].minterm >= table_->size())
                throw std::invalid_argument("Nfa: transition out of range");
            if (i > 0 && !(row[i - 1] < row[i]))
                throw std::invalid_argument("Nfa: transitions not sorted/deduplicated");
        }
    }
}

}  // namespace regatta

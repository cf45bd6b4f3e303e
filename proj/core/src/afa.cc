#include "regatta/afa.hh"

#include <stdexcept>
#include <unordered_map>

namespace regatta {

namespace {

void check_state_range(const Formula& f, uint32_t n, const char* what) {
    std::vector<uint32_t> states;
    collect_states(f, states);
    for (uint32_t q : states)
        if (q >= n) throw std::invalid_argument(std::string(what) + ": state id out of range");
}

}  // namespace

Afa::Afa(uint32_t num_states, std::vector<Formula> delta, Formula init, Formula fin,
         std::shared_ptr<const MintermTable> table)
    : num_states_(num_states), table_(std::move(table)) {
    if (!table_) throw std::invalid_argument("Afa: null minterm table");
    if (delta.size() != num_states) throw std::invalid_argument("Afa: delta size mismatch");
    uint64_t amax = table_->alphabet_max;
    delta_.reserve(delta.size());
    for (auto& f : delta) {
        Formula g = nnf(f, amax);
        if (!positive_in_states(g))
            throw std::invalid_argument("Afa: transition formula not positive in states");
        check_state_range(g, num_states, "Afa delta");
        delta_.push_back(std::move(g));
    }
    init_ = nnf(init, amax);
    if (!positive_in_states(init_))
        throw std::invalid_argument("Afa: initial formula not positive in states");
    if (has_pred_atom(init_))
        throw std::invalid_argument("Afa: initial formula mentions symbol predicates");
    check_state_range(init_, num_states, "Afa init");
    fin_ = nnf(fin, amax);
    if (!negative_in_states(fin_))
        throw std::invalid_argument("Afa: final formula not negative in states");
    if (has_pred_atom(fin_))
        throw std::invalid_argument("Afa: final formula mentions symbol predicates");
    check_state_range(fin_, num_states, "Afa final");
}

Bfa::Bfa(uint32_t num_states, std::vector<Formula> delta, Formula init, Formula fin,
         std::shared_ptr<const MintermTable> table)
    : num_states_(num_states),
      delta_(std::move(delta)),
      init_(std::move(init)),
      fin_(std::move(fin)),
      table_(std::move(table)) {
    if (!table_) throw std::invalid_argument("Bfa: null minterm table");
    if (delta_.size() != num_states) throw std::invalid_argument("Bfa: delta size mismatch");
    for (const auto& f : delta_) check_state_range(f, num_states, "Bfa delta");
    if (has_pred_atom(init_) || has_pred_atom(fin_))
        throw std::invalid_argument("Bfa: initial/final formula mentions symbol predicates");
    check_state_range(init_, num_states, "Bfa init");
    check_state_range(fin_, num_states, "Bfa final");
}

bool Bfa::final_on_singleton(uint32_t q) const {
    Config c(num_states_);
    c.set(q);
    return eval_formula(fin_, c);
}

namespace {

// NNF with negated state literals redirected to the dual copy: under an odd
// number of negations, q becomes q+n and predicates are complemented.
Formula dualize(const Formula& f, bool neg, uint32_t n, uint64_t amax,
                std::unordered_map<uint64_t, Formula>& memo_pos,
                std::unordered_map<uint64_t, Formula>& memo_neg) {
    auto& memo = neg ? memo_neg : memo_pos;
    auto it = memo.find(f.id());
    if (it != memo.end()) return it->second;
    Formula r;
    switch (f.kind()) {
        case FormulaKind::True: r = neg ? fml::fls() : fml::tru(); break;
        case FormulaKind::False: r = neg ? fml::tru() : fml::fls(); break;
        case FormulaKind::StateVar:
            r = neg ? fml::state(f.node().state + n) : f;
            break;
        case FormulaKind::PredAtom:
            r = neg ? fml::pred(f.node().cls.complement(amax)) : f;
            break;
        case FormulaKind::Not:
            r = dualize(f.node().kids[0], !neg, n, amax, memo_pos, memo_neg);
            break;
        case FormulaKind::And:
        case FormulaKind::Or: {
            std::vector<Formula> kids;
            kids.reserve(f.node().kids.size());
            for (const auto& k : f.node().kids)
                kids.push_back(dualize(k, neg, n, amax, memo_pos, memo_neg));
            bool make_and = (f.kind() == FormulaKind::And) != neg;
            r = make_and ? fml::conj(std::move(kids)) : fml::disj(std::move(kids));
            break;
        }
    }
    memo.emplace(f.id(), r);
    return r;
}

Formula dualize(const Formula& f, bool neg, uint32_t n, uint64_t amax) {
    std::unordered_map<uint64_t, Formula> mp, mn;
    return dualize(f, neg, n, amax, mp, mn);
}

// In the NNF of the final formula, positive literals q become ¬(q+n).
Formula redirect_final(const Formula& f, uint32_t n) {
    switch (f.kind()) {
        case FormulaKind::True:
        case FormulaKind::False:
            return f;
        case FormulaKind::StateVar:
            return fml::negate(fml::state(f.node().state + n));
        case FormulaKind::Not:
            return f;  // ¬q literal, already negative
        case FormulaKind::And:
        case FormulaKind::Or: {
            std::vector<Formula> kids;
            for (const auto& k : f.node().kids) kids.push_back(redirect_final(k, n));
            return f.kind() == FormulaKind::And ? fml::conj(std::move(kids))
                                                : fml::disj(std::move(kids));
        }
        case FormulaKind::PredAtom:
            throw std::invalid_argument("final formula mentions symbol predicates");
    }
    throw std::logic_error("unreachable");
}

}  // namespace

Afa bfa_to_afa(const Bfa& b) {
    uint32_t n = b.num_states();
    uint64_t amax = b.table().alphabet_max;

    std::vector<Formula> delta(2 * n);
    for (uint32_t q = 0; q < n; ++q) {
        delta[q] = dualize(b.delta(q), false, n, amax);
        delta[q + n] = dualize(b.delta(q), true, n, amax);
    }
    Formula init = dualize(b.init(), false, n, amax);

    Formula fin = redirect_final(nnf(b.fin(), amax), n);
    // A dual state stands for the negation of its partner; where the
    // partner accepts the empty suffix, the dual must not.
    std::vector<Formula> parts{fin};
    for (uint32_t q = 0; q < n; ++q)
        if (b.final_on_singleton(q)) parts.push_back(fml::negate(fml::state(q + n)));
    fin = fml::conj(std::move(parts));

    return Afa(2 * n, std::move(delta), std::move(init), std::move(fin), b.table_ptr());
}

}  // namespace regatta

#include "regatta/bench/oracle.hh"

#include <stdexcept>

namespace regatta::bench {

bool bre_member(const Bre& e, std::span<const uint32_t> word) {
    switch (e->kind) {
        case BreNode::Kind::Leaf:
            return e->leaf->accepts(word);
        case BreNode::Kind::And:
            for (const auto& k : e->kids)
                if (!bre_member(k, word)) return false;
            return true;
        case BreNode::Kind::Or:
            for (const auto& k : e->kids)
                if (bre_member(k, word)) return true;
            return false;
        case BreNode::Kind::Not:
            return !bre_member(e->kids[0], word);
    }
    throw std::logic_error("unreachable");
}

bool afa_member_brute(const Afa& a, std::span<const uint32_t> word) {
    uint32_t n = a.num_states();
    if (n > 20) throw std::invalid_argument("afa_member_brute: too many states");
    uint32_t nm = a.table().size();
    uint64_t configs = uint64_t{1} << n;

    auto config_of = [&](uint64_t mask) {
        Config c(n);
        for (uint32_t q = 0; q < n; ++q)
            if ((mask >> q) & 1) c.set(q);
        return c;
    };

    // ok_mask[m][target]: bitmask of states whose transition formula holds
    // under (target, m); a transition c -> target exists iff c ⊆ ok_mask.
    std::vector<std::vector<uint64_t>> ok_mask(nm, std::vector<uint64_t>(configs, 0));
    for (uint32_t m = 0; m < nm; ++m)
        for (uint64_t t = 0; t < configs; ++t) {
            Config tc = config_of(t);
            uint64_t mask = 0;
            for (uint32_t q = 0; q < n; ++q)
                if (eval_formula(a.delta(q), tc, m, a.table())) mask |= uint64_t{1} << q;
            ok_mask[m][t] = mask;
        }

    std::vector<bool> cur(configs, false);
    for (uint64_t c = 0; c < configs; ++c)
        if (eval_formula(a.init(), config_of(c))) cur[c] = true;
    for (uint32_t m : word) {
        std::vector<bool> next(configs, false);
        for (uint64_t t = 0; t < configs; ++t) {
            // which current configs can reach t
            for (uint64_t c = 0; c < configs; ++c)
                if (cur[c] && (c & ~ok_mask[m][t]) == 0) { next[t] = true; break; }
        }
        cur = std::move(next);
    }
    for (uint64_t c = 0; c < configs; ++c)
        if (cur[c] && eval_formula(a.fin(), config_of(c))) return true;
    return false;
}

bool problem_member(const Problem& p, std::span<const uint32_t> word) {
    auto all_parts = [&](const std::vector<NamedNfa>& parts) {
        for (const auto& part : parts)
            if (!part.nfa.accepts(word)) return false;
        return true;
    };
    switch (p.kind) {
        case ProblemKind::BreEmpty:
            return bre_member(p.bre, word);
        case ProblemKind::AfaEmpty:
            return afa_member_brute(*p.afa, word);
        case ProblemKind::Inclusion:
            return all_parts(p.lhs_parts) && !all_parts(p.rhs_parts);
        case ProblemKind::Equivalence:
            return all_parts(p.lhs_parts) != all_parts(p.rhs_parts);
    }
    throw std::logic_error("unreachable");
}

OracleResult oracle_empty(const Problem& p, uint32_t max_len, const Deadline& deadline) {
    uint32_t nm = p.table ? p.table->size() : 0;
    if (nm == 0) throw std::invalid_argument("oracle_empty: problem has no minterm table");

    std::vector<uint32_t> word;
    // length-lexicographic enumeration
    for (uint32_t len = 0; len <= max_len; ++len) {
        word.assign(len, 0);
        for (;;) {
            deadline.poll();
            if (problem_member(p, word)) return {true, word, max_len};
            // odometer
            uint32_t i = len;
            while (i > 0) {
                if (++word[i - 1] < nm) break;
                word[i - 1] = 0;
                --i;
            }
            if (i == 0) break;
        }
    }
    return {false, {}, max_len};
}

}  // namespace regatta::bench

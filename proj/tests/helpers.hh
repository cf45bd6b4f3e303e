#pragma once

// Test-side oracles, independent of the implementation paths they check.

#include <map>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "regatta/afa.hh"
#include "regatta/charclass.hh"
#include "regatta/nfa.hh"
#include "regatta/regex.hh"

namespace regatta::test {

// ---- words ------------------------------------------------------------------

/// All words over symbols 0..alphabet-1 up to max_len, length-lexicographic.
inline std::vector<std::vector<uint32_t>> all_words(uint32_t alphabet, uint32_t max_len) {
    std::vector<std::vector<uint32_t>> out{{}};
    std::vector<std::vector<uint32_t>> prev{{}};
    for (uint32_t len = 1; len <= max_len; ++len) {
        std::vector<std::vector<uint32_t>> cur;
        for (const auto& w : prev)
            for (uint32_t s = 0; s < alphabet; ++s) {
                auto w2 = w;
                w2.push_back(s);
                cur.push_back(std::move(w2));
            }
        out.insert(out.end(), cur.begin(), cur.end());
        prev = std::move(cur);
    }
    return out;
}

inline std::optional<uint32_t> minterm_of(const MintermTable& t, CodePoint cp) {
    for (uint32_t m = 0; m < t.size(); ++m)
        if (t.minterms[m].contains(cp)) return m;
    return std::nullopt;
}

/// Maps a code-point word onto minterm ids (every symbol must be covered).
inline std::vector<uint32_t> minterm_word(const MintermTable& t,
                                          std::span<const CodePoint> cps) {
    std::vector<uint32_t> out;
    for (CodePoint cp : cps) out.push_back(*minterm_of(t, cp));
    return out;
}

// ---- recursive regex matcher --------------------------------------------------

/// Direct language-membership evaluation on the AST over code points;
/// no automaton is built.
inline bool regex_match(const rx::Ast& ast, std::span<const CodePoint> w) {
    using rx::AstKind;
    switch (ast->kind) {
        case AstKind::Empty: return false;
        case AstKind::Epsilon: return w.empty();
        case AstKind::AnchorStart:
        case AstKind::AnchorEnd: return w.empty();
        case AstKind::Class: return w.size() == 1 && ast->cls.contains(w[0]);
        case AstKind::Dot: return w.size() == 1;
        case AstKind::Concat: {
            // try all split points, recursively on the first element
            if (ast->kids.empty()) return w.empty();
            std::vector<rx::Ast> rest(ast->kids.begin() + 1, ast->kids.end());
            rx::AstNode rest_node{.kind = AstKind::Concat, .kids = rest};
            auto rest_ast = std::make_shared<const rx::AstNode>(rest_node);
            for (size_t cut = 0; cut <= w.size(); ++cut)
                if (regex_match(ast->kids[0], w.subspan(0, cut)) &&
                    regex_match(rest_ast, w.subspan(cut)))
                    return true;
            return false;
        }
        case AstKind::Alt:
            for (const auto& k : ast->kids)
                if (regex_match(k, w)) return true;
            return false;
        case AstKind::And:
            for (const auto& k : ast->kids)
                if (!regex_match(k, w)) return false;
            return true;
        case AstKind::Neg:
            return !regex_match(ast->kids[0], w);
        case AstKind::Opt:
            return w.empty() || regex_match(ast->kids[0], w);
        case AstKind::Star: {
            if (w.empty()) return true;
            for (size_t cut = 1; cut <= w.size(); ++cut)
                if (regex_match(ast->kids[0], w.subspan(0, cut)) &&
                    regex_match(ast, w.subspan(cut)))
                    return true;
            return false;
        }
        case AstKind::Plus: {
            rx::AstNode star{.kind = AstKind::Star, .kids = {ast->kids[0]}};
            auto star_ast = std::make_shared<const rx::AstNode>(star);
            for (size_t cut = 1; cut <= w.size(); ++cut)
                if (regex_match(ast->kids[0], w.subspan(0, cut)) &&
                    regex_match(star_ast, w.subspan(cut)))
                    return true;
            return regex_match(ast->kids[0], std::span<const CodePoint>{}) && w.empty();
        }
        case AstKind::Repeat: {
            bool eps_ok = regex_match(ast->kids[0], std::span<const CodePoint>{});
            uint32_t min = eps_ok ? 0 : ast->min;
            if (w.empty()) return min == 0;
            if (ast->max && *ast->max == 0) return false;
            rx::AstNode tail{.kind = AstKind::Repeat,
                             .kids = {ast->kids[0]},
                             .min = min > 0 ? min - 1 : 0,
                             .max = ast->max ? std::optional<uint32_t>(*ast->max - 1)
                                             : std::nullopt};
            auto tail_ast = std::make_shared<const rx::AstNode>(tail);
            for (size_t cut = 1; cut <= w.size(); ++cut)
                if (regex_match(ast->kids[0], w.subspan(0, cut)) &&
                    regex_match(tail_ast, w.subspan(cut)))
                    return true;
            return false;
        }
    }
    return false;
}

// ---- substitution-semantics evaluation of a Bfa -------------------------------

/// Word acceptance by backward substitution: the value of state q after the
/// whole suffix is whether q alone is accepting; each symbol step rewrites
/// values through the transition formulas; the word is accepted when the
/// initial formula evaluates true on the final values.
inline bool bfa_accepts(const Bfa& b, std::span<const uint32_t> word) {
    uint32_t n = b.num_states();
    Config values(n);
    for (uint32_t q = 0; q < n; ++q)
        if (b.final_on_singleton(q)) values.set(q);
    for (size_t i = word.size(); i-- > 0;) {
        Config next(n);
        for (uint32_t q = 0; q < n; ++q)
            if (eval_formula(b.delta(q), values, word[i], b.table())) next.set(q);
        values = next;
    }
    return eval_formula(b.init(), values);
}

// ---- brute-force model sets ---------------------------------------------------

inline std::vector<Config> brute_models(const Formula& f, uint32_t n) {
    std::vector<Config> out;
    for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
        Config c(n);
        for (uint32_t q = 0; q < n; ++q)
            if ((mask >> q) & 1) c.set(q);
        if (eval_formula(f, c)) out.push_back(std::move(c));
    }
    return out;
}

inline std::vector<Config> brute_minimal_models(const Formula& f, uint32_t n) {
    auto models = brute_models(f, n);
    std::vector<Config> out;
    for (const auto& m : models) {
        bool minimal = true;
        for (const auto& o : models)
            if (!(o == m) && o.subset_of(m)) { minimal = false; break; }
        if (minimal) out.push_back(m);
    }
    return out;
}

inline std::vector<Config> brute_maximal_models(const Formula& f, uint32_t n) {
    auto models = brute_models(f, n);
    std::vector<Config> out;
    for (const auto& m : models) {
        bool maximal = true;
        for (const auto& o : models)
            if (!(o == m) && m.subset_of(o)) { maximal = false; break; }
        if (maximal) out.push_back(m);
    }
    return out;
}

// ---- NFA language comparison up to a bound -------------------------------------

inline bool same_language_upto(const Nfa& a, const Nfa& b, uint32_t max_len) {
    for (const auto& w : all_words(a.num_minterms(), max_len))
        if (a.accepts(w) != b.accepts(w)) return false;
    return true;
}

inline bool reachable_all(const Nfa& a) {
    std::vector<bool> seen(a.num_states(), false);
    std::vector<uint32_t> stack(a.initial().begin(), a.initial().end());
    for (uint32_t q : stack) seen[q] = true;
    while (!stack.empty()) {
        uint32_t q = stack.back();
        stack.pop_back();
        for (const auto& t : a.transitions_from(q))
            if (!seen[t.target]) { seen[t.target] = true; stack.push_back(t.target); }
    }
    for (uint32_t q = 0; q < a.num_states(); ++q)
        if (!seen[q]) return false;
    return true;
}

// ---- random regex strings (for inclusion problems) -----------------------------

inline std::string random_regex_text(std::mt19937_64& rng, uint32_t depth) {
    std::uniform_int_distribution<int> pick(0, 9);
    if (depth == 0) {
        switch (pick(rng) % 4) {
            case 0: return "a";
            case 1: return "b";
            case 2: return "[ab]";
            default: return "(a|b)";
        }
    }
    std::string sub = random_regex_text(rng, depth - 1);
    switch (pick(rng)) {
        case 0: return sub + "*";
        case 1: return sub + "+";
        case 2: return sub + "?";
        case 3: return "(" + sub + "|" + random_regex_text(rng, depth - 1) + ")";
        case 4: return sub + random_regex_text(rng, depth - 1);
        case 5: return "(" + sub + "){1,2}";
        default: return sub;
    }
}

}  // namespace regatta::test

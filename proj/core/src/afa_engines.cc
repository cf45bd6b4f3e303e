#include "regatta/afa_engines.hh"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "regatta/sat.hh"

namespace regatta {

namespace {

constexpr uint32_t kExhaustiveSupportLimit = 16;

std::vector<uint32_t> support_of(const Formula& f) {
    std::vector<uint32_t> s;
    collect_states(f, s);
    return s;
}

void sort_configs(std::vector<Config>& cs) {
    std::sort(cs.begin(), cs.end(), [](const Config& a, const Config& b) {
        if (a.count() != b.count()) return a.count() < b.count();
        return a < b;
    });
}

Config from_mask(uint32_t n, const std::vector<uint32_t>& support, uint64_t mask) {
    Config c(n);
    for (size_t i = 0; i < support.size(); ++i)
        if ((mask >> i) & 1) c.set(support[i]);
    return c;
}

std::optional<sat::Lit> no_pred(const FormulaNode&) { return std::nullopt; }

}  // namespace

bool formula_satisfiable(const Formula& f, uint32_t n) {
    if (f.is_true()) return true;
    if (f.is_false()) return false;
    sat::Solver s;
    std::unordered_map<uint32_t, sat::Lit> vars;
    auto amap = [&](const FormulaNode& node) -> std::optional<sat::Lit> {
        if (node.kind != FormulaKind::StateVar) return std::nullopt;
        auto it = vars.find(node.state);
        if (it == vars.end())
            it = vars.emplace(node.state, sat::Lit::pos(s.new_var())).first;
        return it->second;
    };
    s.add_clause({sat::tseitin(s, f, amap)});
    return s.solve().sat();
}

std::vector<Config> minimal_models(const Formula& f, uint32_t n, const Deadline& deadline) {
    std::vector<Config> out;
    if (f.is_false()) return out;
    auto support = support_of(f);

    if (support.size() <= kExhaustiveSupportLimit) {
        uint64_t lim = uint64_t{1} << support.size();
        std::vector<std::vector<uint64_t>> by_count(support.size() + 1);
        for (uint64_t mask = 0; mask < lim; ++mask)
            by_count[static_cast<size_t>(__builtin_popcountll(mask))].push_back(mask);
        for (const auto& bucket : by_count) {
            deadline.poll();
            for (uint64_t mask : bucket) {
                Config c = from_mask(n, support, mask);
                bool dominated = false;
                for (const auto& kept : out)
                    if (kept.subset_of(c)) { dominated = true; break; }
                if (dominated) continue;
                if (eval_formula(f, c)) out.push_back(std::move(c));
            }
        }
    } else {
        sat::Solver s;
        s.set_deadline(deadline);
        std::vector<uint32_t> vars;
        std::unordered_map<uint32_t, uint32_t> var_of_state;
        for (uint32_t q : support) {
            uint32_t v = s.new_var();
            var_of_state.emplace(q, v);
            vars.push_back(v);
        }
        auto amap = [&](const FormulaNode& node) -> std::optional<sat::Lit> {
            if (node.kind != FormulaKind::StateVar) return std::nullopt;
            return sat::Lit::pos(var_of_state.at(node.state));
        };
        s.add_clause({sat::tseitin(s, f, amap)});
        for (;;) {
            deadline.poll();
            auto res = s.minimal_model({}, vars);
            if (!res.sat()) break;
            Config c(n);
            std::vector<sat::Lit> block;
            for (uint32_t q : support) {
                if (res.model[var_of_state.at(q)]) {
                    c.set(q);
                    block.push_back(sat::Lit::neg(var_of_state.at(q)));
                }
            }
            out.push_back(std::move(c));
            s.add_clause(std::move(block));  // excludes all supersets
        }
    }
    sort_configs(out);
    return out;
}

std::vector<Config> maximal_models(const Formula& f, uint32_t n, const Deadline& deadline) {
    std::vector<Config> out;
    if (f.is_false()) return out;
    auto support = support_of(f);

    // States outside the support are unconstrained, so every maximal model
    // contains all of them.
    auto complete = [&](Config c) {
        std::vector<bool> in_support(n, false);
        for (uint32_t q : support) in_support[q] = true;
        for (uint32_t q = 0; q < n; ++q)
            if (!in_support[q]) c.set(q);
        return c;
    };

    if (support.size() <= kExhaustiveSupportLimit) {
        uint64_t lim = uint64_t{1} << support.size();
        std::vector<std::vector<uint64_t>> by_count(support.size() + 1);
        for (uint64_t mask = 0; mask < lim; ++mask)
            by_count[static_cast<size_t>(__builtin_popcountll(mask))].push_back(mask);
        for (size_t k = by_count.size(); k-- > 0;) {
            deadline.poll();
            for (uint64_t mask : by_count[k]) {
                Config c = from_mask(n, support, mask);
                bool dominated = false;
                for (const auto& kept : out)
                    if (c.subset_of(kept)) { dominated = true; break; }
                if (dominated) continue;
                if (eval_formula(f, c)) out.push_back(std::move(c));
            }
        }
        for (auto& c : out) c = complete(std::move(c));
    } else {
        sat::Solver s;
        s.set_deadline(deadline);
        std::vector<uint32_t> vars;
        std::unordered_map<uint32_t, uint32_t> var_of_state;
        for (uint32_t q : support) {
            uint32_t v = s.new_var();
            var_of_state.emplace(q, v);
            vars.push_back(v);
        }
        auto amap = [&](const FormulaNode& node) -> std::optional<sat::Lit> {
            if (node.kind != FormulaKind::StateVar) return std::nullopt;
            return sat::Lit::pos(var_of_state.at(node.state));
        };
        s.add_clause({sat::tseitin(s, f, amap)});
        for (;;) {
            deadline.poll();
            auto res = s.maximal_model({}, vars);
            if (!res.sat()) break;
            Config c(n);
            std::vector<sat::Lit> block;
            for (uint32_t q : support) {
                if (res.model[var_of_state.at(q)]) c.set(q);
                else block.push_back(sat::Lit::pos(var_of_state.at(q)));
            }
            out.push_back(complete(std::move(c)));
            s.add_clause(std::move(block));  // excludes all subsets
        }
    }
    sort_configs(out);
    return out;
}

std::vector<Config> fw_successors(const Afa& a, const Config& c, uint32_t minterm,
                                  const Deadline& deadline) {
    std::vector<Formula> parts;
    for (uint32_t q : c.bits())
        parts.push_back(restrict_symbol(a.delta(q), minterm, a.table()));
    Formula g = fml::conj(std::move(parts));
    return minimal_models(g, a.num_states(), deadline);
}

Config bw_predecessor(const Afa& a, const Config& target, uint32_t minterm) {
    Config src(a.num_states());
    for (uint32_t q = 0; q < a.num_states(); ++q)
        if (eval_formula(a.delta(q), target, minterm, a.table())) src.set(q);
    return src;
}

namespace {

std::vector<uint32_t> chain_word(const std::vector<FrontierItem>& items, int64_t i) {
    std::vector<uint32_t> w;
    while (items[i].parent >= 0) {
        w.push_back(items[i].via_minterm);
        i = items[i].parent;
    }
    std::reverse(w.begin(), w.end());
    return w;
}

// Parent chains of the backward engines read off the forward word directly.
std::vector<uint32_t> chain_word_backward(const std::vector<FrontierItem>& items, int64_t i) {
    std::vector<uint32_t> w;
    while (items[i].parent >= 0) {
        w.push_back(items[i].via_minterm);
        i = items[i].parent;
    }
    return w;
}

}  // namespace

Nfa dealternate_fw(const Afa& a, const Deadline& deadline) {
    uint32_t nm = a.table().size();
    std::unordered_map<Config, uint32_t, ConfigHash> index;
    std::vector<Config> configs;
    std::vector<std::tuple<uint32_t, uint32_t, uint32_t>> trans;

    auto intern = [&](const Config& c) {
        auto it = index.find(c);
        if (it != index.end()) return it->second;
        uint32_t id = static_cast<uint32_t>(configs.size());
        index.emplace(c, id);
        configs.push_back(c);
        return id;
    };

    auto seeds = minimal_models(a.init(), a.num_states(), deadline);
    for (const auto& c : seeds) intern(c);
    for (uint32_t i = 0; i < configs.size(); ++i) {
        deadline.poll();
        Config cur = configs[i];
        for (uint32_t m = 0; m < nm; ++m)
            for (const auto& c2 : fw_successors(a, cur, m, deadline))
                trans.emplace_back(i, m, intern(c2));
    }

    Nfa out(static_cast<uint32_t>(configs.size()), a.table_ptr());
    for (const auto& c : seeds) out.add_initial(index.at(c));
    for (uint32_t i = 0; i < configs.size(); ++i)
        if (eval_formula(a.fin(), configs[i])) out.add_final(i);
    for (auto [s, m, t] : trans) out.add_transition(s, m, t);
    return out;
}

Nfa dealternate_bw(const Afa& a, const Deadline& deadline) {
    uint32_t nm = a.table().size();
    std::unordered_map<Config, uint32_t, ConfigHash> index;
    std::vector<Config> configs;
    std::vector<std::tuple<uint32_t, uint32_t, uint32_t>> trans;

    auto intern = [&](const Config& c) {
        auto it = index.find(c);
        if (it != index.end()) return it->second;
        uint32_t id = static_cast<uint32_t>(configs.size());
        index.emplace(c, id);
        configs.push_back(c);
        return id;
    };

    auto seeds = maximal_models(a.fin(), a.num_states(), deadline);
    for (const auto& c : seeds) intern(c);
    for (uint32_t i = 0; i < configs.size(); ++i) {
        deadline.poll();
        Config cur = configs[i];
        for (uint32_t m = 0; m < nm; ++m) {
            Config pred = bw_predecessor(a, cur, m);
            trans.emplace_back(i, m, intern(pred));
        }
    }

    Nfa out(static_cast<uint32_t>(configs.size()), a.table_ptr());
    for (const auto& c : seeds) out.add_initial(index.at(c));
    for (uint32_t i = 0; i < configs.size(); ++i)
        if (eval_formula(a.init(), configs[i])) out.add_final(i);
    for (auto [s, m, t] : trans) out.add_transition(s, m, t);
    return out;
}

AfaEmptiness antichain_empty_fw(const Afa& a, const Deadline& deadline) {
    if (formula_satisfiable(fml::conj2(a.init(), a.fin()), a.num_states()))
        return {false, {}};  // some initial configuration is accepting

    uint32_t nm = a.table().size();
    std::vector<FrontierItem> items;
    std::deque<size_t> queue;
    AntichainSet retained;

    auto discover = [&](Config c, int64_t parent, uint32_t via) -> std::optional<size_t> {
        if (retained.dominates(c)) return std::nullopt;
        retained.insert(c);
        items.push_back({std::move(c), parent, via});
        return items.size() - 1;
    };

    for (const auto& c : minimal_models(a.init(), a.num_states(), deadline)) {
        auto idx = discover(c, -1, 0);
        if (!idx) continue;
        if (eval_formula(a.fin(), items[*idx].config))
            return {false, chain_word(items, static_cast<int64_t>(*idx))};
        queue.push_back(*idx);
    }

    while (!queue.empty()) {
        deadline.poll();
        size_t i = queue.front();
        queue.pop_front();
        Config cur = items[i].config;
        for (uint32_t m = 0; m < nm; ++m) {
            for (auto& c2 : fw_successors(a, cur, m, deadline)) {
                auto idx = discover(std::move(c2), static_cast<int64_t>(i), m);
                if (!idx) continue;
                if (eval_formula(a.fin(), items[*idx].config))
                    return {false, chain_word(items, static_cast<int64_t>(*idx))};
                queue.push_back(*idx);
            }
        }
    }
    return {true, {}};
}

AfaEmptiness antisat_empty(const Afa& a, const Deadline& deadline) {
    uint32_t n = a.num_states();
    uint32_t nm = a.table().size();

    if (formula_satisfiable(fml::conj2(a.init(), a.fin()), n)) return {false, {}};

    // Main solver: "cur" carries the dequeued configuration (pinned by
    // assumptions to its downward closure), "nxt" the predecessor being
    // solved for, one-hot selectors encode the symbol.
    sat::Solver s;
    s.set_deadline(deadline);
    std::vector<uint32_t> cur(n), nxt(n), sel(nm);
    for (auto& v : cur) v = s.new_var();
    for (auto& v : nxt) v = s.new_var();
    for (auto& v : sel) v = s.new_var();
    {
        std::vector<sat::Lit> sel_lits;
        for (uint32_t v : sel) sel_lits.push_back(sat::Lit::pos(v));
        sat::add_exactly_one(s, sel_lits);
    }

    std::map<CharClass, sat::Lit> pred_lits;
    auto pred_lit = [&](const CharClass& cls) {
        auto it = pred_lits.find(cls);
        if (it != pred_lits.end()) return it->second;
        sat::Lit g = sat::Lit::pos(s.new_var());
        std::vector<sat::Lit> any{~g};
        for (uint32_t m = 0; m < nm; ++m) {
            if (a.table().minterms[m].subset_of(cls)) {
                any.push_back(sat::Lit::pos(sel[m]));
                s.add_clause({g, sat::Lit::neg(sel[m])});
            }
        }
        s.add_clause(std::move(any));
        pred_lits.emplace(cls, g);
        return g;
    };
    auto amap = [&](const FormulaNode& node) -> std::optional<sat::Lit> {
        if (node.kind == FormulaKind::StateVar) return sat::Lit::pos(cur[node.state]);
        if (node.kind == FormulaKind::PredAtom) return pred_lit(node.cls);
        return std::nullopt;
    };
    for (uint32_t q = 0; q < n; ++q) {
        sat::Lit root = sat::tseitin(s, a.delta(q), amap);
        s.add_clause({sat::Lit::neg(nxt[q]), root});
    }

    std::vector<FrontierItem> items;
    std::deque<size_t> queue;

    // Blocks the configuration and everything below it.
    auto block = [&](const Config& c) {
        std::vector<sat::Lit> cl;
        for (uint32_t q = 0; q < n; ++q)
            if (!c.test(q)) cl.push_back(sat::Lit::pos(nxt[q]));
        s.add_clause(std::move(cl));
    };

    auto discover = [&](Config c, int64_t parent, uint32_t via)
        -> std::optional<AfaEmptiness> {
        block(c);
        items.push_back({std::move(c), parent, via});
        size_t idx = items.size() - 1;
        if (eval_formula(a.init(), items[idx].config))
            return AfaEmptiness{false, chain_word_backward(items, static_cast<int64_t>(idx))};
        queue.push_back(idx);
        return std::nullopt;
    };

    // Seeds: maximal accepting configurations.
    for (const auto& c : maximal_models(a.fin(), n, deadline))
        if (auto hit = discover(c, -1, 0)) return *hit;

    while (!queue.empty()) {
        deadline.poll();
        size_t i = queue.front();
        queue.pop_front();
        const Config snapshot = items[i].config;

        std::vector<sat::Lit> assumptions;
        for (uint32_t q = 0; q < n; ++q)
            if (!snapshot.test(q)) assumptions.push_back(sat::Lit::neg(cur[q]));

        for (;;) {
            auto res = s.maximal_model(assumptions, nxt);
            if (!res.sat()) break;
            Config c2(n);
            for (uint32_t q = 0; q < n; ++q)
                if (res.model[nxt[q]]) c2.set(q);
            uint32_t via = 0;
            for (uint32_t m = 0; m < nm; ++m)
                if (res.model[sel[m]]) { via = m; break; }
            if (auto hit = discover(std::move(c2), static_cast<int64_t>(i), via))
                return *hit;
        }
    }
    return {true, {}};
}

Afa afa_of_bre(const Bre& e) {
    std::vector<const BreNode*> leaves;
    bre::collect_leaves(e, leaves);
    if (leaves.empty()) throw std::invalid_argument("afa_of_bre: no leaves");
    auto table = bre::table_ptr_of(e);
    for (const BreNode* l : leaves)
        if (!(l->leaf->table_ptr() == table || l->leaf->table() == *table))
            throw std::runtime_error("afa_of_bre: leaves use different minterm tables");

    std::unordered_map<const BreNode*, uint32_t> offset;
    uint32_t total = 0;
    for (const BreNode* l : leaves) {
        offset.emplace(l, total);
        total += l->leaf->num_states();
    }

    std::vector<Formula> delta(total, fml::fls());
    std::vector<bool> final_flag(total, false);
    for (const BreNode* l : leaves) {
        const Nfa& nfa = *l->leaf;
        uint32_t off = offset.at(l);
        for (uint32_t q = 0; q < nfa.num_states(); ++q) {
            std::vector<Formula> by_minterm;
            auto row = nfa.transitions_from(q);
            size_t i = 0;
            while (i < row.size()) {
                uint32_t m = row[i].minterm;
                std::vector<Formula> targets;
                while (i < row.size() && row[i].minterm == m) {
                    targets.push_back(fml::state(off + row[i].target));
                    ++i;
                }
                by_minterm.push_back(fml::conj2(fml::pred(table->minterms[m]),
                                                fml::disj(std::move(targets))));
            }
            delta[off + q] = fml::disj(std::move(by_minterm));
        }
        for (uint32_t q : nfa.final_states()) final_flag[off + q] = true;
    }

    // initial formula follows the tree structure
    auto build_init = [&](auto&& self, const Bre& node) -> Formula {
        switch (node->kind) {
            case BreNode::Kind::Leaf: {
                uint32_t off = offset.at(node.get());
                std::vector<Formula> init;
                for (uint32_t q : node->leaf->initial()) init.push_back(fml::state(off + q));
                return fml::disj(std::move(init));
            }
            case BreNode::Kind::And: {
                std::vector<Formula> kids;
                for (const auto& k : node->kids) kids.push_back(self(self, k));
                return fml::conj(std::move(kids));
            }
            case BreNode::Kind::Or: {
                std::vector<Formula> kids;
                for (const auto& k : node->kids) kids.push_back(self(self, k));
                return fml::disj(std::move(kids));
            }
            case BreNode::Kind::Not:
                return fml::negate(self(self, node->kids[0]));
        }
        throw std::logic_error("unreachable");
    };
    Formula init = build_init(build_init, e);

    std::vector<Formula> fin_parts;
    for (uint32_t q = 0; q < total; ++q)
        if (!final_flag[q]) fin_parts.push_back(fml::negate(fml::state(q)));
    Formula fin = fml::conj(std::move(fin_parts));

    if (!bre::contains_complement(e))
        return Afa(total, std::move(delta), std::move(init), std::move(fin), table);

    Bfa b(total, std::move(delta), std::move(init), std::move(fin), table);
    return bfa_to_afa(b);
}

bool afa_accepts_fw(const Afa& a, std::span<const uint32_t> word) {
    std::vector<Config> frontier = minimal_models(a.init(), a.num_states());
    for (uint32_t m : word) {
        std::unordered_set<Config, ConfigHash> next;
        for (const auto& c : frontier)
            for (auto& c2 : fw_successors(a, c, m)) next.insert(std::move(c2));
        frontier.assign(next.begin(), next.end());
        if (frontier.empty()) return false;
    }
    for (const auto& c : frontier)
        if (eval_formula(a.fin(), c)) return true;
    return false;
}

}  // namespace regatta

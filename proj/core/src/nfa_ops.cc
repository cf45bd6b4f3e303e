#include "regatta/nfa_ops.hh"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace regatta {

bool Dfa::accepts_empty_language() const {
    for (bool f : final_flags)
        if (f) return false;
    return true;
}

Dfa determinize(const Nfa& a, const Deadline& deadline) {
    Dfa d;
    d.table = a.table_ptr();
    uint32_t nm = a.num_minterms();

    std::unordered_map<Config, uint32_t, ConfigHash> index;
    auto intern = [&](const Config& c) {
        auto it = index.find(c);
        if (it != index.end()) return it->second;
        uint32_t id = static_cast<uint32_t>(d.states.size());
        index.emplace(c, id);
        d.states.push_back(c);
        d.next.emplace_back();
        bool fin = false;
        for (uint32_t q : a.final_states()) fin = fin || c.test(q);
        d.final_flags.push_back(fin);
        return id;
    };

    d.initial = intern(a.initial_config());
    for (uint32_t s = 0; s < d.states.size(); ++s) {
        deadline.poll();
        Config cur = d.states[s];  // copy: d.states may reallocate
        d.next[s].resize(nm);
        for (uint32_t m = 0; m < nm; ++m)
            d.next[s][m] = intern(a.post(cur, m));
    }
    return d;
}

Nfa dfa_to_nfa(const Dfa& d) {
    Nfa out(d.num_states(), d.table);
    out.add_initial(d.initial);
    for (uint32_t s = 0; s < d.num_states(); ++s) {
        if (d.final_flags[s]) out.add_final(s);
        for (uint32_t m = 0; m < d.next[s].size(); ++m)
            out.add_transition(s, m, d.next[s][m]);
    }
    return out;
}

Nfa complement(const Nfa& a, const Deadline& deadline) {
    Dfa d = determinize(a, deadline);
    for (size_t s = 0; s < d.final_flags.size(); ++s)
        d.final_flags[s] = !d.final_flags[s];
    return dfa_to_nfa(d);
}

namespace {

void require_same_table(const Nfa& a, const Nfa& b) {
    if (a.table_ptr() == b.table_ptr()) return;
    if (a.table() == b.table()) return;
    throw std::runtime_error("minterm tables incompatible and re-mintermization disabled");
}

bool tables_agree(const Nfa& a, const Nfa& b) {
    return a.table_ptr() == b.table_ptr() || a.table() == b.table();
}

}  // namespace

std::shared_ptr<const MintermTable> joint_table(const Nfa& a, const Nfa& b) {
    std::vector<CharClass> preds = a.table().minterms;
    for (const auto& m : b.table().minterms)
        if (std::find(preds.begin(), preds.end(), m) == preds.end()) preds.push_back(m);
    uint64_t amax = std::max(a.table().alphabet_max, b.table().alphabet_max);
    bool residual = a.table().residual.has_value() || b.table().residual.has_value();
    return std::make_shared<const MintermTable>(mintermize(preds, amax, residual));
}

Nfa retable(const Nfa& a, std::shared_ptr<const MintermTable> table) {
    std::vector<std::vector<uint32_t>> remap(a.num_minterms());
    for (uint32_t m = 0; m < a.num_minterms(); ++m) {
        const CharClass& old = a.table().minterms[m];
        remap[m] = table->ids_subset_of(old);
        CharClass u;
        for (uint32_t nm : remap[m]) u = u.union_with(table->minterms[nm]);
        if (!(u == old))
            throw std::runtime_error("retable: minterm not expressible in new table");
    }
    Nfa out(a.num_states(), std::move(table));
    for (uint32_t q : a.initial()) out.add_initial(q);
    for (uint32_t q : a.final_states()) out.add_final(q);
    for (uint32_t q = 0; q < a.num_states(); ++q)
        for (const auto& t : a.transitions_from(q))
            for (uint32_t nm : remap[t.minterm]) out.add_transition(q, nm, t.target);
    return out;
}

Nfa intersect(const Nfa& a_in, const Nfa& b_in, bool remintermize_if_needed,
              const Deadline& deadline) {
    if (!tables_agree(a_in, b_in) && !remintermize_if_needed)
        require_same_table(a_in, b_in);
    const bool remap = !tables_agree(a_in, b_in);
    std::shared_ptr<const MintermTable> jt;
    if (remap) jt = joint_table(a_in, b_in);
    const Nfa a = remap ? retable(a_in, jt) : a_in;
    const Nfa b = remap ? retable(b_in, jt) : b_in;

    // product over reachable pairs
    std::unordered_map<uint64_t, uint32_t> index;
    std::vector<std::pair<uint32_t, uint32_t>> pairs;
    auto key = [&](uint32_t p, uint32_t q) { return (uint64_t{p} << 32) | q; };
    auto intern = [&](uint32_t p, uint32_t q) {
        uint64_t k = key(p, q);
        auto it = index.find(k);
        if (it != index.end()) return it->second;
        uint32_t id = static_cast<uint32_t>(pairs.size());
        index.emplace(k, id);
        pairs.emplace_back(p, q);
        return id;
    };

    for (uint32_t p : a.initial())
        for (uint32_t q : b.initial()) intern(p, q);

    std::vector<std::tuple<uint32_t, uint32_t, uint32_t>> trans;  // (src, minterm, dst)
    for (uint32_t i = 0; i < pairs.size(); ++i) {
        deadline.poll();
        auto [p, q] = pairs[i];
        auto ta = a.transitions_from(p);
        auto tb = b.transitions_from(q);
        size_t ja = 0, jb = 0;
        while (ja < ta.size() && jb < tb.size()) {
            if (ta[ja].minterm < tb[jb].minterm) { ++ja; continue; }
            if (tb[jb].minterm < ta[ja].minterm) { ++jb; continue; }
            uint32_t m = ta[ja].minterm;
            size_t ea = ja, eb = jb;
            while (ea < ta.size() && ta[ea].minterm == m) ++ea;
            while (eb < tb.size() && tb[eb].minterm == m) ++eb;
            for (size_t x = ja; x < ea; ++x)
                for (size_t y = jb; y < eb; ++y)
                    trans.emplace_back(i, m, intern(ta[x].target, tb[y].target));
            ja = ea;
            jb = eb;
        }
    }

    Nfa out(static_cast<uint32_t>(pairs.size() == 0 ? 1 : pairs.size()),
            remap ? jt : a_in.table_ptr());
    if (!pairs.empty()) {
        for (uint32_t p : a.initial())
            for (uint32_t q : b.initial()) out.add_initial(index.at(key(p, q)));
        for (uint32_t i = 0; i < pairs.size(); ++i) {
            auto [p, q] = pairs[i];
            if (a.is_final(p) && b.is_final(q)) out.add_final(i);
        }
        for (auto [s, m, t] : trans) out.add_transition(s, m, t);
    }
    return out;
}

Nfa union_nfa(const Nfa& a_in, const Nfa& b_in, bool remintermize_if_needed) {
    if (!tables_agree(a_in, b_in) && !remintermize_if_needed)
        require_same_table(a_in, b_in);
    const bool remap = !tables_agree(a_in, b_in);
    std::shared_ptr<const MintermTable> jt;
    if (remap) jt = joint_table(a_in, b_in);
    const Nfa a = remap ? retable(a_in, jt) : a_in;
    const Nfa b = remap ? retable(b_in, jt) : b_in;

    Nfa out(a.num_states() + b.num_states(), remap ? jt : a_in.table_ptr());
    for (uint32_t q : a.initial()) out.add_initial(q);
    for (uint32_t q : a.final_states()) out.add_final(q);
    uint32_t off = a.num_states();
    for (uint32_t q : b.initial()) out.add_initial(off + q);
    for (uint32_t q : b.final_states()) out.add_final(off + q);
    for (uint32_t q = 0; q < a.num_states(); ++q)
        for (const auto& t : a.transitions_from(q)) out.add_transition(q, t.minterm, t.target);
    for (uint32_t q = 0; q < b.num_states(); ++q)
        for (const auto& t : b.transitions_from(q))
            out.add_transition(off + q, t.minterm, off + t.target);
    return out;
}

EmptinessResult is_empty(const Nfa& a, const Deadline& deadline) {
    struct Item {
        uint32_t state;
        int64_t parent;
        uint32_t via;
    };
    std::vector<Item> items;
    std::vector<bool> seen(a.num_states(), false);

    auto word_of = [&](int64_t i) {
        std::vector<uint32_t> w;
        while (items[i].parent >= 0) {
            w.push_back(items[i].via);
            i = items[i].parent;
        }
        std::reverse(w.begin(), w.end());
        return w;
    };

    for (uint32_t q : a.initial()) {
        if (a.is_final(q)) return {false, {}};
        seen[q] = true;
        items.push_back({q, -1, 0});
    }
    for (size_t i = 0; i < items.size(); ++i) {
        deadline.poll();
        uint32_t q = items[i].state;
        for (const auto& t : a.transitions_from(q)) {
            if (seen[t.target]) continue;
            seen[t.target] = true;
            items.push_back({t.target, static_cast<int64_t>(i), t.minterm});
            if (a.is_final(t.target)) return {false, word_of(items.size() - 1)};
        }
    }
    return {true, {}};
}

InclusionResult antichain_included(const Nfa& a, const Nfa& b, const Deadline& deadline) {
    require_same_table(a, b);
    uint32_t nm = a.num_minterms();
    Config bfinal = b.final_config();

    struct Item {
        uint32_t p;
        Config s;
        int64_t parent;
        uint32_t via;
    };
    std::vector<Item> items;
    std::vector<AntichainSet> chains(a.num_states());
    std::deque<size_t> queue;

    auto word_of = [&](int64_t i) {
        std::vector<uint32_t> w;
        while (items[i].parent >= 0) {
            w.push_back(items[i].via);
            i = items[i].parent;
        }
        std::reverse(w.begin(), w.end());
        return w;
    };
    auto bad = [&](uint32_t p, const Config& s) {
        if (!a.is_final(p)) return false;
        for (uint32_t f : b.final_states())
            if (s.test(f)) return false;
        return true;
    };

    Config s0 = b.initial_config();
    for (uint32_t p : a.initial()) {
        if (!chains[p].insert(s0)) continue;
        items.push_back({p, s0, -1, 0});
        if (bad(p, s0)) return {false, word_of(items.size() - 1)};
        queue.push_back(items.size() - 1);
    }
    while (!queue.empty()) {
        deadline.poll();
        size_t i = queue.front();
        queue.pop_front();
        uint32_t p = items[i].p;
        Config s = items[i].s;
        for (uint32_t m = 0; m < nm; ++m) {
            Config s2 = b.post(s, m);
            for (const auto& t : a.transitions_from(p)) {
                if (t.minterm != m) continue;
                uint32_t p2 = t.target;
                if (chains[p2].dominates(s2)) continue;
                chains[p2].insert(s2);
                items.push_back({p2, s2, static_cast<int64_t>(i), m});
                if (bad(p2, s2)) return {false, word_of(items.size() - 1)};
                queue.push_back(items.size() - 1);
            }
        }
    }
    return {true, {}};
}

namespace {

// Normal form wrt the processed pairs, each used as the two-way rewrite
// rule X -> X ∪ Y, Y -> X ∪ Y.
Config congruence_nf(Config z, const std::vector<std::pair<Config, Config>>& rules) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [x, y] : rules) {
            if (x.subset_of(z) && !y.subset_of(z)) {
                for (uint32_t b : y.bits()) z.set(b);
                changed = true;
            }
            if (y.subset_of(z) && !x.subset_of(z)) {
                for (uint32_t b : x.bits()) z.set(b);
                changed = true;
            }
        }
    }
    return z;
}

}  // namespace

EquivalenceResult hkc_equivalent(const Nfa& a, const Nfa& b, const Deadline& deadline) {
    require_same_table(a, b);
    uint32_t nm = a.num_minterms();
    uint32_t n = a.num_states() + b.num_states();
    uint32_t off = a.num_states();

    // both macro-states live in the disjoint-union state space
    auto embed_a = [&](const Config& c) {
        Config z(n);
        for (uint32_t q : c.bits()) z.set(q);
        return z;
    };
    auto embed_b = [&](const Config& c) {
        Config z(n);
        for (uint32_t q : c.bits()) z.set(off + q);
        return z;
    };
    auto post = [&](const Config& z, uint32_t m) {
        Config out(n);
        for (uint32_t q : z.bits()) {
            if (q < off) {
                for (const auto& t : a.transitions_from(q))
                    if (t.minterm == m) out.set(t.target);
            } else {
                for (const auto& t : b.transitions_from(q - off))
                    if (t.minterm == m) out.set(off + t.target);
            }
        }
        return out;
    };
    auto accepting = [&](const Config& z) {
        for (uint32_t q : a.final_states())
            if (z.test(q)) return true;
        for (uint32_t q : b.final_states())
            if (z.test(off + q)) return true;
        return false;
    };

    struct Item {
        Config x, y;
        int64_t parent;
        uint32_t via;
    };
    std::vector<Item> items;
    std::deque<size_t> queue;
    std::vector<std::pair<Config, Config>> processed;

    auto word_of = [&](int64_t i) {
        std::vector<uint32_t> w;
        while (items[i].parent >= 0) {
            w.push_back(items[i].via);
            i = items[i].parent;
        }
        std::reverse(w.begin(), w.end());
        return w;
    };

    items.push_back({embed_a(a.initial_config()), embed_b(b.initial_config()), -1, 0});
    queue.push_back(0);
    while (!queue.empty()) {
        deadline.poll();
        size_t i = queue.front();
        queue.pop_front();
        Config x = items[i].x, y = items[i].y;
        if (accepting(x) != accepting(y)) return {false, word_of(i)};
        if (congruence_nf(x, processed) == congruence_nf(y, processed)) continue;
        for (uint32_t m = 0; m < nm; ++m) {
            items.push_back({post(x, m), post(y, m), static_cast<int64_t>(i), m});
            queue.push_back(items.size() - 1);
        }
        processed.emplace_back(std::move(x), std::move(y));
    }
    return {true, {}};
}

Nfa reduce_bisim(const Nfa& a, const Deadline& deadline) {
    uint32_t n = a.num_states();
    if (n == 0) return a;
    std::vector<uint32_t> block(n, 0);
    for (uint32_t q = 0; q < n; ++q) block[q] = a.is_final(q) ? 1 : 0;

    bool changed = true;
    while (changed) {
        deadline.poll();
        changed = false;
        // signature: set of (minterm, target block)
        std::map<std::pair<uint32_t, std::vector<std::pair<uint32_t, uint32_t>>>, uint32_t> sig_ids;
        std::vector<uint32_t> next_block(n);
        for (uint32_t q = 0; q < n; ++q) {
            std::vector<std::pair<uint32_t, uint32_t>> sig;
            for (const auto& t : a.transitions_from(q))
                sig.emplace_back(t.minterm, block[t.target]);
            std::sort(sig.begin(), sig.end());
            sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
            auto key = std::make_pair(block[q], std::move(sig));
            auto [it, inserted] = sig_ids.emplace(std::move(key),
                                                  static_cast<uint32_t>(sig_ids.size()));
            next_block[q] = it->second;
        }
        uint32_t old_count = *std::max_element(block.begin(), block.end()) + 1;
        if (sig_ids.size() != old_count) changed = true;
        block = std::move(next_block);
    }

    uint32_t nb = *std::max_element(block.begin(), block.end()) + 1;
    Nfa out(nb, a.table_ptr());
    for (uint32_t q : a.initial()) out.add_initial(block[q]);
    for (uint32_t q : a.final_states()) out.add_final(block[q]);
    for (uint32_t q = 0; q < n; ++q)
        for (const auto& t : a.transitions_from(q))
            out.add_transition(block[q], t.minterm, block[t.target]);
    return out;
}

Dfa moore_minimize(const Dfa& d, const Deadline& deadline) {
    uint32_t n = d.num_states();
    if (n == 0) return d;
    uint32_t nm = d.table->size();
    std::vector<uint32_t> block(n);
    for (uint32_t q = 0; q < n; ++q) block[q] = d.final_flags[q] ? 1 : 0;

    bool changed = true;
    while (changed) {
        deadline.poll();
        changed = false;
        std::map<std::pair<uint32_t, std::vector<uint32_t>>, uint32_t> sig_ids;
        std::vector<uint32_t> next_block(n);
        for (uint32_t q = 0; q < n; ++q) {
            std::vector<uint32_t> sig(nm);
            for (uint32_t m = 0; m < nm; ++m) sig[m] = block[d.next[q][m]];
            auto key = std::make_pair(block[q], std::move(sig));
            auto [it, inserted] = sig_ids.emplace(std::move(key),
                                                  static_cast<uint32_t>(sig_ids.size()));
            next_block[q] = it->second;
        }
        uint32_t old_count = *std::max_element(block.begin(), block.end()) + 1;
        if (sig_ids.size() != old_count) changed = true;
        block = std::move(next_block);
    }

    uint32_t nb = *std::max_element(block.begin(), block.end()) + 1;
    Dfa out;
    out.table = d.table;
    out.states.resize(nb, Config(0));
    out.next.assign(nb, std::vector<uint32_t>(nm));
    out.final_flags.assign(nb, false);
    for (uint32_t q = 0; q < n; ++q) {
        uint32_t bq = block[q];
        out.states[bq] = d.states[q];  // representative contents
        out.final_flags[bq] = d.final_flags[q];
        for (uint32_t m = 0; m < nm; ++m) out.next[bq][m] = block[d.next[q][m]];
    }
    out.initial = block[d.initial];
    return out;
}

}  // namespace regatta

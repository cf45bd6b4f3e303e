#include "regatta/bts.hh"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "regatta/sat.hh"

namespace regatta {

namespace {

void check_var_range(const Formula& f, uint32_t limit, const char* what) {
    std::vector<uint32_t> vars;
    collect_states(f, vars);
    for (uint32_t v : vars)
        if (v >= limit) throw std::invalid_argument(std::string(what) + ": variable out of range");
}

Formula selector_formula(const MintermTable& table, const CharClass& cls, uint32_t n) {
    std::vector<Formula> any;
    for (uint32_t m = 0; m < table.size(); ++m)
        if (table.minterms[m].subset_of(cls))
            any.push_back(fml::state(2 * n + m));
    return fml::disj(std::move(any));
}

Formula one_hot_selectors(uint32_t n, uint32_t nm) {
    std::vector<Formula> parts;
    std::vector<Formula> any;
    for (uint32_t m = 0; m < nm; ++m) any.push_back(fml::state(2 * n + m));
    parts.push_back(fml::disj(std::move(any)));
    for (uint32_t i = 0; i < nm; ++i)
        for (uint32_t j = i + 1; j < nm; ++j)
            parts.push_back(fml::negate(
                fml::conj2(fml::state(2 * n + i), fml::state(2 * n + j))));
    return fml::conj(std::move(parts));
}

}  // namespace

void Bts::validate() const {
    check_var_range(init, num_states, "Bts init");
    check_var_range(bad, num_states, "Bts bad");
    check_var_range(trans, 2 * num_states + num_inputs, "Bts trans");
    if (has_pred_atom(init) || has_pred_atom(bad) || has_pred_atom(trans))
        throw std::invalid_argument("Bts: symbol predicates must be encoded as selector inputs");
}

Bts build_fw_bts(const Afa& a) {
    uint32_t n = a.num_states();
    uint32_t nm = a.table().size();
    Bts b;
    b.num_states = n;
    b.num_inputs = nm;
    b.num_selectors = nm;
    b.table = a.table_ptr();
    b.init = a.init();
    b.bad = a.fin();
    b.shape = Bts::Shape::CurImplication;

    std::vector<Formula> parts;
    for (uint32_t q = 0; q < n; ++q) {
        Formula primed = map_atoms(
            a.delta(q),
            [&](uint32_t r) { return fml::state(n + r); },
            [&](const CharClass& cls) { return selector_formula(a.table(), cls, n); });
        b.step.push_back(primed);
        parts.push_back(fml::disj2(fml::negate(fml::state(q)), primed));
    }
    parts.push_back(one_hot_selectors(n, nm));
    b.trans = fml::conj(std::move(parts));
    return b;
}

Bts build_bw_bts(const Afa& a) {
    uint32_t n = a.num_states();
    uint32_t nm = a.table().size();
    Bts b;
    b.num_states = n;
    b.num_inputs = nm;
    b.num_selectors = nm;
    b.table = a.table_ptr();
    b.init = a.fin();
    b.bad = a.init();
    b.shape = Bts::Shape::NextImplication;

    std::vector<Formula> parts;
    for (uint32_t q = 0; q < n; ++q) {
        Formula cur = map_atoms(
            a.delta(q),
            [&](uint32_t r) { return fml::state(r); },
            [&](const CharClass& cls) { return selector_formula(a.table(), cls, n); });
        b.step.push_back(cur);
        parts.push_back(fml::disj2(fml::negate(fml::state(n + q)), cur));
    }
    parts.push_back(one_hot_selectors(n, nm));
    b.trans = fml::conj(std::move(parts));
    return b;
}

namespace {

// Frame-indexed CNF instantiation of BTS formulas.
class Unroller {
public:
    Unroller(const Bts& b, sat::Solver& s) : b_(b), s_(s) {}

    void ensure_frames(uint32_t k) {
        while (states_.size() <= k) {
            std::vector<uint32_t> frame(b_.num_states);
            for (auto& v : frame) v = s_.new_var();
            states_.push_back(std::move(frame));
        }
        while (inputs_.size() + 1 < states_.size()) {
            std::vector<uint32_t> step(b_.num_inputs);
            for (auto& v : step) v = s_.new_var();
            inputs_.push_back(std::move(step));
        }
    }

    sat::Lit instantiate(const Formula& f, uint32_t frame) {
        auto amap = [&](const FormulaNode& node) -> std::optional<sat::Lit> {
            if (node.kind != FormulaKind::StateVar) return std::nullopt;
            uint32_t v = node.state;
            if (v < b_.num_states) return sat::Lit::pos(states_[frame][v]);
            if (v < 2 * b_.num_states)
                return sat::Lit::pos(states_[frame + 1][v - b_.num_states]);
            return sat::Lit::pos(inputs_[frame][v - 2 * b_.num_states]);
        };
        return sat::tseitin(s_, f, amap);
    }

    uint32_t state_var(uint32_t frame, uint32_t q) const { return states_[frame][q]; }
    uint32_t input_var(uint32_t step, uint32_t i) const { return inputs_[step][i]; }

private:
    const Bts& b_;
    sat::Solver& s_;
    std::vector<std::vector<uint32_t>> states_;
    std::vector<std::vector<uint32_t>> inputs_;
};

}  // namespace

ReachVerdict check_reach(const Bts& b, uint32_t max_depth, const Deadline& deadline) {
    b.validate();

    sat::Solver bmc;
    bmc.set_deadline(deadline);
    Unroller bmc_un(b, bmc);
    bmc_un.ensure_frames(0);
    bmc.add_clause({bmc_un.instantiate(b.init, 0)});

    sat::Solver ind;
    ind.set_deadline(deadline);
    Unroller ind_un(b, ind);
    ind_un.ensure_frames(0);

    auto extract_trace = [&](const sat::SolveResult& res, uint32_t k) {
        ReachVerdict v;
        v.status = ReachStatus::Reachable;
        v.depth = k;
        for (uint32_t f = 0; f <= k; ++f) {
            Config c(b.num_states);
            for (uint32_t q = 0; q < b.num_states; ++q)
                if (res.model[bmc_un.state_var(f, q)]) c.set(q);
            v.states.push_back(std::move(c));
        }
        for (uint32_t t = 0; t < k; ++t) {
            Config c(b.num_inputs);
            for (uint32_t i = 0; i < b.num_inputs; ++i)
                if (res.model[bmc_un.input_var(t, i)]) c.set(i);
            v.inputs.push_back(std::move(c));
        }
        return v;
    };

    // Simple-path constraints make the induction complete on finite systems.
    auto add_frame_difference = [&](uint32_t i, uint32_t j) {
        std::vector<sat::Lit> some_diff;
        for (uint32_t q = 0; q < b.num_states; ++q) {
            sat::Lit a = sat::Lit::pos(ind_un.state_var(i, q));
            sat::Lit c = sat::Lit::pos(ind_un.state_var(j, q));
            sat::Lit x = sat::Lit::pos(ind.new_var());
            ind.add_clause({~x, a, c});
            ind.add_clause({~x, ~a, ~c});
            ind.add_clause({x, a, ~c});
            ind.add_clause({x, ~a, c});
            some_diff.push_back(x);
        }
        ind.add_clause(std::move(some_diff));
    };

    for (uint32_t k = 0; k <= max_depth; ++k) {
        deadline.poll();
        // BMC: init ∧ trans^k ∧ bad@k
        bmc_un.ensure_frames(k);
        if (k > 0) bmc.add_clause({bmc_un.instantiate(b.trans, k - 1)});
        sat::Lit bad_k = bmc_un.instantiate(b.bad, k);
        std::vector<sat::Lit> assm{bad_k};
        auto res = bmc.solve(assm);
        if (res.sat()) return extract_trace(res, k);

        // k-induction step at depth k+1: ¬bad on the first k+1 frames,
        // pairwise-distinct frames, bad at the last.
        uint32_t d = k + 1;
        ind_un.ensure_frames(d);
        ind.add_clause({ind_un.instantiate(b.trans, d - 1)});
        for (uint32_t i = 0; i < d; ++i) add_frame_difference(i, d);
        ind.add_clause({~ind_un.instantiate(b.bad, d - 1)});
        sat::Lit bad_d = ind_un.instantiate(b.bad, d);
        std::vector<sat::Lit> ind_assm{bad_d};
        auto ires = ind.solve(ind_assm);
        if (!ires.sat()) {
            ReachVerdict v;
            v.status = ReachStatus::Unreachable;
            v.depth = d;
            return v;
        }
    }
    return {};
}

bool trace_replays(const Bts& b, const ReachVerdict& v) {
    if (v.status != ReachStatus::Reachable) return false;
    if (v.states.size() != v.depth + 1 || v.inputs.size() != v.depth) return false;
    if (!eval_formula(b.init, v.states.front())) return false;
    if (!eval_formula(b.bad, v.states.back())) return false;
    for (uint32_t t = 0; t < v.depth; ++t) {
        Config combined(2 * b.num_states + b.num_inputs);
        for (uint32_t q = 0; q < b.num_states; ++q) {
            if (v.states[t].test(q)) combined.set(q);
            if (v.states[t + 1].test(q)) combined.set(b.num_states + q);
        }
        for (uint32_t i = 0; i < b.num_inputs; ++i)
            if (v.inputs[t].test(i)) combined.set(2 * b.num_states + i);
        if (!eval_formula(b.trans, combined)) return false;
    }
    return true;
}

namespace {

class AigBuilder {
public:
    explicit AigBuilder(uint32_t preallocated_vars) : next_var_(preallocated_vars + 1) {}

    static constexpr uint32_t kFalse = 0;
    static constexpr uint32_t kTrue = 1;

    uint32_t mk_and(uint32_t a, uint32_t b) {
        if (a == kFalse || b == kFalse) return kFalse;
        if (a == kTrue) return b;
        if (b == kTrue) return a;
        if (a == b) return a;
        if ((a ^ 1) == b) return kFalse;
        uint32_t hi = std::max(a, b), lo = std::min(a, b);
        uint64_t key = (uint64_t{hi} << 32) | lo;
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        uint32_t lhs = 2 * next_var_++;
        ands_.push_back({lhs, hi, lo});
        cache_.emplace(key, lhs);
        return lhs;
    }

    uint32_t mk_or(uint32_t a, uint32_t b) { return mk_and(a ^ 1, b ^ 1) ^ 1; }

    // The memo is per call: the same formula node may be instantiated under
    // different leaf encodings (current latches vs. loading inputs).
    uint32_t from_formula(const Formula& f,
                          const std::function<uint32_t(uint32_t)>& leaf) {
        std::unordered_map<uint64_t, uint32_t> memo;
        return from_formula_rec(f, leaf, memo);
    }

    uint32_t max_var() const { return next_var_ - 1; }
    const std::vector<std::array<uint32_t, 3>>& ands() const { return ands_; }

private:
    uint32_t from_formula_rec(const Formula& f,
                              const std::function<uint32_t(uint32_t)>& leaf,
                              std::unordered_map<uint64_t, uint32_t>& memo) {
        auto it = memo.find(f.id());
        if (it != memo.end()) return it->second;
        uint32_t out = kFalse;
        switch (f.kind()) {
            case FormulaKind::True: out = kTrue; break;
            case FormulaKind::False: out = kFalse; break;
            case FormulaKind::StateVar: out = leaf(f.node().state); break;
            case FormulaKind::PredAtom:
                throw std::invalid_argument("export_aiger: unmapped predicate atom");
            case FormulaKind::Not:
                out = from_formula_rec(f.node().kids[0], leaf, memo) ^ 1;
                break;
            case FormulaKind::And: {
                out = kTrue;
                for (const auto& k : f.node().kids)
                    out = mk_and(out, from_formula_rec(k, leaf, memo));
                break;
            }
            case FormulaKind::Or: {
                out = kFalse;
                for (const auto& k : f.node().kids)
                    out = mk_or(out, from_formula_rec(k, leaf, memo));
                break;
            }
        }
        memo.emplace(f.id(), out);
        return out;
    }

    uint32_t next_var_;
    std::vector<std::array<uint32_t, 3>> ands_;
    std::unordered_map<uint64_t, uint32_t> cache_;
};

}  // namespace

std::string export_aiger(const Bts& b) {
    if (b.shape == Bts::Shape::Generic)
        throw std::invalid_argument("export_aiger: system lacks per-state structure");
    b.validate();
    uint32_t n = b.num_states;

    // variable layout: Bts inputs, choice inputs, state latches, boot, okF[, viol]
    uint32_t num_inputs = b.num_inputs + n;
    bool forward = b.shape == Bts::Shape::CurImplication;
    uint32_t num_latches = n + 2 + (forward ? 1 : 0);

    auto input_lit = [&](uint32_t i) { return 2 * (1 + i); };
    auto choice_lit = [&](uint32_t q) { return 2 * (1 + b.num_inputs + q); };
    auto latch_lit = [&](uint32_t q) { return 2 * (1 + num_inputs + q); };
    uint32_t boot_lit = 2 * (1 + num_inputs + n);
    uint32_t okf_lit = 2 * (1 + num_inputs + n + 1);
    uint32_t viol_lit = forward ? 2 * (1 + num_inputs + n + 2) : 0;

    AigBuilder aig(num_inputs + num_latches);

    // Symbol selectors are priority-encoded: the lowest set selector wins
    // and the all-zero assignment maps to symbol 0. Every input assignment
    // then denotes exactly one symbol and no legality constraint is needed.
    std::vector<uint32_t> sel_eff(b.num_selectors, AigBuilder::kFalse);
    if (b.num_selectors > 0) {
        uint32_t none_before = AigBuilder::kTrue;
        for (uint32_t i = 0; i < b.num_selectors; ++i) {
            sel_eff[i] = aig.mk_and(input_lit(i), none_before);
            none_before = aig.mk_and(none_before, input_lit(i) ^ 1);
        }
        sel_eff[0] = aig.mk_or(sel_eff[0], none_before);
    }
    auto mapped_input = [&](uint32_t i) {
        return i < b.num_selectors ? sel_eff[i] : input_lit(i);
    };

    // init formula evaluated over the state being loaded (the choice inputs)
    auto loading_leaf = [&](uint32_t v) -> uint32_t {
        if (v < n) return choice_lit(v);
        throw std::invalid_argument("export_aiger: init references non-state variable");
    };
    uint32_t init_loaded = aig.from_formula(b.init, loading_leaf);

    auto cur_or_input_leaf = [&](uint32_t v) -> uint32_t {
        if (v < n) return latch_lit(v);
        if (v >= 2 * n && v < 2 * n + b.num_inputs) return mapped_input(v - 2 * n);
        throw std::invalid_argument("export_aiger: unexpected variable in step formula");
    };
    auto next_or_input_leaf = [&](uint32_t v) -> uint32_t {
        if (v >= n && v < 2 * n) return choice_lit(v - n);
        if (v >= 2 * n && v < 2 * n + b.num_inputs) return mapped_input(v - 2 * n);
        throw std::invalid_argument("export_aiger: unexpected variable in step formula");
    };

    std::vector<uint32_t> latch_next(num_latches);
    if (!forward) {
        // next(q) = choice_q ∧ (boot → step_q(latches, inputs));
        // pre-boot the conjunct is off, so the choices load the first state.
        for (uint32_t q = 0; q < n; ++q) {
            uint32_t step_q = aig.from_formula(b.step[q], cur_or_input_leaf);
            latch_next[q] = aig.mk_and(choice_lit(q), aig.mk_or(boot_lit ^ 1, step_q));
        }
    } else {
        // choices are the next state; legality is accumulated in viol
        for (uint32_t q = 0; q < n; ++q) latch_next[q] = choice_lit(q);
        uint32_t trans_ok = AigBuilder::kTrue;
        for (uint32_t q = 0; q < n; ++q) {
            uint32_t step_q = aig.from_formula(b.step[q], next_or_input_leaf);
            trans_ok = aig.mk_and(trans_ok, aig.mk_or(latch_lit(q) ^ 1, step_q));
        }
        latch_next[n + 2] = aig.mk_or(viol_lit, aig.mk_and(boot_lit, trans_ok ^ 1));
    }
    latch_next[n] = AigBuilder::kTrue;  // boot
    latch_next[n + 1] = aig.mk_or(aig.mk_and(boot_lit, okf_lit),
                                  aig.mk_and(boot_lit ^ 1, init_loaded));

    uint32_t bad_now = aig.from_formula(b.bad, [&](uint32_t v) -> uint32_t {
        if (v < n) return latch_lit(v);
        throw std::invalid_argument("export_aiger: bad references non-state variable");
    });
    uint32_t output = aig.mk_and(aig.mk_and(boot_lit, okf_lit), bad_now);
    if (forward) output = aig.mk_and(output, viol_lit ^ 1);

    std::ostringstream os;
    os << "aag " << aig.max_var() << ' ' << num_inputs << ' ' << num_latches
       << " 1 " << aig.ands().size() << '\n';
    for (uint32_t i = 0; i < b.num_inputs; ++i) os << input_lit(i) << '\n';
    for (uint32_t q = 0; q < n; ++q) os << choice_lit(q) << '\n';
    for (uint32_t q = 0; q < n; ++q) os << latch_lit(q) << ' ' << latch_next[q] << '\n';
    os << boot_lit << ' ' << latch_next[n] << '\n';
    os << okf_lit << ' ' << latch_next[n + 1] << '\n';
    if (forward) os << viol_lit << ' ' << latch_next[n + 2] << '\n';
    os << output << '\n';
    for (const auto& g : aig.ands()) os << g[0] << ' ' << g[1] << ' ' << g[2] << '\n';
    return os.str();
}

namespace {

struct AagFile {
    uint32_t max_var, ni, nl, no, na;
    std::vector<uint32_t> inputs;                  // literals
    std::vector<std::pair<uint32_t, uint32_t>> latches;
    std::vector<uint32_t> outputs;
    std::vector<std::array<uint32_t, 3>> gates;
};

AagFile parse_aag(const std::string& text) {
    std::istringstream is(text);
    std::string magic;
    AagFile f{};
    if (!(is >> magic) || magic != "aag")
        throw std::runtime_error("aiger: not an ascii aag file");
    if (!(is >> f.max_var >> f.ni >> f.nl >> f.no >> f.na))
        throw std::runtime_error("aiger: bad header");
    auto rd = [&]() {
        uint32_t v;
        if (!(is >> v)) throw std::runtime_error("aiger: truncated file");
        return v;
    };
    for (uint32_t i = 0; i < f.ni; ++i) f.inputs.push_back(rd());
    for (uint32_t i = 0; i < f.nl; ++i) {
        uint32_t l = rd(), nx = rd();
        f.latches.emplace_back(l, nx);
    }
    for (uint32_t i = 0; i < f.no; ++i) f.outputs.push_back(rd());
    for (uint32_t i = 0; i < f.na; ++i) {
        uint32_t lhs = rd(), r0 = rd(), r1 = rd();
        f.gates.push_back({lhs, r0, r1});
    }
    return f;
}

}  // namespace

void validate_aiger(const std::string& text) {
    AagFile f = parse_aag(text);
    std::vector<int8_t> defined(f.max_var + 1, 0);  // 1 input, 2 latch, 3 gate
    auto def = [&](uint32_t lit, int8_t kind, const char* what) {
        if (lit & 1) throw std::runtime_error(std::string("aiger: odd ") + what + " literal");
        uint32_t v = lit >> 1;
        if (v == 0 || v > f.max_var) throw std::runtime_error("aiger: literal out of range");
        if (defined[v]) throw std::runtime_error("aiger: variable defined twice");
        defined[v] = kind;
    };
    for (uint32_t l : f.inputs) def(l, 1, "input");
    for (auto [l, nx] : f.latches) {
        def(l, 2, "latch");
        if ((nx >> 1) > f.max_var) throw std::runtime_error("aiger: literal out of range");
    }
    for (auto& g : f.gates) {
        def(g[0], 3, "gate");
        if (g[1] < g[2]) throw std::runtime_error("aiger: gate operands unordered");
        if (g[0] <= g[1] || g[0] <= g[2])
            throw std::runtime_error("aiger: gate operand not below gate literal");
        if ((g[1] >> 1) > f.max_var || (g[2] >> 1) > f.max_var)
            throw std::runtime_error("aiger: literal out of range");
    }
    for (uint32_t o : f.outputs)
        if ((o >> 1) > f.max_var) throw std::runtime_error("aiger: literal out of range");
    for (uint32_t v = 1; v <= f.max_var; ++v)
        if (!defined[v]) throw std::runtime_error("aiger: undefined variable");
}

Bts import_aiger(const std::string& text) {
    validate_aiger(text);
    AagFile f = parse_aag(text);
    if (f.no != 1) throw std::runtime_error("aiger import: expected a single output");

    uint32_t nl = f.nl, ni = f.ni;
    // var id -> formula leaf for current-state/input references
    std::unordered_map<uint32_t, Formula> leaf;
    for (uint32_t i = 0; i < ni; ++i)
        leaf.emplace(f.inputs[i] >> 1, fml::state(2 * nl + i));
    for (uint32_t q = 0; q < nl; ++q)
        leaf.emplace(f.latches[q].first >> 1, fml::state(q));

    std::unordered_map<uint32_t, std::array<uint32_t, 3>> gate_of;
    for (const auto& g : f.gates) gate_of.emplace(g[0] >> 1, g);

    std::unordered_map<uint32_t, Formula> memo;
    auto formula_of = [&](auto&& self, uint32_t lit) -> Formula {
        if (lit == 0) return fml::fls();
        if (lit == 1) return fml::tru();
        if (lit & 1) return fml::negate(self(self, lit ^ 1));
        uint32_t v = lit >> 1;
        auto mit = memo.find(v);
        if (mit != memo.end()) return mit->second;
        Formula r;
        auto lit_leaf = leaf.find(v);
        if (lit_leaf != leaf.end()) {
            r = lit_leaf->second;
        } else {
            const auto& g = gate_of.at(v);
            r = fml::conj2(self(self, g[1]), self(self, g[2]));
        }
        memo.emplace(v, r);
        return r;
    };

    Bts b;
    b.num_states = nl;
    b.num_inputs = ni;
    b.num_selectors = 0;
    b.shape = Bts::Shape::Generic;

    std::vector<Formula> init_parts;
    for (uint32_t q = 0; q < nl; ++q) init_parts.push_back(fml::negate(fml::state(q)));
    b.init = fml::conj(std::move(init_parts));

    b.bad = formula_of(formula_of, f.outputs[0]);
    {
        std::vector<uint32_t> vars;
        collect_states(b.bad, vars);
        for (uint32_t v : vars)
            if (v >= nl)
                throw std::runtime_error("aiger import: output depends on inputs");
    }

    std::vector<Formula> trans_parts;
    for (uint32_t q = 0; q < nl; ++q) {
        Formula nx = formula_of(formula_of, f.latches[q].second);
        Formula qn = fml::state(nl + q);
        trans_parts.push_back(fml::disj2(fml::negate(qn), nx));
        trans_parts.push_back(fml::disj2(qn, fml::negate(nx)));
    }
    b.trans = fml::conj(std::move(trans_parts));
    return b;
}

}  // namespace regatta

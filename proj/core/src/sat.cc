#include "regatta/sat.hh"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace regatta::sat {

uint32_t Solver::new_var() {
    uint32_t v = static_cast<uint32_t>(assign_.size());
    assign_.push_back(-1);
    level_of_.push_back(0);
    reason_of_.push_back(kNoReason);
    watches_.emplace_back();
    watches_.emplace_back();
    preferred_flag_.push_back(false);
    return v;
}

void Solver::add_clause(std::vector<Lit> clause) {
    for (Lit l : clause)
        if (l.var() >= num_vars()) throw std::out_of_range("sat: literal var not allocated");
    std::sort(clause.begin(), clause.end(),
              [](Lit a, Lit b) { return a.code() < b.code(); });
    clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
    for (size_t i = 0; i + 1 < clause.size(); ++i)
        if (clause[i].var() == clause[i + 1].var()) return;  // tautology
    if (clause.empty()) {
        has_empty_ = true;
        return;
    }
    if (clause.size() == 1) {
        units_.push_back(clause[0]);
        return;
    }
    uint32_t ci = static_cast<uint32_t>(clauses_.size());
    watches_[clause[0].code()].push_back(ci);
    watches_[clause[1].code()].push_back(ci);
    clauses_.push_back(std::move(clause));
    learned_flag_.push_back(false);
}

Lit Solver::true_lit() {
    if (!true_lit_) {
        Lit t = Lit::pos(new_var());
        units_.push_back(t);
        true_lit_ = t;
    }
    return *true_lit_;
}

void Solver::set_preferred(std::vector<uint32_t> vars, bool polarity) {
    std::fill(preferred_flag_.begin(), preferred_flag_.end(), false);
    preferred_ = std::move(vars);
    for (uint32_t v : preferred_) preferred_flag_.at(v) = true;
    preferred_polarity_ = polarity;
}

void Solver::enqueue(Lit l, int64_t reason) {
    assign_[l.var()] = l.is_pos() ? 1 : 0;
    level_of_[l.var()] = current_level();
    reason_of_[l.var()] = reason;
    trail_.push_back(l);
}

int64_t Solver::propagate() {
    while (qhead_ < trail_.size()) {
        Lit p = trail_[qhead_++];
        auto& ws = watches_[(~p).code()];
        for (size_t i = 0; i < ws.size();) {
            uint32_t ci = ws[i];
            auto& cl = clauses_[ci];
            if (cl[0] == ~p) std::swap(cl[0], cl[1]);
            // cl[1] == ~p is now false; try to satisfy or re-watch.
            if (value(cl[0]) == 1) { ++i; continue; }
            bool rewatched = false;
            for (size_t j = 2; j < cl.size(); ++j) {
                if (value(cl[j]) != 0) {
                    std::swap(cl[1], cl[j]);
                    watches_[cl[1].code()].push_back(ci);
                    ws[i] = ws.back();
                    ws.pop_back();
                    rewatched = true;
                    break;
                }
            }
            if (rewatched) continue;
            if (value(cl[0]) == 0) return static_cast<int64_t>(ci);  // conflict
            enqueue(cl[0], static_cast<int64_t>(ci));
            ++i;
        }
    }
    return kNoReason;
}

void Solver::undo_to_level(uint32_t level) {
    if (current_level() <= level) return;
    size_t pos = level_start_[level];
    while (trail_.size() > pos) {
        assign_[trail_.back().var()] = -1;
        trail_.pop_back();
    }
    level_start_.resize(level);
    qhead_ = std::min(qhead_, trail_.size());
}

// First-UIP conflict clause. The asserting literal ends up at index 0, a
// deepest remaining literal at index 1 (watch discipline).
std::vector<Lit> Solver::analyze(int64_t conflict) {
    std::vector<bool> seen(num_vars(), false);
    std::vector<Lit> learned{Lit::pos(0)};  // slot for the asserting literal
    uint32_t counter = 0;
    size_t idx = trail_.size();
    Lit p = Lit::pos(0);
    bool have_p = false;

    const std::vector<Lit>* reason_clause = &clauses_[conflict];
    for (;;) {
        for (Lit q : *reason_clause) {
            if (have_p && q == p) continue;
            uint32_t v = q.var();
            if (seen[v] || level_of_[v] == 0) continue;
            seen[v] = true;
            if (level_of_[v] == current_level()) ++counter;
            else learned.push_back(q);
        }
        while (idx > 0 && !seen[trail_[idx - 1].var()]) --idx;
        p = trail_[--idx];
        seen[p.var()] = false;
        --counter;
        if (counter == 0) break;
        reason_clause = &clauses_[reason_of_[p.var()]];
        have_p = true;
    }
    learned[0] = ~p;
    if (learned.size() > 1) {
        size_t best = 1;
        for (size_t i = 2; i < learned.size(); ++i)
            if (level_of_[learned[i].var()] > level_of_[learned[best].var()]) best = i;
        std::swap(learned[1], learned[best]);
    }
    return learned;
}

void Solver::attach_learned(const std::vector<Lit>& clause) {
    uint32_t ci = static_cast<uint32_t>(clauses_.size());
    watches_[clause[0].code()].push_back(ci);
    watches_[clause[1].code()].push_back(ci);
    clauses_.push_back(clause);
    learned_flag_.push_back(true);
    ++num_learned_;
}

std::optional<Lit> Solver::pick_branch() const {
    for (uint32_t v : preferred_)
        if (assign_[v] < 0)
            return preferred_polarity_ ? Lit::pos(v) : Lit::neg(v);
    for (uint32_t v = 0; v < num_vars(); ++v)
        if (assign_[v] < 0) return Lit::neg(v);
    return std::nullopt;
}

SolveResult Solver::solve(std::span<const Lit> assumptions) {
    if (has_empty_) return {Status::Unsat, {}};

    unsigned steps = 0;
    for (;;) {  // restarted when a unit clause is learned
        undo_to_level(0);
        trail_.clear();
        qhead_ = 0;
        for (auto& a : assign_) a = -1;

        bool restart = false;
        for (Lit u : units_) {
            if (value(u) == 0) return {Status::Unsat, {}};
            if (value(u) == -1) enqueue(u, kNoReason);
        }
        for (Lit u : learned_units_) {
            if (value(u) == 0) return {Status::Unsat, {}};
            if (value(u) == -1) enqueue(u, kNoReason);
        }
        if (propagate() != kNoReason) return {Status::Unsat, {}};

        uint32_t assumption_levels = 0;
        for (Lit a : assumptions) {
            if (value(a) == 0) return {Status::Unsat, {}};
            if (value(a) == 1) continue;
            new_level();
            ++assumption_levels;
            enqueue(a, kNoReason);
            if (propagate() != kNoReason) return {Status::Unsat, {}};
        }
        assumption_levels = current_level();

        while (!restart) {
            if (((++steps) & 0x3ff) == 0) deadline_.poll();
            auto br = pick_branch();
            if (!br) {
                std::vector<bool> model(num_vars());
                for (uint32_t v = 0; v < num_vars(); ++v) model[v] = assign_[v] == 1;
                return {Status::Sat, std::move(model)};
            }
            new_level();
            enqueue(*br, kNoReason);

            int64_t confl;
            while ((confl = propagate()) != kNoReason) {
                if (((++steps) & 0x3ff) == 0) deadline_.poll();
                if (current_level() <= assumption_levels) return {Status::Unsat, {}};
                std::vector<Lit> learned = analyze(confl);
                if (learned.size() == 1) {
                    // a new top-level fact: keep it and restart
                    learned_units_.push_back(learned[0]);
                    restart = true;
                    break;
                }
                undo_to_level(current_level() - 1);  // chronological
                attach_learned(learned);
                enqueue(learned[0], static_cast<int64_t>(clauses_.size() - 1));
            }
        }
    }
}

SolveResult Solver::maximal_model(std::span<const Lit> assumptions,
                                  std::span<const uint32_t> maximize_vars) {
    set_preferred(std::vector<uint32_t>(maximize_vars.begin(), maximize_vars.end()), true);
    SolveResult res = solve(assumptions);
    if (!res.sat()) return res;

    std::vector<uint32_t> candidates;
    for (uint32_t v : maximize_vars)
        if (!res.model[v]) candidates.push_back(v);

    std::vector<Lit> assms(assumptions.begin(), assumptions.end());
    bool changed = true;
    while (changed && !candidates.empty()) {
        changed = false;
        for (size_t i = 0; i < candidates.size(); ++i) {
            deadline_.poll();
            uint32_t v = candidates[i];
            assms.resize(assumptions.size());
            for (uint32_t u : maximize_vars)
                if (res.model[u]) assms.push_back(Lit::pos(u));
            assms.push_back(Lit::pos(v));
            SolveResult r2 = solve(assms);
            if (r2.sat()) {
                res = std::move(r2);
                std::erase_if(candidates,
                              [&](uint32_t u) { return res.model[u]; });
                changed = true;
                break;
            }
            // v can never join the current true set; larger true sets only
            // constrain further, so drop it for good.
            candidates.erase(candidates.begin() + i);
            --i;
        }
    }
    return res;
}

SolveResult Solver::minimal_model(std::span<const Lit> assumptions,
                                  std::span<const uint32_t> minimize_vars) {
    set_preferred(std::vector<uint32_t>(minimize_vars.begin(), minimize_vars.end()), false);
    SolveResult res = solve(assumptions);
    if (!res.sat()) return res;

    std::vector<uint32_t> candidates;
    for (uint32_t v : minimize_vars)
        if (res.model[v]) candidates.push_back(v);

    std::vector<Lit> assms(assumptions.begin(), assumptions.end());
    bool changed = true;
    while (changed && !candidates.empty()) {
        changed = false;
        for (size_t i = 0; i < candidates.size(); ++i) {
            deadline_.poll();
            uint32_t v = candidates[i];
            assms.resize(assumptions.size());
            for (uint32_t u : minimize_vars)
                if (!res.model[u]) assms.push_back(Lit::neg(u));
            assms.push_back(Lit::neg(v));
            SolveResult r2 = solve(assms);
            if (r2.sat()) {
                res = std::move(r2);
                std::erase_if(candidates,
                              [&](uint32_t u) { return !res.model[u]; });
                changed = true;
                break;
            }
            candidates.erase(candidates.begin() + i);
            --i;
        }
    }
    return res;
}

size_t Solver::num_clauses() const {
    return clauses_.size() - num_learned_ + units_.size() + (has_empty_ ? 1 : 0);
}

void Solver::to_dimacs(std::ostream& os) const {
    os << "p cnf " << num_vars() << ' ' << num_clauses() << '\n';
    auto put = [&](const std::vector<Lit>& cl) {
        for (Lit l : cl) os << (l.is_pos() ? "" : "-") << (l.var() + 1) << ' ';
        os << "0\n";
    };
    for (Lit u : units_) put({u});
    for (size_t i = 0; i < clauses_.size(); ++i)
        if (!learned_flag_[i]) put(clauses_[i]);
    if (has_empty_) os << "0\n";
}

namespace {

Lit tseitin_rec(Solver& s, const Formula& f,
                const std::function<std::optional<Lit>(const FormulaNode&)>& atom_map,
                std::unordered_map<uint64_t, Lit>& memo) {
    switch (f.kind()) {
        case FormulaKind::True: return s.true_lit();
        case FormulaKind::False: return ~s.true_lit();
        case FormulaKind::StateVar:
        case FormulaKind::PredAtom: {
            auto l = atom_map(f.node());
            if (!l) throw std::runtime_error("tseitin: unmapped atom");
            return *l;
        }
        default: break;
    }
    auto it = memo.find(f.id());
    if (it != memo.end()) return it->second;
    Lit out;
    if (f.kind() == FormulaKind::Not) {
        out = ~tseitin_rec(s, f.node().kids[0], atom_map, memo);
    } else {
        std::vector<Lit> kids;
        kids.reserve(f.node().kids.size());
        for (const auto& k : f.node().kids)
            kids.push_back(tseitin_rec(s, k, atom_map, memo));
        Lit g = Lit::pos(s.new_var());
        if (f.kind() == FormulaKind::And) {
            std::vector<Lit> big{g};
            for (Lit k : kids) {
                s.add_clause({~g, k});
                big.push_back(~k);
            }
            s.add_clause(std::move(big));
        } else {  // Or
            std::vector<Lit> big{~g};
            for (Lit k : kids) {
                s.add_clause({g, ~k});
                big.push_back(k);
            }
            s.add_clause(std::move(big));
        }
        out = g;
    }
    memo.emplace(f.id(), out);
    return out;
}

}  // namespace

Lit tseitin(Solver& s, const Formula& f,
            const std::function<std::optional<Lit>(const FormulaNode&)>& atom_map) {
    std::unordered_map<uint64_t, Lit> memo;
    return tseitin_rec(s, f, atom_map, memo);
}

void add_exactly_one(Solver& s, std::span<const Lit> lits) {
    s.add_clause(std::vector<Lit>(lits.begin(), lits.end()));
    for (size_t i = 0; i < lits.size(); ++i)
        for (size_t j = i + 1; j < lits.size(); ++j)
            s.add_clause({~lits[i], ~lits[j]});
}

}  // namespace regatta::sat

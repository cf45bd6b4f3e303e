#include "regatta/formula.hh"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "regatta/util.hh"

namespace regatta {

namespace {

// Global intern registry. Builders are single-threaded per the concurrency
// model, but benchmark workers may construct formulas concurrently, so the
// registry is guarded.
class Registry {
public:
    static Registry& instance() {
        static Registry r;
        return r;
    }

    Formula intern(FormulaNode&& proto) {
        uint64_t h = key_hash(proto);
        std::lock_guard<std::mutex> lock(mu_);
        auto [lo, hi] = nodes_.equal_range(h);
        for (auto it = lo; it != hi; ++it) {
            if (equal(*it->second, proto)) return Formula(it->second);
        }
        proto.id = next_id_++;
        auto sp = std::make_shared<const FormulaNode>(std::move(proto));
        nodes_.emplace(h, sp);
        return Formula(sp);
    }

private:
    static uint64_t key_hash(const FormulaNode& n) {
        uint64_t h = static_cast<uint64_t>(n.kind);
        h = hash_combine(h, n.state);
        h = hash_combine(h, n.cls.hash());
        for (const auto& k : n.kids) h = hash_combine(h, k.id());
        return h;
    }

    static bool equal(const FormulaNode& a, const FormulaNode& b) {
        if (a.kind != b.kind || a.state != b.state || !(a.cls == b.cls) ||
            a.kids.size() != b.kids.size())
            return false;
        for (size_t i = 0; i < a.kids.size(); ++i)
            if (!(a.kids[i] == b.kids[i])) return false;
        return true;
    }

    std::mutex mu_;
    std::unordered_multimap<uint64_t, std::shared_ptr<const FormulaNode>> nodes_;
    uint64_t next_id_ = 1;
};

Formula intern(FormulaKind kind, uint32_t state, CharClass cls, std::vector<Formula> kids) {
    FormulaNode n;
    n.kind = kind;
    n.state = state;
    n.cls = std::move(cls);
    n.kids = std::move(kids);
    return Registry::instance().intern(std::move(n));
}

// Flattens nested nodes of the same kind, deduplicates and sorts children.
std::vector<Formula> canonical_kids(FormulaKind kind, std::vector<Formula> kids) {
    std::vector<Formula> flat;
    for (auto& k : kids) {
        if (!k.valid()) throw std::invalid_argument("invalid formula child");
        if (k.kind() == kind) {
            for (const auto& g : k.node().kids) flat.push_back(g);
        } else {
            flat.push_back(std::move(k));
        }
    }
    std::sort(flat.begin(), flat.end(),
              [](const Formula& a, const Formula& b) { return a.id() < b.id(); });
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    return flat;
}

}  // namespace

namespace fml {

Formula tru() { return intern(FormulaKind::True, 0, {}, {}); }
Formula fls() { return intern(FormulaKind::False, 0, {}, {}); }
Formula state(uint32_t q) { return intern(FormulaKind::StateVar, q, {}, {}); }

Formula pred(CharClass cls) {
    return intern(FormulaKind::PredAtom, 0, std::move(cls), {});
}

Formula negate(Formula f) {
    if (!f.valid()) throw std::invalid_argument("invalid formula");
    switch (f.kind()) {
        case FormulaKind::True: return fls();
        case FormulaKind::False: return tru();
        case FormulaKind::Not: return f.node().kids[0];
        default: return intern(FormulaKind::Not, 0, {}, {std::move(f)});
    }
}

Formula conj(std::vector<Formula> kids) {
    auto flat = canonical_kids(FormulaKind::And, std::move(kids));
    std::vector<Formula> keep;
    for (auto& k : flat) {
        if (k.is_false()) return fls();
        if (k.is_true()) continue;
        keep.push_back(std::move(k));
    }
    if (keep.empty()) return tru();
    if (keep.size() == 1) return keep[0];
    return intern(FormulaKind::And, 0, {}, std::move(keep));
}

Formula disj(std::vector<Formula> kids) {
    auto flat = canonical_kids(FormulaKind::Or, std::move(kids));
    std::vector<Formula> keep;
    for (auto& k : flat) {
        if (k.is_true()) return tru();
        if (k.is_false()) continue;
        keep.push_back(std::move(k));
    }
    if (keep.empty()) return fls();
    if (keep.size() == 1) return keep[0];
    return intern(FormulaKind::Or, 0, {}, std::move(keep));
}

}  // namespace fml

namespace {

void polarity_scan(const Formula& f, bool under_not, bool& has_pos, bool& has_neg) {
    switch (f.kind()) {
        case FormulaKind::True:
        case FormulaKind::False:
        case FormulaKind::PredAtom:
            return;
        case FormulaKind::StateVar:
            (under_not ? has_neg : has_pos) = true;
            return;
        case FormulaKind::Not:
            polarity_scan(f.node().kids[0], !under_not, has_pos, has_neg);
            return;
        case FormulaKind::And:
        case FormulaKind::Or:
            for (const auto& k : f.node().kids)
                polarity_scan(k, under_not, has_pos, has_neg);
            return;
    }
}

}  // namespace

Polarity check_polarity(const Formula& f) {
    bool has_pos = false, has_neg = false;
    polarity_scan(f, false, has_pos, has_neg);
    if (has_pos && has_neg) return Polarity::Mixed;
    if (has_neg) return Polarity::Negative;
    return Polarity::Positive;
}

bool positive_in_states(const Formula& f) {
    bool has_pos = false, has_neg = false;
    polarity_scan(f, false, has_pos, has_neg);
    return !has_neg;
}

bool negative_in_states(const Formula& f) {
    bool has_pos = false, has_neg = false;
    polarity_scan(f, false, has_pos, has_neg);
    return !has_pos;
}

namespace {

struct EvalCtx {
    const Config& c;
    const MintermTable* table;
    const CharClass* sym;  // class of the evaluated minterm, null if absent
    std::unordered_map<uint64_t, bool> memo;

    bool run(const Formula& f) {
        switch (f.kind()) {
            case FormulaKind::True: return true;
            case FormulaKind::False: return false;
            case FormulaKind::StateVar: return c.test(f.node().state);
            case FormulaKind::PredAtom:
                if (!sym) throw std::invalid_argument("symbol required");
                return sym->subset_of(f.node().cls);
            default: break;
        }
        auto it = memo.find(f.id());
        if (it != memo.end()) return it->second;
        bool r = false;
        switch (f.kind()) {
            case FormulaKind::Not: r = !run(f.node().kids[0]); break;
            case FormulaKind::And:
                r = true;
                for (const auto& k : f.node().kids)
                    if (!run(k)) { r = false; break; }
                break;
            case FormulaKind::Or:
                r = false;
                for (const auto& k : f.node().kids)
                    if (run(k)) { r = true; break; }
                break;
            default: break;
        }
        memo.emplace(f.id(), r);
        return r;
    }
};

}  // namespace

bool eval_formula(const Formula& f, const Config& c) {
    EvalCtx ctx{c, nullptr, nullptr, {}};
    return ctx.run(f);
}

bool eval_formula(const Formula& f, const Config& c, uint32_t minterm,
                  const MintermTable& table) {
    const CharClass& sym = table.minterms.at(minterm);
    EvalCtx ctx{c, &table, &sym, {}};
    return ctx.run(f);
}

namespace {

Formula nnf_rec(const Formula& f, bool neg, uint64_t alphabet_max,
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
            r = neg ? fml::negate(f) : f;
            break;
        case FormulaKind::PredAtom:
            r = neg ? fml::pred(f.node().cls.complement(alphabet_max)) : f;
            break;
        case FormulaKind::Not:
            r = nnf_rec(f.node().kids[0], !neg, alphabet_max, memo_pos, memo_neg);
            break;
        case FormulaKind::And:
        case FormulaKind::Or: {
            std::vector<Formula> kids;
            kids.reserve(f.node().kids.size());
            for (const auto& k : f.node().kids)
                kids.push_back(nnf_rec(k, neg, alphabet_max, memo_pos, memo_neg));
            bool make_and = (f.kind() == FormulaKind::And) != neg;
            r = make_and ? fml::conj(std::move(kids)) : fml::disj(std::move(kids));
            break;
        }
    }
    memo.emplace(f.id(), r);
    return r;
}

}  // namespace

Formula nnf(const Formula& f, uint64_t alphabet_max) {
    std::unordered_map<uint64_t, Formula> mp, mn;
    return nnf_rec(f, false, alphabet_max, mp, mn);
}

Formula map_atoms(const Formula& f,
                  const std::function<Formula(uint32_t)>& on_state,
                  const std::function<Formula(const CharClass&)>& on_pred) {
    switch (f.kind()) {
        case FormulaKind::True:
        case FormulaKind::False:
            return f;
        case FormulaKind::StateVar:
            return on_state(f.node().state);
        case FormulaKind::PredAtom:
            return on_pred(f.node().cls);
        case FormulaKind::Not:
            return fml::negate(map_atoms(f.node().kids[0], on_state, on_pred));
        case FormulaKind::And:
        case FormulaKind::Or: {
            std::vector<Formula> kids;
            kids.reserve(f.node().kids.size());
            for (const auto& k : f.node().kids)
                kids.push_back(map_atoms(k, on_state, on_pred));
            return f.kind() == FormulaKind::And ? fml::conj(std::move(kids))
                                                : fml::disj(std::move(kids));
        }
    }
    throw std::logic_error("unreachable");
}

Formula restrict_symbol(const Formula& f, uint32_t minterm, const MintermTable& table) {
    const CharClass& sym = table.minterms.at(minterm);
    return map_atoms(
        f, [](uint32_t q) { return fml::state(q); },
        [&](const CharClass& cls) {
            return sym.subset_of(cls) ? fml::tru() : fml::fls();
        });
}

namespace {

template <typename Fn>
void visit_atoms(const Formula& f, Fn&& fn) {
    switch (f.kind()) {
        case FormulaKind::True:
        case FormulaKind::False:
            return;
        case FormulaKind::StateVar:
        case FormulaKind::PredAtom:
            fn(f.node());
            return;
        case FormulaKind::Not:
        case FormulaKind::And:
        case FormulaKind::Or:
            for (const auto& k : f.node().kids) visit_atoms(k, fn);
            return;
    }
}

}  // namespace

void collect_states(const Formula& f, std::vector<uint32_t>& out) {
    visit_atoms(f, [&](const FormulaNode& n) {
        if (n.kind == FormulaKind::StateVar) out.push_back(n.state);
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

void collect_pred_classes(const Formula& f, std::vector<CharClass>& out) {
    visit_atoms(f, [&](const FormulaNode& n) {
        if (n.kind != FormulaKind::PredAtom) return;
        if (std::find(out.begin(), out.end(), n.cls) == out.end())
            out.push_back(n.cls);
    });
}

bool has_pred_atom(const Formula& f) {
    bool found = false;
    visit_atoms(f, [&](const FormulaNode& n) {
        if (n.kind == FormulaKind::PredAtom) found = true;
    });
    return found;
}

std::string to_string(const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::True: return "true";
        case FormulaKind::False: return "false";
        case FormulaKind::StateVar: return "q" + std::to_string(f.node().state);
        case FormulaKind::PredAtom: return "[" + f.node().cls.to_string() + "]";
        case FormulaKind::Not: {
            const Formula& k = f.node().kids[0];
            std::string s = to_string(k);
            if (k.kind() == FormulaKind::And || k.kind() == FormulaKind::Or)
                return "!" + s;  // already parenthesized
            return "!" + s;
        }
        case FormulaKind::And:
        case FormulaKind::Or: {
            const char* op = f.kind() == FormulaKind::And ? " & " : " | ";
            std::ostringstream os;
            os << '(';
            bool first = true;
            for (const auto& k : f.node().kids) {
                if (!first) os << op;
                first = false;
                os << to_string(k);
            }
            os << ')';
            return os.str();
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace regatta

#include "regatta/bre.hh"

#include <stdexcept>

namespace regatta {

namespace bre {

Bre leaf(Nfa nfa, std::string name, std::optional<std::string> regex_src) {
    auto n = std::make_shared<BreNode>();
    n->kind = BreNode::Kind::Leaf;
    n->leaf = std::move(nfa);
    n->name = std::move(name);
    n->regex_src = std::move(regex_src);
    return n;
}

Bre conj(std::vector<Bre> kids) {
    if (kids.empty()) throw std::invalid_argument("bre::conj: no children");
    if (kids.size() == 1) return kids[0];
    auto n = std::make_shared<BreNode>();
    n->kind = BreNode::Kind::And;
    n->kids = std::move(kids);
    return n;
}

Bre disj(std::vector<Bre> kids) {
    if (kids.empty()) throw std::invalid_argument("bre::disj: no children");
    if (kids.size() == 1) return kids[0];
    auto n = std::make_shared<BreNode>();
    n->kind = BreNode::Kind::Or;
    n->kids = std::move(kids);
    return n;
}

Bre neg(Bre kid) {
    auto n = std::make_shared<BreNode>();
    n->kind = BreNode::Kind::Not;
    n->kids = {std::move(kid)};
    return n;
}

bool contains_complement(const Bre& e) {
    if (e->kind == BreNode::Kind::Not) return true;
    for (const auto& k : e->kids)
        if (contains_complement(k)) return true;
    return false;
}

void collect_leaves(const Bre& e, std::vector<const BreNode*>& out) {
    if (e->kind == BreNode::Kind::Leaf) {
        out.push_back(e.get());
        return;
    }
    for (const auto& k : e->kids) collect_leaves(k, out);
}

std::shared_ptr<const MintermTable> table_ptr_of(const Bre& e) {
    if (e->kind == BreNode::Kind::Leaf) return e->leaf->table_ptr();
    return table_ptr_of(e->kids.front());
}

const MintermTable& table_of(const Bre& e) { return *table_ptr_of(e); }

}  // namespace bre

namespace {

struct Evaluator {
    const BreEvalOptions& opts;
    uint32_t ops_since_reduce = 0;

    Nfa tidy(Nfa n) {
        if (opts.strategy == BreStrategy::Dfa) {
            Dfa d = determinize(n, opts.deadline);
            return dfa_to_nfa(moore_minimize(d, opts.deadline));
        }
        if (++ops_since_reduce >= opts.reduce_every && opts.reduce_every > 0) {
            ops_since_reduce = 0;
            return reduce_bisim(n, opts.deadline);
        }
        return n;
    }

    Nfa eval(const Bre& e) {
        opts.deadline.poll();
        switch (e->kind) {
            case BreNode::Kind::Leaf:
                return opts.strategy == BreStrategy::Dfa
                           ? dfa_to_nfa(moore_minimize(determinize(*e->leaf, opts.deadline),
                                                       opts.deadline))
                           : *e->leaf;
            case BreNode::Kind::And: {
                Nfa acc = eval(e->kids[0]);
                for (size_t i = 1; i < e->kids.size(); ++i)
                    acc = tidy(intersect(acc, eval(e->kids[i]), false, opts.deadline));
                return acc;
            }
            case BreNode::Kind::Or: {
                Nfa acc = eval(e->kids[0]);
                for (size_t i = 1; i < e->kids.size(); ++i)
                    acc = tidy(union_nfa(acc, eval(e->kids[i]), false));
                return acc;
            }
            case BreNode::Kind::Not: {
                Nfa kid = eval(e->kids[0]);
                if (!kid.table().covers_alphabet())
                    throw std::runtime_error(
                        "complement requires residual minterm class");
                return tidy(complement(kid, opts.deadline));
            }
        }
        throw std::logic_error("unreachable");
    }
};

}  // namespace

EmptinessResult eval_bre(const Bre& e, const BreEvalOptions& opts) {
    Evaluator ev{opts};
    Nfa result = ev.eval(e);
    return is_empty(result, opts.deadline);
}

}  // namespace regatta

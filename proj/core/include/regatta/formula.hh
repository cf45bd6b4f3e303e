#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "regatta/charclass.hh"
#include "regatta/config.hh"

namespace regatta {

enum class FormulaKind : uint8_t { True, False, StateVar, PredAtom, Not, And, Or };

class Formula;

struct FormulaNode {
    FormulaKind kind;
    uint32_t state = 0;          // StateVar
    CharClass cls;               // PredAtom
    std::vector<Formula> kids;   // Not (1), And/Or (>= 2 after canonicalization)
    uint64_t id = 0;             // unique per interned node, monotone
};

/// Immutable, hash-consed Boolean formula over state variables and symbol
/// predicates. Structurally equal formulas share one node, so identity
/// comparison is pointer comparison. And/Or children are kept deduplicated
/// and in canonical (id) order; trivial simplifications are applied on
/// construction.
class Formula {
public:
    Formula() = default;  // empty handle; use the fml:: factories
    explicit Formula(std::shared_ptr<const FormulaNode> p) : p_(std::move(p)) {}

    const FormulaNode& node() const { return *p_; }
    FormulaKind kind() const { return p_->kind; }
    uint64_t id() const { return p_->id; }
    bool valid() const { return p_ != nullptr; }

    bool operator==(const Formula& other) const { return p_ == other.p_; }

    bool is_true() const { return p_ && p_->kind == FormulaKind::True; }
    bool is_false() const { return p_ && p_->kind == FormulaKind::False; }

private:
    std::shared_ptr<const FormulaNode> p_;
};

namespace fml {

Formula tru();
Formula fls();
Formula state(uint32_t q);
Formula pred(CharClass cls);
Formula negate(Formula f);
Formula conj(std::vector<Formula> kids);
Formula disj(std::vector<Formula> kids);
inline Formula conj2(Formula a, Formula b) { return conj({std::move(a), std::move(b)}); }
inline Formula disj2(Formula a, Formula b) { return disj({std::move(a), std::move(b)}); }

}  // namespace fml

enum class Polarity { Positive, Negative, Mixed };

/// Classifies state-variable occurrences after NNF normalization. Formulas
/// without state variables count as Positive.
Polarity check_polarity(const Formula& f);
bool positive_in_states(const Formula& f);
bool negative_in_states(const Formula& f);

/// Evaluates a state-only formula under configuration c. Throws
/// std::invalid_argument("symbol required") when a PredAtom is reached.
bool eval_formula(const Formula& f, const Config& c);

/// Evaluates under configuration c and the symbol class of the given
/// minterm; PredAtom(p) holds iff the minterm class is a subset of p.
bool eval_formula(const Formula& f, const Config& c, uint32_t minterm,
                  const MintermTable& table);

/// Negation normal form: Not occurs only on StateVar; negated predicate
/// atoms are replaced by their complement class.
Formula nnf(const Formula& f, uint64_t alphabet_max);

/// Replaces every PredAtom by True/False according to the minterm.
Formula restrict_symbol(const Formula& f, uint32_t minterm, const MintermTable& table);

/// Rewrites the leaves of a formula; structure (Not/And/Or) is preserved.
Formula map_atoms(const Formula& f,
                  const std::function<Formula(uint32_t)>& on_state,
                  const std::function<Formula(const CharClass&)>& on_pred);

void collect_states(const Formula& f, std::vector<uint32_t>& out);
void collect_pred_classes(const Formula& f, std::vector<CharClass>& out);
bool has_pred_atom(const Formula& f);

std::string to_string(const Formula& f);

}  // namespace regatta

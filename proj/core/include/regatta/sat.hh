#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "regatta/formula.hh"
#include "regatta/util.hh"

namespace regatta::sat {

class Lit {
public:
    Lit() = default;
    static Lit pos(uint32_t var) { return Lit(var << 1); }
    static Lit neg(uint32_t var) { return Lit((var << 1) | 1); }

    uint32_t var() const { return code_ >> 1; }
    bool is_pos() const { return (code_ & 1) == 0; }
    Lit operator~() const { return Lit(code_ ^ 1); }
    uint32_t code() const { return code_; }

    bool operator==(const Lit&) const = default;

private:
    explicit Lit(uint32_t code) : code_(code) {}
    uint32_t code_ = UINT32_MAX;
};

enum class Status { Sat, Unsat };

struct SolveResult {
    Status status = Status::Unsat;
    std::vector<bool> model;  // indexed by var; meaningful iff status == Sat
    bool sat() const { return status == Status::Sat; }
};

/// Incremental CDCL-lite solver: unit propagation over two watched
/// literals, first-UIP clause learning, a static branching order (no
/// activity heuristics) and chronological backtracking. Clauses are
/// permanent; per-call assumptions come on top as fixed decisions.
/// Deterministic given the same call history.
class Solver {
public:
    uint32_t new_var();
    uint32_t num_vars() const { return static_cast<uint32_t>(assign_.size()); }

    /// Asserts a clause permanently. The empty clause makes the instance
    /// unsatisfiable for good.
    void add_clause(std::vector<Lit> clause);

    /// A literal constrained to be true (allocated on first use).
    Lit true_lit();

    /// Branching hint: try these variables first, with the given polarity.
    /// Other variables default to false.
    void set_preferred(std::vector<uint32_t> vars, bool polarity);

    void set_deadline(Deadline d) { deadline_ = d; }

    SolveResult solve(std::span<const Lit> assumptions = {});

    /// A model maximal on maximize_vars: no other model under the same
    /// clauses and assumptions is pointwise >= and somewhere strictly
    /// greater on those variables. Implemented as solve followed by an
    /// improvement loop; the branching hint makes the loop short.
    SolveResult maximal_model(std::span<const Lit> assumptions,
                              std::span<const uint32_t> maximize_vars);

    /// Dual of maximal_model (pointwise minimal on minimize_vars).
    SolveResult minimal_model(std::span<const Lit> assumptions,
                              std::span<const uint32_t> minimize_vars);

    size_t num_clauses() const;

    /// DIMACS CNF export, header "p cnf <vars> <clauses>".
    void to_dimacs(std::ostream& os) const;

private:
    static constexpr int64_t kNoReason = -1;

    int8_t value(Lit l) const {
        int8_t a = assign_[l.var()];
        if (a < 0) return -1;
        return (a == 1) == l.is_pos() ? 1 : 0;
    }
    void enqueue(Lit l, int64_t reason);
    int64_t propagate();  // conflicting clause index, or kNoReason
    void undo_to_level(uint32_t level);
    uint32_t current_level() const { return static_cast<uint32_t>(level_start_.size()); }
    void new_level() { level_start_.push_back(trail_.size()); }
    std::vector<Lit> analyze(int64_t conflict);
    void attach_learned(const std::vector<Lit>& clause);
    std::optional<Lit> pick_branch() const;

    std::vector<std::vector<Lit>> clauses_;          // size >= 2 each, incl. learned
    std::vector<bool> learned_flag_;                 // parallel to clauses_
    std::vector<std::vector<uint32_t>> watches_;     // by literal code
    std::vector<Lit> units_;
    std::vector<Lit> learned_units_;
    bool has_empty_ = false;
    std::vector<int8_t> assign_;                     // -1 unassigned, 0 false, 1 true
    std::vector<uint32_t> level_of_;
    std::vector<int64_t> reason_of_;
    std::vector<Lit> trail_;
    std::vector<size_t> level_start_;
    size_t qhead_ = 0;
    std::vector<uint32_t> preferred_;
    std::vector<bool> preferred_flag_;
    bool preferred_polarity_ = true;
    std::optional<Lit> true_lit_;
    Deadline deadline_;
    size_t num_learned_ = 0;
};

/// CNF-encodes f into the solver via Tseitin definitions and returns the
/// root literal. atom_map resolves StateVar/PredAtom leaves; an unmapped
/// atom raises std::runtime_error. Models restricted to the mapped
/// variables satisfy f exactly when the root literal is true.
Lit tseitin(Solver& s, const Formula& f,
            const std::function<std::optional<Lit>(const FormulaNode&)>& atom_map);

/// Pairwise encoding of "exactly one of lits is true".
void add_exactly_one(Solver& s, std::span<const Lit> lits);

}  // namespace regatta::sat

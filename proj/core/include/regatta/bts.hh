#pragma once

#include <memory>
#include <string>
#include <vector>

#include "regatta/afa.hh"
#include "regatta/config.hh"
#include "regatta/formula.hh"
#include "regatta/util.hh"

namespace regatta {

/// Boolean transition system. Formula variable convention:
///   StateVar(q)        with q <  num_states      — current state variables
///   StateVar(num_states + q)                     — next-state variables
///   StateVar(2*num_states + i), i < num_inputs   — input variables
/// The leading num_selectors inputs are the one-hot symbol selectors.
struct Bts {
    enum class Shape {
        NextImplication,  // trans = AND_q (q' -> step[q](cur, inputs))
        CurImplication,   // trans = AND_q (q  -> step[q](next, inputs))
        Generic
    };

    uint32_t num_states = 0;
    uint32_t num_inputs = 0;
    uint32_t num_selectors = 0;
    Formula init, bad;   // over current state variables only
    Formula trans;       // over current, next and input variables
    std::vector<Formula> step;  // per-state payload for the structural shapes
    Shape shape = Shape::Generic;
    std::shared_ptr<const MintermTable> table;  // symbol labels; may be null

    void validate() const;
};

enum class ReachStatus { Reachable, Unreachable, Unknown };

struct ReachVerdict {
    ReachStatus status = ReachStatus::Unknown;
    uint32_t depth = 0;           // reachable: trace length; unreachable: proving depth
    std::vector<Config> states;   // frames 0..depth (reachable only)
    std::vector<Config> inputs;   // steps 0..depth-1 (reachable only)
};

/// Forward reduction: initial configurations satisfy the AFA's initial
/// formula, bad ones its final formula, and each step obeys
/// q -> delta(q) over the primed copy plus a one-hot symbol choice.
Bts build_fw_bts(const Afa& a);

/// Backward reduction: initial configurations satisfy the final formula,
/// bad ones the initial formula, steps obey q' -> delta(q) over the
/// unprimed copy.
Bts build_bw_bts(const Afa& a);

/// Interleaved BMC and k-induction with simple-path constraints. Traces are
/// returned for reachable verdicts; unknown means the bound ran out.
ReachVerdict check_reach(const Bts& b, uint32_t max_depth,
                         const Deadline& deadline = {});

/// True when the verdict's trace really replays through init/trans/bad.
bool trace_replays(const Bts& b, const ReachVerdict& v);

/// ASCII AIGER ("aag") export of a structural-shape system. Relational
/// slack becomes per-state choice inputs; a boot latch loads the first
/// state from the choice inputs while an okF latch remembers whether that
/// state satisfied the init formula. Byte-for-byte reproducible.
std::string export_aiger(const Bts& b);

/// Importer for files written by export_aiger (a testing aid; it rejects
/// anything more general).
Bts import_aiger(const std::string& text);

/// Structural well-formedness of an "aag" file: header counts, even input
/// and latch literals, gate operands strictly below the gate literal.
void validate_aiger(const std::string& text);

}  // namespace regatta

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "regatta/afa.hh"
#include "regatta/bre.hh"

namespace regatta::bench {

enum class ProblemKind { BreEmpty, AfaEmpty, Inclusion, Equivalence };

/// Uniform verdict space: Inclusion/Equivalence problems count as Empty
/// when the property holds (their counterexample language is empty).
enum class Verdict { Empty, NonEmpty };

struct NamedNfa {
    std::string name;
    std::optional<std::string> regex_src;
    Nfa nfa;
};

struct Problem {
    std::string id;
    ProblemKind kind = ProblemKind::BreEmpty;

    Bre bre;                  // BreEmpty
    std::optional<Afa> afa;   // AfaEmpty
    // Inclusion/Equivalence; each side is the intersection of its parts.
    std::vector<NamedNfa> lhs_parts, rhs_parts;

    std::optional<Verdict> expected;
    std::string expected_source;  // provenance tag for the expected verdict

    std::shared_ptr<const MintermTable> table;
};

const char* to_string(ProblemKind k);
const char* to_string(Verdict v);

}  // namespace regatta::bench

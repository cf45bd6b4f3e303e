#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "regatta/charclass.hh"
#include "regatta/nfa.hh"

namespace regatta::rx {

enum class AstKind : uint8_t {
    Empty, Epsilon, Class, Concat, Alt, Star, Plus, Opt, Repeat,
    And, Neg, AnchorStart, AnchorEnd, Dot
};

struct AstNode;
using Ast = std::shared_ptr<const AstNode>;

struct AstNode {
    AstKind kind;
    CharClass cls;                 // Class
    std::vector<Ast> kids;
    uint32_t min = 0;              // Repeat
    std::optional<uint32_t> max;   // Repeat; nullopt = unbounded
};

enum class Dialect { Basic, Extended };

struct ParseError : std::runtime_error {
    ParseError(size_t offset, const std::string& what)
        : std::runtime_error("syntax error at byte " + std::to_string(offset) + ": " + what),
          offset(offset) {}
    size_t offset;
};

/// POSIX-ish dialect: classes, ., escapes, *, +, ?, {n}, {n,}, {n,m}, |,
/// grouping, ^ and $ anchors. The extended dialect adds & (intersection)
/// and prefix ~ (complement). See docs/regex-grammar.md.
Ast parse_regex(std::string_view src, Dialect dialect = Dialect::Extended,
                uint64_t alphabet_max = kDefaultAlphabetMax);

/// Every class occurring in the tree; Dot contributes the full alphabet.
std::vector<CharClass> collect_classes(const Ast& ast,
                                       uint64_t alphabet_max = kDefaultAlphabetMax);

/// True when the tree contains a complement node (such trees need the
/// residual minterm class in their table).
bool has_complement(const Ast& ast);

/// Compiles to an epsilon-free NFA over the table's minterms with
/// whole-string semantics. A ^...$ pair is stripped; a lone anchor or an
/// interior anchor is an error.
Nfa compile(const Ast& ast, std::shared_ptr<const MintermTable> table);

}  // namespace regatta::rx

#pragma once

#include <filesystem>

#include "regatta/bench/problem.hh"

namespace regatta::bench {

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Writes the problem into dir: master.txt plus one .nfa file per atom that
/// has no regex source, or problem.afa for AFA problems. See
/// docs/formats.md for the concrete syntax.
void write_problem(const Problem& p, const std::filesystem::path& dir);

/// Loads dir/master.txt or dir/problem.afa.
Problem load_problem_dir(const std::filesystem::path& dir);

/// Loads a single file; AFA files are recognized by their @afa header.
Problem load_problem_file(const std::filesystem::path& file);

Problem parse_master(const std::filesystem::path& path);

void write_afa_file(const Problem& p, const std::filesystem::path& file);
Problem parse_afa_file(const std::filesystem::path& file);

/// Formula text used in AFA files ("q0 & ![61-7a] | true").
Formula parse_formula_text(const std::string& text, uint64_t alphabet_max);

}  // namespace regatta::bench

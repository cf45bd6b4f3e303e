#pragma once

#include <span>

#include "regatta/bench/problem.hh"
#include "regatta/util.hh"

namespace regatta::bench {

struct EngineOptions {
    Deadline deadline;
    uint32_t max_depth = 64;    // bts-bmc bound
    uint32_t oracle_bound = 6;  // oracle word-length bound
};

struct EngineOutcome {
    enum class Kind { Empty, NonEmpty, Inconclusive };
    Kind kind = Kind::Inconclusive;
    std::vector<uint32_t> witness;
    std::string note;  // set for inconclusive outcomes
};

/// Registered engine names: enfa, dfa, antichain-fw, antisat, dealt-fw,
/// dealt-bw, hkc, bts-bmc, plus the oracle pseudo-engine.
const std::vector<std::string>& engine_names();
bool engine_supports(const std::string& engine, ProblemKind kind);
EngineOutcome run_engine(const std::string& engine, const Problem& p,
                         const EngineOptions& opts);

/// Default engine for a problem kind (BRE-shaped problems: enfa; AFA
/// problems: antisat).
std::string default_engine(ProblemKind kind);

/// BRE form of a non-AFA problem (inclusion and equivalence are encoded
/// via intersection with complements).
Bre problem_bre(const Problem& p);

/// AFA form of any problem (the identity on AFA problems).
Afa problem_afa(const Problem& p);

enum class RunStatus { Ok, Timeout, Error };

struct RunRecord {
    std::string problem_id;
    std::string engine;
    std::optional<Verdict> verdict;  // present iff status == Ok
    double seconds = 0.0;
    RunStatus status = RunStatus::Error;
    std::string message;
};

struct SuiteResult {
    std::vector<RunRecord> records;
    std::vector<std::string> failures;  // cross-check violations
    bool ok() const { return failures.empty(); }
};

/// Runs every applicable (problem, engine) pair under the wall-clock cutoff
/// on a pool of jobs workers, then cross-checks: all Ok verdicts of one
/// problem must agree with each other, with the expected verdict when
/// present, and with any definitive oracle answer.
SuiteResult run_suite(const std::vector<Problem>& problems,
                      const std::vector<std::string>& engines, double timeout_s,
                      unsigned jobs = 1, const EngineOptions& base = {});

/// Per-engine summary: ok count, mean and median over ok runs, timeout and
/// error counts. Tab-separated, one header comment line carrying the seed.
std::string emit_stats(std::span<const RunRecord> records, uint64_t seed,
                       bool zero_times = false);

/// Cactus-plot data: per engine, ok runtimes ascending with cumulative
/// seconds; timeouts are omitted. CSV columns engine,rank,cumulative_seconds.
std::string emit_cactus(std::span<const RunRecord> records, uint64_t seed,
                        bool zero_times = false);

}  // namespace regatta::bench

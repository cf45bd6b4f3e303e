// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Runs against the library and the installed CLI binary.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "regatta/afa_engines.hh"
#include "regatta/bench/formats.hh"
#include "regatta/bench/generate.hh"
#include "regatta/bench/oracle.hh"
#include "regatta/bench/suite.hh"
#include "regatta/bts.hh"
#include "regatta/nfa_ops.hh"
#include "regatta/sat.hh"

using namespace regatta;
namespace fs = std::filesystem;

namespace {

constexpr uint64_t kAfaSeed = 7;    // criterion 2/5 instances
constexpr uint64_t kBreSeed = 11;   // criterion 3 instances
constexpr uint64_t kNfaSeed = 13;   // criterion 4 instances
constexpr uint64_t kCnfSeed = 17;   // criterion 6 instances

struct Report {
    bool pass;
    std::string detail;
};

// ---------------------------------------------------------------- criterion 1
Report ground_truth_families() {
    const std::vector<std::string> engines{"enfa",     "dfa",      "antichain-fw",
                                           "antisat",  "dealt-fw", "dealt-bw",
                                           "bts-bmc"};
    size_t completed = 0, skipped = 0, wrong = 0;
    for (int family : {5, 6, 7, 8}) {
        bench::Verdict expected =
            (family == 5 || family == 7) ? bench::Verdict::NonEmpty : bench::Verdict::Empty;
        for (uint32_t n = 1; n <= 8; ++n) {
            bench::Problem p = bench::gen_param(family, n);
            for (const auto& engine : engines) {
                bench::EngineOptions opts;
                opts.deadline = Deadline::after(60.0);
                opts.max_depth = 64;
                try {
                    auto out = bench::run_engine(engine, p, opts);
                    if (out.kind == bench::EngineOutcome::Kind::Inconclusive) {
                        ++skipped;
                        continue;
                    }
                    ++completed;
                    bench::Verdict got = out.kind == bench::EngineOutcome::Kind::Empty
                                             ? bench::Verdict::Empty
                                             : bench::Verdict::NonEmpty;
                    if (got != expected) ++wrong;
                } catch (const TimeoutError&) {
                    ++skipped;
                }
            }
        }
    }
    std::ostringstream os;
    os << completed << " completed runs, " << skipped
       << " timeouts/inconclusive, " << wrong << " disagreements";
    return {wrong == 0 && completed > 0, os.str()};
}

// ---------------------------------------------------------------- criterion 2
Report cross_engine_agreement() {
    const std::vector<std::string> engines{"antichain-fw", "antisat", "dealt-fw",
                                           "dealt-bw", "bts-bmc"};
    size_t mismatches = 0, unresolved = 0;
    for (uint32_t i = 0; i < 300; ++i) {
        bench::Problem p = bench::random_afa_problem(kAfaSeed, i, 6, 3);
        std::optional<bool> agreed;
        for (const auto& engine : engines) {
            bench::EngineOptions opts;
            opts.deadline = Deadline::after(60.0);
            opts.max_depth = 32;
            auto out = bench::run_engine(engine, p, opts);
            if (out.kind == bench::EngineOutcome::Kind::Inconclusive) {
                ++unresolved;
                continue;
            }
            bool empty = out.kind == bench::EngineOutcome::Kind::Empty;
            if (!agreed) agreed = empty;
            else if (*agreed != empty) ++mismatches;
        }
    }
    std::ostringstream os;
    os << "300 seeded AFAs x 5 engines, " << mismatches << " mismatches, " << unresolved
       << " unresolved";
    return {mismatches == 0 && unresolved == 0, os.str()};
}

// ---------------------------------------------------------------- criterion 3
Report oracle_equivalence() {
    size_t violations = 0, nonempty = 0;
    for (uint32_t i = 0; i < 200; ++i) {
        bench::Problem p = bench::random_bre_problem(kBreSeed, i, 3, 4);
        bench::EngineOptions opts;
        opts.deadline = Deadline::after(60.0);
        auto rn = bench::run_engine("enfa", p, opts);
        auto rd = bench::run_engine("dfa", p, opts);
        if (rn.kind != rd.kind) {
            ++violations;
            continue;
        }
        auto oracle = bench::oracle_empty(p, 8);
        if (rn.kind == bench::EngineOutcome::Kind::NonEmpty) {
            ++nonempty;
            if (!oracle.nonempty) ++violations;
        } else {
            if (oracle.nonempty) ++violations;
        }
    }
    std::ostringstream os;
    os << "200 seeded BRE trees (" << nonempty << " nonempty), " << violations
       << " violations against the bound-8 word oracle";
    return {violations == 0, os.str()};
}

// ---------------------------------------------------------------- criterion 4
Report algebraic_laws() {
    std::mt19937_64 rng(kNfaSeed);
    auto table = bench::small_table(2);
    size_t violations = 0;
    for (int i = 0; i < 100; ++i) {
        Nfa r = bench::random_nfa(rng, 5, table);
        if (!is_empty(intersect(r, complement(r))).empty) ++violations;

        Nfa a = bench::random_nfa(rng, 5, table);
        Nfa b = bench::random_nfa(rng, 5, table);
        bool by_antichain = antichain_included(a, b).included;
        bool by_complement = is_empty(intersect(a, complement(b))).empty;
        bool by_hkc = hkc_equivalent(union_nfa(a, b), b).equivalent;
        if (by_antichain != by_complement || by_complement != by_hkc) ++violations;
    }
    std::ostringstream os;
    os << "100 instances, " << violations << " law violations";
    return {violations == 0, os.str()};
}

// ---------------------------------------------------------------- criterion 5
Report reduction_soundness() {
    size_t bad_files = 0, verdict_flips = 0, compared = 0;
    for (uint32_t i = 0; i < 300; ++i) {
        bench::Problem p = bench::random_afa_problem(kAfaSeed, i, 6, 3);
        Bts b = build_bw_bts(*p.afa);
        auto direct = check_reach(b, 32);
        std::string text = export_aiger(b);
        try {
            validate_aiger(text);
        } catch (const std::exception&) {
            ++bad_files;
            continue;
        }
        if (direct.status == ReachStatus::Unknown) continue;
        Bts back = import_aiger(text);
        auto again = check_reach(back, 33);  // one boot step
        ++compared;
        if (again.status != direct.status) ++verdict_flips;
    }
    std::ostringstream os;
    os << compared << " concluded instances re-checked from AIGER, " << bad_files
       << " invalid files, " << verdict_flips << " verdict changes";
    return {bad_files == 0 && verdict_flips == 0 && compared == 300, os.str()};
}

// ---------------------------------------------------------------- criterion 6
Report sat_maximality() {
    std::mt19937_64 rng(kCnfSeed);
    size_t violations = 0;
    for (int round = 0; round < 100; ++round) {
        uint32_t nvars = 6 + round % 7;  // 6..12
        auto cnf = bench::random_cnf(rng, nvars, nvars * 2 + 4, 3);
        sat::Solver s;
        std::vector<uint32_t> vars;
        for (uint32_t v = 0; v < nvars; ++v) vars.push_back(s.new_var());
        for (const auto& clause : cnf) {
            std::vector<sat::Lit> lits;
            for (auto [v, pos] : clause)
                lits.push_back(pos ? sat::Lit::pos(v) : sat::Lit::neg(v));
            s.add_clause(std::move(lits));
        }
        auto r = s.maximal_model({}, vars);

        auto satisfies = [&](uint64_t mask) {
            for (const auto& clause : cnf) {
                bool ok = false;
                for (auto [v, pos] : clause)
                    if (((mask >> v) & 1) == static_cast<uint64_t>(pos)) {
                        ok = true;
                        break;
                    }
                if (!ok) return false;
            }
            return true;
        };

        if (!r.sat()) {
            for (uint64_t mask = 0; mask < (uint64_t{1} << nvars); ++mask)
                if (satisfies(mask)) {
                    ++violations;
                    break;
                }
            continue;
        }
        uint64_t got = 0;
        for (uint32_t v = 0; v < nvars; ++v)
            if (r.model[v]) got |= uint64_t{1} << v;
        if (!satisfies(got)) {
            ++violations;
            continue;
        }
        for (uint64_t mask = 0; mask < (uint64_t{1} << nvars); ++mask) {
            if (!satisfies(mask)) continue;
            if ((mask & got) == got && mask != got) {
                ++violations;  // a strictly larger model exists
                break;
            }
        }
    }
    std::ostringstream os;
    os << "100 CNF instances, " << violations << " maximality violations";
    return {violations == 0, os.str()};
}

// ---------------------------------------------------------------- criterion 7
Report scaling_smoke() {
    auto solves_within = [&](const std::string& engine, uint32_t n) {
        bench::Problem p = bench::gen_param(2, n);
        bench::EngineOptions opts;
        opts.deadline = Deadline::after(60.0);
        try {
            auto out = bench::run_engine(engine, p, opts);
            return out.kind != bench::EngineOutcome::Kind::Inconclusive;
        } catch (const TimeoutError&) {
            return false;
        } catch (const std::exception&) {
            return false;
        }
    };

    auto frontier = [&](const std::string& engine, uint32_t start, uint32_t cap,
                        double budget_s) {
        uint32_t last = 0;
        auto t0 = std::chrono::steady_clock::now();
        for (uint32_t n = start; n <= cap; ++n) {
            if (std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count() > budget_s)
                break;
            if (!solves_within(engine, n)) break;
            last = n;
        }
        return last;
    };

    uint32_t f_dfa = frontier("dfa", 2, 30, 240.0);
    uint32_t cap = std::min<uint32_t>(f_dfa + 8, 30);
    uint32_t f_antisat = std::max(frontier("antisat", 2, cap, 240.0), uint32_t{0});
    uint32_t f_antichain = frontier("antichain-fw", 2, cap, 240.0);

    std::ostringstream os;
    os << "exponential-branching frontiers at 60s: dfa n=" << f_dfa
       << ", antisat n=" << f_antisat << ", antichain-fw n=" << f_antichain;
    return {f_antisat > f_dfa && f_antichain > f_dfa, os.str()};
}

// ---------------------------------------------------------------- criterion 8
Report bench_determinism() {
    auto run_cmd = [](const std::string& args) {
        std::string cmd = std::string(REGATTA_BIN) + " " + args + " 2>&1";
        std::array<char, 512> buf;
        std::string out;
        FILE* pipe = popen(cmd.c_str(), "r");
        if (!pipe) return std::pair<int, std::string>{-1, ""};
        while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
        return std::pair<int, std::string>{WEXITSTATUS(pclose(pipe)), out};
    };
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    };

    fs::path d1 = fs::temp_directory_path() / "regatta-acc-det1";
    fs::path d2 = fs::temp_directory_path() / "regatta-acc-det2";
    fs::remove_all(d1);
    fs::remove_all(d2);
    std::string common =
        " bench --suite param:5-8:1-2 --suite rand-afa:20 "
        "--engines enfa,antisat,dealt-bw --timeout 60 --deterministic --out ";
    auto r1 = run_cmd("--seed 21" + common + d1.string());
    auto r2 = run_cmd("--seed 21" + common + d2.string());
    bool same_stats = slurp(d1 / "stats.tsv") == slurp(d2 / "stats.tsv");
    bool same_cactus = slurp(d1 / "cactus.csv") == slurp(d2 / "cactus.csv");
    bool nonzero = !slurp(d1 / "stats.tsv").empty();
    std::ostringstream os;
    os << "two seeded cmd_bench runs: stats "
       << (same_stats ? "identical" : "DIFFER") << ", cactus "
       << (same_cactus ? "identical" : "DIFFER") << ", exits " << r1.first << "/"
       << r2.first;
    return {same_stats && same_cactus && nonzero && r1.first == 0 && r2.first == 0,
            os.str()};
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        std::function<Report()> run;
    };
    const std::vector<Entry> criteria{
        {"criterion-1 ground-truth families 5-8", ground_truth_families},
        {"criterion-2 cross-engine agreement", cross_engine_agreement},
        {"criterion-3 oracle equivalence", oracle_equivalence},
        {"criterion-4 algebraic laws", algebraic_laws},
        {"criterion-5 reduction soundness", reduction_soundness},
        {"criterion-6 sat maximality", sat_maximality},
        {"criterion-7 scaling smoke", scaling_smoke},
        {"criterion-8 bench determinism", bench_determinism},
    };

    bool all_pass = true;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Report r;
        try {
            r = c.run();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %s: %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", c.name,
                    r.detail.c_str(), secs);
        std::fflush(stdout);
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}

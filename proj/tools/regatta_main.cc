// regatta: deciding emptiness of Boolean combinations of regular languages
// and of alternating finite automata with several independent engines.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "regatta/bench/formats.hh"
#include "regatta/bench/generate.hh"
#include "regatta/bench/suite.hh"
#include "regatta/bts.hh"

namespace fs = std::filesystem;
using namespace regatta;

namespace {

std::string witness_text(const std::vector<uint32_t>& word, const MintermTable& table) {
    if (word.empty()) return "(empty word)";
    std::string out;
    char buf[16];
    for (uint32_t m : word) {
        if (!out.empty()) out += ' ';
        std::snprintf(buf, sizeof buf, "U+%04X", table.representative(m));
        out += buf;
    }
    return out;
}

uint64_t parse_bound(const std::string& s) {
    if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0)
        return std::stoull(s.substr(2), nullptr, 16);
    return std::stoull(s);
}

struct SuiteSpec {
    std::vector<bench::Problem> problems;
};

void add_range(std::vector<uint32_t>& out, uint32_t lo, uint32_t hi, uint32_t step) {
    for (uint32_t n = lo; n <= hi; n += step) out.push_back(n);
}

std::vector<bench::Problem> expand_suite(const std::string& spec, uint64_t seed,
                                         uint64_t alphabet_max) {
    auto parts = [&]() {
        std::vector<std::string> out;
        std::string cur;
        for (char c : spec) {
            if (c == ':') { out.push_back(cur); cur.clear(); }
            else cur += c;
        }
        out.push_back(cur);
        return out;
    }();
    auto range_of = [](const std::string& s) -> std::pair<uint32_t, uint32_t> {
        size_t dash = s.find('-');
        if (dash == std::string::npos) {
            uint32_t v = static_cast<uint32_t>(std::stoul(s));
            return {v, v};
        }
        return {static_cast<uint32_t>(std::stoul(s.substr(0, dash))),
                static_cast<uint32_t>(std::stoul(s.substr(dash + 1)))};
    };

    std::vector<bench::Problem> problems;
    if (parts[0] == "param") {
        if (parts.size() != 3) throw CLI::ValidationError("suite", "use param:F1-F2:N1-N2");
        auto [f1, f2] = range_of(parts[1]);
        auto [n1, n2] = range_of(parts[2]);
        for (uint32_t f = f1; f <= f2; ++f)
            for (uint32_t n = n1; n <= n2; ++n)
                problems.push_back(bench::gen_param(static_cast<int>(f), n, alphabet_max));
    } else if (parts[0] == "rand-afa") {
        if (parts.size() < 2) throw CLI::ValidationError("suite", "use rand-afa:COUNT");
        uint32_t count = static_cast<uint32_t>(std::stoul(parts[1]));
        for (uint32_t i = 0; i < count; ++i)
            problems.push_back(bench::random_afa_problem(seed, i));
    } else if (parts[0] == "rand-bre") {
        if (parts.size() < 2) throw CLI::ValidationError("suite", "use rand-bre:COUNT");
        uint32_t count = static_cast<uint32_t>(std::stoul(parts[1]));
        for (uint32_t i = 0; i < count; ++i)
            problems.push_back(bench::random_bre_problem(seed, i));
    } else {
        throw CLI::ValidationError("suite", "unknown suite '" + parts[0] + "'");
    }
    return problems;
}

void collect_problem_files(const fs::path& dir, std::vector<bench::Problem>& out) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const auto& p = entry.path();
        if (p.filename() == "master.txt" || p.extension() == ".afa") files.push_back(p);
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) out.push_back(bench::load_problem_file(f));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"emptiness of Boolean combinations of regular languages and AFA"};
    app.require_subcommand(1);

    uint64_t seed = 1;
    app.add_option("--seed", seed, "random seed (also: env REGATTA_SEED)")
        ->envname("REGATTA_SEED");
    std::string alphabet_max_text = "0x110000";
    app.add_option("--alphabet-max", alphabet_max_text,
                   "exclusive code point bound (decimal or 0x hex)");

    // ---- solve ----
    auto* solve = app.add_subcommand("solve", "decide one problem file");
    std::string solve_input, solve_engine;
    double solve_timeout = 60.0;
    uint32_t solve_max_depth = 64, solve_oracle_bound = 6;
    solve->add_option("input", solve_input, "master file or AFA file")->required();
    solve->add_option("--engine", solve_engine, "engine name (default by problem kind)");
    solve->add_option("--timeout", solve_timeout, "seconds");
    solve->add_option("--max-depth", solve_max_depth, "bts-bmc bound");
    solve->add_option("--oracle-bound", solve_oracle_bound, "oracle word-length bound");

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate parametric problems");
    int gen_family = 0;
    uint32_t gen_n_min = 1, gen_n_max = 0, gen_n_step = 1;
    std::string gen_out = "problems", gen_preset;
    gen->add_option("--family", gen_family, "family id 1..8");
    gen->add_option("--n-min", gen_n_min, "smallest n");
    gen->add_option("--n-max", gen_n_max, "largest n");
    gen->add_option("--n-step", gen_n_step, "step");
    gen->add_option("--preset", gen_preset, "paper-b-param | desk");
    gen->add_option("--out", gen_out, "output directory")->required();

    // ---- bench ----
    auto* bench_cmd = app.add_subcommand("bench", "run engine sweeps with cross-checks");
    std::vector<std::string> bench_suites, bench_dirs;
    std::string bench_engines = "enfa,dfa,antichain-fw,antisat";
    double bench_timeout = 60.0;
    unsigned bench_jobs = 1;
    std::string bench_out;
    bool bench_deterministic = false;
    uint32_t bench_max_depth = 64, bench_oracle_bound = 6;
    bench_cmd->add_option("--suite", bench_suites,
                          "param:F1-F2:N1-N2 | rand-afa:COUNT | rand-bre:COUNT");
    bench_cmd->add_option("--problems", bench_dirs, "directory of problem files");
    bench_cmd->add_option("--engines", bench_engines, "comma-separated engine list");
    bench_cmd->add_option("--timeout", bench_timeout, "per-task seconds");
    bench_cmd->add_option("--jobs", bench_jobs, "parallel workers");
    bench_cmd->add_option("--out", bench_out, "directory for stats.tsv and cactus.csv");
    bench_cmd->add_option("--max-depth", bench_max_depth, "bts-bmc bound");
    bench_cmd->add_option("--oracle-bound", bench_oracle_bound, "oracle word-length bound");
    bench_cmd->add_flag("--deterministic", bench_deterministic,
                        "zero out wall times in outputs for reproducible files");

    // ---- export-aiger ----
    auto* exp = app.add_subcommand("export-aiger", "emit an ascii AIGER reachability query");
    std::string exp_input, exp_out;
    bool exp_forward = false;
    exp->add_option("input", exp_input, "master file or AFA file")->required();
    exp->add_option("--out", exp_out, "output .aag path")->required();
    exp->add_flag("--forward", exp_forward, "use the forward reduction (default backward)");

    CLI11_PARSE(app, argc, argv);

    try {
        uint64_t alphabet_max = parse_bound(alphabet_max_text);

        if (*solve) {
            bench::Problem p = bench::load_problem_file(solve_input);
            std::string engine =
                solve_engine.empty() ? bench::default_engine(p.kind) : solve_engine;
            bench::EngineOptions opts;
            opts.deadline = Deadline::after(solve_timeout);
            opts.max_depth = solve_max_depth;
            opts.oracle_bound = solve_oracle_bound;
            bench::EngineOutcome out;
            try {
                out = bench::run_engine(engine, p, opts);
            } catch (const TimeoutError&) {
                std::cout << "timeout after " << solve_timeout << "s\n";
                return 2;
            }
            switch (out.kind) {
                case bench::EngineOutcome::Kind::Empty:
                    std::cout << "verdict: empty\n";
                    return 0;
                case bench::EngineOutcome::Kind::NonEmpty:
                    std::cout << "verdict: nonempty\nwitness: "
                              << witness_text(out.witness, *p.table) << '\n';
                    return 1;
                case bench::EngineOutcome::Kind::Inconclusive:
                    std::cout << "verdict: unknown (" << out.note << ")\n";
                    return 2;
            }
        }

        if (*gen) {
            struct Grid { int family; uint32_t lo, hi, step; };
            std::vector<Grid> grids;
            if (!gen_preset.empty()) {
                if (gen_preset == "paper-b-param") {
                    grids.push_back({1, 50, 500, 50});
                    for (int f = 2; f <= 4; ++f) grids.push_back({f, 2, 60, 1});
                    for (int f = 5; f <= 8; ++f) grids.push_back({f, 50, 500, 50});
                } else if (gen_preset == "desk") {
                    grids.push_back({1, 2, 8, 1});
                    for (int f = 2; f <= 4; ++f) grids.push_back({f, 2, 6, 1});
                    for (int f = 5; f <= 8; ++f) grids.push_back({f, 1, 8, 1});
                } else {
                    std::cerr << "unknown preset '" << gen_preset << "'\n";
                    return 2;
                }
            } else {
                if (gen_family < 1 || gen_family > 8 || gen_n_max < gen_n_min) {
                    std::cerr << "usage error: need --family 1..8 and --n-min <= --n-max\n";
                    return 2;
                }
                grids.push_back({gen_family, gen_n_min, gen_n_max, gen_n_step});
            }
            size_t count = 0;
            for (const auto& g : grids) {
                std::vector<uint32_t> ns;
                add_range(ns, g.lo, g.hi, g.step);
                for (uint32_t n : ns) {
                    bench::Problem p = bench::gen_param(g.family, n, alphabet_max);
                    bench::write_problem(p, fs::path(gen_out) / p.id);
                    ++count;
                }
            }
            std::cout << "wrote " << count << " problems under " << gen_out << '\n';
            return 0;
        }

        if (*bench_cmd) {
            std::vector<bench::Problem> problems;
            for (const auto& s : bench_suites) {
                auto ps = expand_suite(s, seed, alphabet_max);
                for (auto& p : ps) problems.push_back(std::move(p));
            }
            for (const auto& d : bench_dirs) collect_problem_files(d, problems);
            if (problems.empty()) {
                std::cerr << "no problems selected (use --suite/--problems)\n";
                return 2;
            }
            std::vector<std::string> engines;
            {
                std::string cur;
                for (char c : bench_engines) {
                    if (c == ',') { if (!cur.empty()) engines.push_back(cur); cur.clear(); }
                    else cur += c;
                }
                if (!cur.empty()) engines.push_back(cur);
            }
            for (const auto& e : engines) {
                const auto& known = bench::engine_names();
                if (std::find(known.begin(), known.end(), e) == known.end()) {
                    std::cerr << "unknown engine '" << e << "'\n";
                    return 2;
                }
            }
            bench::EngineOptions opts;
            opts.max_depth = bench_max_depth;
            opts.oracle_bound = bench_oracle_bound;
            auto result = bench::run_suite(problems, engines, bench_timeout, bench_jobs, opts);
            std::string stats = bench::emit_stats(result.records, seed, bench_deterministic);
            std::string cactus = bench::emit_cactus(result.records, seed, bench_deterministic);
            std::cout << stats;
            if (!bench_out.empty()) {
                fs::create_directories(bench_out);
                std::ofstream(fs::path(bench_out) / "stats.tsv") << stats;
                std::ofstream(fs::path(bench_out) / "cactus.csv") << cactus;
            }
            for (const auto& f : result.failures)
                std::cerr << "cross-check failure: " << f << '\n';
            return result.ok() ? 0 : 1;
        }

        if (*exp) {
            bench::Problem p = bench::load_problem_file(exp_input);
            Afa a = bench::problem_afa(p);
            Bts b = exp_forward ? build_fw_bts(a) : build_bw_bts(a);
            std::string text = export_aiger(b);
            std::ofstream out(exp_out, std::ios::binary);
            if (!out) {
                std::cerr << "cannot write " << exp_out << '\n';
                return 2;
            }
            out << text;
            std::cout << "wrote " << exp_out << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

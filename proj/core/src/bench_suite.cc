#include "regatta/bench/suite.hh"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <sstream>
#include <thread>

#include "regatta/afa_engines.hh"
#include "regatta/bench/oracle.hh"
#include "regatta/bts.hh"

namespace regatta::bench {

namespace {

Bre side_tree(const std::vector<NamedNfa>& parts) {
    std::vector<Bre> leaves;
    for (const auto& p : parts) leaves.push_back(bre::leaf(p.nfa, p.name, p.regex_src));
    return bre::conj(std::move(leaves));
}

Bre bre_of_problem(const Problem& p) {
    switch (p.kind) {
        case ProblemKind::BreEmpty:
            return p.bre;
        case ProblemKind::Inclusion:
            return bre::conj({side_tree(p.lhs_parts), bre::neg(side_tree(p.rhs_parts))});
        case ProblemKind::Equivalence: {
            Bre l = side_tree(p.lhs_parts);
            Bre r = side_tree(p.rhs_parts);
            return bre::disj({bre::conj({l, bre::neg(r)}), bre::conj({r, bre::neg(l)})});
        }
        case ProblemKind::AfaEmpty:
            throw std::logic_error("AFA problem has no BRE form");
    }
    throw std::logic_error("unreachable");
}

Afa afa_of_problem(const Problem& p) {
    if (p.kind == ProblemKind::AfaEmpty) return *p.afa;
    return afa_of_bre(bre_of_problem(p));
}

}  // namespace

Bre problem_bre(const Problem& p) { return bre_of_problem(p); }
Afa problem_afa(const Problem& p) { return afa_of_problem(p); }

namespace {

Nfa product_of(const std::vector<NamedNfa>& parts, const Deadline& deadline) {
    Nfa acc = parts.front().nfa;
    for (size_t i = 1; i < parts.size(); ++i)
        acc = intersect(acc, parts[i].nfa, false, deadline);
    return acc;
}

EngineOutcome from_emptiness(bool empty, std::vector<uint32_t> witness) {
    if (empty) return {EngineOutcome::Kind::Empty, {}, {}};
    return {EngineOutcome::Kind::NonEmpty, std::move(witness), {}};
}

EngineOutcome run_eval_bre(const Problem& p, BreStrategy strategy,
                           const EngineOptions& opts) {
    BreEvalOptions eo;
    eo.strategy = strategy;
    eo.deadline = opts.deadline;
    auto r = eval_bre(bre_of_problem(p), eo);
    return from_emptiness(r.empty, std::move(r.witness));
}

EngineOutcome run_antichain(const Problem& p, const EngineOptions& opts) {
    if (p.kind == ProblemKind::Inclusion) {
        auto r = antichain_included(product_of(p.lhs_parts, opts.deadline),
                                    product_of(p.rhs_parts, opts.deadline), opts.deadline);
        return from_emptiness(r.included, std::move(r.counterexample));
    }
    if (p.kind == ProblemKind::Equivalence) {
        Nfa l = product_of(p.lhs_parts, opts.deadline);
        Nfa r = product_of(p.rhs_parts, opts.deadline);
        auto lr = antichain_included(l, r, opts.deadline);
        if (!lr.included) return from_emptiness(false, std::move(lr.counterexample));
        auto rl = antichain_included(r, l, opts.deadline);
        return from_emptiness(rl.included, std::move(rl.counterexample));
    }
    auto r = antichain_empty_fw(afa_of_problem(p), opts.deadline);
    return from_emptiness(r.empty, std::move(r.witness));
}

EngineOutcome run_hkc(const Problem& p, const EngineOptions& opts) {
    if (p.kind == ProblemKind::Equivalence) {
        auto r = hkc_equivalent(product_of(p.lhs_parts, opts.deadline),
                                product_of(p.rhs_parts, opts.deadline), opts.deadline);
        return from_emptiness(r.equivalent, std::move(r.counterexample));
    }
    // inclusion: L(a) ⊆ L(b) iff L(a ∪ b) = L(b)
    Nfa a = product_of(p.lhs_parts, opts.deadline);
    Nfa b = product_of(p.rhs_parts, opts.deadline);
    auto r = hkc_equivalent(union_nfa(a, b, false), b, opts.deadline);
    return from_emptiness(r.equivalent, std::move(r.counterexample));
}

EngineOutcome run_bts_bmc(const Problem& p, const EngineOptions& opts) {
    Afa a = afa_of_problem(p);
    Bts b = build_bw_bts(a);
    ReachVerdict v = check_reach(b, opts.max_depth, opts.deadline);
    switch (v.status) {
        case ReachStatus::Unreachable:
            return {EngineOutcome::Kind::Empty, {}, {}};
        case ReachStatus::Reachable: {
            // backward system: the forward word is the reversed input trace
            std::vector<uint32_t> word;
            for (auto it = v.inputs.rbegin(); it != v.inputs.rend(); ++it) {
                uint32_t m = 0;
                for (uint32_t i = 0; i < b.num_selectors; ++i)
                    if (it->test(i)) { m = i; break; }
                word.push_back(m);
            }
            return {EngineOutcome::Kind::NonEmpty, std::move(word), {}};
        }
        case ReachStatus::Unknown:
            return {EngineOutcome::Kind::Inconclusive, {},
                    "inconclusive at depth " + std::to_string(opts.max_depth)};
    }
    throw std::logic_error("unreachable");
}

}  // namespace

const std::vector<std::string>& engine_names() {
    static const std::vector<std::string> names{
        "enfa", "dfa", "antichain-fw", "antisat", "dealt-fw", "dealt-bw",
        "hkc", "bts-bmc", "oracle"};
    return names;
}

std::string default_engine(ProblemKind kind) {
    return kind == ProblemKind::AfaEmpty ? "antisat" : "enfa";
}

bool engine_supports(const std::string& engine, ProblemKind kind) {
    bool is_afa = kind == ProblemKind::AfaEmpty;
    if (engine == "enfa" || engine == "dfa") return !is_afa;
    if (engine == "hkc") return kind == ProblemKind::Inclusion || kind == ProblemKind::Equivalence;
    if (engine == "antichain-fw" || engine == "antisat" || engine == "dealt-fw" ||
        engine == "dealt-bw" || engine == "bts-bmc" || engine == "oracle")
        return true;
    return false;
}

EngineOutcome run_engine(const std::string& engine, const Problem& p,
                         const EngineOptions& opts) {
    if (!engine_supports(engine, p.kind))
        throw std::invalid_argument("engine " + engine + " does not support this problem kind");
    if (engine == "enfa") return run_eval_bre(p, BreStrategy::Nfa, opts);
    if (engine == "dfa") return run_eval_bre(p, BreStrategy::Dfa, opts);
    if (engine == "antichain-fw") return run_antichain(p, opts);
    if (engine == "antisat") {
        auto r = antisat_empty(afa_of_problem(p), opts.deadline);
        return from_emptiness(r.empty, std::move(r.witness));
    }
    if (engine == "dealt-fw") {
        auto r = is_empty(dealternate_fw(afa_of_problem(p), opts.deadline), opts.deadline);
        return from_emptiness(r.empty, std::move(r.witness));
    }
    if (engine == "dealt-bw") {
        auto r = is_empty(dealternate_bw(afa_of_problem(p), opts.deadline), opts.deadline);
        std::reverse(r.witness.begin(), r.witness.end());
        return from_emptiness(r.empty, std::move(r.witness));
    }
    if (engine == "hkc") return run_hkc(p, opts);
    if (engine == "bts-bmc") return run_bts_bmc(p, opts);
    if (engine == "oracle") {
        auto r = oracle_empty(p, opts.oracle_bound, opts.deadline);
        if (r.nonempty) return {EngineOutcome::Kind::NonEmpty, std::move(r.witness), {}};
        return {EngineOutcome::Kind::Inconclusive, {},
                "empty up to bound " + std::to_string(r.bound)};
    }
    throw std::invalid_argument("unknown engine " + engine);
}

SuiteResult run_suite(const std::vector<Problem>& problems,
                      const std::vector<std::string>& engines, double timeout_s,
                      unsigned jobs, const EngineOptions& base) {
    struct Task {
        const Problem* problem;
        std::string engine;
    };
    std::vector<Task> tasks;
    for (const auto& p : problems)
        for (const auto& e : engines)
            if (engine_supports(e, p.kind)) tasks.push_back({&p, e});

    std::vector<RunRecord> records(tasks.size());
    std::atomic<size_t> cursor{0};

    auto worker = [&]() {
        for (;;) {
            size_t i = cursor.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& t = tasks[i];
            RunRecord rec;
            rec.problem_id = t.problem->id;
            rec.engine = t.engine;
            EngineOptions opts = base;
            opts.deadline = Deadline::after(timeout_s);
            auto start = std::chrono::steady_clock::now();
            try {
                EngineOutcome out = run_engine(t.engine, *t.problem, opts);
                rec.seconds = std::chrono::duration<double>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
                switch (out.kind) {
                    case EngineOutcome::Kind::Empty:
                        rec.status = RunStatus::Ok;
                        rec.verdict = Verdict::Empty;
                        break;
                    case EngineOutcome::Kind::NonEmpty:
                        rec.status = RunStatus::Ok;
                        rec.verdict = Verdict::NonEmpty;
                        break;
                    case EngineOutcome::Kind::Inconclusive:
                        rec.status = RunStatus::Error;
                        rec.message = out.note;
                        break;
                }
                // hard watchdog: an overshooting run counts as a timeout
                if (rec.seconds > timeout_s && rec.status == RunStatus::Ok) {
                    rec.status = RunStatus::Timeout;
                    rec.verdict.reset();
                    rec.message = "exceeded budget after completion";
                }
            } catch (const TimeoutError&) {
                rec.seconds = std::chrono::duration<double>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
                rec.status = RunStatus::Timeout;
            } catch (const std::exception& e) {
                rec.seconds = std::chrono::duration<double>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
                rec.status = RunStatus::Error;
                rec.message = e.what();
            }
            records[i] = std::move(rec);
        }
    };

    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
        if (a.problem_id != b.problem_id) return a.problem_id < b.problem_id;
        return a.engine < b.engine;
    });

    SuiteResult result;
    result.records = std::move(records);

    // cross-check
    for (const auto& p : problems) {
        std::optional<Verdict> agreed;
        for (const auto& rec : result.records) {
            if (rec.problem_id != p.id || rec.status != RunStatus::Ok) continue;
            if (!agreed) {
                agreed = rec.verdict;
                continue;
            }
            if (rec.verdict != agreed)
                result.failures.push_back("verdict disagreement on " + p.id + " (" +
                                          rec.engine + ")");
        }
        if (p.expected && agreed && *agreed != *p.expected)
            result.failures.push_back("verdict on " + p.id + " contradicts expected '" +
                                      to_string(*p.expected) + "'");
    }
    return result;
}

namespace {

std::string fmt_seconds(double s) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(3);
    os << s;
    return os.str();
}

}  // namespace

std::string emit_stats(std::span<const RunRecord> records, uint64_t seed,
                       bool zero_times) {
    std::vector<std::string> engines;
    for (const auto& r : records)
        if (std::find(engines.begin(), engines.end(), r.engine) == engines.end())
            engines.push_back(r.engine);
    std::sort(engines.begin(), engines.end());

    std::ostringstream os;
    os << "# seed=" << seed << '\n';
    os << "engine\tok\tmean_s\tmedian_s\ttimeouts\terrors\n";
    for (const auto& e : engines) {
        std::vector<double> ok_times;
        size_t timeouts = 0, errors = 0;
        for (const auto& r : records) {
            if (r.engine != e) continue;
            switch (r.status) {
                case RunStatus::Ok:
                    ok_times.push_back(zero_times ? 0.0 : r.seconds);
                    break;
                case RunStatus::Timeout: ++timeouts; break;
                case RunStatus::Error: ++errors; break;
            }
        }
        std::sort(ok_times.begin(), ok_times.end());
        std::string mean = "-", median = "-";
        if (!ok_times.empty()) {
            double sum = 0;
            for (double t : ok_times) sum += t;
            mean = fmt_seconds(sum / ok_times.size());
            size_t mid = ok_times.size() / 2;
            median = fmt_seconds(ok_times.size() % 2 ? ok_times[mid]
                                                     : (ok_times[mid - 1] + ok_times[mid]) / 2);
        }
        os << e << '\t' << ok_times.size() << '\t' << mean << '\t' << median << '\t'
           << timeouts << '\t' << errors << '\n';
    }
    return os.str();
}

std::string emit_cactus(std::span<const RunRecord> records, uint64_t seed,
                        bool zero_times) {
    std::vector<std::string> engines;
    for (const auto& r : records)
        if (std::find(engines.begin(), engines.end(), r.engine) == engines.end())
            engines.push_back(r.engine);
    std::sort(engines.begin(), engines.end());

    std::ostringstream os;
    os << "# seed=" << seed << '\n';
    os << "engine,rank,cumulative_seconds\n";
    for (const auto& e : engines) {
        std::vector<double> ok_times;
        for (const auto& r : records)
            if (r.engine == e && r.status == RunStatus::Ok)
                ok_times.push_back(zero_times ? 0.0 : r.seconds);
        std::sort(ok_times.begin(), ok_times.end());
        double cum = 0;
        for (size_t i = 0; i < ok_times.size(); ++i) {
            cum += ok_times[i];
            os << e << ',' << (i + 1) << ',' << fmt_seconds(cum) << '\n';
        }
    }
    return os.str();
}

}  // namespace regatta::bench

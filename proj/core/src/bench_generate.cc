#include "regatta/bench/generate.hh"

#include <sstream>
#include <stdexcept>

#include "regatta/regex.hh"

namespace regatta::bench {

const char* to_string(ProblemKind k) {
    switch (k) {
        case ProblemKind::BreEmpty: return "empty";
        case ProblemKind::AfaEmpty: return "afa-empty";
        case ProblemKind::Inclusion: return "incl";
        case ProblemKind::Equivalence: return "equiv";
    }
    return "?";
}

const char* to_string(Verdict v) {
    return v == Verdict::Empty ? "empty" : "nonempty";
}

uint32_t nth_prime(uint32_t j) {
    if (j == 0) throw std::invalid_argument("nth_prime: 1-based");
    std::vector<uint32_t> primes;
    uint32_t candidate = 2;
    while (primes.size() < j) {
        bool prime = true;
        for (uint32_t p : primes) {
            if (uint64_t{p} * p > candidate) break;
            if (candidate % p == 0) { prime = false; break; }
        }
        if (prime) primes.push_back(candidate);
        ++candidate;
    }
    return primes[j - 1];
}

namespace {

std::string marker_regex(uint32_t i) {
    std::ostringstream os;
    os << "\\x{" << std::hex << ('A' + i) << "}";
    return os.str();
}

std::string repeat01(uint32_t k) {
    if (k == 0) return "";
    return "[01]{" + std::to_string(k) + "}";
}

struct AtomSpec {
    std::string name;
    std::string regex;
};

struct ItemSpec {
    size_t atom;
    bool negated;
};

Problem build_regex_problem(std::string id, ProblemKind kind,
                            const std::vector<AtomSpec>& atoms,
                            const std::vector<ItemSpec>& items,
                            const std::vector<size_t>& lhs,
                            const std::vector<size_t>& rhs,
                            uint64_t alphabet_max) {
    std::vector<rx::Ast> asts;
    std::vector<CharClass> classes;
    bool needs_residual = kind != ProblemKind::BreEmpty;
    for (const auto& a : atoms) {
        rx::Ast ast = rx::parse_regex(a.regex, rx::Dialect::Extended, alphabet_max);
        if (rx::has_complement(ast)) needs_residual = true;
        for (const auto& c : rx::collect_classes(ast, alphabet_max))
            if (std::find(classes.begin(), classes.end(), c) == classes.end())
                classes.push_back(c);
        asts.push_back(std::move(ast));
    }
    for (const auto& it : items) needs_residual = needs_residual || it.negated;

    auto table = std::make_shared<const MintermTable>(
        mintermize(classes, alphabet_max, needs_residual));

    std::vector<NamedNfa> compiled;
    for (size_t i = 0; i < atoms.size(); ++i)
        compiled.push_back({atoms[i].name, atoms[i].regex, rx::compile(asts[i], table)});

    Problem p;
    p.id = std::move(id);
    p.kind = kind;
    p.table = table;
    if (kind == ProblemKind::BreEmpty) {
        std::vector<Bre> parts;
        for (const auto& it : items) {
            Bre l = bre::leaf(compiled[it.atom].nfa, compiled[it.atom].name,
                              compiled[it.atom].regex_src);
            parts.push_back(it.negated ? bre::neg(std::move(l)) : std::move(l));
        }
        p.bre = bre::conj(std::move(parts));
    } else {
        for (size_t i : lhs) p.lhs_parts.push_back(compiled[i]);
        for (size_t i : rhs) p.rhs_parts.push_back(compiled[i]);
    }
    return p;
}

}  // namespace

Problem gen_param(int family, uint32_t n, uint64_t alphabet_max) {
    if (family < 1 || family > 8) throw std::invalid_argument("unsupported family id");
    if (n < 1) throw std::invalid_argument("gen_param: n must be >= 1");
    if (family >= 2 && family <= 4 && n > 60)
        throw std::invalid_argument("gen_param: families 2-4 support n <= 60");

    std::vector<AtomSpec> atoms;
    std::vector<ItemSpec> items;
    auto add = [&](std::string name, std::string regex, bool negated) {
        atoms.push_back({std::move(name), std::move(regex)});
        items.push_back({atoms.size() - 1, negated});
    };

    switch (family) {
        case 1:
            add("a0", "[a-c]a[a-c]{" + std::to_string(n + 1) + "}", false);
            add("a1", "[a-c]a[a-c]{" + std::to_string(n) + "}", false);
            break;
        case 2:
            for (uint32_t i = 1; i <= n; ++i) {
                std::string zero = "(" + repeat01(i - 1) + "0" + repeat01(n - 1) + "0" +
                                   repeat01(n - i) + marker_regex(i) + ")";
                std::string one = "(" + repeat01(i - 1) + "1" + repeat01(n - 1) + "1" +
                                  repeat01(n - i) + marker_regex(i) + ")";
                add("a" + std::to_string(i - 1), zero + "|" + one, false);
            }
            break;
        case 3:
            for (uint32_t i = 1; i <= n; ++i)
                add("a" + std::to_string(i - 1),
                    ".*(.{" + std::to_string(nth_prime(10 + i)) + "})+" + marker_regex(i),
                    false);
            break;
        case 4:
            for (uint32_t i = 1; i <= n; ++i)
                add("a" + std::to_string(i - 1),
                    ".+" + marker_regex(i) + "0(.{" + std::to_string(nth_prime(10 + i)) +
                        "})+",
                    false);
            break;
        case 5:
            add("a0", "[01]*1" + repeat01(n), false);
            add("a1", "[01]*0" + repeat01(n - 1), true);
            break;
        case 6:
            add("a0", "[01]*11" + repeat01(n), false);
            add("a1", "[01]*1" + repeat01(n + 1), true);
            break;
        case 7:
            add("a0", "[01]*1" + repeat01(n), false);
            add("a1", "[01]*0" + repeat01(n - 1), false);
            break;
        case 8:
            add("a0", "[01]*1" + repeat01(n), false);
            add("a1", "[01]*0" + repeat01(n), false);
            break;
    }

    std::string id = "param-f" + std::to_string(family) + "-n" + std::to_string(n);
    Problem p = build_regex_problem(id, ProblemKind::BreEmpty, atoms, items, {}, {},
                                    alphabet_max);
    switch (family) {
        case 5:
            p.expected = Verdict::NonEmpty;
            p.expected_source = "family label: sat. difference";
            break;
        case 6:
            p.expected = Verdict::Empty;
            p.expected_source = "family label: unsat. difference";
            break;
        case 7:
            p.expected = Verdict::NonEmpty;
            p.expected_source = "family label: sat. intersection";
            break;
        case 8:
            p.expected = Verdict::Empty;
            p.expected_source = "family label: unsat. intersection";
            break;
        default:
            break;  // families 1-4: verdict left to the oracle
    }
    return p;
}

std::vector<Problem> gen_regex_inclusion(const std::array<std::string, 5>& regexes,
                                         const std::string& id_prefix,
                                         uint64_t alphabet_max) {
    std::vector<AtomSpec> atoms;
    for (size_t i = 0; i < 5; ++i)
        atoms.push_back({"r" + std::to_string(i + 1), regexes[i]});

    // r5 ⊆ r1 & r2 & r3 & r4
    Problem incl = build_regex_problem(id_prefix + "-incl", ProblemKind::Inclusion,
                                       atoms, {}, {4}, {0, 1, 2, 3}, alphabet_max);
    // r1 & .. & r4 = r1 & .. & r5
    Problem equiv = build_regex_problem(id_prefix + "-equiv", ProblemKind::Equivalence,
                                        atoms, {}, {0, 1, 2, 3}, {0, 1, 2, 3, 4},
                                        alphabet_max);
    return {std::move(incl), std::move(equiv)};
}

std::shared_ptr<const MintermTable> small_table(uint32_t num_symbols) {
    std::vector<CharClass> preds;
    for (uint32_t i = 0; i < num_symbols; ++i) preds.push_back(CharClass::point(i));
    return std::make_shared<const MintermTable>(mintermize(preds, num_symbols, true));
}

Nfa random_nfa(std::mt19937_64& rng, uint32_t max_states,
               const std::shared_ptr<const MintermTable>& table) {
    std::uniform_int_distribution<uint32_t> nstates(1, max_states);
    uint32_t n = nstates(rng);
    Nfa a(n, table);
    std::uniform_int_distribution<uint32_t> state(0, n - 1);
    std::uniform_int_distribution<int> coin(0, 99);
    for (uint32_t q = 0; q < n; ++q) {
        for (uint32_t m = 0; m < table->size(); ++m) {
            if (coin(rng) < 55) a.add_transition(q, m, state(rng));
            if (coin(rng) < 20) a.add_transition(q, m, state(rng));
        }
    }
    a.add_initial(state(rng));
    if (coin(rng) < 30) a.add_initial(state(rng));
    for (uint32_t q = 0; q < n; ++q)
        if (coin(rng) < 35) a.add_final(q);
    return a;
}

namespace {

Formula random_positive(std::mt19937_64& rng, uint32_t depth, uint32_t n,
                        const MintermTable* table) {
    std::uniform_int_distribution<int> pick(0, 99);
    std::uniform_int_distribution<uint32_t> state(0, n - 1);
    int r = pick(rng);
    if (depth == 0 || r < 40) {
        if (table && r < 12) {
            std::uniform_int_distribution<uint32_t> m(0, table->size() - 1);
            return fml::pred(table->minterms[m(rng)]);
        }
        if (r >= 96) return fml::tru();
        if (r >= 93) return fml::fls();
        return fml::state(state(rng));
    }
    Formula a = random_positive(rng, depth - 1, n, table);
    Formula b = random_positive(rng, depth - 1, n, table);
    if (r < 70) return fml::disj2(std::move(a), std::move(b));
    return fml::conj2(std::move(a), std::move(b));
}

}  // namespace

Afa random_afa(std::mt19937_64& rng, uint32_t max_states, uint32_t num_minterms) {
    auto table = small_table(num_minterms);
    std::uniform_int_distribution<uint32_t> nstates(1, max_states);
    uint32_t n = nstates(rng);
    std::vector<Formula> delta;
    for (uint32_t q = 0; q < n; ++q) {
        // transitions guarded by a symbol predicate most of the time
        Formula guard = random_positive(rng, 2, n, table.get());
        delta.push_back(guard);
    }
    Formula init = random_positive(rng, 1, n, nullptr);
    Formula fin = fml::negate(random_positive(rng, 1, n, nullptr));
    return Afa(n, std::move(delta), std::move(init), std::move(fin), table);
}

Bre random_bre(std::mt19937_64& rng, uint32_t depth, uint32_t max_leaf_states,
               const std::shared_ptr<const MintermTable>& table) {
    std::uniform_int_distribution<int> pick(0, 99);
    int r = pick(rng);
    if (depth == 0 || r < 35) {
        return bre::leaf(random_nfa(rng, max_leaf_states, table));
    }
    if (r < 55) return bre::neg(random_bre(rng, depth - 1, max_leaf_states, table));
    Bre a = random_bre(rng, depth - 1, max_leaf_states, table);
    Bre b = random_bre(rng, depth - 1, max_leaf_states, table);
    if (r < 80) return bre::conj({std::move(a), std::move(b)});
    return bre::disj({std::move(a), std::move(b)});
}

Problem random_afa_problem(uint64_t seed, uint32_t index, uint32_t max_states,
                           uint32_t num_minterms) {
    std::mt19937_64 rng(seed + uint64_t{index} * 0x9e3779b9ull);
    Problem p;
    p.id = "rand-afa-" + std::to_string(index);
    p.kind = ProblemKind::AfaEmpty;
    p.afa = random_afa(rng, max_states, num_minterms);
    p.table = p.afa->table_ptr();
    return p;
}

Problem random_bre_problem(uint64_t seed, uint32_t index, uint32_t depth,
                           uint32_t max_leaf_states) {
    std::mt19937_64 rng(seed + uint64_t{index} * 0x9e3779b9ull);
    auto table = small_table(2);
    Problem p;
    p.id = "rand-bre-" + std::to_string(index);
    p.kind = ProblemKind::BreEmpty;
    p.bre = random_bre(rng, depth, max_leaf_states, table);
    p.table = table;
    return p;
}

std::vector<std::vector<std::pair<uint32_t, bool>>> random_cnf(std::mt19937_64& rng,
                                                               uint32_t num_vars,
                                                               uint32_t num_clauses,
                                                               uint32_t max_width) {
    std::uniform_int_distribution<uint32_t> var(0, num_vars - 1);
    std::uniform_int_distribution<uint32_t> width(1, max_width);
    std::uniform_int_distribution<int> sign(0, 1);
    std::vector<std::vector<std::pair<uint32_t, bool>>> cnf;
    for (uint32_t c = 0; c < num_clauses; ++c) {
        std::vector<std::pair<uint32_t, bool>> clause;
        uint32_t w = width(rng);
        for (uint32_t i = 0; i < w; ++i) clause.emplace_back(var(rng), sign(rng) == 1);
        cnf.push_back(std::move(clause));
    }
    return cnf;
}

}  // namespace regatta::bench

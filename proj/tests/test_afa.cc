#include <doctest.h>

#include <random>

#include "helpers.hh"
#include "regatta/afa_engines.hh"
#include "regatta/bench/generate.hh"
#include "regatta/bench/oracle.hh"

using namespace regatta;

namespace {

std::shared_ptr<const MintermTable> ab_table() { return bench::small_table(2); }

Bfa random_bfa(std::mt19937_64& rng, uint32_t max_states,
               const std::shared_ptr<const MintermTable>& table) {
    std::uniform_int_distribution<uint32_t> nstates(1, max_states);
    uint32_t n = nstates(rng);
    std::uniform_int_distribution<int> pick(0, 9);
    std::uniform_int_distribution<uint32_t> st(0, n - 1);
    std::function<Formula(uint32_t)> gen = [&](uint32_t depth) -> Formula {
        int r = pick(rng);
        if (depth == 0 || r < 3) return fml::state(st(rng));
        if (r == 3) return fml::pred(table->minterms[st(rng) % table->size()]);
        if (r < 6) return fml::negate(gen(depth - 1));
        if (r < 8) return fml::conj2(gen(depth - 1), gen(depth - 1));
        return fml::disj2(gen(depth - 1), gen(depth - 1));
    };
    std::vector<Formula> delta;
    for (uint32_t q = 0; q < n; ++q) delta.push_back(gen(2));
    Formula init = gen(2);
    // finals as a set, encoded as a conjunction of negated non-final states
    std::vector<Formula> fin_parts;
    for (uint32_t q = 0; q < n; ++q)
        if (pick(rng) < 5) fin_parts.push_back(fml::negate(fml::state(q)));
    Formula fin = fml::conj(fin_parts);
    // init/final must be symbol-free; delta may mention predicates
    std::function<bool(const Formula&)> has_pred = [&](const Formula& f) {
        return has_pred_atom(f);
    };
    if (has_pred(init)) init = fml::state(st(rng));
    return Bfa(n, std::move(delta), std::move(init), std::move(fin), table);
}

}  // namespace

TEST_CASE("afa constructor enforces polarity") {
    auto t = ab_table();
    CHECK_THROWS(Afa(1, {fml::negate(fml::state(0))}, fml::state(0),
                     fml::negate(fml::state(0)), t));
    CHECK_THROWS(Afa(1, {fml::state(0)}, fml::negate(fml::state(0)),
                     fml::negate(fml::state(0)), t));
    CHECK_THROWS(Afa(1, {fml::state(0)}, fml::state(0), fml::state(0), t));
    // and normalizes eagerly: a double negation is fine
    Afa ok(1, {fml::negate(fml::negate(fml::state(0)))}, fml::state(0),
           fml::negate(fml::state(0)), t);
    CHECK(ok.delta(0) == fml::state(0));
}

TEST_CASE("bfa_to_afa doubles the automaton and fixes polarity") {
    auto t = ab_table();
    // spec shape: delta(q) = not q and [a]; I = q; F = not q
    Bfa b(1, {fml::conj2(fml::negate(fml::state(0)), fml::pred(t->minterms[0]))},
          fml::state(0), fml::negate(fml::state(0)), t);
    Afa a = bfa_to_afa(b);
    CHECK(a.num_states() == 2);
    CHECK(positive_in_states(a.init()));
    CHECK(negative_in_states(a.fin()));
    for (uint32_t q = 0; q < 2; ++q) CHECK(positive_in_states(a.delta(q)));

    // the substitution-semantics language and the converted AFA agree;
    // "a" itself is a member
    std::vector<uint32_t> wa{0};
    CHECK(test::bfa_accepts(b, wa));
    CHECK(bench::afa_member_brute(a, wa));
    for (const auto& w : test::all_words(2, 3))
        CHECK(test::bfa_accepts(b, w) == bench::afa_member_brute(a, w));
}

TEST_CASE("bfa_to_afa: negated initial literal goes to the dual state") {
    auto t = ab_table();
    Bfa b(1, {fml::state(0)}, fml::negate(fml::state(0)), fml::tru(), t);
    Afa a = bfa_to_afa(b);
    CHECK(a.init() == fml::state(1));  // the dual of state 0
}

TEST_CASE("a BFA that is already an AFA keeps its language, duals unreachable") {
    auto t = ab_table();
    Bfa b(2, {fml::conj2(fml::pred(t->minterms[0]), fml::state(1)), fml::fls()},
          fml::state(0), fml::negate(fml::state(0)), t);
    Afa a = bfa_to_afa(b);
    CHECK(a.num_states() == 4);
    CHECK(a.init() == fml::state(0));
    for (const auto& w : test::all_words(2, 4))
        CHECK(test::bfa_accepts(b, w) == bench::afa_member_brute(a, w));
    // the dual half stays unreachable, so the configuration space is small
    Nfa fw = dealternate_fw(a);
    CHECK(fw.num_states() <= 4);
}

TEST_CASE("bfa_to_afa preserves the language of random BFAs") {
    std::mt19937_64 rng(53);
    auto t = ab_table();
    for (int round = 0; round < 150; ++round) {
        Bfa b = random_bfa(rng, 5, t);
        Afa a = bfa_to_afa(b);
        CHECK(a.num_states() == 2 * b.num_states());
        for (const auto& w : test::all_words(2, 6)) {
            bool before = test::bfa_accepts(b, w);
            bool after = bench::afa_member_brute(a, w);
            if (before != after) {
                CAPTURE(round);
                REQUIRE(before == after);
            }
        }
    }
}

TEST_CASE("fw_successors enumerates exactly the minimal models") {
    auto t = ab_table();
    // empty conjunction: the empty configuration is the only minimal model
    Afa a1(1, {fml::pred(t->minterms[0])}, fml::state(0), fml::negate(fml::state(0)), t);
    auto succ = fw_successors(a1, Config(1), 0);
    REQUIRE(succ.size() == 1);
    CHECK(succ[0].none());

    // delta(q0) = q1 or q2
    Afa a2(3, {fml::disj2(fml::state(1), fml::state(2)), fml::fls(), fml::fls()},
           fml::state(0), fml::negate(fml::state(0)), t);
    Config c0(3);
    c0.set(0);
    auto succ2 = fw_successors(a2, c0, 0);
    REQUIRE(succ2.size() == 2);
    CHECK(succ2[0].count() == 1);
    CHECK(succ2[1].count() == 1);
    CHECK(succ2[0].test(1) != succ2[1].test(1));
}

TEST_CASE("fw_successors equals the brute-force filter on random AFAs") {
    std::mt19937_64 rng(59);
    for (int round = 0; round < 80; ++round) {
        Afa a = bench::random_afa(rng, 4, 2);
        uint32_t n = a.num_states();
        std::uniform_int_distribution<uint64_t> mask(0, (uint64_t{1} << n) - 1);
        Config c(n);
        uint64_t m = mask(rng);
        for (uint32_t q = 0; q < n; ++q)
            if ((m >> q) & 1) c.set(q);
        for (uint32_t sym = 0; sym < a.table().size(); ++sym) {
            std::vector<Formula> parts;
            for (uint32_t q : c.bits())
                parts.push_back(restrict_symbol(a.delta(q), sym, a.table()));
            auto brute = test::brute_minimal_models(fml::conj(parts), n);
            auto got = fw_successors(a, c, sym);
            REQUIRE(got.size() == brute.size());
            for (const auto& g : got)
                CHECK(std::find(brute.begin(), brute.end(), g) != brute.end());
            // pairwise incomparable
            for (const auto& x : got)
                for (const auto& y : got)
                    if (!(x == y)) CHECK(!x.subset_of(y));
        }
    }
}

TEST_CASE("bw_predecessor returns the unique largest source") {
    auto t = ab_table();
    Afa dead(2, {fml::fls(), fml::fls()}, fml::state(0), fml::negate(fml::state(0)), t);
    CHECK(bw_predecessor(dead, Config(2), 0).none());

    Afa a(2, {fml::conj2(fml::state(1), fml::pred(t->minterms[0])), fml::fls()},
          fml::state(0), fml::negate(fml::state(0)), t);
    Config c1(2);
    c1.set(1);
    Config pred = bw_predecessor(a, c1, 0);
    CHECK(pred.test(0));
    CHECK(!pred.test(1));

    std::mt19937_64 rng(61);
    for (int round = 0; round < 60; ++round) {
        Afa r = bench::random_afa(rng, 4, 2);
        uint32_t n = r.num_states();
        std::uniform_int_distribution<uint64_t> mask(0, (uint64_t{1} << n) - 1);
        Config target(n);
        uint64_t m = mask(rng);
        for (uint32_t q = 0; q < n; ++q)
            if ((m >> q) & 1) target.set(q);
        for (uint32_t sym = 0; sym < r.table().size(); ++sym) {
            Config p = bw_predecessor(r, target, sym);
            // every state in p satisfies its formula; p is the union of all
            // valid sources, hence the unique maximum
            for (uint32_t q = 0; q < n; ++q) {
                bool sat = eval_formula(r.delta(q), target, sym, r.table());
                CHECK(p.test(q) == sat);
            }
        }
    }
}

TEST_CASE("dealternation") {
    auto t = ab_table();
    // unsatisfiable initial condition: empty NFA
    Afa dead(1, {fml::tru()}, fml::fls(), fml::tru(), t);
    CHECK(is_empty(dealternate_fw(dead)).empty);

    // purely disjunctive AFA (an embedded NFA) keeps its shape
    std::mt19937_64 rng(67);
    Nfa n = bench::random_nfa(rng, 4, t);
    Afa embedded = afa_of_bre(bre::leaf(n));
    Nfa back = dealternate_fw(embedded);
    for (const auto& w : test::all_words(2, 5)) CHECK(n.accepts(w) == back.accepts(w));

    // F == false: nothing accepting backwards
    Afa nof(1, {fml::pred(t->minterms[0])}, fml::state(0), fml::fls(), t);
    CHECK(is_empty(dealternate_bw(nof)).empty);

    // the single-state AFA accepting "a": backward reaches two configurations
    Afa one(1, {fml::pred(t->minterms[0])}, fml::state(0), fml::negate(fml::state(0)), t);
    Nfa bw = dealternate_bw(one);
    CHECK(bw.num_states() == 2);
    CHECK(!is_empty(bw).empty);

    for (int round = 0; round < 100; ++round) {
        Afa a = bench::random_afa(rng, 4, 2);
        Nfa fw = dealternate_fw(a);
        for (const auto& w : test::all_words(a.table().size(), 5))
            CHECK(fw.accepts(w) == bench::afa_member_brute(a, w));
        CHECK(is_empty(fw).empty == is_empty(dealternate_bw(a)).empty);
    }
}

TEST_CASE("antichain_empty_fw") {
    auto t = ab_table();
    // I and F jointly satisfiable: epsilon accepted
    Afa eps(1, {fml::fls()}, fml::disj2(fml::state(0), fml::tru()),
            fml::negate(fml::state(0)), t);
    auto r = antichain_empty_fw(eps);
    CHECK(!r.empty);
    CHECK(r.witness.empty());

    // the one-letter AFA accepting "b" (symbol 1)
    Afa b(1, {fml::pred(t->minterms[1])}, fml::state(0), fml::negate(fml::state(0)), t);
    auto rb = antichain_empty_fw(b);
    REQUIRE(!rb.empty);
    CHECK(rb.witness == std::vector<uint32_t>{1});
}

TEST_CASE("antisat examples") {
    auto t = ab_table();
    // F == false: no seeds, empty
    Afa nof(1, {fml::pred(t->minterms[0])}, fml::state(0), fml::fls(), t);
    CHECK(antisat_empty(nof).empty);

    // delta(q)=[b], I=q, F=not q accepts exactly "b"
    Afa b(1, {fml::pred(t->minterms[1])}, fml::state(0), fml::negate(fml::state(0)), t);
    auto r = antisat_empty(b);
    REQUIRE(!r.empty);
    CHECK(r.witness == std::vector<uint32_t>{1});
    CHECK(afa_accepts_fw(b, r.witness));
}

TEST_CASE("antisat agrees with the forward antichain on random AFAs") {
    std::mt19937_64 rng(71);
    for (int round = 0; round < 200; ++round) {
        Afa a = bench::random_afa(rng, 6, 2);
        auto fw = antichain_empty_fw(a);
        auto as = antisat_empty(a);
        CHECK(fw.empty == as.empty);
        if (!fw.empty) CHECK(afa_accepts_fw(a, fw.witness));
        if (!as.empty) CHECK(afa_accepts_fw(a, as.witness));
    }
}

TEST_CASE("four-way engine agreement on random AFAs") {
    std::mt19937_64 rng(73);
    for (int round = 0; round < 300; ++round) {
        Afa a = bench::random_afa(rng, 6, 3);
        bool e1 = antichain_empty_fw(a).empty;
        bool e2 = antisat_empty(a).empty;
        bool e3 = is_empty(dealternate_fw(a)).empty;
        bool e4 = is_empty(dealternate_bw(a)).empty;
        CHECK(e1 == e2);
        CHECK(e1 == e3);
        CHECK(e1 == e4);
    }
}

TEST_CASE("afa_of_bre") {
    auto t = ab_table();
    std::mt19937_64 rng(79);

    // single leaf: same language
    Nfa n = bench::random_nfa(rng, 4, t);
    Afa a = afa_of_bre(bre::leaf(n));
    for (const auto& w : test::all_words(2, 5))
        CHECK(n.accepts(w) == bench::afa_member_brute(a, w));

    // intersection combines the initial formulas conjunctively
    Nfa n2 = bench::random_nfa(rng, 4, t);
    Afa both = afa_of_bre(bre::conj({bre::leaf(n), bre::leaf(n2)}));
    CHECK(both.init().kind() == FormulaKind::And);
    CHECK(both.num_states() == n.num_states() + n2.num_states());

    // random trees agree with eval_bre
    for (int round = 0; round < 80; ++round) {
        Bre tree = bench::random_bre(rng, 2, 3, t);
        Afa converted = afa_of_bre(tree);
        bool by_nfa = eval_bre(tree).empty;
        bool by_afa = antichain_empty_fw(converted).empty;
        CHECK(by_nfa == by_afa);
    }
}

TEST_CASE("witnesses replay through the forward interpretation") {
    std::mt19937_64 rng(83);
    for (int round = 0; round < 100; ++round) {
        Afa a = bench::random_afa(rng, 5, 2);
        for (auto* engine : {&antichain_empty_fw, &antisat_empty}) {
            auto r = (*engine)(a, {});
            if (!r.empty) CHECK(afa_accepts_fw(a, r.witness));
        }
    }
}

#include <doctest.h>

#include <random>

#include "helpers.hh"
#include "regatta/bench/generate.hh"
#include "regatta/bench/oracle.hh"
#include "regatta/bre.hh"
#include "regatta/nfa_ops.hh"

using namespace regatta;

namespace {

std::shared_ptr<const MintermTable> binary_table() { return bench::small_table(2); }

// accepts exactly the given words (built as a trie-less simple union)
Nfa nfa_of_words(const std::vector<std::vector<uint32_t>>& words,
                 const std::shared_ptr<const MintermTable>& table) {
    uint32_t total = 1;
    for (const auto& w : words) total += static_cast<uint32_t>(w.size());
    Nfa a(total, table);
    a.add_initial(0);
    uint32_t next = 1;
    for (const auto& w : words) {
        uint32_t cur = 0;
        for (uint32_t m : w) {
            a.add_transition(cur, m, next);
            cur = next++;
        }
        a.add_final(cur);
    }
    return a;
}

bool language_empty_brute(const Nfa& a, uint32_t bound) {
    for (const auto& w : test::all_words(a.num_minterms(), bound))
        if (a.accepts(w)) return false;
    return true;
}

}  // namespace

TEST_CASE("determinize: a DFA stays essentially itself") {
    auto t = binary_table();
    // two-state DFA: even number of 1s
    Nfa a(2, t);
    a.add_initial(0);
    a.add_final(0);
    a.add_transition(0, 0, 0);
    a.add_transition(0, 1, 1);
    a.add_transition(1, 0, 1);
    a.add_transition(1, 1, 0);
    Dfa d = determinize(a);
    CHECK(d.num_states() == 2);
    CHECK(test::same_language_upto(a, dfa_to_nfa(d), 6));
}

TEST_CASE("determinize: (a|b)*a has two reachable macro-states") {
    auto t = binary_table();
    Nfa a(2, t);
    a.add_initial(0);
    a.add_final(1);
    a.add_transition(0, 0, 0);
    a.add_transition(0, 1, 0);
    a.add_transition(0, 0, 1);  // symbol 0 plays the 'a'
    Dfa d = determinize(a);
    CHECK(d.num_states() == 2);
    CHECK(test::same_language_upto(a, dfa_to_nfa(d), 5));
}

TEST_CASE("determinize handles block-repetition languages") {
    // (.{2})+a over a two-symbol alphabet: symbol 0 is 'a'
    auto t = binary_table();
    Nfa a(4, t);
    a.add_initial(0);
    for (uint32_t m = 0; m < 2; ++m) {
        a.add_transition(0, m, 1);
        a.add_transition(1, m, 2);
        a.add_transition(2, m, 1);
    }
    a.add_transition(2, 0, 3);
    a.add_final(3);
    Dfa d = determinize(a);
    CHECK(test::same_language_upto(a, dfa_to_nfa(d), 6));
}

TEST_CASE("complement basics") {
    auto t = binary_table();
    Nfa empty_lang(1, t);
    empty_lang.add_initial(0);
    Nfa comp = complement(empty_lang);
    CHECK(comp.accepts(std::vector<uint32_t>{}));
    CHECK(comp.accepts(std::vector<uint32_t>{0}));

    // complement of everything is empty
    Nfa sigma_star(1, t);
    sigma_star.add_initial(0);
    sigma_star.add_final(0);
    sigma_star.add_transition(0, 0, 0);
    sigma_star.add_transition(0, 1, 0);
    CHECK(is_empty(complement(sigma_star)).empty);
}

TEST_CASE("double complement preserves the language") {
    std::mt19937_64 rng(13);
    auto t = binary_table();
    for (int round = 0; round < 40; ++round) {
        Nfa a = bench::random_nfa(rng, 4, t);
        Nfa cc = complement(complement(a));
        CHECK(test::same_language_upto(a, cc, 6));
    }
}

TEST_CASE("intersect and union basics") {
    auto t = binary_table();
    Nfa wa = nfa_of_words({{0}}, t);        // {"a"}
    Nfa wb = nfa_of_words({{1}}, t);        // {"b"}
    Nfa wab = nfa_of_words({{0}, {1}}, t);  // {"a","b"}

    CHECK(is_empty(intersect(wa, wb)).empty);
    Nfa u = union_nfa(wa, wb);
    CHECK(test::same_language_upto(u, wab, 3));

    Nfa none(1, t);
    none.add_initial(0);
    CHECK(is_empty(intersect(none, wab)).empty);
    CHECK(test::same_language_upto(union_nfa(none, wab), wab, 3));
}

TEST_CASE("intersection of different-length block languages is empty") {
    // [a-c]a[a-c]{2} ∩ [a-c]a[a-c]{1}: all words differ in length
    auto p5 = bench::gen_param(1, 1);  // n=1: lengths 4 vs 3
    BreEvalOptions opts;
    CHECK(eval_bre(p5.bre, opts).empty);
}

TEST_CASE("is_empty finds shortest witnesses") {
    auto t = binary_table();
    Nfa a(3, t);
    a.add_initial(0);
    CHECK(is_empty(a).empty);  // no final states

    a.add_final(0);
    auto r = is_empty(a);
    CHECK(!r.empty);
    CHECK(r.witness.empty());  // epsilon

    Nfa b(3, t);
    b.add_initial(0);
    b.add_transition(0, 1, 1);
    b.add_transition(1, 0, 2);
    b.add_final(2);
    auto rb = is_empty(b);
    REQUIRE(!rb.empty);
    CHECK(rb.witness == std::vector<uint32_t>{1, 0});
}

TEST_CASE("antichain inclusion examples") {
    auto t = binary_table();
    Nfa wa = nfa_of_words({{0}}, t);
    Nfa wab = nfa_of_words({{0}, {1}}, t);

    CHECK(antichain_included(wa, wa).included);
    CHECK(antichain_included(wa, wab).included);
    auto r = antichain_included(wab, wa);
    REQUIRE(!r.included);
    CHECK(r.counterexample == std::vector<uint32_t>{1});
}

TEST_CASE("antichain inclusion agrees with the complement route") {
    std::mt19937_64 rng(19);
    auto t = binary_table();
    for (int round = 0; round < 60; ++round) {
        Nfa a = bench::random_nfa(rng, 5, t);
        Nfa b = bench::random_nfa(rng, 5, t);
        bool by_antichain = antichain_included(a, b).included;
        bool by_complement = is_empty(intersect(a, complement(b))).empty;
        CHECK(by_antichain == by_complement);
    }
}

TEST_CASE("hkc equivalence examples") {
    auto t = binary_table();
    Nfa wa = nfa_of_words({{0}}, t);
    CHECK(hkc_equivalent(wa, wa).equivalent);

    // (a|b)* with the alternation flipped
    Nfa s1(1, t), s2(1, t);
    for (Nfa* s : {&s1, &s2}) {
        s->add_initial(0);
        s->add_final(0);
    }
    s1.add_transition(0, 0, 0);
    s1.add_transition(0, 1, 0);
    s2.add_transition(0, 1, 0);
    s2.add_transition(0, 0, 0);
    CHECK(hkc_equivalent(s1, s2).equivalent);

    Nfa wab = nfa_of_words({{0}, {1}}, t);
    auto r = hkc_equivalent(wa, wab);
    REQUIRE(!r.equivalent);
    CHECK(r.counterexample == std::vector<uint32_t>{1});
}

TEST_CASE("hkc agrees with the determinization route") {
    std::mt19937_64 rng(29);
    auto t = binary_table();
    for (int round = 0; round < 60; ++round) {
        Nfa a = bench::random_nfa(rng, 5, t);
        Nfa b = bench::random_nfa(rng, 5, t);
        bool by_hkc = hkc_equivalent(a, b).equivalent;
        bool by_det = is_empty(intersect(a, complement(b))).empty &&
                      is_empty(intersect(b, complement(a))).empty;
        CHECK(by_hkc == by_det);
    }
}

TEST_CASE("hkc is the conjunction of the two antichain inclusions") {
    std::mt19937_64 rng(31);
    auto t = binary_table();
    for (int round = 0; round < 60; ++round) {
        Nfa a = bench::random_nfa(rng, 5, t);
        Nfa b = bench::random_nfa(rng, 5, t);
        CHECK(hkc_equivalent(a, b).equivalent ==
              (antichain_included(a, b).included && antichain_included(b, a).included));
    }
}

TEST_CASE("reduce_bisim") {
    auto t = binary_table();
    // two duplicated branches merge
    Nfa dup(5, t);
    dup.add_initial(0);
    dup.add_transition(0, 0, 1);
    dup.add_transition(0, 0, 2);
    dup.add_transition(1, 1, 3);
    dup.add_transition(2, 1, 4);
    dup.add_final(3);
    dup.add_final(4);
    Nfa red = reduce_bisim(dup);
    CHECK(red.num_states() < dup.num_states());
    CHECK(test::same_language_upto(dup, red, 4));

    // a minimal DFA is left alone
    Nfa parity(2, t);
    parity.add_initial(0);
    parity.add_final(0);
    parity.add_transition(0, 0, 0);
    parity.add_transition(0, 1, 1);
    parity.add_transition(1, 0, 1);
    parity.add_transition(1, 1, 0);
    CHECK(reduce_bisim(parity).num_states() == 2);

    std::mt19937_64 rng(37);
    for (int round = 0; round < 40; ++round) {
        Nfa a = bench::random_nfa(rng, 5, t);
        Nfa r = reduce_bisim(a);
        CHECK(r.num_states() <= a.num_states());
        CHECK(test::same_language_upto(a, r, 6));
    }
}

TEST_CASE("eval_bre: single leaf delegates to emptiness") {
    auto t = binary_table();
    Nfa wa = nfa_of_words({{0}}, t);
    auto r = eval_bre(bre::leaf(wa));
    CHECK(!r.empty);
    CHECK(r.witness == std::vector<uint32_t>{0});
}

TEST_CASE("eval_bre: r and not r is empty") {
    std::mt19937_64 rng(41);
    auto t = binary_table();
    for (int round = 0; round < 30; ++round) {
        Nfa r = bench::random_nfa(rng, 4, t);
        Bre tree = bre::conj({bre::leaf(r), bre::neg(bre::leaf(r))});
        for (BreStrategy strat : {BreStrategy::Nfa, BreStrategy::Dfa}) {
            BreEvalOptions opts;
            opts.strategy = strat;
            CHECK(eval_bre(tree, opts).empty);
        }
    }
}

TEST_CASE("eval_bre strategies and the word oracle agree") {
    std::mt19937_64 rng(43);
    auto t = binary_table();
    for (int round = 0; round < 60; ++round) {
        Bre tree = bench::random_bre(rng, 3, 4, t);
        BreEvalOptions nfa_opts, dfa_opts;
        dfa_opts.strategy = BreStrategy::Dfa;
        auto rn = eval_bre(tree, nfa_opts);
        auto rd = eval_bre(tree, dfa_opts);
        CHECK(rn.empty == rd.empty);
        bool oracle_hit = false;
        for (const auto& w : test::all_words(t->size(), 8)) {
            if (bench::bre_member(tree, w)) { oracle_hit = true; break; }
        }
        CHECK(rn.empty == !oracle_hit);
    }
}

TEST_CASE("antichain set inserts keep pairwise incomparability") {
    std::mt19937_64 rng(47);
    for (int round = 0; round < 40; ++round) {
        AntichainSet set;
        std::uniform_int_distribution<uint64_t> mask(0, 255);
        for (int i = 0; i < 30; ++i) {
            Config c(8);
            uint64_t m = mask(rng);
            for (uint32_t q = 0; q < 8; ++q)
                if ((m >> q) & 1) c.set(q);
            set.insert(c);
            for (const auto& x : set.elements())
                for (const auto& y : set.elements())
                    if (!(x == y)) {
                        CHECK(!x.subset_of(y));
                        CHECK(!y.subset_of(x));
                    }
        }
    }
}

TEST_CASE("operations on mismatched tables") {
    auto t1 = binary_table();
    auto t3 = bench::small_table(3);
    Nfa a = nfa_of_words({{0}}, t1);
    Nfa b = nfa_of_words({{0}}, t3);
    CHECK_THROWS_AS(intersect(a, b, false), std::runtime_error);

    // with re-mintermization the product is over the joint table
    Nfa p = intersect(a, b, true);
    CHECK(!is_empty(p).empty);
}

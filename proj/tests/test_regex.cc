#include <doctest.h>

#include <random>

#include "helpers.hh"
#include "regatta/regex.hh"

using namespace regatta;
using rx::Ast;
using rx::AstKind;

namespace {

std::shared_ptr<const MintermTable> table_for(const Ast& ast, uint64_t amax) {
    auto classes = rx::collect_classes(ast, amax);
    bool residual = rx::has_complement(ast);
    return std::make_shared<const MintermTable>(mintermize(classes, amax, residual));
}

Nfa compile_text(const std::string& src, uint64_t amax = kDefaultAlphabetMax) {
    Ast ast = rx::parse_regex(src, rx::Dialect::Extended, amax);
    return rx::compile(ast, table_for(ast, amax));
}

bool accepts_cps(const Nfa& nfa, const std::vector<CodePoint>& cps) {
    for (CodePoint cp : cps)
        if (!test::minterm_of(nfa.table(), cp)) return false;
    return nfa.accepts(test::minterm_word(nfa.table(), cps));
}

// random extended AST over the binary alphabet {0,1}
Ast random_ast(std::mt19937_64& rng, uint32_t depth) {
    std::uniform_int_distribution<int> pick(0, 11);
    auto leaf = [&]() -> Ast {
        std::uniform_int_distribution<int> c(0, 2);
        rx::AstNode n;
        n.kind = AstKind::Class;
        switch (c(rng)) {
            case 0: n.cls = CharClass::point('0'); break;
            case 1: n.cls = CharClass::point('1'); break;
            default: n.cls = CharClass::range('0', '1'); break;
        }
        return std::make_shared<const rx::AstNode>(std::move(n));
    };
    if (depth == 0) return leaf();
    int r = pick(rng);
    rx::AstNode n;
    switch (r) {
        case 0: n.kind = AstKind::Star; n.kids = {random_ast(rng, depth - 1)}; break;
        case 1: n.kind = AstKind::Plus; n.kids = {random_ast(rng, depth - 1)}; break;
        case 2: n.kind = AstKind::Opt; n.kids = {random_ast(rng, depth - 1)}; break;
        case 3:
            n.kind = AstKind::Repeat;
            n.kids = {random_ast(rng, depth - 1)};
            n.min = rng() % 3;
            n.max = n.min + rng() % 3;
            break;
        case 4:
        case 5:
            n.kind = AstKind::Alt;
            n.kids = {random_ast(rng, depth - 1), random_ast(rng, depth - 1)};
            break;
        case 6:
            n.kind = AstKind::And;
            n.kids = {random_ast(rng, depth - 1), random_ast(rng, depth - 1)};
            break;
        case 7: n.kind = AstKind::Neg; n.kids = {random_ast(rng, depth - 1)}; break;
        case 8: n.kind = AstKind::Epsilon; break;
        default:
            n.kind = AstKind::Concat;
            n.kids = {random_ast(rng, depth - 1), random_ast(rng, depth - 1)};
            break;
    }
    return std::make_shared<const rx::AstNode>(std::move(n));
}

}  // namespace

TEST_CASE("parse_regex shapes") {
    Ast a = rx::parse_regex("[a-c]a[a-c]{2}");
    REQUIRE(a->kind == AstKind::Concat);
    REQUIRE(a->kids.size() == 3);
    CHECK(a->kids[0]->kind == AstKind::Class);
    CHECK(a->kids[0]->cls == CharClass::range('a', 'c'));
    CHECK(a->kids[1]->cls == CharClass::point('a'));
    CHECK(a->kids[2]->kind == AstKind::Repeat);
    CHECK(a->kids[2]->min == 2);
    REQUIRE(a->kids[2]->max.has_value());
    CHECK(*a->kids[2]->max == 2);

    Ast b = rx::parse_regex("(0|1)*");
    REQUIRE(b->kind == AstKind::Star);
    CHECK(b->kids[0]->kind == AstKind::Alt);

    Ast c = rx::parse_regex("a{2,}");
    REQUIRE(c->kind == AstKind::Repeat);
    CHECK(c->min == 2);
    CHECK(!c->max.has_value());
}

TEST_CASE("parse errors carry byte offsets") {
    CHECK_THROWS_AS(rx::parse_regex("a{3,1}"), rx::ParseError);
    try {
        rx::parse_regex("ab[cd");
    } catch (const rx::ParseError& e) {
        CHECK(std::string(e.what()).find("syntax error at byte") != std::string::npos);
        CHECK(e.offset >= 2);
    }
    CHECK_THROWS_AS(rx::parse_regex(")a"), rx::ParseError);
    CHECK_THROWS_AS(rx::parse_regex("*a"), rx::ParseError);
}

TEST_CASE("collect_classes") {
    auto cs = rx::collect_classes(rx::parse_regex("ab"), 0x80);
    REQUIRE(cs.size() == 2);
    CHECK(cs[0] == CharClass::point('a'));
    CHECK(cs[1] == CharClass::point('b'));

    auto dot = rx::collect_classes(rx::parse_regex("."), 0x80);
    REQUIRE(dot.size() == 1);
    CHECK(dot[0] == CharClass::full(0x80));

    auto both = rx::collect_classes(rx::parse_regex("[a-c]&[b-d]"), 0x80);
    REQUIRE(both.size() == 2);
}

TEST_CASE("compile: single literal over a two-letter alphabet") {
    // predicates a and b; no residual needed
    Ast ast = rx::parse_regex("a", rx::Dialect::Extended, 0x80);
    auto table = std::make_shared<const MintermTable>(
        mintermize({CharClass::point('a'), CharClass::point('b')}, 0x80, false));
    Nfa nfa = rx::compile(ast, table);
    nfa.validate();
    CHECK(nfa.num_states() == 2);
    CHECK(accepts_cps(nfa, {'a'}));
    CHECK(!accepts_cps(nfa, {'b'}));
    CHECK(!accepts_cps(nfa, {}));
    CHECK(!accepts_cps(nfa, {'a', 'a'}));
}

TEST_CASE("compile matches the recursive evaluator on spec examples") {
    auto check_against_oracle = [](const std::string& src,
                                   const std::vector<CodePoint>& alphabet,
                                   uint32_t bound) {
        Ast ast = rx::parse_regex(src);
        Nfa nfa = compile_text(src);
        CHECK(test::reachable_all(nfa));
        std::vector<std::vector<CodePoint>> words{{}};
        std::vector<std::vector<CodePoint>> prev{{}};
        for (uint32_t len = 1; len <= bound; ++len) {
            std::vector<std::vector<CodePoint>> cur;
            for (const auto& w : prev)
                for (CodePoint cp : alphabet) {
                    auto w2 = w;
                    w2.push_back(cp);
                    cur.push_back(std::move(w2));
                }
            words.insert(words.end(), cur.begin(), cur.end());
            prev = std::move(cur);
        }
        for (const auto& w : words)
            CHECK(accepts_cps(nfa, w) == test::regex_match(ast, w));
    };

    check_against_oracle("[a-c]a[a-c]{1}", {'a', 'b', 'c'}, 4);
    check_against_oracle("(0|1)*0", {'0', '1'}, 5);

    // spot checks from the oracle's verdicts
    Nfa n1 = compile_text("[a-c]a[a-c]{1}");
    CHECK(accepts_cps(n1, {'a', 'a', 'b'}));
    CHECK(accepts_cps(n1, {'b', 'a', 'a'}));
    CHECK(accepts_cps(n1, {'c', 'a', 'c'}));
    CHECK(!accepts_cps(n1, {'a', 'a'}));
    CHECK(!accepts_cps(n1, {'a', 'b', 'b'}));
}

TEST_CASE("compile agrees with the recursive evaluator on random trees") {
    std::mt19937_64 rng(31);
    auto words = [] {
        std::vector<std::vector<CodePoint>> out{{}};
        std::vector<std::vector<CodePoint>> prev{{}};
        for (uint32_t len = 1; len <= 6; ++len) {
            std::vector<std::vector<CodePoint>> cur;
            for (const auto& w : prev)
                for (CodePoint cp : {'0', '1'}) {
                    auto w2 = w;
                    w2.push_back(cp);
                    cur.push_back(std::move(w2));
                }
            out.insert(out.end(), cur.begin(), cur.end());
            prev = std::move(cur);
        }
        return out;
    }();

    for (int round = 0; round < 120; ++round) {
        Ast ast = random_ast(rng, 4);
        uint64_t amax = 0x32 + 2;  // '0','1' at the top of the alphabet
        auto classes = rx::collect_classes(ast, amax);
        if (classes.empty()) classes.push_back(CharClass::range('0', '1'));
        auto table = std::make_shared<const MintermTable>(mintermize(classes, amax, true));
        Nfa nfa = rx::compile(ast, table);
        CHECK(test::reachable_all(nfa));
        for (const auto& w : words) {
            bool by_nfa = accepts_cps(nfa, w);
            bool by_eval = test::regex_match(ast, w);
            if (by_nfa != by_eval) {
                CAPTURE(round);
                CHECK(by_nfa == by_eval);
                return;
            }
        }
    }
}

TEST_CASE("anchors are whole-string markers") {
    Nfa plain = compile_text("ab");
    Nfa anchored = compile_text("^ab$");
    CHECK(test::same_language_upto(plain, anchored, 4));

    CHECK_THROWS_WITH(compile_text("^ab"),
                      "partially anchored pattern (whole-string semantics)");
    CHECK_THROWS_WITH(compile_text("a^b$"), "anchor not at pattern boundary");
}

TEST_CASE("extended operators") {
    // intersection keeps only common words
    Nfa both = compile_text("(ab|ba)&(ab|bb)");
    CHECK(accepts_cps(both, {'a', 'b'}));
    CHECK(!accepts_cps(both, {'b', 'a'}));
    CHECK(!accepts_cps(both, {'b', 'b'}));

    // complement of a single letter within words over the table's alphabet
    Nfa not_a = compile_text("~(a)&(a|b)(a|b)?");
    CHECK(accepts_cps(not_a, {'b'}));
    CHECK(!accepts_cps(not_a, {'a'}));
    CHECK(accepts_cps(not_a, {'a', 'a'}));

    // prefix ~ binds tighter than postfix repetition: ~a* is (~a)*
    Ast t = rx::parse_regex("~a*");
    REQUIRE(t->kind == AstKind::Star);
    CHECK(t->kids[0]->kind == AstKind::Neg);

    // basic dialect reads & and ~ literally
    Ast basic = rx::parse_regex("a&b", rx::Dialect::Basic);
    REQUIRE(basic->kind == AstKind::Concat);
    CHECK(basic->kids[1]->cls == CharClass::point('&'));
}

TEST_CASE("escapes") {
    Ast hex = rx::parse_regex("\\x{42}");
    CHECK(hex->cls == CharClass::point(0x42));
    Ast meta = rx::parse_regex("\\*");
    CHECK(meta->cls == CharClass::point('*'));
    Nfa nl = compile_text("\\n");
    CHECK(accepts_cps(nl, {'\n'}));
}

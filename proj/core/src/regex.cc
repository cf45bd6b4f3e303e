#include "regatta/regex.hh"

#include <algorithm>

#include "regatta/nfa_ops.hh"

namespace regatta::rx {

namespace {

Ast mk(AstNode&& n) { return std::make_shared<const AstNode>(std::move(n)); }

Ast mk_kind(AstKind k) { return mk({.kind = k}); }

class Parser {
public:
    Parser(std::string_view src, Dialect d, uint64_t amax)
        : src_(src), dialect_(d), amax_(amax) {}

    Ast parse() {
        Ast a = alternation();
        if (pos_ != src_.size()) fail("unexpected character");
        return a;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

    bool eof() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }
    bool accept(char c) {
        if (!eof() && src_[pos_] == c) { ++pos_; return true; }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    // Decodes one UTF-8 code point.
    CodePoint next_code_point() {
        unsigned char b0 = static_cast<unsigned char>(src_[pos_]);
        size_t len;
        CodePoint cp;
        if (b0 < 0x80) { len = 1; cp = b0; }
        else if ((b0 & 0xe0) == 0xc0) { len = 2; cp = b0 & 0x1f; }
        else if ((b0 & 0xf0) == 0xe0) { len = 3; cp = b0 & 0x0f; }
        else if ((b0 & 0xf8) == 0xf0) { len = 4; cp = b0 & 0x07; }
        else fail("invalid UTF-8");
        if (pos_ + len > src_.size()) fail("truncated UTF-8");
        for (size_t i = 1; i < len; ++i) {
            unsigned char bi = static_cast<unsigned char>(src_[pos_ + i]);
            if ((bi & 0xc0) != 0x80) fail("invalid UTF-8");
            cp = (cp << 6) | (bi & 0x3f);
        }
        pos_ += len;
        return cp;
    }

    CodePoint parse_escape() {
        // caller consumed the backslash
        if (eof()) fail("dangling escape");
        char c = src_[pos_];
        switch (c) {
            case 'n': ++pos_; return '\n';
            case 't': ++pos_; return '\t';
            case 'r': ++pos_; return '\r';
            case 'f': ++pos_; return '\f';
            case 'v': ++pos_; return '\v';
            case '0': ++pos_; return 0;
            case 'x': {
                ++pos_;
                expect('{');
                uint64_t v = 0;
                size_t digits = 0;
                while (!eof() && peek() != '}') {
                    char h = peek();
                    int d;
                    if (h >= '0' && h <= '9') d = h - '0';
                    else if (h >= 'a' && h <= 'f') d = h - 'a' + 10;
                    else if (h >= 'A' && h <= 'F') d = h - 'A' + 10;
                    else fail("bad hex digit");
                    v = v * 16 + d;
                    if (v >= kMaxAlphabetMax) fail("code point too large");
                    ++pos_;
                    ++digits;
                }
                expect('}');
                if (digits == 0) fail("empty \\x{} escape");
                return static_cast<CodePoint>(v);
            }
            default:
                return next_code_point();  // escaped literal
        }
    }

    CharClass parse_class() {
        // caller consumed '['
        bool negated = accept('^');
        std::vector<CharClass::Range> ranges;
        bool first = true;
        for (;;) {
            if (eof()) fail("unterminated character class");
            if (peek() == ']' && !first) { ++pos_; break; }
            first = false;
            CodePoint lo;
            if (accept('\\')) lo = parse_escape();
            else lo = next_code_point();
            CodePoint hi = lo;
            if (!eof() && peek() == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] != ']') {
                ++pos_;
                if (accept('\\')) hi = parse_escape();
                else hi = next_code_point();
            }
            if (lo > hi) fail("reversed range in character class");
            ranges.emplace_back(lo, hi);
        }
        CharClass cls = CharClass::of_ranges(std::move(ranges));
        if (negated) cls = cls.complement(amax_);
        cls.validate(amax_);
        return cls;
    }

    std::optional<uint32_t> parse_number() {
        if (eof() || peek() < '0' || peek() > '9') return std::nullopt;
        uint64_t v = 0;
        while (!eof() && peek() >= '0' && peek() <= '9') {
            v = v * 10 + (peek() - '0');
            if (v > 100000) fail("repeat count too large");
            ++pos_;
        }
        return static_cast<uint32_t>(v);
    }

    Ast primary() {
        if (eof()) fail("expected pattern");
        char c = peek();
        if (c == '(') {
            ++pos_;
            Ast a = alternation();
            expect(')');
            return a;
        }
        if (c == '[') {
            ++pos_;
            CharClass cls = parse_class();
            return mk({.kind = AstKind::Class, .cls = std::move(cls)});
        }
        if (c == '.') { ++pos_; return mk_kind(AstKind::Dot); }
        if (c == '^') { ++pos_; return mk_kind(AstKind::AnchorStart); }
        if (c == '$') { ++pos_; return mk_kind(AstKind::AnchorEnd); }
        if (c == '\\') {
            ++pos_;
            CodePoint cp = parse_escape();
            return mk({.kind = AstKind::Class, .cls = CharClass::point(cp)});
        }
        if (c == ')' || c == '|' || c == '*' || c == '+' || c == '?' || c == '{' || c == '}')
            fail("unexpected character");
        if (dialect_ == Dialect::Extended && (c == '&' || c == '~'))
            fail("unexpected character");
        CodePoint cp = next_code_point();
        if (cp >= amax_) fail("literal outside alphabet");
        return mk({.kind = AstKind::Class, .cls = CharClass::point(cp)});
    }

    Ast prefixed() {
        if (dialect_ == Dialect::Extended && accept('~')) {
            Ast inner = prefixed();
            return mk({.kind = AstKind::Neg, .kids = {std::move(inner)}});
        }
        return primary();
    }

    Ast item() {
        Ast a = prefixed();
        for (;;) {
            if (eof()) break;
            char c = peek();
            if (c == '*') { ++pos_; a = mk({.kind = AstKind::Star, .kids = {std::move(a)}}); }
            else if (c == '+') { ++pos_; a = mk({.kind = AstKind::Plus, .kids = {std::move(a)}}); }
            else if (c == '?') { ++pos_; a = mk({.kind = AstKind::Opt, .kids = {std::move(a)}}); }
            else if (c == '{') {
                size_t save = pos_;
                ++pos_;
                auto n = parse_number();
                if (!n) { pos_ = save; break; }  // literal '{'
                uint32_t lo = *n;
                std::optional<uint32_t> hi = lo;
                if (accept(',')) {
                    hi = parse_number();  // nullopt = unbounded
                }
                expect('}');
                if (hi && *hi < lo) fail("repeat with min > max");
                a = mk({.kind = AstKind::Repeat, .kids = {std::move(a)}, .min = lo, .max = hi});
            }
            else break;
        }
        return a;
    }

    bool at_concat_end() const {
        if (eof()) return true;
        char c = peek();
        if (c == ')' || c == '|') return true;
        if (dialect_ == Dialect::Extended && c == '&') return true;
        return false;
    }

    Ast concat() {
        std::vector<Ast> items;
        while (!at_concat_end()) items.push_back(item());
        if (items.empty()) return mk_kind(AstKind::Epsilon);
        if (items.size() == 1) return items[0];
        return mk({.kind = AstKind::Concat, .kids = std::move(items)});
    }

    Ast intersection() {
        Ast a = concat();
        if (dialect_ != Dialect::Extended) return a;
        std::vector<Ast> kids{a};
        while (accept('&')) kids.push_back(concat());
        if (kids.size() == 1) return a;
        return mk({.kind = AstKind::And, .kids = std::move(kids)});
    }

    Ast alternation() {
        std::vector<Ast> kids{intersection()};
        while (accept('|')) kids.push_back(intersection());
        if (kids.size() == 1) return kids[0];
        return mk({.kind = AstKind::Alt, .kids = std::move(kids)});
    }

    std::string_view src_;
    size_t pos_ = 0;
    Dialect dialect_;
    uint64_t amax_;
};

}  // namespace

Ast parse_regex(std::string_view src, Dialect dialect, uint64_t alphabet_max) {
    return Parser(src, dialect, alphabet_max).parse();
}

namespace {

void collect_rec(const Ast& ast, uint64_t amax, std::vector<CharClass>& out) {
    switch (ast->kind) {
        case AstKind::Class:
            if (std::find(out.begin(), out.end(), ast->cls) == out.end())
                out.push_back(ast->cls);
            return;
        case AstKind::Dot: {
            CharClass full = CharClass::full(amax);
            if (std::find(out.begin(), out.end(), full) == out.end())
                out.push_back(full);
            return;
        }
        default:
            for (const auto& k : ast->kids) collect_rec(k, amax, out);
    }
}

}  // namespace

std::vector<CharClass> collect_classes(const Ast& ast, uint64_t alphabet_max) {
    std::vector<CharClass> out;
    collect_rec(ast, alphabet_max, out);
    return out;
}

bool has_complement(const Ast& ast) {
    if (ast->kind == AstKind::Neg) return true;
    for (const auto& k : ast->kids)
        if (has_complement(k)) return true;
    return false;
}

namespace {

/// Scratch graph with epsilon edges; eliminated before the Nfa is returned.
class Builder {
public:
    Builder(const std::shared_ptr<const MintermTable>& table) : table_(table) {}

    struct Frag {
        uint32_t start;
        std::vector<uint32_t> accepts;
    };

    uint32_t fresh() {
        edges_.emplace_back();
        eps_.emplace_back();
        return static_cast<uint32_t>(edges_.size() - 1);
    }

    void edge(uint32_t s, uint32_t m, uint32_t t) { edges_[s].emplace_back(m, t); }
    void eps(uint32_t s, uint32_t t) { eps_[s].push_back(t); }

    std::vector<uint32_t> class_minterms(const CharClass& cls) {
        auto ids = table_->ids_subset_of(cls);
        CharClass u;
        for (uint32_t m : ids) u = u.union_with(table_->minterms[m]);
        if (!(u == cls)) throw std::runtime_error("class not covered by table");
        return ids;
    }

    Frag build(const Ast& ast) {
        switch (ast->kind) {
            case AstKind::Empty: {
                return {fresh(), {}};
            }
            case AstKind::Epsilon: {
                uint32_t s = fresh();
                return {s, {s}};
            }
            case AstKind::Class:
                return class_frag(ast->cls);
            case AstKind::Dot:
                return class_frag(CharClass::full(table_->alphabet_max));
            case AstKind::Concat: {
                Frag acc = build(ast->kids[0]);
                for (size_t i = 1; i < ast->kids.size(); ++i)
                    acc = chain(std::move(acc), build(ast->kids[i]));
                return acc;
            }
            case AstKind::Alt: {
                uint32_t s = fresh();
                std::vector<uint32_t> accepts;
                for (const auto& k : ast->kids) {
                    Frag f = build(k);
                    eps(s, f.start);
                    accepts.insert(accepts.end(), f.accepts.begin(), f.accepts.end());
                }
                return {s, std::move(accepts)};
            }
            case AstKind::Star: {
                uint32_t s = fresh();
                Frag f = build(ast->kids[0]);
                eps(s, f.start);
                for (uint32_t a : f.accepts) eps(a, s);
                return {s, {s}};
            }
            case AstKind::Plus: {
                Frag f = build(ast->kids[0]);
                uint32_t loop = fresh();
                for (uint32_t a : f.accepts) eps(a, loop);
                eps(loop, f.start);
                return {f.start, {loop}};
            }
            case AstKind::Opt: {
                uint32_t s = fresh();
                Frag f = build(ast->kids[0]);
                eps(s, f.start);
                std::vector<uint32_t> accepts{s};
                accepts.insert(accepts.end(), f.accepts.begin(), f.accepts.end());
                return {s, std::move(accepts)};
            }
            case AstKind::Repeat: {
                // duplicated sub-automata, no counters
                Frag acc{fresh(), {}};
                acc.accepts = {acc.start};
                for (uint32_t i = 0; i < ast->min; ++i)
                    acc = chain(std::move(acc), build(ast->kids[0]));
                if (!ast->max) {
                    Frag st = build_star(ast->kids[0]);
                    acc = chain(std::move(acc), std::move(st));
                } else {
                    for (uint32_t i = ast->min; i < *ast->max; ++i) {
                        Frag f = build(ast->kids[0]);
                        for (uint32_t a : acc.accepts) eps(a, f.start);
                        acc.accepts.insert(acc.accepts.end(), f.accepts.begin(),
                                           f.accepts.end());
                    }
                }
                return acc;
            }
            case AstKind::And: {
                std::vector<Nfa> subs;
                for (const auto& k : ast->kids) subs.push_back(compile(k, table_));
                Nfa prod = subs[0];
                for (size_t i = 1; i < subs.size(); ++i)
                    prod = intersect(prod, subs[i]);
                return embed(prod);
            }
            case AstKind::Neg: {
                Nfa sub = compile(ast->kids[0], table_);
                if (!table_->covers_alphabet())
                    throw std::runtime_error("complement requires residual minterm class");
                return embed(complement(sub));
            }
            case AstKind::AnchorStart:
            case AstKind::AnchorEnd:
                throw std::runtime_error("anchor not at pattern boundary");
        }
        throw std::logic_error("unreachable");
    }

    Nfa finish(const Frag& top) {
        // epsilon closures
        size_t n = edges_.size();
        std::vector<std::vector<uint32_t>> closure(n);
        for (uint32_t q = 0; q < n; ++q) {
            std::vector<bool> seen(n, false);
            std::vector<uint32_t> stack{q};
            seen[q] = true;
            while (!stack.empty()) {
                uint32_t x = stack.back();
                stack.pop_back();
                closure[q].push_back(x);
                for (uint32_t y : eps_[x])
                    if (!seen[y]) { seen[y] = true; stack.push_back(y); }
            }
        }
        std::vector<bool> accept_flag(n, false);
        for (uint32_t a : top.accepts) accept_flag[a] = true;

        // reachable states via labeled edges from the start, closure-aware
        std::vector<int64_t> renum(n, -1);
        std::vector<uint32_t> order;
        auto visit = [&](uint32_t q) {
            if (renum[q] < 0) {
                renum[q] = static_cast<int64_t>(order.size());
                order.push_back(q);
            }
        };
        visit(top.start);
        for (size_t i = 0; i < order.size(); ++i) {
            uint32_t q = order[i];
            for (uint32_t x : closure[q])
                for (auto [m, t] : edges_[x]) visit(t);
        }

        Nfa out(static_cast<uint32_t>(order.size()), table_);
        out.add_initial(static_cast<uint32_t>(renum[top.start]));
        for (size_t i = 0; i < order.size(); ++i) {
            uint32_t q = order[i];
            bool fin = false;
            for (uint32_t x : closure[q]) {
                fin = fin || accept_flag[x];
                for (auto [m, t] : edges_[x])
                    out.add_transition(static_cast<uint32_t>(i), m,
                                       static_cast<uint32_t>(renum[t]));
            }
            if (fin) out.add_final(static_cast<uint32_t>(i));
        }
        return out;
    }

private:
    Frag class_frag(const CharClass& cls) {
        uint32_t s = fresh(), t = fresh();
        for (uint32_t m : class_minterms(cls)) edge(s, m, t);
        return {s, {t}};
    }

    Frag build_star(const Ast& inner) {
        uint32_t s = fresh();
        Frag f = build(inner);
        eps(s, f.start);
        for (uint32_t a : f.accepts) eps(a, s);
        return {s, {s}};
    }

    Frag chain(Frag left, Frag right) {
        for (uint32_t a : left.accepts) eps(a, right.start);
        return {left.start, std::move(right.accepts)};
    }

    Frag embed(const Nfa& sub) {
        uint32_t base = static_cast<uint32_t>(edges_.size());
        for (uint32_t q = 0; q < sub.num_states(); ++q) fresh();
        for (uint32_t q = 0; q < sub.num_states(); ++q)
            for (const auto& t : sub.transitions_from(q))
                edge(base + q, t.minterm, base + t.target);
        uint32_t s = fresh();
        for (uint32_t q : sub.initial()) eps(s, base + q);
        std::vector<uint32_t> accepts;
        for (uint32_t q : sub.final_states()) accepts.push_back(base + q);
        return {s, std::move(accepts)};
    }

    std::shared_ptr<const MintermTable> table_;
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> edges_;
    std::vector<std::vector<uint32_t>> eps_;
};

}  // namespace

Nfa compile(const Ast& ast, std::shared_ptr<const MintermTable> table) {
    if (!table) throw std::invalid_argument("compile: null table");

    // Strip a ^...$ pair; whole-string semantics either way.
    Ast body = ast;
    bool saw_start = false, saw_end = false;
    if (body->kind == AstKind::AnchorStart) { saw_start = true; body = mk_kind(AstKind::Epsilon); }
    else if (body->kind == AstKind::AnchorEnd) { saw_end = true; body = mk_kind(AstKind::Epsilon); }
    else if (body->kind == AstKind::Concat) {
        std::vector<Ast> kids = body->kids;
        if (!kids.empty() && kids.front()->kind == AstKind::AnchorStart) {
            saw_start = true;
            kids.erase(kids.begin());
        }
        if (!kids.empty() && kids.back()->kind == AstKind::AnchorEnd) {
            saw_end = true;
            kids.pop_back();
        }
        if (kids.empty()) body = mk_kind(AstKind::Epsilon);
        else if (kids.size() == 1) body = kids[0];
        else body = mk({.kind = AstKind::Concat, .kids = std::move(kids)});
    }
    // interior anchors are meaningless under whole-string semantics
    std::function<bool(const Ast&)> has_anchor = [&](const Ast& node) {
        if (node->kind == AstKind::AnchorStart || node->kind == AstKind::AnchorEnd)
            return true;
        for (const auto& k : node->kids)
            if (has_anchor(k)) return true;
        return false;
    };
    if (has_anchor(body)) throw std::runtime_error("anchor not at pattern boundary");
    if (saw_start != saw_end)
        throw std::runtime_error("partially anchored pattern (whole-string semantics)");

    Builder b(table);
    Builder::Frag top = b.build(body);
    return b.finish(top);
}

}  // namespace regatta::rx

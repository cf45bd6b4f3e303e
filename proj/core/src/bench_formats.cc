#include "regatta/bench/formats.hh"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "regatta/regex.hh"

namespace regatta::bench {

namespace {

[[noreturn]] void fail_at(size_t line, const std::string& what) {
    throw FormatError("line " + std::to_string(line) + ": " + what);
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw FormatError("cannot open " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw FormatError("cannot write " + p.string());
    out << text;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

// ---- character-class text: hex ranges "61-7a,30" --------------------------

std::string class_to_text(const CharClass& cls) { return cls.to_string(); }

CharClass class_from_text(const std::string& text, size_t line) {
    std::vector<CharClass::Range> ranges;
    std::istringstream is(text);
    std::string part;
    while (std::getline(is, part, ',')) {
        if (part.empty()) fail_at(line, "empty range in character class");
        size_t dash = part.find('-');
        try {
            if (dash == std::string::npos) {
                CodePoint cp = static_cast<CodePoint>(std::stoull(part, nullptr, 16));
                ranges.emplace_back(cp, cp);
            } else {
                CodePoint lo =
                    static_cast<CodePoint>(std::stoull(part.substr(0, dash), nullptr, 16));
                CodePoint hi =
                    static_cast<CodePoint>(std::stoull(part.substr(dash + 1), nullptr, 16));
                ranges.emplace_back(lo, hi);
            }
        } catch (const std::exception&) {
            fail_at(line, "bad hex code point in '" + part + "'");
        }
    }
    return CharClass::of_ranges(std::move(ranges));
}

// ---- raw (pre-mintermization) automaton read from a .nfa file --------------

struct RawNfa {
    uint32_t states = 0;
    std::vector<uint32_t> initial, final;
    std::vector<std::tuple<uint32_t, CharClass, uint32_t>> trans;
};

std::vector<uint32_t> parse_id_list(const std::string& s, size_t line) {
    std::vector<uint32_t> out;
    if (s.empty()) return out;
    std::istringstream is(s);
    std::string part;
    while (std::getline(is, part, ',')) {
        try {
            out.push_back(static_cast<uint32_t>(std::stoul(part)));
        } catch (const std::exception&) {
            fail_at(line, "bad state id '" + part + "'");
        }
    }
    return out;
}

RawNfa parse_nfa_file(const std::filesystem::path& path) {
    RawNfa raw;
    auto lines = split_lines(read_file(path));
    bool have_states = false;
    for (size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        size_t ln = i + 1;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream is(line);
        std::string tok;
        is >> tok;
        if (tok == "@states") {
            if (!(is >> raw.states)) fail_at(ln, "expected state count");
            have_states = true;
        } else if (tok == "@initial") {
            std::string rest;
            is >> rest;
            raw.initial = parse_id_list(rest, ln);
        } else if (tok == "@final") {
            std::string rest;
            is >> rest;
            raw.final = parse_id_list(rest, ln);
        } else {
            uint32_t q, r;
            std::string cls;
            std::istringstream ts(line);
            if (!(ts >> q >> cls >> r)) fail_at(ln, "expected 'src class dst'");
            raw.trans.emplace_back(q, class_from_text(cls, ln), r);
        }
    }
    if (!have_states) throw FormatError(path.string() + ": missing @states");
    return raw;
}

void write_nfa_file(const Nfa& nfa, const std::filesystem::path& path) {
    std::ostringstream os;
    os << "@states " << nfa.num_states() << '\n';
    os << "@initial ";
    for (size_t i = 0; i < nfa.initial().size(); ++i)
        os << (i ? "," : "") << nfa.initial()[i];
    os << '\n';
    os << "@final ";
    for (size_t i = 0; i < nfa.final_states().size(); ++i)
        os << (i ? "," : "") << nfa.final_states()[i];
    os << '\n';
    // transitions merged per (src, dst) into one class
    for (uint32_t q = 0; q < nfa.num_states(); ++q) {
        std::map<uint32_t, CharClass> by_target;
        for (const auto& t : nfa.transitions_from(q)) {
            auto& acc = by_target[t.target];
            acc = acc.union_with(nfa.table().minterms[t.minterm]);
        }
        for (const auto& [r, cls] : by_target)
            os << q << ' ' << class_to_text(cls) << ' ' << r << '\n';
    }
    write_file(path, os.str());
}

// ---- master expressions -----------------------------------------------------

struct ExprNode {
    enum class Kind { Atom, And, Or, Not } kind;
    std::string atom;
    std::vector<ExprNode> kids;
};

class ExprParser {
public:
    explicit ExprParser(const std::string& src, size_t line) : src_(src), line_(line) {}

    ExprNode parse() {
        ExprNode e = alternation();
        skip_ws();
        if (pos_ != src_.size()) fail_at(line_, "trailing characters in expression");
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    ExprNode alternation() {
        ExprNode e = conjunction();
        while (accept('|')) {
            ExprNode rhs = conjunction();
            ExprNode both{ExprNode::Kind::Or, {}, {}};
            both.kids.push_back(std::move(e));
            both.kids.push_back(std::move(rhs));
            e = std::move(both);
        }
        return e;
    }
    ExprNode conjunction() {
        ExprNode e = unary();
        while (accept('&')) {
            ExprNode rhs = unary();
            ExprNode both{ExprNode::Kind::And, {}, {}};
            both.kids.push_back(std::move(e));
            both.kids.push_back(std::move(rhs));
            e = std::move(both);
        }
        return e;
    }
    ExprNode unary() {
        if (accept('!')) {
            ExprNode inner = unary();
            ExprNode n{ExprNode::Kind::Not, {}, {}};
            n.kids.push_back(std::move(inner));
            return n;
        }
        if (accept('(')) {
            ExprNode e = alternation();
            if (!accept(')')) fail_at(line_, "missing ')'");
            return e;
        }
        skip_ws();
        size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
                src_[pos_] == '-' || src_[pos_] == '.'))
            ++pos_;
        if (pos_ == start) fail_at(line_, "expected atom name");
        return {ExprNode::Kind::Atom, src_.substr(start, pos_ - start), {}};
    }

    const std::string& src_;
    size_t line_;
    size_t pos_ = 0;
};

bool expr_has_not(const ExprNode& e) {
    if (e.kind == ExprNode::Kind::Not) return true;
    for (const auto& k : e.kids)
        if (expr_has_not(k)) return true;
    return false;
}

void expr_atoms(const ExprNode& e, std::vector<std::string>& out) {
    if (e.kind == ExprNode::Kind::Atom) {
        out.push_back(e.atom);
        return;
    }
    for (const auto& k : e.kids) expr_atoms(k, out);
}

std::string expr_to_text(const Bre& e) {
    switch (e->kind) {
        case BreNode::Kind::Leaf: return e->name;
        case BreNode::Kind::Not: return "!" + expr_to_text(e->kids[0]);
        case BreNode::Kind::And:
        case BreNode::Kind::Or: {
            const char* op = e->kind == BreNode::Kind::And ? " & " : " | ";
            std::string out = "(";
            for (size_t i = 0; i < e->kids.size(); ++i) {
                if (i) out += op;
                out += expr_to_text(e->kids[i]);
            }
            return out + ")";
        }
    }
    return "?";
}

// ---- AFA formula text --------------------------------------------------------

class FormulaParser {
public:
    FormulaParser(const std::string& src, uint64_t amax) : src_(src), amax_(amax) {}

    Formula parse() {
        Formula f = alternation();
        skip_ws();
        if (pos_ != src_.size()) throw FormatError("trailing characters in formula");
        return f;
    }

private:
    void skip_ws() {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) { ++pos_; return true; }
        return false;
    }
    bool accept_word(const char* w) {
        skip_ws();
        size_t len = std::string_view(w).size();
        if (src_.compare(pos_, len, w) == 0) { pos_ += len; return true; }
        return false;
    }

    Formula alternation() {
        Formula f = conjunction();
        std::vector<Formula> kids{f};
        while (accept('|')) kids.push_back(conjunction());
        return kids.size() == 1 ? f : fml::disj(std::move(kids));
    }
    Formula conjunction() {
        Formula f = unary();
        std::vector<Formula> kids{f};
        while (accept('&')) kids.push_back(unary());
        return kids.size() == 1 ? f : fml::conj(std::move(kids));
    }
    Formula unary() {
        if (accept('!')) return fml::negate(unary());
        if (accept('(')) {
            Formula f = alternation();
            if (!accept(')')) throw FormatError("missing ')' in formula");
            return f;
        }
        if (accept_word("true")) return fml::tru();
        if (accept_word("false")) return fml::fls();
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == 'q') {
            ++pos_;
            size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
            if (start == pos_) throw FormatError("expected state index after 'q'");
            return fml::state(static_cast<uint32_t>(std::stoul(src_.substr(start, pos_ - start))));
        }
        if (pos_ < src_.size() && src_[pos_] == '[') {
            ++pos_;
            size_t end = src_.find(']', pos_);
            if (end == std::string::npos) throw FormatError("missing ']' in formula");
            CharClass cls = class_from_text(src_.substr(pos_, end - pos_), 0);
            cls.validate(amax_);
            pos_ = end + 1;
            return fml::pred(std::move(cls));
        }
        throw FormatError("cannot parse formula near '" + src_.substr(pos_, 10) + "'");
    }

    const std::string& src_;
    uint64_t amax_;
    size_t pos_ = 0;
};

}  // namespace

Formula parse_formula_text(const std::string& text, uint64_t alphabet_max) {
    return FormulaParser(text, alphabet_max).parse();
}

void write_afa_file(const Problem& p, const std::filesystem::path& file) {
    if (!p.afa) throw FormatError("write_afa_file: problem has no AFA payload");
    const Afa& a = *p.afa;
    std::ostringstream os;
    os << "@afa\n";
    os << "@alphabet-max " << std::hex << a.table().alphabet_max << std::dec << '\n';
    os << "@states " << a.num_states() << '\n';
    if (p.expected)
        os << "@expect " << to_string(*p.expected)
           << (p.expected_source.empty() ? "" : " " + p.expected_source) << '\n';
    os << "@init " << to_string(a.init()) << '\n';
    os << "@final " << to_string(a.fin()) << '\n';
    for (uint32_t q = 0; q < a.num_states(); ++q) {
        if (a.delta(q).is_false()) continue;
        os << "@delta " << q << ' ' << to_string(a.delta(q)) << '\n';
    }
    write_file(file, os.str());
}

Problem parse_afa_file(const std::filesystem::path& file) {
    auto lines = split_lines(read_file(file));
    uint64_t amax = kDefaultAlphabetMax;
    uint32_t states = 0;
    bool have_states = false;
    std::string init_text, final_text;
    std::map<uint32_t, std::string> delta_text;
    std::optional<Verdict> expected;
    std::string expected_source;

    for (size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        size_t ln = i + 1;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream is(line);
        std::string tok;
        is >> tok;
        if (tok == "@afa") continue;
        if (tok == "@alphabet-max") {
            std::string hex;
            if (!(is >> hex)) fail_at(ln, "expected alphabet bound");
            amax = std::stoull(hex, nullptr, 16);
        } else if (tok == "@states") {
            if (!(is >> states)) fail_at(ln, "expected state count");
            have_states = true;
        } else if (tok == "@expect") {
            std::string v;
            if (!(is >> v)) fail_at(ln, "expected verdict");
            if (v == "empty") expected = Verdict::Empty;
            else if (v == "nonempty") expected = Verdict::NonEmpty;
            else fail_at(ln, "verdict must be empty|nonempty");
            std::getline(is, expected_source);
            while (!expected_source.empty() && expected_source.front() == ' ')
                expected_source.erase(expected_source.begin());
        } else if (tok == "@init") {
            std::getline(is, init_text);
        } else if (tok == "@final") {
            std::getline(is, final_text);
        } else if (tok == "@delta") {
            uint32_t q;
            if (!(is >> q)) fail_at(ln, "expected state id");
            std::string f;
            std::getline(is, f);
            delta_text[q] = f;
        } else {
            fail_at(ln, "unknown directive '" + tok + "'");
        }
    }
    if (!have_states) throw FormatError(file.string() + ": missing @states");
    if (init_text.empty() || final_text.empty())
        throw FormatError(file.string() + ": missing @init/@final");

    Formula init = parse_formula_text(init_text, amax);
    Formula fin = parse_formula_text(final_text, amax);
    std::vector<Formula> delta(states, fml::fls());
    std::vector<CharClass> classes;
    for (auto& [q, text] : delta_text) {
        if (q >= states) throw FormatError("delta for out-of-range state");
        delta[q] = parse_formula_text(text, amax);
    }
    for (const auto& f : delta) collect_pred_classes(f, classes);
    if (classes.empty()) classes.push_back(CharClass::full(amax));
    auto table = std::make_shared<const MintermTable>(mintermize(classes, amax, true));

    Problem p;
    p.id = file.stem().string();
    p.kind = ProblemKind::AfaEmpty;
    p.afa = Afa(states, std::move(delta), init, fin, table);
    p.table = table;
    p.expected = expected;
    p.expected_source = expected_source;
    return p;
}

void write_problem(const Problem& p, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    if (p.kind == ProblemKind::AfaEmpty) {
        write_afa_file(p, dir / "problem.afa");
        return;
    }

    std::ostringstream os;
    uint64_t amax = p.table ? p.table->alphabet_max : kDefaultAlphabetMax;
    os << "alphabet-max " << std::hex << amax << std::dec << '\n';

    // Collect atoms in first-use order; equal names must denote one atom.
    std::vector<NamedNfa> atoms;
    std::map<std::string, size_t> by_name;
    auto add_atom = [&](const NamedNfa& leaf) -> std::string {
        std::string name = leaf.name;
        if (name.empty()) name = "a" + std::to_string(atoms.size());
        auto it = by_name.find(name);
        if (it != by_name.end()) return name;
        by_name.emplace(name, atoms.size());
        NamedNfa copy = leaf;
        copy.name = name;
        atoms.push_back(std::move(copy));
        return name;
    };

    std::string query;
    if (p.kind == ProblemKind::BreEmpty) {
        // name the leaves (rewriting anonymous ones deterministically)
        std::vector<const BreNode*> leaves;
        bre::collect_leaves(p.bre, leaves);
        std::map<const BreNode*, std::string> names;
        for (const BreNode* l : leaves)
            names[l] = add_atom({l->name, l->regex_src, *l->leaf});
        // print expression with resolved names
        auto print = [&](auto&& self, const Bre& e) -> std::string {
            switch (e->kind) {
                case BreNode::Kind::Leaf: return names.at(e.get());
                case BreNode::Kind::Not: return "!" + self(self, e->kids[0]);
                case BreNode::Kind::And:
                case BreNode::Kind::Or: {
                    const char* op = e->kind == BreNode::Kind::And ? " & " : " | ";
                    std::string out = "(";
                    for (size_t i = 0; i < e->kids.size(); ++i) {
                        if (i) out += op;
                        out += self(self, e->kids[i]);
                    }
                    return out + ")";
                }
            }
            return "?";
        };
        query = "query empty " + print(print, p.bre);
    } else {
        auto side = [&](const std::vector<NamedNfa>& parts) {
            std::string out;
            for (size_t i = 0; i < parts.size(); ++i) {
                if (i) out += " & ";
                out += add_atom(parts[i]);
            }
            return out;
        };
        std::string lhs = side(p.lhs_parts);
        std::string rhs = side(p.rhs_parts);
        query = std::string("query ") +
                (p.kind == ProblemKind::Inclusion ? "incl " + lhs + " <= " + rhs
                                                  : "equiv " + lhs + " == " + rhs);
    }

    for (const auto& a : atoms) {
        if (a.regex_src) {
            os << "atom " << a.name << " regex \"" << *a.regex_src << "\"\n";
        } else {
            os << "atom " << a.name << " nfa " << a.name << ".nfa\n";
        }
    }
    if (p.expected)
        os << "expect " << to_string(*p.expected)
           << (p.expected_source.empty() ? "" : " " + p.expected_source) << '\n';
    os << query << '\n';
    write_file(dir / "master.txt", os.str());
    for (const auto& a : atoms)
        if (!a.regex_src) write_nfa_file(a.nfa, dir / (a.name + ".nfa"));
}

Problem parse_master(const std::filesystem::path& path) {
    auto lines = split_lines(read_file(path));
    uint64_t amax = kDefaultAlphabetMax;

    struct AtomDef {
        std::string name;
        std::optional<std::string> regex;
        std::optional<std::filesystem::path> nfa_path;
        size_t line;
    };
    std::vector<AtomDef> defs;
    std::optional<Verdict> expected;
    std::string expected_source;
    std::string query_line;
    size_t query_ln = 0;

    for (size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        size_t ln = i + 1;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream is(line);
        std::string tok;
        is >> tok;
        if (tok == "alphabet-max") {
            std::string hex;
            if (!(is >> hex)) fail_at(ln, "expected alphabet bound");
            amax = std::stoull(hex, nullptr, 16);
        } else if (tok == "atom") {
            AtomDef def;
            def.line = ln;
            std::string kind;
            if (!(is >> def.name >> kind)) fail_at(ln, "expected 'atom <name> regex|nfa ...'");
            if (kind == "regex") {
                std::string rest;
                std::getline(is, rest);
                size_t open = rest.find('"');
                size_t close = rest.rfind('"');
                if (open == std::string::npos || close == open)
                    fail_at(ln, "regex pattern must be quoted");
                def.regex = rest.substr(open + 1, close - open - 1);
            } else if (kind == "nfa") {
                std::string rel;
                if (!(is >> rel)) fail_at(ln, "expected file path");
                def.nfa_path = path.parent_path() / rel;
            } else {
                fail_at(ln, "atom kind must be regex|nfa");
            }
            defs.push_back(std::move(def));
        } else if (tok == "expect") {
            std::string v;
            if (!(is >> v)) fail_at(ln, "expected verdict");
            if (v == "empty") expected = Verdict::Empty;
            else if (v == "nonempty") expected = Verdict::NonEmpty;
            else fail_at(ln, "verdict must be empty|nonempty");
            std::getline(is, expected_source);
            while (!expected_source.empty() && expected_source.front() == ' ')
                expected_source.erase(expected_source.begin());
        } else if (tok == "query") {
            if (!query_line.empty()) fail_at(ln, "multiple query lines");
            std::getline(is, query_line);
            query_ln = ln;
        } else {
            fail_at(ln, "unknown directive '" + tok + "'");
        }
    }
    if (query_line.empty()) throw FormatError(path.string() + ": missing query line");

    std::istringstream qs(query_line);
    std::string kind_tok;
    qs >> kind_tok;
    std::string rest;
    std::getline(qs, rest);

    ProblemKind kind;
    std::string lhs_text, rhs_text;
    if (kind_tok == "empty") {
        kind = ProblemKind::BreEmpty;
        lhs_text = rest;
    } else if (kind_tok == "incl" || kind_tok == "equiv") {
        kind = kind_tok == "incl" ? ProblemKind::Inclusion : ProblemKind::Equivalence;
        const std::string sep = kind_tok == "incl" ? "<=" : "==";
        size_t at = rest.find(sep);
        if (at == std::string::npos)
            fail_at(query_ln, "expected '" + sep + "' between the two sides");
        lhs_text = rest.substr(0, at);
        rhs_text = rest.substr(at + sep.size());
    } else {
        fail_at(query_ln, "query must be empty|incl|equiv");
    }

    ExprNode lhs_expr = ExprParser(lhs_text, query_ln).parse();
    std::optional<ExprNode> rhs_expr;
    if (!rhs_text.empty() || kind != ProblemKind::BreEmpty)
        rhs_expr = ExprParser(rhs_text, query_ln).parse();

    // referenced atoms must exist
    std::map<std::string, size_t> def_of;
    for (size_t i = 0; i < defs.size(); ++i) {
        if (def_of.count(defs[i].name)) fail_at(defs[i].line, "duplicate atom name");
        def_of.emplace(defs[i].name, i);
    }
    std::vector<std::string> used;
    expr_atoms(lhs_expr, used);
    if (rhs_expr) expr_atoms(*rhs_expr, used);
    for (const auto& name : used)
        if (!def_of.count(name))
            throw FormatError(path.string() + ": reference to undefined atom '" + name + "'");

    // gather predicates from all atoms
    bool needs_residual = kind != ProblemKind::BreEmpty || expr_has_not(lhs_expr);
    std::vector<CharClass> classes;
    std::vector<rx::Ast> asts(defs.size());
    std::vector<RawNfa> raws(defs.size());
    for (size_t i = 0; i < defs.size(); ++i) {
        if (defs[i].regex) {
            try {
                asts[i] = rx::parse_regex(*defs[i].regex, rx::Dialect::Extended, amax);
            } catch (const rx::ParseError& e) {
                fail_at(defs[i].line, std::string("in regex: ") + e.what());
            }
            if (rx::has_complement(asts[i])) needs_residual = true;
            for (const auto& c : rx::collect_classes(asts[i], amax))
                if (std::find(classes.begin(), classes.end(), c) == classes.end())
                    classes.push_back(c);
        } else {
            if (!std::filesystem::exists(*defs[i].nfa_path))
                throw FormatError(path.string() + ": missing atom file " +
                                  defs[i].nfa_path->string());
            raws[i] = parse_nfa_file(*defs[i].nfa_path);
            for (const auto& [q, cls, r] : raws[i].trans)
                if (std::find(classes.begin(), classes.end(), cls) == classes.end())
                    classes.push_back(cls);
        }
    }
    if (classes.empty()) classes.push_back(CharClass::full(amax));
    auto table =
        std::make_shared<const MintermTable>(mintermize(classes, amax, needs_residual));

    std::vector<std::optional<NamedNfa>> compiled(defs.size());
    auto compile_atom = [&](const std::string& name) -> const NamedNfa& {
        size_t i = def_of.at(name);
        if (!compiled[i]) {
            if (defs[i].regex) {
                compiled[i] = NamedNfa{name, defs[i].regex, rx::compile(asts[i], table)};
            } else {
                const RawNfa& raw = raws[i];
                Nfa nfa(raw.states, table);
                for (uint32_t q : raw.initial) nfa.add_initial(q);
                for (uint32_t q : raw.final) nfa.add_final(q);
                for (const auto& [q, cls, r] : raw.trans)
                    for (uint32_t m : table->ids_subset_of(cls))
                        nfa.add_transition(q, m, r);
                compiled[i] = NamedNfa{name, std::nullopt, std::move(nfa)};
            }
        }
        return *compiled[i];
    };

    Problem p;
    p.id = path.parent_path().filename().string();
    if (p.id.empty()) p.id = path.stem().string();
    p.kind = kind;
    p.table = table;
    p.expected = expected;
    p.expected_source = expected_source;

    if (kind == ProblemKind::BreEmpty) {
        auto build = [&](auto&& self, const ExprNode& e) -> Bre {
            switch (e.kind) {
                case ExprNode::Kind::Atom: {
                    const NamedNfa& a = compile_atom(e.atom);
                    return bre::leaf(a.nfa, a.name, a.regex_src);
                }
                case ExprNode::Kind::Not:
                    return bre::neg(self(self, e.kids[0]));
                case ExprNode::Kind::And: {
                    std::vector<Bre> kids;
                    for (const auto& k : e.kids) kids.push_back(self(self, k));
                    return bre::conj(std::move(kids));
                }
                case ExprNode::Kind::Or: {
                    std::vector<Bre> kids;
                    for (const auto& k : e.kids) kids.push_back(self(self, k));
                    return bre::disj(std::move(kids));
                }
            }
            throw std::logic_error("unreachable");
        };
        p.bre = build(build, lhs_expr);
    } else {
        auto side_parts = [&](const ExprNode& e, std::vector<NamedNfa>& out) {
            std::vector<std::string> names;
            // sides are restricted to intersections of atoms
            auto walk = [&](auto&& self, const ExprNode& node) -> void {
                if (node.kind == ExprNode::Kind::Atom) {
                    names.push_back(node.atom);
                    return;
                }
                if (node.kind != ExprNode::Kind::And)
                    throw FormatError(
                        "inclusion/equivalence sides must be atoms or intersections");
                for (const auto& k : node.kids) self(self, k);
            };
            walk(walk, e);
            for (const auto& n : names) out.push_back(compile_atom(n));
        };
        side_parts(lhs_expr, p.lhs_parts);
        side_parts(*rhs_expr, p.rhs_parts);
    }
    return p;
}

Problem load_problem_file(const std::filesystem::path& file) {
    std::string head = read_file(file).substr(0, 4);
    if (head.rfind("@afa", 0) == 0) return parse_afa_file(file);
    return parse_master(file);
}

Problem load_problem_dir(const std::filesystem::path& dir) {
    if (std::filesystem::exists(dir / "master.txt")) return parse_master(dir / "master.txt");
    if (std::filesystem::exists(dir / "problem.afa"))
        return parse_afa_file(dir / "problem.afa");
    throw FormatError(dir.string() + ": no master.txt or problem.afa");
}

}  // namespace regatta::bench

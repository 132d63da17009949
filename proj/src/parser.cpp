#include "rdl/syntax.hpp"

#include <cctype>
#include <sstream>

namespace rdl {

SyntaxError::SyntaxError(const std::string& msg, int l, int c, std::vector<std::string> exp)
    : std::runtime_error(msg), line(l), column(c), expected(std::move(exp)) {}

namespace {

enum class Tok { Ident, Number, Sym, Keyword, End };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (s[i] == '\n') { ++line; col = 1; } else { ++col; }
            ++i;
        }
    };
    while (i < s.size()) {
        unsigned char c = s[i];
        if (std::isspace(c)) { advance(1); continue; }
        int l = line, cl = col;
        // unicode tau (U+03C4) maps to the clock name
        if (c == 0xCF && i + 1 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0x84) {
            out.push_back({Tok::Ident, kClock, l, cl});
            advance(2);
            continue;
        }
        if (std::isalpha(c) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            std::string w(s.substr(i, j - i));
            out.push_back({Tok::Ident, w, l, cl});
            advance(j - i);
            continue;
        }
        if (std::isdigit(c)) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j + 1 < s.size() && s[j] == '.' && std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
                ++j;
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            } else if (j + 1 < s.size() && s[j] == '/' && std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
                ++j;
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            }
            out.push_back({Tok::Number, std::string(s.substr(i, j - i)), l, cl});
            advance(j - i);
            continue;
        }
        if (c == '\\') {
            std::size_t j = i + 1;
            while (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j]))) ++j;
            std::string w(s.substr(i, j - i));
            if (w != "\\exists" && w != "\\forall" && w != "\\norm")
                throw SyntaxError("unknown keyword " + w, l, cl, {"\\exists", "\\forall", "\\norm"});
            out.push_back({Tok::Keyword, w, l, cl});
            advance(j - i);
            continue;
        }
        static const char* two[] = {":=", ">=", "<=", "->", "++"};
        bool matched = false;
        for (const char* t : two) {
            if (s.substr(i, 2) == t) {
                out.push_back({Tok::Sym, t, l, cl});
                advance(2);
                matched = true;
                break;
            }
        }
        if (matched) continue;
        if (std::string_view("+-*()[]{}<>=&|!?;,'.").find(static_cast<char>(c)) != std::string_view::npos) {
            out.push_back({Tok::Sym, std::string(1, static_cast<char>(c)), l, cl});
            advance(1);
            continue;
        }
        throw SyntaxError(std::string("unexpected character '") + static_cast<char>(c) + "'", l, cl, {});
    }
    out.push_back({Tok::End, "<end>", line, col});
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(lex(text)) {}

    FormulaPtr formula_top() {
        auto f = implication();
        expect_end();
        return f;
    }
    ProgramPtr program_top() {
        auto p = program();
        expect_end();
        return p;
    }
    TermPtr term_top() {
        auto t = term();
        expect_end();
        return t;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool is_sym(const char* s, std::size_t k = 0) const { return peek(k).kind == Tok::Sym && peek(k).text == s; }
    bool is_kw(const char* s) const { return peek().kind == Tok::Keyword && peek().text == s; }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        const Token& t = peek();
        std::ostringstream os;
        os << t.line << ":" << t.col << ": unexpected '" << t.text << "', expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) os << (i ? " or " : "") << expected[i];
        throw SyntaxError(os.str(), t.line, t.col, std::move(expected));
    }

    void expect(const char* s) {
        if (!is_sym(s)) fail({std::string("'") + s + "'"});
        ++pos_;
    }
    void expect_end() {
        if (peek().kind != Tok::End) fail({"end of input"});
    }
    std::string ident() {
        if (peek().kind != Tok::Ident) fail({"identifier"});
        return toks_[pos_++].text;
    }

    // ---- terms ----
    TermPtr term() {
        TermPtr acc = product();
        while (is_sym("+") || is_sym("-")) {
            bool minus = is_sym("-");
            ++pos_;
            TermPtr r = product();
            acc = minus ? add(acc, mul(cst(-1), r)) : add(acc, r);
        }
        return acc;
    }
    TermPtr product() {
        TermPtr acc = unary();
        while (is_sym("*")) {
            ++pos_;
            acc = mul(acc, unary());
        }
        return acc;
    }
    TermPtr unary() {
        if (is_sym("-")) {
            ++pos_;
            if (peek().kind == Tok::Number) return cst(-Rational::parse(toks_[pos_++].text));
            return mul(cst(-1), unary());
        }
        return primary();
    }
    TermPtr primary() {
        if (peek().kind == Tok::Number) return cst(Rational::parse(toks_[pos_++].text));
        if (peek().kind == Tok::Ident) {
            const std::string& w = peek().text;
            if (w == "true" || w == "false") fail({"term"});
            return var(toks_[pos_++].text);
        }
        if (is_sym("(")) {
            ++pos_;
            TermPtr t = term();
            expect(")");
            return t;
        }
        fail({"number", "identifier", "'('", "'-'"});
    }

    // ---- formulas ----
    FormulaPtr implication() {
        FormulaPtr a = disjunction();
        if (is_sym("->")) {
            ++pos_;
            FormulaPtr b = implication();
            return lor(negate(a), b);
        }
        return a;
    }
    FormulaPtr disjunction() {
        FormulaPtr acc = conjunction();
        while (is_sym("|")) {
            ++pos_;
            acc = lor(acc, conjunction());
        }
        return acc;
    }
    FormulaPtr conjunction() {
        FormulaPtr acc = unary_formula();
        while (is_sym("&")) {
            ++pos_;
            acc = land(acc, unary_formula());
        }
        return acc;
    }

    FormulaPtr comparison() {
        TermPtr a = term();
        if (is_sym(">")) { ++pos_; return gt(a, term()); }
        if (is_sym(">=")) { ++pos_; return geq(a, term()); }
        if (is_sym("<")) { ++pos_; return gt(term(), a); }
        if (is_sym("<=")) { ++pos_; return geq(term(), a); }
        if (is_sym("=")) { ++pos_; return eq(a, term()); }
        fail({"'>'", "'>='", "'<'", "'<='", "'='"});
    }

    FormulaPtr unary_formula() {
        if (is_sym("!")) {
            ++pos_;
            return negate(unary_formula());
        }
        if (peek().kind == Tok::Ident && (peek().text == "true" || peek().text == "false")) {
            bool t = peek().text == "true";
            ++pos_;
            return t ? top() : bottom();
        }
        if (is_kw("\\exists") || is_kw("\\forall")) return quantified();
        if (is_kw("\\norm")) return norm();
        if (is_sym("<")) {
            ++pos_;
            ProgramPtr p = program();
            expect(">");
            return diamond(p, unary_formula());
        }
        if (is_sym("[")) {
            ++pos_;
            ProgramPtr p = program();
            expect("]");
            return box(p, unary_formula());
        }
        if (is_sym("(")) {
            // Either a parenthesized term starting a comparison or a grouped formula.
            std::size_t save = pos_;
            try {
                return comparison();
            } catch (const SyntaxError& e1) {
                std::size_t far1 = pos_;
                pos_ = save + 1;
                try {
                    FormulaPtr f = implication();
                    expect(")");
                    return f;
                } catch (const SyntaxError& e2) {
                    if (far1 > pos_) throw e1;
                    throw;
                }
            }
        }
        return comparison();
    }

    FormulaPtr quantified() {
        bool is_exists = peek().text == "\\exists";
        ++pos_;
        std::string x = ident();
        if (peek().kind == Tok::Ident && peek().text == "in") {
            ++pos_;
            bool closed;
            if (is_sym("[")) closed = true;
            else if (is_sym("(")) closed = false;
            else fail({"'['", "'('"});
            ++pos_;
            TermPtr lo = term();
            expect(",");
            TermPtr hi = term();
            expect(closed ? "]" : ")");
            expect(".");
            FormulaPtr body = unary_formula();
            BoundedKind k = is_exists ? (closed ? BoundedKind::ExistsClosed : BoundedKind::ExistsOpen)
                                      : (closed ? BoundedKind::ForallClosed : BoundedKind::ForallOpen);
            try {
                return desugar_bounded_quantifier(k, x, lo, hi, body);
            } catch (const BoundMentionsVar& e) {
                throw SyntaxError(e.what(), peek().line, peek().col, {});
            }
        }
        expect(".");
        FormulaPtr body = unary_formula();
        return is_exists ? exists(x, body) : forall(x, body);
    }

    FormulaPtr norm() {
        ++pos_;
        expect("(");
        std::vector<TermPtr> vs;
        if (!is_sym(")")) {
            vs.push_back(term());
            while (is_sym(",")) {
                ++pos_;
                vs.push_back(term());
            }
        }
        expect(")");
        if (is_sym("<")) { ++pos_; return desugar_norm(vs, term(), Strictness::Strict); }
        if (is_sym("<=")) { ++pos_; return desugar_norm(vs, term(), Strictness::Weak); }
        fail({"'<'", "'<='"});
    }

    // ---- programs ----
    ProgramPtr program() {
        ProgramPtr acc = sequence();
        while (is_sym("++")) {
            ++pos_;
            acc = choice(acc, sequence());
        }
        return acc;
    }
    ProgramPtr sequence() {
        ProgramPtr a = atomic_program();
        if (is_sym(";")) {
            ++pos_;
            return seq(a, sequence());
        }
        return a;
    }
    ProgramPtr atomic_program() {
        if (is_sym("?")) {
            ++pos_;
            return test(unary_formula());
        }
        if (is_sym("{")) {
            if (peek(1).kind == Tok::Ident && peek(2).kind == Tok::Sym && peek(2).text == "'") return ode_system();
            ++pos_;
            ProgramPtr p = program();
            expect("}");
            if (is_sym("*")) {
                ++pos_;
                return star(p);
            }
            return p;
        }
        if (peek().kind == Tok::Ident) {
            std::string x = ident();
            expect(":=");
            return assign(x, term());
        }
        fail({"'?'", "'{'", "identifier"});
    }
    ProgramPtr ode_system() {
        expect("{");
        std::vector<OdePair> sys;
        VarSet seen;
        for (;;) {
            const Token& at = peek();
            std::string x = ident();
            if (!seen.insert(x).second) throw SyntaxError("duplicate ODE variable " + x, at.line, at.col, {});
            expect("'");
            expect("=");
            sys.push_back({x, term()});
            if (is_sym(",")) {
                ++pos_;
                continue;
            }
            break;
        }
        FormulaPtr dom = top();
        if (is_sym("&")) {
            ++pos_;
            dom = implication();
        }
        expect("}");
        return ode(std::move(sys), dom);
    }
};

}  // namespace

FormulaPtr parse_formula(std::string_view text) { return Parser(text).formula_top(); }
ProgramPtr parse_program(std::string_view text) { return Parser(text).program_top(); }
TermPtr parse_term(std::string_view text) { return Parser(text).term_top(); }

}  // namespace rdl

#include "streamlog/parser.hpp"

#include <cctype>

namespace streamlog {

namespace {

enum class Tok { Ident, Variable, LParen, RParen, Comma, Period, Implies, Colon, Question, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skipSpace();
        int line = line_, col = col_;
        if (pos_ >= text_.size()) return {Tok::End, "", line, col};
        char c = text_[pos_];
        if (c == '(') return take(Tok::LParen, 1);
        if (c == ')') return take(Tok::RParen, 1);
        if (c == ',') return take(Tok::Comma, 1);
        if (c == '.') return take(Tok::Period, 1);
        if (c == '?') return take(Tok::Question, 1);
        if (c == ':') {
            if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') return take(Tok::Implies, 2);
            return take(Tok::Colon, 1);
        }
        if (isIdentChar(c)) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && isIdentChar(text_[pos_])) advance();
            std::string word(text_.substr(start, pos_ - start));
            bool variable = std::isupper(static_cast<unsigned char>(word[0]));
            return {variable ? Tok::Variable : Tok::Ident, std::move(word), line, col};
        }
        throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }

private:
    static bool isIdentChar(char c) {
        unsigned char u = static_cast<unsigned char>(c);
        return std::isalnum(u) || c == '_' || u >= 0x80;  // UTF-8 passthrough
    }

    void skipSpace() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '%') {  // comment to end of line
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                break;
            }
        }
    }

    Token take(Tok kind, int width) {
        Token t{kind, std::string(text_.substr(pos_, width)), line_, col_};
        for (int i = 0; i < width; ++i) advance();
        return t;
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) { shift(); }

    Program program() {
        Program prog;
        int unnamed = 0;
        while (cur_.kind != Tok::End) {
            TGD rule = statement(prog, ++unnamed);
            prog.rules.push_back(std::move(rule));
        }
        return prog;
    }

    std::vector<Fact> facts(Signature& signature) {
        std::vector<Fact> out;
        while (cur_.kind != Tok::End) {
            Token head = cur_;
            Atom a = atom(signature);
            for (const Term& t : a.args)
                if (t.isVariable())
                    throw ParseError(head.line, head.column,
                                     "facts must be ground, found variable " + t.symbol());
            expect(Tok::Period, "'.'");
            out.emplace_back(std::move(a));
        }
        return out;
    }

    BCQ query(Signature& signature) {
        expect(Tok::Question, "'?'");
        expect(Tok::Implies, "':-'");
        BCQ q;
        q.atoms = atomList(signature);
        expect(Tok::Period, "'.'");
        if (cur_.kind != Tok::End)
            throw ParseError(cur_.line, cur_.column, "trailing input after query");
        return q;
    }

private:
    TGD statement(Program& prog, int unnamed) {
        TGD rule;
        // Optional label: `ident :` ahead of the head.
        if (cur_.kind == Tok::Ident && peek_.kind == Tok::Colon) {
            rule.id = cur_.text;
            for (const TGD& r : prog.rules)
                if (r.id == rule.id)
                    throw ParseError(cur_.line, cur_.column, "duplicate rule label " + rule.id);
            shift();
            shift();
        } else {
            rule.id = "r" + std::to_string(unnamed);
        }
        rule.head = atomList(prog.signature);
        expect(Tok::Implies, "':-'");
        rule.body = atomList(prog.signature);
        expect(Tok::Period, "'.'");
        rule.computeVarPartition();
        return rule;
    }

    std::vector<Atom> atomList(Signature& signature) {
        std::vector<Atom> atoms;
        atoms.push_back(atom(signature));
        while (cur_.kind == Tok::Comma) {
            shift();
            atoms.push_back(atom(signature));
        }
        return atoms;
    }

    Atom atom(Signature& signature) {
        if (cur_.kind != Tok::Ident)
            throw ParseError(cur_.line, cur_.column,
                             "expected a predicate, found '" + describe(cur_) + "'");
        Token pred = cur_;
        shift();
        expect(Tok::LParen, "'('");
        Atom a;
        a.predicate = pred.text;
        if (cur_.kind != Tok::RParen) {
            a.args.push_back(term());
            while (cur_.kind == Tok::Comma) {
                shift();
                a.args.push_back(term());
            }
        }
        expect(Tok::RParen, "')'");
        auto [it, inserted] = signature.emplace(a.predicate, a.arity());
        if (!inserted && it->second != a.arity())
            throw ParseError(pred.line, pred.column,
                             "predicate " + a.predicate + " used with arity " +
                                 std::to_string(a.arity()) + ", expected " +
                                 std::to_string(it->second));
        return a;
    }

    Term term() {
        Token t = cur_;
        if (t.kind == Tok::Ident) {
            shift();
            return Term::constant(t.text);
        }
        if (t.kind == Tok::Variable) {
            shift();
            return Term::variable(t.text);
        }
        throw ParseError(t.line, t.column, "expected a term, found '" + describe(t) + "'");
    }

    static std::string describe(const Token& t) {
        return t.kind == Tok::End ? "end of input" : t.text;
    }

    void expect(Tok kind, const char* what) {
        if (cur_.kind != kind)
            throw ParseError(cur_.line, cur_.column,
                             std::string("expected ") + what + ", found '" + describe(cur_) + "'");
        shift();
    }

    void shift() {
        if (primed_) {
            cur_ = peek_;
        } else {
            cur_ = lexer_.next();
            primed_ = true;
        }
        peek_ = cur_.kind == Tok::End ? cur_ : lexer_.next();
    }

    Lexer lexer_;
    Token cur_{Tok::End, "", 1, 1};
    Token peek_{Tok::End, "", 1, 1};
    bool primed_ = false;
};

std::string trimmed(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

}  // namespace

Program parseProgram(std::string_view text) {
    return Parser(text).program();
}

std::vector<Fact> parseFacts(std::string_view text, Signature& signature) {
    return Parser(text).facts(signature);
}

BCQ parseQuery(std::string_view text, Signature& signature) {
    return Parser(text).query(signature);
}

std::vector<Fact> parseCsvFacts(const std::string& predicate, std::string_view csv,
                                Signature& signature) {
    std::vector<Fact> out;
    int line = 0;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        std::size_t nl = csv.find('\n', pos);
        std::string_view row = csv.substr(pos, nl == std::string_view::npos ? csv.size() - pos
                                                                            : nl - pos);
        pos = nl == std::string_view::npos ? csv.size() + 1 : nl + 1;
        ++line;
        if (trimmed(row).empty()) continue;
        Atom a;
        a.predicate = predicate;
        std::size_t cell = 0;
        while (cell <= row.size()) {
            std::size_t comma = row.find(',', cell);
            std::string value =
                trimmed(row.substr(cell, comma == std::string_view::npos ? row.size() - cell
                                                                         : comma - cell));
            a.args.push_back(Term::constant(value));
            if (comma == std::string_view::npos) break;
            cell = comma + 1;
        }
        auto [it, inserted] = signature.emplace(predicate, a.arity());
        if (!inserted && it->second != a.arity())
            throw ParseError(line, 1,
                             "csv row for " + predicate + " has " + std::to_string(a.arity()) +
                                 " cells, expected " + std::to_string(it->second));
        out.emplace_back(std::move(a));
    }
    return out;
}

}  // namespace streamlog

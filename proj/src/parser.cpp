#include "ltg/parser.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "ltg/error.hpp"
#include "ltg/normalize.hpp"

namespace ltg {
namespace {

enum class Tok { Ident, Number, LParen, RParen, Comma, Dot, Implies, ProbSep, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            if (pos_ >= src_.size()) {
                out.push_back({Tok::End, "", line_, col_});
                return out;
            }
            out.push_back(next());
        }
    }

private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    Token next() {
        std::size_t line = line_, col = col_;
        char c = src_[pos_];
        auto single = [&](Tok k) {
            advance();
            return Token{k, std::string(1, c), line, col};
        };
        switch (c) {
            case '(': return single(Tok::LParen);
            case ')': return single(Tok::RParen);
            case ',': return single(Tok::Comma);
            case '.': return single(Tok::Dot);
            default: break;
        }
        if (c == ':' && pos_ + 1 < src_.size()) {
            char d = src_[pos_ + 1];
            if (d == '-' || d == ':') {
                advance();
                advance();
                return {d == '-' ? Tok::Implies : Tok::ProbSep, d == '-' ? ":-" : "::", line, col};
            }
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                advance();
            return {Tok::Ident, std::string(src_.substr(start, pos_ - start)), line, col};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
            // A '.' belongs to the number only when a digit follows; otherwise it ends the clause.
            if (pos_ + 1 < src_.size() && src_[pos_] == '.' &&
                std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
                advance();
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
            }
            if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
                std::size_t save = pos_, save_line = line_, save_col = col_;
                advance();
                if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance();
                if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
                } else {
                    pos_ = save;
                    line_ = save_line;
                    col_ = save_col;
                }
            }
            return {Tok::Number, std::string(src_.substr(start, pos_ - start)), line, col};
        }
        throw ParseError(ErrorKind::Parse, line, col, std::string("unexpected character '") + c + "'");
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

struct RawAtom {
    std::string predicate;
    std::vector<std::string> args;
    std::size_t line = 0;
    std::size_t column = 0;
};

class Parser {
public:
    Parser(Program& prog, std::vector<Token> toks) : prog_(prog), toks_(std::move(toks)) {}

    void program() {
        while (peek().kind != Tok::End) clause();
    }

    Atom single_atom() {
        auto raw = raw_atom();
        expect(Tok::End, "end of input");
        return resolve(raw, /*create=*/false);
    }

private:
    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(const Token& t, const std::string& msg) const {
        throw ParseError(ErrorKind::Parse, t.line, t.column, msg);
    }

    const Token& expect(Tok kind, const char* what) {
        if (peek().kind != kind) {
            fail(peek(), std::string("expected ") + what + ", found '" + (peek().kind == Tok::End ? "end of input" : peek().text) + "'");
        }
        return take();
    }

    static bool is_variable(const std::string& s) { return std::isupper(static_cast<unsigned char>(s[0])) || s[0] == '_'; }

    RawAtom raw_atom() {
        const Token& name = expect(Tok::Ident, "predicate name");
        if (is_variable(name.text)) fail(name, "predicate names must start with a lowercase letter");
        RawAtom atom{name.text, {}, name.line, name.column};
        if (peek().kind != Tok::LParen) return atom;
        take();
        if (peek().kind == Tok::RParen) {
            take();
            return atom;
        }
        for (;;) {
            atom.args.push_back(expect(Tok::Ident, "term").text);
            if (peek().kind == Tok::Comma) {
                take();
                continue;
            }
            expect(Tok::RParen, "',' or ')'");
            return atom;
        }
    }

    Atom resolve(const RawAtom& raw, bool create) {
        std::optional<SymbolId> pred;
        if (create) {
            pred = prog_.symbols.predicate(raw.predicate, raw.args.size());
            if (!pred) {
                throw ParseError(ErrorKind::Arity, raw.line, raw.column,
                                 "predicate '" + raw.predicate + "' used with arity " + std::to_string(raw.args.size()) +
                                     " but declared with arity " +
                                     std::to_string(prog_.symbols.arity(*prog_.symbols.find_predicate(raw.predicate))));
            }
        } else {
            pred = prog_.symbols.find_predicate(raw.predicate);
            if (!pred) throw Error(ErrorKind::UnknownPredicate, "unknown predicate '" + raw.predicate + "'");
            if (prog_.symbols.arity(*pred) != raw.args.size())
                throw ParseError(ErrorKind::Arity, raw.line, raw.column, "arity mismatch for '" + raw.predicate + "'");
        }
        Atom atom{*pred, {}};
        for (const auto& a : raw.args) {
            atom.args.push_back(is_variable(a) ? Term::var(prog_.symbols.variable(a))
                                               : Term::constant(prog_.symbols.constant(a)));
        }
        return atom;
    }

    double probability(const Token& t) {
        double p = std::strtod(t.text.c_str(), nullptr);
        if (!(p > 0.0 && p <= 1.0))
            throw ParseError(ErrorKind::Probability, t.line, t.column, "probability " + t.text + " outside (0,1]");
        return p;
    }

    void clause() {
        std::optional<double> prob;
        if (peek().kind == Tok::Number) {
            prob = probability(take());
            expect(Tok::ProbSep, "'::'");
        }
        const Token& start = peek();
        if (!prob && start.kind == Tok::Ident && start.text == "query" && peek(1).kind == Tok::LParen) {
            take();
            take();
            auto raw = raw_atom();
            expect(Tok::RParen, "')'");
            expect(Tok::Dot, "'.'");
            queries_.push_back(raw);
            return;
        }
        auto head = raw_atom();
        if (peek().kind == Tok::Dot) {
            take();
            add_fact(head, prob.value_or(1.0));
            return;
        }
        expect(Tok::Implies, "':-' or '.'");
        std::vector<RawAtom> body{raw_atom()};
        while (peek().kind == Tok::Comma) {
            take();
            body.push_back(raw_atom());
        }
        expect(Tok::Dot, "'.'");
        add_rule(head, body, prob);
    }

    void add_fact(const RawAtom& raw, double prob) {
        Atom atom = resolve(raw, true);
        if (!atom.ground()) throw ParseError(ErrorKind::Parse, raw.line, raw.column, "facts must be ground");
        auto key = prog_.render(atom);
        if (!seen_facts_.insert(key).second)
            throw ParseError(ErrorKind::Parse, raw.line, raw.column, "duplicate fact " + key);
        prog_.facts.push_back({std::move(atom), prob, static_cast<FactVar>(prog_.facts.size())});
    }

    void add_rule(const RawAtom& head_raw, const std::vector<RawAtom>& body_raw, std::optional<double> prob) {
        Rule rule;
        rule.id = static_cast<std::uint32_t>(prog_.rules.size());
        rule.head = resolve(head_raw, true);
        std::set<SymbolId> body_vars;
        for (const auto& b : body_raw) {
            rule.body.push_back(resolve(b, true));
            for (const auto& t : rule.body.back().args)
                if (t.variable) body_vars.insert(t.id);
        }
        for (const auto& t : rule.head.args) {
            if (t.variable && !body_vars.count(t.id))
                throw ParseError(ErrorKind::Unsafe, head_raw.line, head_raw.column,
                                 "head variable " + prog_.symbols.variable_name(t.id) + " does not occur in the body");
        }
        if (prob) {
            auto [desugared, dummy] = desugar_rule_probability(prog_.symbols, rule, *prob);
            dummy.var = static_cast<FactVar>(prog_.facts.size());
            seen_facts_.insert(prog_.render(dummy.fact));
            prog_.facts.push_back(std::move(dummy));
            rule = std::move(desugared);
        }
        prog_.rules.push_back(std::move(rule));
    }

public:
    void finish() {
        for (const auto& q : queries_) prog_.queries.push_back(resolve(q, true));
        prog_.classify_rules();
    }

private:
    Program& prog_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::vector<RawAtom> queries_;
    std::set<std::string> seen_facts_;
};

}  // namespace

Program parse_program(std::string_view text) {
    Program prog;
    Parser parser(prog, Lexer(text).run());
    parser.program();
    parser.finish();
    return prog;
}

Atom parse_atom(Program& prog, std::string_view text) {
    Parser parser(prog, Lexer(text).run());
    return parser.single_atom();
}

}  // namespace ltg

#include "vl/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace vl {

namespace {

enum class Tok {
    LParen,
    RParen,
    AndOp,
    OrOp,
    Arrow,
    NotOp,
    ReportOp,  // R<digits>
    DefOp,     // D<digits>
    Ident,
    TrueLit,
    FalseLit,
    End
};

struct Token {
    Tok kind;
    SourceSpan span;
    std::string text;
    int agent = 0;  // ReportOp/DefOp
};

[[noreturn]] void fail(SourceSpan span, const std::string& expected,
                       const std::string& found) {
    throw ParseError(span, expected,
                     "parse error at offset " + std::to_string(span.begin) +
                         ": expected " + expected + ", found " + found);
}

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (c == '(') {
            out.push_back({Tok::LParen, {start, start + 1}, "(", 0});
            ++i;
        } else if (c == ')') {
            out.push_back({Tok::RParen, {start, start + 1}, ")", 0});
            ++i;
        } else if (c == '&') {
            out.push_back({Tok::AndOp, {start, start + 1}, "&", 0});
            ++i;
        } else if (c == '|') {
            out.push_back({Tok::OrOp, {start, start + 1}, "|", 0});
            ++i;
        } else if (c == '~') {
            out.push_back({Tok::NotOp, {start, start + 1}, "~", 0});
            ++i;
        } else if (c == '-') {
            if (i + 1 >= n || text[i + 1] != '>')
                fail({start, start + 1}, "'->'", "'-'");
            out.push_back({Tok::Arrow, {start, start + 2}, "->", 0});
            i += 2;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                             text[j] == '_'))
                ++j;
            std::string word(text.substr(i, j - i));
            SourceSpan span{i, j};
            if (word == "true") {
                out.push_back({Tok::TrueLit, span, word, 0});
            } else if (word == "false") {
                out.push_back({Tok::FalseLit, span, word, 0});
            } else if ((word[0] == 'R' || word[0] == 'D') && word.size() > 1 &&
                       word.find_first_not_of("0123456789", 1) ==
                           std::string::npos) {
                long idx = 0;
                for (std::size_t k = 1; k < word.size(); ++k) {
                    idx = idx * 10 + (word[k] - '0');
                    if (idx > 1'000'000) break;
                }
                if (idx < 1)
                    fail(span, "a positive agent index", "'" + word + "'");
                out.push_back({word[0] == 'R' ? Tok::ReportOp : Tok::DefOp, span,
                               word, static_cast<int>(idx)});
            } else {
                out.push_back({Tok::Ident, span, word, 0});
            }
            i = j;
        } else {
            fail({start, start + 1}, "a formula token",
                 "'" + std::string(1, c) + "'");
        }
    }
    out.push_back({Tok::End, {n, n}, "<end>", 0});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Formula run() {
        Formula f = formula();
        if (peek().kind != Tok::End)
            fail(peek().span, "end of input", "'" + peek().text + "'");
        return f;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token take() { return toks_[pos_++]; }

    Formula formula() {
        Formula lhs = or_expr();
        if (peek().kind == Tok::Arrow) {
            take();
            return implies(std::move(lhs), formula());  // right-assoc
        }
        return lhs;
    }

    Formula or_expr() {
        Formula f = and_expr();
        while (peek().kind == Tok::OrOp) {
            take();
            f = f || and_expr();
        }
        return f;
    }

    Formula and_expr() {
        Formula f = unary();
        while (peek().kind == Tok::AndOp) {
            take();
            f = f && unary();
        }
        return f;
    }

    Formula unary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::NotOp:
                take();
                return !unary();
            case Tok::ReportOp: {
                int agent = take().agent;
                return report(agent, unary());
            }
            case Tok::DefOp: {
                int agent = take().agent;
                return definitely(agent, unary());
            }
            default:
                return atom();
        }
    }

    Formula atom() {
        Token t = take();
        switch (t.kind) {
            case Tok::TrueLit:
                return lit_true();
            case Tok::FalseLit:
                return lit_false();
            case Tok::Ident:
                return prop(t.text);
            case Tok::LParen: {
                Formula f = formula();
                if (peek().kind != Tok::RParen)
                    fail(peek().span, "')'", "'" + peek().text + "'");
                take();
                return f;
            }
            default:
                fail(t.span, "a proposition, literal, unary operator or '('",
                     "'" + t.text + "'");
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

// Binding levels: 0 implies, 1 or, 2 and, 3 unary, 4 atom.
int level_of(const Formula& f) {
    switch (f.kind()) {
        case Kind::Implies: return 0;
        case Kind::Or: return 1;
        case Kind::And: return 2;
        case Kind::Not:
        case Kind::Report:
        case Kind::Def: return 3;
        default: return 4;
    }
}

void render_at(const Formula& f, int min_level, std::string& out) {
    const bool parens = level_of(f) < min_level;
    if (parens) out += '(';
    switch (f.kind()) {
        case Kind::True:
            out += "true";
            break;
        case Kind::False:
            out += "false";
            break;
        case Kind::Prop:
            out += f.prop_name();
            break;
        case Kind::Not:
            out += '~';
            render_at(f.child(), 3, out);
            break;
        case Kind::Report:
        case Kind::Def:
            out += (f.kind() == Kind::Report ? 'R' : 'D');
            out += std::to_string(f.agent());
            out += ' ';
            render_at(f.child(), 3, out);
            break;
        case Kind::And:
            render_at(f.lhs(), 2, out);
            out += " & ";
            render_at(f.rhs(), 3, out);  // left-assoc
            break;
        case Kind::Or:
            render_at(f.lhs(), 1, out);
            out += " | ";
            render_at(f.rhs(), 2, out);
            break;
        case Kind::Implies:
            render_at(f.lhs(), 1, out);
            out += " -> ";
            render_at(f.rhs(), 0, out);  // right-assoc
            break;
    }
    if (parens) out += ')';
}

}  // namespace

Formula parse(std::string_view text) { return Parser(lex(text)).run(); }

std::string render(const Formula& f) {
    std::string out;
    render_at(f, 0, out);
    return out;
}

}  // namespace vl

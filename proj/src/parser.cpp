#include "crgeo/parser.hpp"

#include <cctype>

#include "crgeo/errors.hpp"

namespace crgeo {

namespace {

enum class Tok { integer, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip_space();
        const int line = line_, col = col_;
        if (pos_ >= text_.size()) return {Tok::end, "", line, col};
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                num += advance();
            return {Tok::integer, num, line, col};
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string id;
            while (pos_ < text_.size() &&
                   std::isalnum(static_cast<unsigned char>(text_[pos_])))
                id += advance();
            return {Tok::ident, id, line, col};
        }
        advance();
        switch (c) {
            case '+': return {Tok::plus, "+", line, col};
            case '-': return {Tok::minus, "-", line, col};
            case '*': return {Tok::star, "*", line, col};
            case '/': return {Tok::slash, "/", line, col};
            case '^': return {Tok::caret, "^", line, col};
            case '(': return {Tok::lparen, "(", line, col};
            case ')': return {Tok::rparen, ")", line, col};
            default:
                throw parse_error(std::string("unexpected character '") + c + "'", line, col);
        }
    }

private:
    char advance() {
        const char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    void skip_space() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            advance();
    }
    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) { cur_ = lex_.next(); }

    Expr parse() {
        Expr e = parse_expr();
        if (cur_.kind != Tok::end)
            throw parse_error("unexpected trailing input '" + cur_.text + "'", cur_.line, cur_.col);
        return e;
    }

private:
    void bump() { cur_ = lex_.next(); }

    bool accept(Tok k) {
        if (cur_.kind != k) return false;
        bump();
        return true;
    }

    void expect(Tok k, const char* what) {
        if (cur_.kind != k)
            throw parse_error(std::string("expected ") + what + " before '" + cur_.text + "'",
                              cur_.line, cur_.col);
        bump();
    }

    Expr parse_expr() {
        Expr first = parse_term();
        std::vector<Expr> parts;
        parts.push_back(std::move(first));
        while (cur_.kind == Tok::plus || cur_.kind == Tok::minus) {
            const bool minus = cur_.kind == Tok::minus;
            const Token op = cur_;
            bump();
            Expr t = parse_term();
            if (minus) {
                Expr neg;
                neg.kind = ExprKind::negate;
                neg.line = op.line;
                neg.col = op.col;
                neg.children.push_back(std::move(t));
                parts.push_back(std::move(neg));
            } else {
                parts.push_back(std::move(t));
            }
        }
        if (parts.size() == 1) return std::move(parts[0]);
        Expr sum;
        sum.kind = ExprKind::sum;
        sum.line = parts[0].line;
        sum.col = parts[0].col;
        sum.children = std::move(parts);
        return sum;
    }

    Expr parse_term() {
        Expr first = parse_unary();
        std::vector<Expr> parts;
        parts.push_back(std::move(first));
        while (accept(Tok::star)) parts.push_back(parse_unary());
        if (parts.size() == 1) return std::move(parts[0]);
        Expr prod;
        prod.kind = ExprKind::product;
        prod.line = parts[0].line;
        prod.col = parts[0].col;
        prod.children = std::move(parts);
        return prod;
    }

    Expr parse_unary() {
        if (cur_.kind == Tok::minus) {
            const Token op = cur_;
            bump();
            Expr neg;
            neg.kind = ExprKind::negate;
            neg.line = op.line;
            neg.col = op.col;
            neg.children.push_back(parse_unary());
            return neg;
        }
        return parse_factor();
    }

    Expr parse_factor() {
        Expr base = parse_base();
        if (accept(Tok::caret)) {
            if (cur_.kind != Tok::integer)
                throw parse_error("expected a nonnegative integer exponent", cur_.line, cur_.col);
            Expr pw;
            pw.kind = ExprKind::power;
            pw.line = base.line;
            pw.col = base.col;
            pw.exponent = std::stol(cur_.text);
            bump();
            pw.children.push_back(std::move(base));
            return pw;
        }
        return base;
    }

    Expr parse_base() {
        const Token tok = cur_;
        if (accept(Tok::lparen)) {
            Expr e = parse_expr();
            expect(Tok::rparen, "')'");
            return e;
        }
        if (tok.kind == Tok::integer) {
            bump();
            Expr e;
            e.kind = ExprKind::rational;
            e.line = tok.line;
            e.col = tok.col;
            mpz_class num(tok.text);
            if (accept(Tok::slash)) {
                if (cur_.kind != Tok::integer)
                    throw parse_error("expected a denominator", cur_.line, cur_.col);
                mpz_class den(cur_.text);
                if (den == 0) throw parse_error("division by zero", cur_.line, cur_.col);
                bump();
                mpq_class q(num, den);
                q.canonicalize();
                e.value = q;
            } else {
                e.value = mpq_class(num);
            }
            return e;
        }
        if (tok.kind == Tok::ident) {
            bump();
            Expr e;
            e.line = tok.line;
            e.col = tok.col;
            const std::string& id = tok.text;
            if (id == "i") {
                e.kind = ExprKind::imag_unit;
                return e;
            }
            if (id == "conj" || id == "Re" || id == "Im" || id == "abs2") {
                e.kind = id == "conj"  ? ExprKind::conj
                         : id == "Re" ? ExprKind::re
                         : id == "Im" ? ExprKind::im
                                      : ExprKind::abs2;
                expect(Tok::lparen, "'('");
                e.children.push_back(parse_expr());
                expect(Tok::rparen, "')'");
                return e;
            }
            if (id.size() >= 2 && id[0] == 'z') {
                bool digits = true;
                for (size_t k = 1; k < id.size(); ++k)
                    if (!std::isdigit(static_cast<unsigned char>(id[k]))) digits = false;
                if (digits) {
                    const long idx = std::stol(id.substr(1));
                    if (idx < 1 || idx > 9)
                        throw parse_error("variable index out of range (z1..z9)", tok.line, tok.col);
                    e.kind = ExprKind::variable;
                    e.var_index = static_cast<int>(idx);
                    return e;
                }
            }
            throw parse_error("unknown identifier '" + id + "'", tok.line, tok.col);
        }
        throw parse_error("expected an expression before '" + tok.text + "'", tok.line, tok.col);
    }

    Lexer lex_;
    Token cur_;
};

} // namespace

Expr parse_expression(const std::string& text) {
    Parser p(text);
    return p.parse();
}

int max_variable_index(const Expr& e) {
    int m = e.kind == ExprKind::variable ? e.var_index : 0;
    for (const Expr& c : e.children) m = std::max(m, max_variable_index(c));
    return m;
}

Polynomial lower_to_polynomial(const Expr& e, int n) {
    switch (e.kind) {
        case ExprKind::rational:
            return Polynomial::constant(n, Scalar(e.value));
        case ExprKind::imag_unit:
            return Polynomial::constant(n, Scalar::i());
        case ExprKind::variable:
            if (e.var_index > n)
                throw parse_error("variable z" + std::to_string(e.var_index) +
                                      " exceeds the declared dimension n=" + std::to_string(n),
                                  e.line, e.col);
            return Polynomial::variable(n, e.var_index);
        case ExprKind::conj:
            return lower_to_polynomial(e.children[0], n).conjugated();
        case ExprKind::re:
            return lower_to_polynomial(e.children[0], n).real_part();
        case ExprKind::im:
            return lower_to_polynomial(e.children[0], n).imag_part();
        case ExprKind::abs2: {
            const Polynomial p = lower_to_polynomial(e.children[0], n);
            return p * p.conjugated();
        }
        case ExprKind::sum: {
            Polynomial acc(n);
            for (const Expr& c : e.children) acc += lower_to_polynomial(c, n);
            return acc;
        }
        case ExprKind::product: {
            Polynomial acc = Polynomial::constant(n, Scalar(1));
            for (const Expr& c : e.children) acc = acc * lower_to_polynomial(c, n);
            return acc;
        }
        case ExprKind::power:
            return lower_to_polynomial(e.children[0], n).pow(static_cast<int>(e.exponent));
        case ExprKind::negate:
            return -lower_to_polynomial(e.children[0], n);
    }
    throw std::logic_error("lower_to_polynomial: unhandled node");
}

Polynomial parse_polynomial(const std::string& text, int n) {
    const Expr e = parse_expression(text);
    if (n == 0) n = std::max(1, max_variable_index(e));
    return lower_to_polynomial(e, n);
}

Scalar parse_scalar(const std::string& text) {
    const Expr e = parse_expression(text);
    if (max_variable_index(e) > 0) throw parse_error("expected a constant expression", 1, 1);
    const Polynomial p = lower_to_polynomial(e, 1);
    if (p.is_zero()) return Scalar(0);
    if (p.degree() != 0) throw parse_error("expected a constant expression", 1, 1);
    return p.terms().begin()->second;
}

} // namespace crgeo

#pragma once

#include <string>
#include <vector>

#include "crgeo/polynomial.hpp"

namespace crgeo {

enum class ExprKind {
    rational,
    imag_unit,
    variable,
    conj,
    re,
    im,
    abs2,
    sum,
    product,
    power,
    negate,
};

// Expression AST. Sums and products are n-ary; a - b parses as sum(a, neg(b)).
struct Expr {
    ExprKind kind{};
    mpq_class value;  // rational literals
    int var_index = 0; // variables, 1-based
    long exponent = 0; // integer powers
    std::vector<Expr> children;
    int line = 1, col = 1;
};

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := unary ('*' unary)*
//   unary  := '-' unary | factor
//   factor := base ('^' nat)?
//   base   := rational | 'i' | var | '(' expr ')' | func '(' expr ')'
//   func   := 'conj' | 'Re' | 'Im' | 'abs2'
// Variables are z1..z9; rational literals are INT or INT/INT.
Expr parse_expression(const std::string& text);

int max_variable_index(const Expr& e);

// Lowers to the canonical polynomial: abs2(e) -> e * conj(e), Re(e) ->
// (e + conj(e))/2, Im(e) -> (e - conj(e))/(2i). Rejects variable indices
// beyond n.
Polynomial lower_to_polynomial(const Expr& e, int n);

// parse + lower; n = 0 infers the dimension from the largest variable index.
Polynomial parse_polynomial(const std::string& text, int n = 0);

// Parses a constant expression (no variables) into a Gaussian rational.
Scalar parse_scalar(const std::string& text);

} // namespace crgeo

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crgeo/qext.hpp"
#include "crgeo/scalar.hpp"

namespace crgeo {

// Exponent pattern z^alpha * zbar^beta of a Hermitian monomial in n complex
// variables. Conjugation swaps the two exponent vectors.
struct Monomial {
    std::vector<int> alpha; // holomorphic exponents, size n
    std::vector<int> beta;  // antiholomorphic exponents, size n

    int total_degree() const;
    Monomial conjugated() const { return Monomial{beta, alpha}; }
    bool operator==(const Monomial&) const = default;
};

// Graded lexicographic order on the concatenated exponent vector (alpha,beta).
// Fixes canonical term ordering, serialization, and tie-breaking everywhere.
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

// Sparse exact polynomial in z_1..z_n, zbar_1..zbar_n over the Gaussian
// rationals. Zero coefficients are never stored, so the representation is
// canonical and equality is structural.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Scalar, MonomialOrder>;

    explicit Polynomial(int n) : n_(n) {}

    static Polynomial constant(int n, const Scalar& c);
    static Polynomial variable(int n, int j);      // z_j, 1-based
    static Polynomial conj_variable(int n, int j); // zbar_j, 1-based
    static Polynomial monomial(int n, const Monomial& m, const Scalar& c);

    int n() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    // Maximum total degree of a stored term; -1 for the zero polynomial.
    int degree() const;
    const TermMap& terms() const { return terms_; }
    Scalar coefficient(const Monomial& m) const;

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Scalar& c) const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial pow(int k) const;
    bool operator==(const Polynomial& o) const { return n_ == o.n_ && terms_ == o.terms_; }

    Polynomial conjugated() const;
    // r is real-valued iff coeff(alpha,beta) == conj(coeff(beta,alpha)) throughout.
    bool is_real_valued() const { return conjugated() == *this; }
    Polynomial real_part() const;
    Polynomial imag_part() const;

    // Single Wirtinger derivative d/dz_j (anti = false) or d/dzbar_j (anti = true).
    Polynomial derivative(int j, bool anti) const;
    // Iterated derivative D^alpha Dbar^beta.
    Polynomial derivative(const std::vector<int>& alpha, const std::vector<int>& beta) const;

    // Evaluation on the real slice: z = point, zbar = conj(point).
    Scalar eval(const std::vector<Scalar>& point) const;

    // Keeps exactly the terms of total degree <= k.
    Polynomial truncate_degree(int k) const;

    // Exact substitution z -> z + point, zbar -> zbar + conj(point).
    Polynomial shift_origin(const std::vector<Scalar>& point) const;

    // Minimum total degree of a nonzero term after recentering at `point`;
    // infinity iff the polynomial is identically zero.
    QExt vanishing_order(const std::vector<Scalar>& point) const;
    QExt vanishing_order0() const;

    // Canonical display form, re-parseable by the expression grammar.
    std::string str() const;

    void add_term(const Monomial& m, const Scalar& c);

private:
    int n_;
    TermMap terms_;
};

inline Polynomial operator*(const Scalar& c, const Polynomial& p) { return p * c; }

// True iff p == lambda * q for some nonzero scalar lambda (both nonzero), or
// both are zero. Decided exactly by cross-multiplying leading coefficients.
bool proportional(const Polynomial& p, const Polynomial& q);

// Exact single-divisor long division: returns the quotient h with p == h * f
// when f divides p, and nothing otherwise.
std::optional<Polynomial> exact_divide(const Polynomial& p, const Polynomial& f);

} // namespace crgeo

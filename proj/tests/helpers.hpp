#pragma once

#include <string>
#include <vector>

#include "crgeo/errors.hpp"
#include "crgeo/parser.hpp"
#include "crgeo/polynomial.hpp"
#include "crgeo/qext.hpp"

namespace crgeo::testutil {

inline Polynomial P(const std::string& s, int n = 0) { return parse_polynomial(s, n); }

inline std::vector<Scalar> origin(int n) { return std::vector<Scalar>(static_cast<size_t>(n), Scalar(0)); }

inline Scalar random_scalar(Lcg& rng) {
    static const Scalar pool[] = {
        Scalar(0),          Scalar(1),           Scalar(-1),        Scalar(2),
        Scalar(-2),         Scalar::i(),         -Scalar::i(),      Scalar(mpq_class(1, 2)),
        Scalar(mpq_class(-1, 2)), Scalar(mpq_class(1, 2), mpq_class(1, 2)),
        Scalar(mpq_class(0), mpq_class(2)), Scalar(mpq_class(1), mpq_class(-1)),
    };
    return pool[rng.below(static_cast<int>(std::size(pool)))];
}

inline Scalar random_nonzero_scalar(Lcg& rng) {
    Scalar s = random_scalar(rng);
    while (s.is_zero()) s = random_scalar(rng);
    return s;
}

inline Monomial random_monomial(Lcg& rng, int n, int maxdeg) {
    Monomial m{std::vector<int>(static_cast<size_t>(n), 0), std::vector<int>(static_cast<size_t>(n), 0)};
    int budget = rng.below(maxdeg + 1);
    for (int i = 0; i < budget; ++i) {
        const int slot = rng.below(2 * n);
        if (slot < n)
            ++m.alpha[static_cast<size_t>(slot)];
        else
            ++m.beta[static_cast<size_t>(slot - n)];
    }
    return m;
}

inline Polynomial random_polynomial(Lcg& rng, int n, int maxdeg, int terms) {
    Polynomial p(n);
    for (int t = 0; t < terms; ++t) {
        // Sequence the two draws; argument evaluation order is unspecified.
        const Monomial m = random_monomial(rng, n, maxdeg);
        const Scalar c = random_scalar(rng);
        p.add_term(m, c);
    }
    return p;
}

inline Polynomial random_nonzero_polynomial(Lcg& rng, int n, int maxdeg, int terms) {
    Polynomial p = random_polynomial(rng, n, maxdeg, terms);
    while (p.is_zero()) {
        const Monomial m = random_monomial(rng, n, maxdeg);
        const Scalar c = random_nonzero_scalar(rng);
        p.add_term(m, c);
    }
    return p;
}

inline Polynomial random_real_polynomial(Lcg& rng, int n, int maxdeg, int terms) {
    const Polynomial p = random_polynomial(rng, n, maxdeg, terms);
    return p + p.conjugated();
}

inline std::vector<Scalar> random_point(Lcg& rng, int n) {
    std::vector<Scalar> pt;
    for (int i = 0; i < n; ++i) pt.push_back(random_scalar(rng));
    return pt;
}

} // namespace crgeo::testutil

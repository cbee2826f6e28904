#pragma once

#include <string>
#include <vector>

#include "crgeo/curves.hpp"
#include "crgeo/polynomial.hpp"
#include "crgeo/qext.hpp"

namespace crgeo {

// Weight n-tuple: nondecreasing entries in [1, inf], each finite entry
// supporting an integer reciprocal-sum certificate. Ordered lexicographically.
struct Weight {
    std::vector<QExt> entries;

    int n() const { return static_cast<int>(entries.size()); }
    bool operator==(const Weight& o) const { return entries == o.entries; }
    std::string str() const;
};

// -1 / 0 / +1, first differing entry decides; infinity above every rational.
int lex_compare(const Weight& a, const Weight& b);

struct AdmissibilityCert {
    bool ok = false;
    int failing_k = -1; // 1-based index of the first k without a certificate
    // certs[k-1] is the integer vector (a_1..a_k) witnessing level k; empty
    // for infinite entries.
    std::vector<std::vector<long>> certs;
};

// Validity check for membership in the weight set: nondecreasing entries >= 1
// and, for every finite lambda_k, integers a_1..a_k with sum a_j/lambda_j = 1.
// The default convention is a_j >= 0 with a_k > 0; `strict_positive` demands
// a_j > 0 for every j <= k instead.
AdmissibilityCert is_admissible_weight(const Weight& w, bool strict_positive = false);

struct DistinguishedCheck {
    bool ok = false;
    Monomial witness; // a violating derivative multi-index (alpha, beta) when !ok
};

// Distinguished-weight test against r at the origin: every derivative
// D^alpha Dbar^beta r(0) with weighted degree sum (alpha_i+beta_i)/lambda_i < 1
// must vanish. For polynomial input this reduces to a finite scan of the
// stored terms (the derivative at 0 is alpha!beta! times the coefficient).
DistinguishedCheck is_distinguished(const Polynomial& r, const Weight& w);

// Lexicographically largest admissible distinguished weight in the given
// coordinates, enumerating entries over rationals a/b <= entry_cap with
// b <= deg(r); entries beyond the cap are treated as infinity. A certified
// lower bound for the multitype (coordinate changes are not searched).
// Requires real-valued r with r(0) = 0.
Weight multitype_lower_bound(const Polynomial& r, const QExt& entry_cap,
                             Exec mode = Exec::parallel);

} // namespace crgeo

#include <doctest.h>

#include "crgeo/weights.hpp"
#include "properties.hpp"

using namespace crgeo;
using namespace crgeo::testutil;

namespace {

Weight W(std::vector<QExt> entries) { return Weight{std::move(entries)}; }

} // namespace

TEST_CASE("lexicographic comparison") {
    CHECK(lex_compare(W({QExt(1), QExt(2), QExt(4)}), W({QExt(1), QExt(2), QExt(6)})) < 0);
    CHECK(lex_compare(W({QExt(1), QExt(4), QExt(6)}), W({QExt(1), QExt(4), QExt(6)})) == 0);
    CHECK(lex_compare(W({QExt(1), QExt(2), QExt::infinity()}), W({QExt(1), QExt(4), QExt(6)})) < 0);
}

TEST_CASE("weight admissibility certificates") {
    {
        const AdmissibilityCert c = is_admissible_weight(W({QExt(1), QExt(2), QExt(2)}));
        CHECK(c.ok);
        // Level 2 certificate must solve a1/1 + a2/2 = 1 with a2 > 0.
        REQUIRE(c.certs[1].size() == 2);
        CHECK(mpq_class(c.certs[1][0]) + mpq_class(c.certs[1][1]) / 2 == 1);
        CHECK(c.certs[1][1] > 0);
    }
    {
        const AdmissibilityCert c = is_admissible_weight(W({QExt(1), QExt(4), QExt(6)}));
        CHECK(c.ok);
        mpq_class s = mpq_class(c.certs[2][0]) + mpq_class(c.certs[2][1]) / 4 +
                      mpq_class(c.certs[2][2]) / 6;
        CHECK(s == 1);
    }
    {
        const AdmissibilityCert c = is_admissible_weight(W({QExt(1), QExt(mpq_class(3, 2))}));
        CHECK_FALSE(c.ok);
        CHECK(c.failing_k == 2);
    }
    // Under the strict all-positive convention even (1,2,...,2) fails at k=2,
    // which is why the nonnegative convention is the default.
    {
        const AdmissibilityCert c = is_admissible_weight(W({QExt(1), QExt(2), QExt(2)}), true);
        CHECK_FALSE(c.ok);
        CHECK(c.failing_k == 2);
    }
    // Nondecreasing and >= 1 are enforced.
    CHECK_FALSE(is_admissible_weight(W({QExt(2), QExt(1)})).ok);
    CHECK_FALSE(is_admissible_weight(W({QExt(mpq_class(1, 2)), QExt(2)})).ok);
    CHECK(is_admissible_weight(W({QExt(1), QExt(2), QExt::infinity()})).ok);
}

TEST_CASE("distinguished weights against a defining function") {
    CHECK(is_distinguished(P("2*Re(z1) + abs2(z2)^2", 2), W({QExt(1), QExt(4)})).ok);
    {
        const DistinguishedCheck d =
            is_distinguished(P("2*Re(z1) + abs2(z2)", 2), W({QExt(1), QExt(4)}));
        CHECK_FALSE(d.ok);
        CHECK(d.witness == Monomial{{0, 1}, {0, 1}});
    }
    CHECK(is_distinguished(P("2*Re(z1) + abs2(z2)^2", 2), W({QExt(1), QExt(1)})).ok);
    CHECK(is_distinguished(P("2*Re(z1) + abs2(z2^2 - z3^3)", 3), W({QExt(1), QExt(1), QExt(1)})).ok);
}

TEST_CASE("multitype lower bound on the model inputs") {
    CHECK(multitype_lower_bound(P("2*Re(z1) + abs2(z2)", 2), QExt(2)).str() == "(1, 2)");
    CHECK(multitype_lower_bound(P("2*Re(z1) + abs2(z2)^2 + abs2(z3)^3", 3), QExt(6)).str() ==
          "(1, 4, 6)");
    CHECK(multitype_lower_bound(P("2*Re(z1) + abs2(z2^2 - z3^3)", 3), QExt(6)).str() ==
          "(1, 4, 6)");
}

TEST_CASE("multitype lower bound output is admissible and distinguished") {
    const Polynomial rs[] = {
        P("2*Re(z1) + abs2(z2)", 2),
        P("2*Re(z1) + abs2(z2)^2 + abs2(z3)^3", 3),
        P("2*Re(z1) + abs2(z2^2 - z3^3)", 3),
        P("2*Re(z1) + abs2(z2)^2 + abs2(z2*z3) + abs2(z3)^3", 3),
    };
    for (const Polynomial& r : rs) {
        const Weight w = multitype_lower_bound(r, QExt(static_cast<long>(r.degree())));
        CHECK(is_admissible_weight(w).ok);
        CHECK(is_distinguished(r, w).ok);
    }
}

TEST_CASE("multitype lower bound is monotone in the cap") {
    const Polynomial r = P("2*Re(z1) + abs2(z2)^2 + abs2(z3)^3", 3);
    Weight prev;
    bool first = true;
    for (long cap = 2; cap <= 6; ++cap) {
        const Weight w = multitype_lower_bound(r, QExt(cap));
        if (!first) CHECK(lex_compare(prev, w) <= 0);
        prev = w;
        first = false;
    }
}

TEST_CASE("serial and parallel weight enumeration agree") {
    const Polynomial rs[] = {
        P("2*Re(z1) + abs2(z2)^2 + abs2(z3)^3", 3),
        P("2*Re(z1) + abs2(z2^2 - z3^3)", 3),
    };
    for (const Polynomial& r : rs) {
        CHECK(multitype_lower_bound(r, QExt(6), Exec::serial) ==
              multitype_lower_bound(r, QExt(6), Exec::parallel));
    }
}

TEST_CASE("weights property suite") {
    const SuiteResult res = weights_properties(200);
    INFO(res.detail);
    CHECK(res.pass);
}
